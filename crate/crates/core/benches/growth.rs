//! Growth-series throughput: rayon data-parallel loop over n against the
//! sequential fallback, plus single-trace cost at a few n.

use bwy_core::asympt::growth_series_from_sweep;
use bwy_core::exec::ExecMode;
use bwy_core::geometry::{critical_to_edge_weights, find_critical_point, NewtonOptions};
use bwy_core::intertwiner::trace_product;
use bwy_core::sweep::EdgeWeightSweep;
use bwy_core::{parse_word, QRoot};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn hyperbolic_sweep(text: &str) -> EdgeWeightSweep {
    let word = parse_word(text).unwrap();
    let eps = word.epsilon_signature();
    let cp = find_critical_point(&eps, None, &NewtonOptions::default()).unwrap();
    critical_to_edge_weights(&cp, &word).unwrap()
}

fn bench_growth_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("growth_series");
    group.sample_size(10);
    for text in ["LR", "LLRR"] {
        let sweep = hyperbolic_sweep(text);
        for n_max in [51usize, 101] {
            group.bench_with_input(
                BenchmarkId::new(format!("{text}/sequential"), n_max),
                &n_max,
                |b, &n_max| {
                    b.iter(|| {
                        growth_series_from_sweep(black_box(&sweep), n_max, ExecMode::Sequential)
                            .unwrap()
                    })
                },
            );
            group.bench_with_input(
                BenchmarkId::new(format!("{text}/parallel"), n_max),
                &n_max,
                |b, &n_max| {
                    b.iter(|| {
                        growth_series_from_sweep(black_box(&sweep), n_max, ExecMode::Parallel)
                            .unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn bench_single_trace(c: &mut Criterion) {
    let sweep = hyperbolic_sweep("LR");
    let mut group = c.benchmark_group("trace_product");
    for n in [51usize, 151] {
        let root = QRoot::new(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| trace_product(black_box(&sweep), &root).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_growth_series, bench_single_trace);
criterion_main!(benches);
