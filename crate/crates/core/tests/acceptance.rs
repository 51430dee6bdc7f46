//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

use bwy_core::asympt::{fit_growth, growth_series};
use bwy_core::cfrep::{
    build_standard_rep, check_central_elements, check_dependent_edges, check_relations, RepParams,
};
use bwy_core::exec::ExecMode;
use bwy_core::geometry::{
    critical_to_edge_weights, find_critical_point, grad_f, hess_f, im_f_y_curvature, potential_f,
    volume_at, NewtonOptions,
};
use bwy_core::intertwiner::{conjugation_residual, trace_product, trace_sum_formula};
use bwy_core::word::Letter;
use bwy_core::{parse_word, QRoot};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

struct Criterion {
    name: &'static str,
    worst: f64,
    bound: f64,
}

impl Criterion {
    fn new(name: &'static str, bound: f64) -> Self {
        Criterion { name, worst: 0.0, bound }
    }

    fn record(&mut self, value: f64) {
        self.worst = self.worst.max(value);
    }

    fn finish(self) {
        let ok = self.worst <= self.bound;
        println!(
            "{}: {} (worst {:.3e}, bound {:.1e})",
            if ok { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.bound
        );
        assert!(ok, "{} exceeded its bound", self.name);
    }
}

/// Independent v3 oracle: the Clausen sum sum_k sin(k pi/3)/k^2 truncated at
/// K = 1e6 (tail below 2/K^2 by Abel summation).
fn v3_series_oracle() -> f64 {
    let mut sum = 0.0;
    for k in (1..=1_000_000u64).rev() {
        sum += (k as f64 * PI / 3.0).sin() / (k * k) as f64;
    }
    sum
}

fn critical(text: &str) -> bwy_core::geometry::CriticalPoint {
    let eps = parse_word(text).unwrap().epsilon_signature();
    find_critical_point(&eps, None, &NewtonOptions::default()).unwrap()
}

fn random_params(n: usize, rng: &mut ChaCha8Rng) -> RepParams {
    let root = QRoot::new(n).unwrap();
    let x = Complex64::from_polar(rng.gen_range(0.7..1.4), rng.gen_range(0.0..2.0 * PI));
    let y = Complex64::from_polar(rng.gen_range(0.7..1.4), rng.gen_range(0.0..2.0 * PI));
    let theta: [Complex64; 4] =
        std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    RepParams::from_puncture_logs(x, y, theta, root).unwrap()
}

#[test]
fn criterion_volume_regression() {
    let v3 = v3_series_oracle();
    let mut c = Criterion::new("volume regression: (LR)^k -> 4 k v3", 1e-8);
    for k in 1..=3usize {
        let text = format!("(LR)^{k}");
        let cp = critical(&text);
        let eps = parse_word(&text).unwrap().epsilon_signature();
        let rep = volume_at(&cp, &eps).unwrap();
        c.record((rep.volume - 4.0 * k as f64 * v3).abs());
    }
    c.finish();
}

#[test]
fn criterion_critical_point_closed_form() {
    let cp = critical("LR");
    let mut c = Criterion::new("critical point LR = (pi/3, pi/3)", 1e-9);
    for a in &cp.alpha {
        c.record((a - Complex64::new(PI / 3.0, 0.0)).norm());
    }
    c.finish();

    let mut c = Criterion::new("critical point LR gradient residual", 1e-12);
    c.record(cp.residual);
    c.finish();

    let eps = parse_word("LR").unwrap().epsilon_signature();
    let det = hess_f(&cp.alpha, &eps).unwrap().determinant().norm();
    println!(
        "{}: Hessian determinant nonsingular (|det| = {:.3e} > 1e-6)",
        if det > 1e-6 { "PASS" } else { "FAIL" },
        det
    );
    assert!(det > 1e-6);
}

#[test]
fn criterion_representation_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut c = Criterion::new("representation suite (relations/centrals/edges)", 1e-11);
    for n in [3usize, 5, 7, 15] {
        for _ in 0..3 {
            let params = random_params(n, &mut rng);
            let g = build_standard_rep(&params);
            let mats = g.dense();
            c.record(check_relations(&mats, &params.root));
            c.record(check_central_elements(&mats, &params));
            c.record(check_dependent_edges(&g, &params));
        }
    }
    c.finish();
}

#[test]
fn criterion_conjugation_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut c = Criterion::new("conjugation identity for both moves", 1e-8);
    let word = parse_word("LR").unwrap();
    let cp = critical("LR");
    let sweep = critical_to_edge_weights(&cp, &word).unwrap();
    for n in [3usize, 5, 7] {
        let root = QRoot::new(n).unwrap();
        let hyperbolic = sweep.params_at_step(0, &root).unwrap();
        for mv in [Letter::L, Letter::R] {
            c.record(conjugation_residual(&hyperbolic, mv).unwrap());
            let params = random_params(n, &mut rng);
            c.record(conjugation_residual(&params, mv).unwrap());
        }
    }
    c.finish();
}

#[test]
fn criterion_trace_oracle_equality() {
    let word = parse_word("LR").unwrap();
    let cp = critical("LR");
    let sweep = critical_to_edge_weights(&cp, &word).unwrap();
    let mut c = Criterion::new("trace: |matrix product| = |closed-form sum|", 1e-8);
    for n in (3..=15usize).step_by(2) {
        let root = QRoot::new(n).unwrap();
        let tp = trace_product(&sweep, &root).unwrap();
        let ts = trace_sum_formula(&sweep, &root).unwrap();
        c.record((tp.norm() - ts.norm()).abs() / tp.norm());
    }
    c.finish();
}

#[test]
fn criterion_growth_law() {
    let word = parse_word("LR").unwrap();
    let eps = word.epsilon_signature();
    let cp = critical("LR");
    let volume = volume_at(&cp, &eps).unwrap().volume;
    let series = growth_series(&word, 151, ExecMode::Parallel).unwrap();
    let fit = fit_growth(&series, volume).unwrap();
    println!(
        "growth fit: slope {:.8}, 4 pi slope = {:.6} vs volume {:.6} (rel err {:.2e})",
        fit.slope, fit.predicted_volume, volume, fit.relative_error
    );
    let ok_rate = fit.relative_error < 0.05;
    println!(
        "{}: growth law: extrapolated rate within 5% of volume",
        if ok_rate { "PASS" } else { "FAIL" }
    );
    assert!(ok_rate);

    let err_at = |n_mid: usize| {
        let (_, s) = fit
            .slope_per_n
            .iter()
            .min_by_key(|(n, _)| n.abs_diff(n_mid))
            .copied()
            .unwrap();
        (4.0 * PI * s - volume).abs()
    };
    let (e151, e75) = (err_at(150), err_at(74));
    let ok_trend = e151 < e75;
    println!(
        "{}: growth law: slope error shrinks ({:.3e} at n~151 < {:.3e} at n~75)",
        if ok_trend { "PASS" } else { "FAIL" },
        e151,
        e75
    );
    assert!(ok_trend);
}

#[test]
fn criterion_edge_weight_correspondence() {
    let mut c_per = Criterion::new("edge weights: sweep periodicity", 1e-9);
    let mut c_step = Criterion::new("edge weights: a_k = e^{2 i alpha_k}", 1e-10);
    for text in ["LR", "(LR)^2", "LLRR"] {
        let word = parse_word(text).unwrap();
        let cp = critical(text);
        let sweep = critical_to_edge_weights(&cp, &word).unwrap();
        c_per.record(sweep.periodicity_residual);
        for (k, s) in sweep.steps.iter().enumerate() {
            let want = (Complex64::new(0.0, 2.0) * cp.alpha[k]).exp();
            c_step.record((s.a - want).norm());
        }
    }
    c_per.finish();
    c_step.finish();
}

#[test]
fn criterion_derivative_checks() {
    let word = parse_word("LLRR").unwrap();
    let eps = word.epsilon_signature();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut c_grad = Criterion::new("grad f vs central differences", 1e-6);
    let mut c_hess = Criterion::new("hess f vs differenced gradient", 1e-5);
    for _ in 0..100 {
        let alpha: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.gen_range(0.1..PI / 2.0 - 0.1), rng.gen_range(-0.8..0.8)))
            .collect();
        let g = grad_f(&alpha, &eps).unwrap();
        let h = hess_f(&alpha, &eps).unwrap();
        let d = 1e-5;
        for k in 0..4 {
            let mut hi = alpha.clone();
            let mut lo = alpha.clone();
            hi[k] += d;
            lo[k] -= d;
            let fd = (potential_f(&hi, &eps).unwrap() - potential_f(&lo, &eps).unwrap()) / (2.0 * d);
            c_grad.record((g[k] - fd).norm() / g[k].norm().max(1.0));
            let gh = grad_f(&hi, &eps).unwrap();
            let gl = grad_f(&lo, &eps).unwrap();
            for r in 0..4 {
                let fd2 = (gh[r] - gl[r]) / (2.0 * d);
                c_hess.record((h[(r, k)] - fd2).norm() / h[(r, k)].norm().max(1.0));
            }
        }
    }
    c_grad.finish();
    c_hess.finish();

    // convexity signs of d^2 Im f / d y^2 on a 20 x 20 grid per region
    let mut ok = true;
    for (lo, hi, sign) in [
        (0.0, PI / 2.0, 1.0),
        (PI, 3.0 * PI / 2.0, 1.0),
        (-PI / 2.0, 0.0, -1.0),
        (PI / 2.0, PI, -1.0),
    ] {
        for i in 1..=20 {
            for j in 0..20 {
                let x = lo + (hi - lo) * i as f64 / 21.0;
                let y = -1.0 + 2.0 * j as f64 / 19.0;
                ok &= im_f_y_curvature(Complex64::new(x, y)) * sign > 0.0;
            }
        }
    }
    println!(
        "{}: convexity signs of Im f in y per region",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_gsum_nonvanishing() {
    let word = parse_word("LR").unwrap();
    let cp = critical("LR");
    let sweep = critical_to_edge_weights(&cp, &word).unwrap();
    let mut ok = true;
    let mut c = Criterion::new("g-sum: factored form vs brute-force corner sum", 1e-10);
    for n in [5usize, 7] {
        let g = bwy_core::geometry::gsum_at(&cp, &sweep, n).unwrap();
        ok &= g.norm() > 1e-6;
        println!("g-sum at n={n}: |sum| = {:.6e}", g.norm());
        let brute = gsum_corner_sum(&cp, &sweep, n);
        c.record((g - brute).norm() / brute.norm().max(1.0));
    }
    c.finish();
    println!(
        "{}: corner g-sum stays away from zero",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

/// Independent corner-sum oracle: evaluate g_n at every alpha + pi J and add.
fn gsum_corner_sum(
    cp: &bwy_core::geometry::CriticalPoint,
    sweep: &bwy_core::sweep::EdgeWeightSweep,
    n: usize,
) -> Complex64 {
    let k0 = cp.alpha.len();
    let i_pow_n = match n % 4 {
        1 => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0..(1u32 << k0) {
        let alpha_j: Vec<Complex64> = (0..k0)
            .map(|k| cp.alpha[k] + if mask >> k & 1 == 1 { PI } else { 0.0 })
            .collect();
        let l = -(sweep.l2_hat as f64) * alpha_j[k0 - 1] - (sweep.l1_hat as f64) * alpha_j[0];
        let mut val = (Complex64::new(0.0, 1.0) * l).exp();
        for (k, (aj, s)) in alpha_j.iter().zip(&sweep.steps).enumerate() {
            let base = (1.0 + (Complex64::new(0.0, -2.0) * aj).exp()) / 2.0;
            let exponent = 1.0 - (s.u + s.u_hat) / Complex64::new(0.0, 4.0 * PI);
            val *= (exponent * base.ln()).exp();
            val *= (-aj * (s.v + s.v_hat) / (2.0 * PI)).exp();
            if mask >> k & 1 == 1 {
                val *= (1.0 - i_pow_n * (s.u / 2.0).exp()) * (1.0 - i_pow_n * (s.u_hat / 2.0).exp());
            }
        }
        total += val;
    }
    total
}
