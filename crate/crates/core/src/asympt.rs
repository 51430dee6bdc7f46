//! Growth of log |tr| over odd n and the exponential-rate fit against the
//! volume.
//!
//! The expected form is log |t_n| = (Vol/4 pi) n + log c + O(1/n)-type
//! corrections. Successive differences over Delta n = 2 cancel the unknown
//! intercept and any slow n-polynomial factor; Richardson extrapolation in
//! 1/n removes the leading correction of the difference sequence.

use crate::error::{Error, Result};
use crate::exec::{map_items, ExecMode};
use crate::geometry::{critical_to_edge_weights, find_critical_point, NewtonOptions};
use crate::intertwiner::trace_product;
use crate::sweep::EdgeWeightSweep;
use crate::word::DiffeoWord;
use crate::QRoot;

#[derive(Debug, Clone, Copy)]
pub struct GrowthPoint {
    pub n: usize,
    pub log_abs_trace: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthSeries {
    pub word: DiffeoWord,
    pub points: Vec<GrowthPoint>,
}

#[derive(Debug, Clone)]
pub struct GrowthFit {
    /// Richardson-extrapolated slope of log |t_n| per unit n.
    pub slope: f64,
    /// Raw difference slopes (midpoint n, slope).
    pub slope_per_n: Vec<(usize, f64)>,
    /// 4 pi times the extrapolated slope.
    pub predicted_volume: f64,
    /// Relative error against the reference volume.
    pub relative_error: f64,
}

/// Traces of the hyperbolic sweep for every odd n in 3..=n_max.
pub fn growth_series_from_sweep(
    sweep: &EdgeWeightSweep,
    n_max: usize,
    mode: ExecMode,
) -> Result<GrowthSeries> {
    if n_max < 3 || n_max.is_multiple_of(2) {
        return Err(Error::BadOrder(n_max as i64));
    }
    let ns: Vec<usize> = (3..=n_max).step_by(2).collect();
    let traces = map_items(ns, mode, |n| {
        let root = QRoot::new(n)?;
        let t = trace_product(sweep, &root)?;
        Ok(GrowthPoint { n, log_abs_trace: t.norm().ln() })
    });
    let points = traces.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries { word: sweep.word.clone(), points })
}

/// Full pipeline: critical point, hyperbolic sweep, then the trace series.
pub fn growth_series(word: &DiffeoWord, n_max: usize, mode: ExecMode) -> Result<GrowthSeries> {
    let eps = word.epsilon_signature();
    let cp = find_critical_point(&eps, None, &NewtonOptions::default())?;
    let sweep = critical_to_edge_weights(&cp, word)?;
    growth_series_from_sweep(&sweep, n_max, mode)
}

/// Slope estimate by successive differences plus Richardson extrapolation
/// in 1/n, and the implied volume 4 pi * slope.
pub fn fit_growth(series: &GrowthSeries, reference_volume: f64) -> Result<GrowthFit> {
    let pts = &series.points;
    if pts.len() < 6 {
        return Err(Error::TooFewPoints { need: 6, got: pts.len() });
    }
    let slope_per_n: Vec<(usize, f64)> = pts
        .windows(2)
        .map(|w| {
            let dn = (w[1].n - w[0].n) as f64;
            (w[0].n + 1, (w[1].log_abs_trace - w[0].log_abs_trace) / dn)
        })
        .collect();
    let (n_last, s_last) = *slope_per_n.last().expect("at least five slopes");
    // partner point as close to n_last/2 as the series allows
    let target = n_last / 2;
    let (n_half, s_half) = *slope_per_n
        .iter()
        .min_by_key(|(n, _)| n.abs_diff(target))
        .expect("nonempty");
    if n_half == n_last {
        return Err(Error::TooFewPoints { need: 6, got: pts.len() });
    }
    // eliminate the a/n term: s(n) = s_inf + a/n
    let (nl, nh) = (n_last as f64, n_half as f64);
    let slope = (nl * s_last - nh * s_half) / (nl - nh);
    let predicted_volume = 4.0 * std::f64::consts::PI * slope;
    let relative_error = if reference_volume != 0.0 {
        ((predicted_volume - reference_volume) / reference_volume).abs()
    } else {
        f64::NAN
    };
    Ok(GrowthFit { slope, slope_per_n, predicted_volume, relative_error })
}
