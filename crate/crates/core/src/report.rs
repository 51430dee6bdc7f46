//! Machine-readable output records. Every JSON document carries
//! `"schema": "bwy/1"`.

use crate::asympt::{GrowthFit, GrowthSeries};
use crate::geometry::{CriticalPoint, VolumeReport};
use crate::sweep::EdgeWeightSweep;
use num_complex::Complex64;
use serde::Serialize;

pub const SCHEMA: &str = "bwy/1";

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Serialize)]
pub struct VolumeRecord {
    pub schema: &'static str,
    pub word: String,
    pub alpha: Vec<[f64; 2]>,
    pub residual: f64,
    pub volume: f64,
    pub per_tet: Vec<f64>,
    pub hessdet: [f64; 2],
    pub im_f: f64,
    pub satisfies_hypothesis: bool,
}

impl VolumeRecord {
    pub fn new(word: String, cp: &CriticalPoint, rep: &VolumeReport) -> Self {
        VolumeRecord {
            schema: SCHEMA,
            word,
            alpha: cp.alpha.iter().map(|z| pair(*z)).collect(),
            residual: cp.residual,
            volume: rep.volume,
            per_tet: rep.per_tet.clone(),
            hessdet: pair(rep.hessdet),
            im_f: rep.im_f,
            satisfies_hypothesis: rep.satisfies_hypothesis,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceRecord {
    pub schema: &'static str,
    pub word: String,
    pub n: usize,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub log_abs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_rel_discrepancy: Option<f64>,
}

impl TraceRecord {
    pub fn new(word: String, n: usize, t: Complex64) -> Self {
        TraceRecord {
            schema: SCHEMA,
            word,
            n,
            re: t.re,
            im: t.im,
            abs: t.norm(),
            log_abs: t.norm().ln(),
            oracle_abs: None,
            oracle_rel_discrepancy: None,
        }
    }

    pub fn with_oracle(mut self, oracle: Complex64) -> Self {
        let abs = oracle.norm();
        self.oracle_abs = Some(abs);
        self.oracle_rel_discrepancy = Some((self.abs - abs).abs() / self.abs.max(f64::MIN_POSITIVE));
        self
    }
}

#[derive(Debug, Serialize)]
pub struct SweepStepRecord {
    pub k: usize,
    pub a_log: [f64; 2],
    pub b_log: [f64; 2],
    pub u: [f64; 2],
    pub v: [f64; 2],
    pub u_hat: [f64; 2],
    pub v_hat: [f64; 2],
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Debug, Serialize)]
pub struct SweepRecord {
    pub schema: &'static str,
    pub word: String,
    pub steps: Vec<SweepStepRecord>,
    pub l1_hat: i64,
    pub l2_hat: i64,
    pub winding_residual: f64,
    pub periodicity_residual: f64,
}

impl SweepRecord {
    pub fn new(sweep: &EdgeWeightSweep) -> Self {
        SweepRecord {
            schema: SCHEMA,
            word: sweep.word.render(),
            steps: sweep
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| SweepStepRecord {
                    k: i + 1,
                    a_log: pair(s.a_log),
                    b_log: pair(s.b_log),
                    u: pair(s.u),
                    v: pair(s.v),
                    u_hat: pair(s.u_hat),
                    v_hat: pair(s.v_hat),
                    a: pair(s.a),
                    b: pair(s.b),
                })
                .collect(),
            l1_hat: sweep.l1_hat,
            l2_hat: sweep.l2_hat,
            winding_residual: sweep.winding_residual,
            periodicity_residual: sweep.periodicity_residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FitRecord {
    pub schema: &'static str,
    pub word: String,
    pub n_max: usize,
    pub reference_volume: f64,
    pub slope: f64,
    pub predicted_volume: f64,
    pub relative_error: f64,
    pub points: Vec<FitPointRecord>,
}

#[derive(Debug, Serialize)]
pub struct FitPointRecord {
    pub n: usize,
    pub log_abs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_volume: Option<f64>,
}

impl FitRecord {
    pub fn new(series: &GrowthSeries, fit: &GrowthFit, reference_volume: f64) -> Self {
        let mut points: Vec<FitPointRecord> = series
            .points
            .iter()
            .map(|p| FitPointRecord {
                n: p.n,
                log_abs: p.log_abs_trace,
                slope_n: None,
                predicted_volume: None,
            })
            .collect();
        // attach the difference slope of (n, n+2) to the later point
        for (i, (_, s)) in fit.slope_per_n.iter().enumerate() {
            points[i + 1].slope_n = Some(*s);
            points[i + 1].predicted_volume = Some(4.0 * std::f64::consts::PI * s);
        }
        FitRecord {
            schema: SCHEMA,
            word: series.word.render(),
            n_max: series.points.last().map(|p| p.n).unwrap_or(0),
            reference_volume,
            slope: fit.slope,
            predicted_volume: fit.predicted_volume,
            relative_error: fit.relative_error,
            points,
        }
    }

    /// CSV emission: n, log_abs, slope_n, predicted_volume.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,log_abs,slope_n,predicted_volume\n");
        for p in &self.points {
            let s = p.slope_n.map(|v| v.to_string()).unwrap_or_default();
            let pv = p.predicted_volume.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", p.n, p.log_abs, s, pv));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub schema: &'static str,
    pub word: String,
    pub n: usize,
    pub checks: Vec<VerifyCheck>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}
