//! Edge-weight sweeps along a diffeomorphism word, with explicit logarithm
//! lifts, periodicity detection and winding integers.
//!
//! The sweep state at step k is the pair of edge-weight logs (A_k, B_k) with
//! a_k = e^{A_k}, b_k = e^{B_k}. One L or R move updates them by
//!
//! ```text
//! L:  A_k = -B_{k-1}                      B_k = V_k + V^_k + (th2+th4-th1-th3)/2 + A_{k-1}
//! R:  A_k = -th1 + A_{k-1} + B_{k-1}      B_k = V_k + V^_k + B_{k-1}
//! ```
//!
//! where U_k = -A_k, e^{U^_k} = h^n p1^{-n} p2^{-n} a_k^{-1} (L) or
//! h^n p1^{-n} p4^{-n} a_k^{-1} (R), and V_k, V^_k are principal logs of
//! 1 + e^{U_k}, 1 + e^{U^_k}. The puncture logs th_j permute alongside the
//! puncture weights. Exponentiating reproduces the scalar edge-weight
//! recursion step by step.

use crate::cfrep::RepParams;
use crate::dilog::QRoot;
use crate::error::{Error, Result};
use crate::word::{DiffeoWord, Letter};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A nonzero value together with a chosen logarithm, exp(log) = value.
#[derive(Debug, Clone, Copy)]
pub struct LogLifted {
    pub value: Complex64,
    pub log: Complex64,
}

impl LogLifted {
    /// Lift from a chosen log.
    pub fn from_log(log: Complex64) -> Self {
        LogLifted { value: log.exp(), log }
    }

    /// Principal lift of a nonzero value.
    pub fn principal(value: Complex64) -> Result<Self> {
        if value == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("log of zero"));
        }
        Ok(LogLifted { value, log: value.ln() })
    }
}

/// Lifted data of one sweep step k = 1..k0.
#[derive(Debug, Clone)]
pub struct SweepStep {
    pub a_log: Complex64,
    pub b_log: Complex64,
    pub u: Complex64,
    pub v: Complex64,
    pub u_hat: Complex64,
    pub v_hat: Complex64,
    pub a: Complex64,
    pub b: Complex64,
}

/// A full lifted edge-weight sweep along a word.
#[derive(Debug, Clone)]
pub struct EdgeWeightSweep {
    pub word: DiffeoWord,
    pub theta: [Complex64; 4],
    pub a0_log: Complex64,
    pub b0_log: Complex64,
    /// Steps k = 1..k0.
    pub steps: Vec<SweepStep>,
    pub l1_hat: i64,
    pub l2_hat: i64,
    /// Distance of (A0 - A_k0)/2 pi i and (B0 - B_k0)/2 pi i from integers.
    pub winding_residual: f64,
    /// |a_k0 - a_0| + |b_k0 - b_0|.
    pub periodicity_residual: f64,
}

impl EdgeWeightSweep {
    pub fn k0(&self) -> usize {
        self.steps.len()
    }

    pub fn require_periodic(&self, tol: f64) -> Result<()> {
        if self.periodicity_residual > tol {
            return Err(Error::NonPeriodic { residual: self.periodicity_residual });
        }
        Ok(())
    }

    /// Twist exponents l = l_hat (n-1)^2 / 2 reduced mod n; (n-1)^2/2 is an
    /// integer for odd n.
    pub fn twist_exponents(&self, n: usize) -> (i64, i64) {
        let n = n as i64;
        let half_sq = (n - 1) * (n - 1) / 2;
        (
            (self.l1_hat * half_sq).rem_euclid(n),
            (self.l2_hat * half_sq).rem_euclid(n),
        )
    }

    /// Classifying parameters of the representation attached to step k,
    /// 0 <= k <= k0: x = e^{A_k/n}, y = e^{B_k/n}, p_j = e^{th_j^{(k)}/n}.
    pub fn params_at_step(&self, k: usize, root: &QRoot) -> Result<RepParams> {
        let n = root.n() as f64;
        let (a_log, b_log) = if k == 0 {
            (self.a0_log, self.b0_log)
        } else {
            (self.steps[k - 1].a_log, self.steps[k - 1].b_log)
        };
        let theta = self.theta_at_step(k);
        RepParams::from_puncture_logs((a_log / n).exp(), (b_log / n).exp(), theta, root.clone())
    }

    /// Intertwiner scalars of step k (1 <= k <= k0):
    /// u = q e^{U_k/n}, v = e^{V_k/n} and the hatted pair.
    pub fn step_scalars(&self, k: usize, root: &QRoot) -> StepScalars {
        let n = root.n() as f64;
        let q = root.q();
        let s = &self.steps[k - 1];
        StepScalars {
            u: q * (s.u / n).exp(),
            v: (s.v / n).exp(),
            u_hat: q * (s.u_hat / n).exp(),
            v_hat: (s.v_hat / n).exp(),
        }
    }

    /// Puncture logs after the first k moves.
    pub fn theta_at_step(&self, k: usize) -> [Complex64; 4] {
        let mut th = self.theta;
        for step in 0..k {
            th = permute_theta(th, self.word.letters()[step]);
        }
        th
    }
}

/// Per-step scalars entering the intertwiner matrices.
#[derive(Debug, Clone, Copy)]
pub struct StepScalars {
    pub u: Complex64,
    pub v: Complex64,
    pub u_hat: Complex64,
    pub v_hat: Complex64,
}

fn permute_theta(th: [Complex64; 4], mv: Letter) -> [Complex64; 4] {
    match mv {
        Letter::L => [th[3], th[1], th[2], th[0]],
        Letter::R => [th[1], th[0], th[2], th[3]],
    }
}

/// Run the lifted recursion along the word from initial lifts (A_0, B_0).
///
/// V_k and V^_k use the principal branch of log(1 + e^{U}); a step with
/// a_k = -1 (or the hatted analogue) is a degenerate diagonal exchange.
pub fn run_sweep(
    word: &DiffeoWord,
    a0: LogLifted,
    b0: LogLifted,
    theta: [Complex64; 4],
) -> Result<EdgeWeightSweep> {
    let mut a_log = a0.log;
    let mut b_log = b0.log;
    let mut th = theta;
    let mut steps = Vec::with_capacity(word.k0());
    for (idx, &letter) in word.letters().iter().enumerate() {
        let sum_half = (th[0] + th[1] + th[2] + th[3]) / 2.0;
        let next_a = match letter {
            Letter::L => -b_log,
            Letter::R => -th[0] + a_log + b_log,
        };
        let u = -next_a;
        let u_hat = match letter {
            // e^{U^} = h^n p1^{-n} p2^{-n} a^{-1} (L),  h^n p1^{-n} p4^{-n} a^{-1} (R)
            Letter::L => u + sum_half - th[0] - th[1],
            Letter::R => u + sum_half - th[0] - th[3],
        };
        let eu = u.exp();
        let eu_hat = u_hat.exp();
        if (1.0 + eu).norm() <= 1e-12 * eu.norm().max(1.0)
            || (1.0 + eu_hat).norm() <= 1e-12 * eu_hat.norm().max(1.0)
        {
            return Err(Error::DegenerateEdge { step: idx + 1 });
        }
        let v = (1.0 + eu).ln();
        let v_hat = (1.0 + eu_hat).ln();
        let next_b = match letter {
            Letter::L => v + v_hat + (th[1] + th[3] - th[0] - th[2]) / 2.0 + a_log,
            Letter::R => v + v_hat + b_log,
        };
        a_log = next_a;
        b_log = next_b;
        th = permute_theta(th, letter);
        steps.push(SweepStep {
            a_log,
            b_log,
            u,
            v,
            u_hat,
            v_hat,
            a: a_log.exp(),
            b: b_log.exp(),
        });
    }
    let last = steps.last().expect("word is nonempty");
    let periodicity_residual = (last.a - a0.value).norm() + (last.b - b0.value).norm();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let w1 = (a0.log - last.a_log) / two_pi_i;
    let w2 = (b0.log - last.b_log) / two_pi_i;
    let l1_hat = w1.re.round() as i64;
    let l2_hat = w2.re.round() as i64;
    let winding_residual = (w1 - l1_hat as f64).norm().max((w2 - l2_hat as f64).norm());
    Ok(EdgeWeightSweep {
        word: word.clone(),
        theta,
        a0_log: a0.log,
        b0_log: b0.log,
        steps,
        l1_hat,
        l2_hat,
        winding_residual,
        periodicity_residual,
    })
}
