//! The holomorphic potential of a word, its critical points, and the
//! hyperbolic volume of the mapping torus.
//!
//! For alpha in the strip Re(alpha_k) in (-pi/2, 3pi/2),
//!
//! ```text
//! f(alpha) = sum_k 2 li2(-e^{-2 i alpha_k}) + k0 pi^2/6 - 2 K(alpha).alpha
//! ```
//!
//! with K the cyclic bilinear map built from the letter signs. The gradient
//! and Hessian below are the exact derivatives of this f; the cross terms
//! carry coefficient 4 eps (they accumulate, which also covers k0 = 2 where
//! both neighbours of a coordinate coincide). Critical points in the region
//! Re(alpha_k) in (0, pi/2) encode the complete hyperbolic structure:
//! Im f at the critical point is the volume, computed independently as a
//! Bloch-Wigner sum over tetrahedron shapes -e^{-2 i alpha_k}.

use crate::dilog::{bloch_wigner, li2};
use crate::error::{Error, Result};
use crate::sweep::{run_sweep, EdgeWeightSweep, LogLifted};
use crate::word::{DiffeoWord, EpsilonSignature, Letter};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// A converged critical point of the potential.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub alpha: Vec<Complex64>,
    /// Max-norm of the gradient at alpha.
    pub residual: f64,
    /// Region offsets J: the canonical point has Re(alpha) in (0, pi/2)^k0,
    /// i.e. J = 0.
    pub region: Vec<u8>,
}

/// Volume data at a critical point.
#[derive(Debug, Clone)]
pub struct VolumeReport {
    pub volume: f64,
    /// 2 D(-e^{-2 i alpha_k}) per move (one pair of tetrahedra each).
    pub per_tet: Vec<f64>,
    pub hessdet: Complex64,
    pub im_f: f64,
    /// Vol > 2 (k0 - 1) v3, the regime where the growth law is guaranteed.
    pub satisfies_hypothesis: bool,
}

fn check_strip(alpha: &[Complex64]) -> Result<()> {
    for a in alpha {
        if a.re <= -PI / 2.0 || a.re >= 3.0 * PI / 2.0 {
            return Err(Error::Domain("Re(alpha) outside (-pi/2, 3pi/2)"));
        }
    }
    Ok(())
}

fn one_plus_exp(alpha: Complex64) -> Result<Complex64> {
    let w = 1.0 + (Complex64::new(0.0, -2.0) * alpha).exp();
    // on the cut (-inf, 0], up to rounding fuzz in exp
    if w.im.abs() <= 1e-13 && w.re <= 1e-13 {
        return Err(Error::BranchCut);
    }
    Ok(w)
}

/// The cyclic linear map K, K_k = ((eps_k + eps_{k+1})/2 + 1) a_k
/// - eps_{k+1} a_{k+1} - eps_k a_{k-1}.
pub fn k_map(alpha: &[Complex64], eps: &EpsilonSignature) -> Vec<Complex64> {
    let k0 = alpha.len();
    (0..k0)
        .map(|k| {
            let c = (eps.at(k) + eps.at(k + 1)) as f64 / 2.0 + 1.0;
            c * alpha[k]
                - eps.at(k + 1) as f64 * alpha[(k + 1) % k0]
                - eps.at(k) as f64 * alpha[(k + k0 - 1) % k0]
        })
        .collect()
}

/// The linear form L(alpha) = -l2_hat alpha_{k0} - l1_hat alpha_1.
pub fn l_map(alpha: &[Complex64], l1_hat: i64, l2_hat: i64) -> Complex64 {
    -(l2_hat as f64) * alpha[alpha.len() - 1] - (l1_hat as f64) * alpha[0]
}

/// The potential f(alpha); the real constant k0 pi^2/6 is included.
pub fn potential_f(alpha: &[Complex64], eps: &EpsilonSignature) -> Result<Complex64> {
    check_strip(alpha)?;
    let k0 = alpha.len();
    let mut sum = Complex64::new(k0 as f64 * PI * PI / 6.0, 0.0);
    for a in alpha {
        sum += 2.0 * li2(-(Complex64::new(0.0, -2.0) * a).exp());
    }
    let k = k_map(alpha, eps);
    let dot: Complex64 = k.iter().zip(alpha).map(|(ki, ai)| ki * ai).sum();
    Ok(sum - 2.0 * dot)
}

/// Gradient of f. The quadratic part accumulates 4 eps_k on alpha_{k-1} and
/// 4 eps_{k+1} on alpha_{k+1}.
pub fn grad_f(alpha: &[Complex64], eps: &EpsilonSignature) -> Result<Vec<Complex64>> {
    check_strip(alpha)?;
    let k0 = alpha.len();
    let mut g = vec![Complex64::new(0.0, 0.0); k0];
    for k in 0..k0 {
        let w = one_plus_exp(alpha[k])?;
        g[k] += Complex64::new(0.0, 4.0) * w.ln();
        g[k] -= 2.0 * (eps.at(k) + eps.at(k + 1) + 2) as f64 * alpha[k];
    }
    for k in 0..k0 {
        g[k] += 4.0 * eps.at(k) as f64 * alpha[(k + k0 - 1) % k0];
        g[k] += 4.0 * eps.at(k + 1) as f64 * alpha[(k + 1) % k0];
    }
    Ok(g)
}

/// Hessian of f: cyclic tridiagonal, entries depending on alpha through
/// e^{-2 i alpha_k} only.
pub fn hess_f(alpha: &[Complex64], eps: &EpsilonSignature) -> Result<DMatrix<Complex64>> {
    check_strip(alpha)?;
    let k0 = alpha.len();
    let mut h = DMatrix::zeros(k0, k0);
    for k in 0..k0 {
        let e = (Complex64::new(0.0, -2.0) * alpha[k]).exp();
        let w = one_plus_exp(alpha[k])?;
        h[(k, k)] += 8.0 * e / w - Complex64::new(2.0 * (eps.at(k) + eps.at(k + 1) + 2) as f64, 0.0);
        h[(k, (k + k0 - 1) % k0)] += Complex64::new(4.0 * eps.at(k) as f64, 0.0);
        h[(k, (k + 1) % k0)] += Complex64::new(4.0 * eps.at(k + 1) as f64, 0.0);
    }
    Ok(h)
}

/// d^2 Im f / d y_k^2 at alpha_k = x_k + i y_k; positive for
/// x_k in (0, pi/2) u (pi, 3pi/2), negative on the complementary intervals.
pub fn im_f_y_curvature(alpha_k: Complex64) -> f64 {
    let (x, y) = (alpha_k.re, alpha_k.im);
    4.0 * (2.0 * x).sin() / ((2.0 * x).cos() + (2.0 * y).cosh())
}

/// Options for the critical-point search.
#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { tol: 1e-12, max_iter: 80, restarts: 20, seed: 0 }
    }
}

fn newton_attempt(
    start: &[Complex64],
    eps: &EpsilonSignature,
    opts: &NewtonOptions,
) -> Option<(Vec<Complex64>, f64)> {
    let k0 = start.len();
    let mut alpha = start.to_vec();
    for _ in 0..opts.max_iter {
        let g = grad_f(&alpha, eps).ok()?;
        let res = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if res <= opts.tol {
            return Some((alpha, res));
        }
        let h = hess_f(&alpha, eps).ok()?;
        let rhs = DVector::from_iterator(k0, g.iter().cloned());
        let step = h.lu().solve(&rhs)?;
        for k in 0..k0 {
            alpha[k] -= step[k];
        }
    }
    None
}

fn in_canonical_region(alpha: &[Complex64]) -> bool {
    alpha.iter().all(|a| a.re > 0.0 && a.re < PI / 2.0)
}

/// Newton solution of grad f = 0 in the canonical region
/// Re(alpha_k) in (0, pi/2). Starts from alpha_k = pi/3 (or the given guess)
/// and falls back to seeded random restarts in the box
/// Re in (0.1, pi/2 - 0.1), Im in (-1, 1).
pub fn find_critical_point(
    eps: &EpsilonSignature,
    guess: Option<&[Complex64]>,
    opts: &NewtonOptions,
) -> Result<CriticalPoint> {
    let k0 = eps.len();
    let default = vec![Complex64::new(PI / 3.0, 0.0); k0];
    let first = guess.map(|g| g.to_vec()).unwrap_or(default);
    let mut best_res = f64::INFINITY;
    let mut out_of_region = false;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..=opts.restarts {
        let start = if attempt == 0 {
            first.clone()
        } else {
            (0..k0)
                .map(|_| {
                    Complex64::new(
                        rng.gen_range(0.1..PI / 2.0 - 0.1),
                        rng.gen_range(-1.0..1.0),
                    )
                })
                .collect()
        };
        if let Some((alpha, res)) = newton_attempt(&start, eps, opts) {
            if in_canonical_region(&alpha) {
                return Ok(CriticalPoint { alpha, residual: res, region: vec![0; k0] });
            }
            out_of_region = true;
            best_res = best_res.min(res);
        }
    }
    if out_of_region && best_res <= opts.tol {
        return Err(Error::OutOfRegion);
    }
    Err(Error::NoConvergence { restarts: opts.restarts, best: best_res })
}

/// Seed and run the edge-weight sweep attached to a critical point
/// (theta = 0, so all p_j^n = 1). The seed lift depends on the first letter:
/// A_0 = 2 i alpha_{k0} and b_0 = a_1/a_0 resolved through the first move.
pub fn critical_to_edge_weights(cp: &CriticalPoint, word: &DiffeoWord) -> Result<EdgeWeightSweep> {
    let k0 = word.k0();
    assert_eq!(cp.alpha.len(), k0, "critical point size must match the word");
    let two_i = Complex64::new(0.0, 2.0);
    let a0 = LogLifted::from_log(two_i * cp.alpha[k0 - 1]);
    let b0 = LogLifted::from_log(match word.letters()[0] {
        Letter::L => -two_i * cp.alpha[0],
        Letter::R => two_i * (cp.alpha[0] - cp.alpha[k0 - 1]),
    });
    let sweep = run_sweep(word, a0, b0, [Complex64::new(0.0, 0.0); 4])?;
    sweep.require_periodic(1e-9)?;
    Ok(sweep)
}

/// Volume of the mapping torus at a critical point, as the Bloch-Wigner sum
/// over tetrahedron shapes, cross-checkable against Im f.
pub fn volume_at(cp: &CriticalPoint, eps: &EpsilonSignature) -> Result<VolumeReport> {
    let k0 = cp.alpha.len();
    let mut per_tet = Vec::with_capacity(k0);
    for (k, a) in cp.alpha.iter().enumerate() {
        let shape = -(Complex64::new(0.0, -2.0) * a).exp();
        if shape.norm() < 1e-14 || (shape - 1.0).norm() < 1e-14 {
            return Err(Error::DegenerateShape(k));
        }
        per_tet.push(2.0 * bloch_wigner(shape)?);
    }
    let volume: f64 = per_tet.iter().sum();
    let eps = eps_of_len(eps, k0)?;
    let im_f = potential_f(&cp.alpha, eps)?.im;
    let hessdet = hess_f(&cp.alpha, eps)?.determinant();
    let v3 = bloch_wigner(Complex64::from_polar(1.0, PI / 3.0))?;
    Ok(VolumeReport {
        volume,
        per_tet,
        hessdet,
        im_f,
        satisfies_hypothesis: volume > 2.0 * (k0 as f64 - 1.0) * v3,
    })
}

fn eps_of_len(eps: &EpsilonSignature, k0: usize) -> Result<&EpsilonSignature> {
    if eps.len() != k0 {
        return Err(Error::Domain("epsilon signature length mismatch"));
    }
    Ok(eps)
}

/// The factored corner sum sum_J g_n(alpha + pi J) over J in {0,1}^{k0}.
///
/// Each corner weight factorizes: with
/// w_k = e^{-(V_k + V^_k)/2} (1 - i^n e^{U_k/2}) (1 - i^n e^{U^_k/2}) and
/// s_k = (-1)^{l1_hat [k=1] + l2_hat [k=k0]}, the sum is
/// C prod_k (1 + s_k w_k) where C collects the J-independent factors.
pub fn gsum_at(cp: &CriticalPoint, sweep: &EdgeWeightSweep, n: usize) -> Result<Complex64> {
    if n.is_multiple_of(2) {
        return Err(Error::BadOrder(n as i64));
    }
    let k0 = cp.alpha.len();
    let i_pow_n = match n % 4 {
        1 => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut value = (Complex64::new(0.0, 1.0) * l_map(&cp.alpha, sweep.l1_hat, sweep.l2_hat)).exp();
    for k in 0..k0 {
        let s = &sweep.steps[k];
        let alpha_k = cp.alpha[k];
        let base = (1.0 + (Complex64::new(0.0, -2.0) * alpha_k).exp()) / 2.0;
        let exponent = 1.0 - (s.u + s.u_hat) / Complex64::new(0.0, 4.0 * PI);
        value *= (exponent * base.ln()).exp();
        value *= (-alpha_k * (s.v + s.v_hat) / (2.0 * PI)).exp();
        let w = (-(s.v + s.v_hat) / 2.0).exp()
            * (1.0 - i_pow_n * (s.u / 2.0).exp())
            * (1.0 - i_pow_n * (s.u_hat / 2.0).exp());
        let mut sign = 1.0;
        if k == 0 && sweep.l1_hat.rem_euclid(2) == 1 {
            sign = -sign;
        }
        if k == k0 - 1 && sweep.l2_hat.rem_euclid(2) == 1 {
            sign = -sign;
        }
        value *= 1.0 + sign * w;
    }
    Ok(value)
}
