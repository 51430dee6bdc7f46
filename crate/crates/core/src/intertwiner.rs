//! Intertwiner matrices for the elementary moves, the twist closing up the
//! mapping torus, and the trace of their product.
//!
//! Entries of the move intertwiners are
//!
//! ```text
//! (Lam_L)_{i,j} = q^{(j^2 - i^2 + 4ij + i - j)/2} QDL(u,v|j) QDL(u^,v^|j) / N
//! (Lam_R)_{i,j} = q^{(3j^2 + i^2 - 4ij + i - j)/2} QDL(u,v|j) QDL(u^,v^|j) / N
//! ```
//!
//! with N = sqrt(n) |D^q(u) D^q(u^)|^{1/n}. The q-exponents are even integers
//! (j^2 - j and i^2 - i are even), so no fractional powers of q ever appear;
//! the phase of D^q is dropped because only |tr| is reported. The matrix
//! product Lam_1 ... Lam_k0 T is the canonical value of the invariant; the
//! closed-form multi-index sum is kept as an independent oracle for it.

use crate::cfrep::{apply_iso, build_standard_rep, transport_params, RepParams};
use crate::dilog::{dq_modulus_root, qdl_table, QRoot};
use crate::error::{Error, Result};
use crate::linalg::norm_inf;
use crate::sweep::EdgeWeightSweep;
use crate::word::Letter;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// How loose a sweep may be before the trace refuses to run on it.
const PERIODICITY_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    LambdaL,
    LambdaR,
    Twist,
    Product,
}

/// A dense n x n intertwiner factor.
#[derive(Debug, Clone)]
pub struct IntertwinerMatrix {
    pub entries: DMatrix<Complex64>,
    pub kind: MatrixKind,
    /// The applied normalization factor 1/(sqrt(n) |D^q(u) D^q(u^)|^{1/n}),
    /// or 1 for twist matrices.
    pub normalization: f64,
}

fn check_root_constraint(u: Complex64, v: Complex64, n: usize) -> Result<()> {
    let un = u.powi(n as i32);
    if (1.0 + un).norm() <= 1e-12 * un.norm().max(1.0) {
        return Err(Error::SingularU);
    }
    let vn = v.powi(n as i32);
    if (vn - (1.0 + un)).norm() > 1e-10 * (1.0 + un).norm() {
        return Err(Error::Domain("v^n != 1 + u^n"));
    }
    Ok(())
}

/// Intertwiner of one elementary move from its scalars.
pub fn lambda_matrix(
    mv: Letter,
    u: Complex64,
    v: Complex64,
    u_hat: Complex64,
    v_hat: Complex64,
    root: &QRoot,
) -> Result<IntertwinerMatrix> {
    let n = root.n();
    check_root_constraint(u, v, n)?;
    check_root_constraint(u_hat, v_hat, n)?;
    let norm = 1.0
        / ((n as f64).sqrt() * dq_modulus_root(u, v, root)? * dq_modulus_root(u_hat, v_hat, root)?);
    let qd_u = qdl_table(u, v, root)?;
    let qd_hat = qdl_table(u_hat, v_hat, root)?;
    let mut entries = DMatrix::zeros(n, n);
    for c in 0..n {
        let j = (c + 1) as i64;
        let col = qd_u[j as usize] * qd_hat[j as usize] * norm;
        for r in 0..n {
            let i = (r + 1) as i64;
            let e2 = match mv {
                Letter::L => j * j - i * i + 4 * i * j + i - j,
                Letter::R => 3 * j * j + i * i - 4 * i * j + i - j,
            };
            debug_assert_eq!(e2 % 2, 0);
            entries[(r, c)] = root.pow(e2 / 2) * col;
        }
    }
    Ok(IntertwinerMatrix {
        entries,
        kind: match mv {
            Letter::L => MatrixKind::LambdaL,
            Letter::R => MatrixKind::LambdaR,
        },
        normalization: norm,
    })
}

/// Twist matrix T_{i,j} = q^{-2 j l2 - j l1} delta_{i, j + l1}, indices mod n.
pub fn twist_matrix(l1: i64, l2: i64, root: &QRoot) -> IntertwinerMatrix {
    let n = root.n();
    let mut entries = DMatrix::zeros(n, n);
    for c in 0..n {
        let j = (c + 1) as i64;
        let r = (c as i64 + l1).rem_euclid(n as i64) as usize;
        entries[(r, c)] = root.pow(-2 * j * l2 - j * l1);
    }
    IntertwinerMatrix {
        entries,
        kind: MatrixKind::Twist,
        normalization: 1.0,
    }
}

/// The per-step intertwiner factors Lam_1 .. Lam_k0 of a periodic sweep.
fn lambda_factors(sweep: &EdgeWeightSweep, root: &QRoot) -> Result<Vec<IntertwinerMatrix>> {
    (1..=sweep.k0())
        .map(|k| {
            let sc = sweep.step_scalars(k, root);
            lambda_matrix(sweep.word.letters()[k - 1], sc.u, sc.v, sc.u_hat, sc.v_hat, root)
        })
        .collect()
}

/// tr(Lam_1 ... Lam_k0 T) by dense products; the canonical value.
pub fn trace_product(sweep: &EdgeWeightSweep, root: &QRoot) -> Result<Complex64> {
    sweep.require_periodic(PERIODICITY_GUARD)?;
    let factors = lambda_factors(sweep, root)?;
    let mut prod = factors[0].entries.clone();
    for f in &factors[1..] {
        prod = &prod * &f.entries;
    }
    let (l1, l2) = sweep.twist_exponents(root.n());
    let t = twist_matrix(l1, l2, root);
    Ok((&prod * &t.entries).diagonal().sum())
}

/// The closed-form multi-index sum for the same trace, used as an oracle for
/// `trace_product`. Only |A_n| enters the normalization; the overall phase of
/// the invariant is not defined by this route.
pub fn trace_sum_formula(sweep: &EdgeWeightSweep, root: &QRoot) -> Result<Complex64> {
    sweep.require_periodic(PERIODICITY_GUARD)?;
    let n = root.n();
    let k0 = sweep.k0();
    let terms = (n as f64).powi(k0 as i32);
    if terms > 1e8 {
        return Err(Error::Overflow { terms });
    }
    let eps = sweep.word.epsilon_signature();
    // per-step QDL(u,v|j) QDL(u^,v^|j) tables and the |A_n| normalization
    let mut qd = Vec::with_capacity(k0);
    let mut log_norm = -(k0 as f64) * 0.5 * (n as f64).ln();
    for k in 1..=k0 {
        let sc = sweep.step_scalars(k, root);
        check_root_constraint(sc.u, sc.v, n)?;
        check_root_constraint(sc.u_hat, sc.v_hat, n)?;
        let tu = qdl_table(sc.u, sc.v, root)?;
        let th = qdl_table(sc.u_hat, sc.v_hat, root)?;
        qd.push((0..=n).map(|j| tu[j] * th[j]).collect::<Vec<_>>());
        log_norm -= dq_modulus_root(sc.u, sc.v, root)?.ln();
        log_norm -= dq_modulus_root(sc.u_hat, sc.v_hat, root)?.ln();
    }
    let (l1, l2) = sweep.twist_exponents(n);

    let mut idx = vec![1i64; k0];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let i_last = idx[k0 - 1];
        let i0 = i_last - l1;
        let mut e2 = 2 * (-2 * i0 * l2 - i0 * l1);
        let mut amp = Complex64::new(1.0, 0.0);
        let mut prev = i0;
        for k in 0..k0 {
            let ik = idx[k];
            e2 += 2 * ik * ik + prev - ik
                + eps.at(k) as i64 * (ik * ik + prev * prev - 4 * prev * ik);
            amp *= qd[k][ik as usize];
            prev = ik;
        }
        debug_assert_eq!(e2 % 2, 0);
        total += root.pow(e2 / 2) * amp;
        // odometer over {1..n}^{k0}
        let mut pos = 0;
        loop {
            if pos == k0 {
                return Ok(total * log_norm.exp());
            }
            idx[pos] += 1;
            if idx[pos] <= n as i64 {
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
    }
}

/// Residual of the defining conjugation identity of one move: the image
/// representation composed with the move equals Lam (transported rep) Lam^{-1}.
pub fn conjugation_residual(params: &RepParams, mv: Letter) -> Result<f64> {
    let root = &params.root;
    let g = build_standard_rep(params);
    let images = apply_iso(&g, mv, root)?;
    let (after, tr) = transport_params(params, mv)?;
    let lam = lambda_matrix(mv, tr.u, tr.v, tr.u_hat, tr.v_hat, root)?;
    let after_mats = build_standard_rep(&after).dense();
    let lam_norm = norm_inf(&lam.entries);
    let mut worst: f64 = 0.0;
    for gidx in 0..6 {
        let lhs = &images[gidx] * &lam.entries;
        let rhs = &lam.entries * &after_mats[gidx];
        let denom = lam_norm * norm_inf(&after_mats[gidx]);
        worst = worst.max(norm_inf(&(&lhs - &rhs)) / denom);
    }
    Ok(worst)
}
