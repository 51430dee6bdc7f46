//! The standard n-dimensional representation of the quantized edge algebra of
//! the four-puncture sphere, its defining q-commutation relations, the
//! coordinate-change isomorphisms for the two elementary moves, and the
//! induced transport of classifying parameters.
//!
//! The six generator images act on the basis w_1, ..., w_n (indices mod n) as
//! a scalar times a cyclic shift, so each generator is stored as a shift plus
//! a coefficient vector and its inverse comes from the closed-form entry
//! formulas rather than general matrix inversion.

use crate::dilog::QRoot;
use crate::error::{Error, Result};
use crate::linalg::{cond_inf, norm_inf, scale};
use crate::word::Letter;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Scalar data classifying a standard representation: x, y, the four puncture
/// weights p_1..p_4, and h with h^2 = p_1 p_2 p_3 p_4.
#[derive(Debug, Clone)]
pub struct RepParams {
    pub x: Complex64,
    pub y: Complex64,
    pub p: [Complex64; 4],
    pub h: Complex64,
    pub root: QRoot,
}

impl RepParams {
    pub fn new(
        x: Complex64,
        y: Complex64,
        p: [Complex64; 4],
        h: Complex64,
        root: QRoot,
    ) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y), ("h", h)] {
            if v == Complex64::new(0.0, 0.0) {
                let _ = name;
                return Err(Error::DegenerateWeight("zero representation parameter"));
            }
        }
        if p.iter().any(|w| *w == Complex64::new(0.0, 0.0)) {
            return Err(Error::DegenerateWeight("zero puncture weight"));
        }
        let prod = p[0] * p[1] * p[2] * p[3];
        if (h * h - prod).norm() > 1e-9 * prod.norm().max(1.0) {
            return Err(Error::DegenerateWeight("h^2 != p1 p2 p3 p4"));
        }
        Ok(RepParams { x, y, p, h, root })
    }

    /// Parameters from logarithmic puncture data: p_j = e^{theta_j / n} and
    /// h = e^{(theta_1 + ... + theta_4) / 2n}.
    pub fn from_puncture_logs(
        x: Complex64,
        y: Complex64,
        theta: [Complex64; 4],
        root: QRoot,
    ) -> Result<Self> {
        let n = root.n() as f64;
        let p = theta.map(|t| (t / n).exp());
        let h = ((theta[0] + theta[1] + theta[2] + theta[3]) / (2.0 * n)).exp();
        Self::new(x, y, p, h, root)
    }

    /// The classifying invariants a = x^n, b = y^n.
    pub fn classifying_invariants(&self) -> (Complex64, Complex64) {
        let n = self.root.n() as i32;
        (self.x.powi(n), self.y.powi(n))
    }
}

/// One generator image: w_i -> coeff[i-1] * w_{i+shift}, indices mod n.
#[derive(Debug, Clone)]
struct CyclicGen {
    shift: i64,
    coeffs: Vec<Complex64>,
}

impl CyclicGen {
    fn dense(&self, n: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(n, n);
        for i in 1..=n as i64 {
            let row = (i - 1 + self.shift).rem_euclid(n as i64) as usize;
            m[(row, (i - 1) as usize)] = self.coeffs[(i - 1) as usize];
        }
        m
    }

    /// Closed-form inverse: w_i -> coeff[i-shift-1]^{-1} * w_{i-shift}.
    fn dense_inverse(&self, n: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(n, n);
        for i in 1..=n as i64 {
            let src = (i - 1 - self.shift).rem_euclid(n as i64);
            m[(src as usize, (i - 1) as usize)] = 1.0 / self.coeffs[src as usize];
        }
        m
    }
}

/// The six generator images of a standard representation.
#[derive(Debug, Clone)]
pub struct GeneratorMatrices {
    n: usize,
    gens: [CyclicGen; 6],
}

impl GeneratorMatrices {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dense n x n matrices M_1..M_6.
    pub fn dense(&self) -> [DMatrix<Complex64>; 6] {
        std::array::from_fn(|g| self.gens[g].dense(self.n))
    }

    /// Dense inverses from the closed-form entry formulas.
    pub fn dense_inverses(&self) -> [DMatrix<Complex64>; 6] {
        std::array::from_fn(|g| self.gens[g].dense_inverse(self.n))
    }
}

/// Build the standard representation: M_1, M_4 diagonal, M_2, M_5 cyclic
/// raising, M_3, M_6 cyclic lowering.
pub fn build_standard_rep(params: &RepParams) -> GeneratorMatrices {
    let root = &params.root;
    let n = root.n();
    let (x, y, h) = (params.x, params.y, params.h);
    let [p1, p2, _p3, p4] = params.p;
    let coeffs = |f: &dyn Fn(i64) -> Complex64| (1..=n as i64).map(f).collect::<Vec<_>>();
    let gens = [
        CyclicGen { shift: 0, coeffs: coeffs(&|i| x * root.pow(2 * i)) },
        CyclicGen { shift: 1, coeffs: coeffs(&|i| y * root.pow(-i)) },
        CyclicGen { shift: -1, coeffs: coeffs(&|i| p1 / (x * y) * root.pow(-i)) },
        CyclicGen { shift: 0, coeffs: coeffs(&|i| x * root.pow(2 * i) * p4 * p2 / h) },
        CyclicGen { shift: 1, coeffs: coeffs(&|i| y * root.pow(-i) * h / (p1 * p2)) },
        CyclicGen { shift: -1, coeffs: coeffs(&|i| root.pow(-i) / (x * y) * h / p4 ) },
    ];
    GeneratorMatrices { n, gens }
}

/// The twelve q-commutation relations (i, j, sigma): X_i X_j = q^{2 sigma} X_j X_i.
pub const RELATIONS: [(usize, usize, i64); 12] = [
    (1, 2, 1),
    (2, 3, 1),
    (3, 5, -1),
    (1, 3, -1),
    (2, 4, -1),
    (4, 5, 1),
    (1, 5, 1),
    (2, 6, 1),
    (4, 6, -1),
    (1, 6, -1),
    (3, 4, 1),
    (5, 6, 1),
];

/// Max relative residual of the twelve q-commutation relations.
pub fn check_relations(mats: &[DMatrix<Complex64>; 6], root: &QRoot) -> f64 {
    let mut worst: f64 = 0.0;
    for &(a, b, s) in RELATIONS.iter() {
        let lhs = &mats[a - 1] * &mats[b - 1];
        let rhs = scale(&(&mats[b - 1] * &mats[a - 1]), root.pow(2 * s));
        worst = worst.max(norm_inf(&(&lhs - &rhs)) / norm_inf(&lhs));
    }
    worst
}

/// Max relative residual of the five central-element identities
/// q^{-1} M1 M2 M3 = p1, q M2 M4 M6 = p2, q^{-1} M1 M5 M6 = p3,
/// q^{-1} M3 M4 M5 = p4 and q^{-2} M1 M2 M3 M4 M5 M6 = h.
pub fn check_central_elements(mats: &[DMatrix<Complex64>; 6], params: &RepParams) -> f64 {
    let root = &params.root;
    let n = root.n();
    let id = DMatrix::<Complex64>::identity(n, n);
    let m = |g: usize| &mats[g - 1];
    let cases: [(DMatrix<Complex64>, Complex64); 5] = [
        (scale(&(m(1) * m(2) * m(3)), root.pow(-1)), params.p[0]),
        (scale(&(m(2) * m(4) * m(6)), root.pow(1)), params.p[1]),
        (scale(&(m(1) * m(5) * m(6)), root.pow(-1)), params.p[2]),
        (scale(&(m(3) * m(4) * m(5)), root.pow(-1)), params.p[3]),
        (
            scale(&(m(1) * m(2) * m(3) * m(4) * m(5) * m(6)), root.pow(-2)),
            params.h,
        ),
    ];
    cases
        .iter()
        .map(|(mat, s)| norm_inf(&(mat - scale(&id, *s))) / s.norm())
        .fold(0.0, f64::max)
}

/// Max relative residual of the dependent-edge identities
/// M3 = q p1 M2^{-1} M1^{-1}, M4 = p4 p2 h^{-1} M1, M5 = h p1^{-1} p2^{-1} M2,
/// M6 = q h p4^{-1} M2^{-1} M1^{-1}.
pub fn check_dependent_edges(g: &GeneratorMatrices, params: &RepParams) -> f64 {
    let root = &params.root;
    let q = root.pow(1);
    let mats = g.dense();
    let inv = g.dense_inverses();
    let [p1, p2, _p3, p4] = params.p;
    let h = params.h;
    let cases = [
        (&mats[2], scale(&(&inv[1] * &inv[0]), q * p1)),
        (&mats[3], scale(&mats[0], p4 * p2 / h)),
        (&mats[4], scale(&mats[1], h / (p1 * p2))),
        (&mats[5], scale(&(&inv[1] * &inv[0]), q * h / p4)),
    ];
    cases
        .iter()
        .map(|(lhs, rhs)| norm_inf(&(*lhs - rhs)) / norm_inf(lhs))
        .fold(0.0, f64::max)
}

/// Invert I + q M, erroring when the factor is numerically singular.
fn invert_factor(m: &DMatrix<Complex64>, q: Complex64) -> Result<DMatrix<Complex64>> {
    let n = m.nrows();
    let a = DMatrix::<Complex64>::identity(n, n) + scale(m, q);
    let inv = a
        .clone()
        .try_inverse()
        .ok_or(Error::SingularFactor { cond: f64::INFINITY })?;
    let cond = cond_inf(&a, &inv);
    if cond > 1e12 {
        return Err(Error::SingularFactor { cond });
    }
    Ok(inv)
}

/// The six images rho(L(X_i)) or rho(R(X_i)) under the coordinate-change
/// isomorphism of one elementary move, products taken in the written order.
pub fn apply_iso(
    g: &GeneratorMatrices,
    mv: Letter,
    root: &QRoot,
) -> Result<[DMatrix<Complex64>; 6]> {
    let q = root.pow(1);
    let mats = g.dense();
    let inv = g.dense_inverses();
    let n = g.n();
    let id = DMatrix::<Complex64>::identity(n, n);
    // (a, b) = edges flipped by the move: (X2, X5) for L, (X3, X6) for R
    let (a, b) = match mv {
        Letter::L => (2usize, 5usize),
        Letter::R => (3usize, 6usize),
    };
    let grow = (&id + scale(&mats[a - 1], q)) * (&id + scale(&mats[b - 1], q));
    let shrink = invert_factor(&inv[a - 1], q)? * invert_factor(&inv[b - 1], q)?;
    Ok(match mv {
        Letter::L => [
            inv[1].clone(),          // L(X1) = X2^{-1}
            &grow * &mats[3],        // L(X2) = (1+qX2)(1+qX5) X4
            &shrink * &mats[2],      // L(X3) = (1+qX2^{-1})^{-1}(1+qX5^{-1})^{-1} X3
            inv[4].clone(),          // L(X4) = X5^{-1}
            &grow * &mats[0],        // L(X5) = (1+qX2)(1+qX5) X1
            &shrink * &mats[5],      // L(X6) = (1+qX2^{-1})^{-1}(1+qX5^{-1})^{-1} X6
        ],
        Letter::R => [
            inv[2].clone(),          // R(X1) = X3^{-1}
            &grow * &mats[1],        // R(X2) = (1+qX3)(1+qX6) X2
            &shrink * &mats[3],      // R(X3) = (1+qX3^{-1})^{-1}(1+qX6^{-1})^{-1} X4
            inv[5].clone(),          // R(X4) = X6^{-1}
            &grow * &mats[4],        // R(X5) = (1+qX3)(1+qX6) X5
            &shrink * &mats[0],      // R(X6) = (1+qX3^{-1})^{-1}(1+qX6^{-1})^{-1} X1
        ],
    })
}

/// The per-move scalars (u, v, u_hat, v_hat) entering the intertwiner, with
/// v, v_hat the principal n-th roots of 1 + u^n and 1 + u_hat^n.
#[derive(Debug, Clone, Copy)]
pub struct Transport {
    pub u: Complex64,
    pub v: Complex64,
    pub u_hat: Complex64,
    pub v_hat: Complex64,
}

fn principal_nth_root(w: Complex64, n: usize) -> Complex64 {
    Complex64::from_polar(w.norm().powf(1.0 / n as f64), w.arg() / n as f64)
}

/// Transport the classifying parameters across one move. The puncture weight
/// p_3 never changes.
pub fn transport_params(params: &RepParams, mv: Letter) -> Result<(RepParams, Transport)> {
    let root = &params.root;
    let n = root.n();
    let q = root.pow(1);
    let (x, y, h) = (params.x, params.y, params.h);
    let [p1, p2, p3, p4] = params.p;
    let nearly_minus_one =
        |w: Complex64| (1.0 + w).norm() <= 1e-12 * w.norm().max(1.0);
    let (u, u_hat, x2, p_new) = match mv {
        Letter::L => {
            let yn = y.powi(n as i32);
            let hp = (h / (p1 * p2)).powi(n as i32) * yn;
            if nearly_minus_one(yn) || nearly_minus_one(hp) {
                return Err(Error::DegenerateWeight("edge weight hit -1 under L"));
            }
            (q * y, q * h / (p1 * p2) * y, 1.0 / y, [p4, p2, p3, p1])
        }
        Letter::R => {
            let un = (p1 / (x * y)).powi(n as i32);
            let uhn = (h / (p4 * x * y)).powi(n as i32);
            if nearly_minus_one(un) || nearly_minus_one(uhn) {
                return Err(Error::DegenerateWeight("edge weight hit -1 under R"));
            }
            (q * p1 / (x * y), q * h / (p4 * x * y), x * y / p1, [p2, p1, p3, p4])
        }
    };
    let v = principal_nth_root(1.0 + u.powi(n as i32), n);
    let v_hat = principal_nth_root(1.0 + u_hat.powi(n as i32), n);
    let y2 = match mv {
        Letter::L => v * v_hat * p2 * p4 / h * x,
        Letter::R => v * v_hat * y,
    };
    let out = RepParams::new(x2, y2, p_new, h, root.clone())?;
    Ok((out, Transport { u, v, u_hat, v_hat }))
}
