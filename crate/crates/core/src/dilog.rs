//! Special functions: Chebyshev polynomials, the complex dilogarithm,
//! Bloch-Wigner and Lobachevsky functions, and the discrete quantum
//! dilogarithm at a root of unity.
//!
//! The dilogarithm is the principal branch of
//!
//! ```text
//! li2(z) = -∫_0^z log(1-t)/t dt,
//! ```
//!
//! evaluated through the Bernoulli series in u = -log(1-z) after mapping the
//! argument into the unit disk with Re z <= 1/2 (inversion and reflection).
//! On the cut [1, ∞) values are the limit from below.
//!
//! `QDL^q(u,v|j) = v^{-j} ∏_{k=1..j} (1 + u q^{-2k})` is the discrete quantum
//! dilogarithm; only the modulus of the cyclic product `D^q(u) = ∏_j QDL(u,v|j)`
//! enters the trace normalization, so `dq_modulus_root` accumulates logs and
//! never chooses a phase.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A primitive n-th root of unity q = exp(2 pi i / n), n odd, with a power cache.
#[derive(Debug, Clone)]
pub struct QRoot {
    n: usize,
    pows: Vec<Complex64>,
}

impl QRoot {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::BadOrder(n as i64));
        }
        let pows = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        Ok(QRoot { n, pows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> Complex64 {
        self.pows[1]
    }

    /// q^e for any integer exponent, reduced mod n.
    pub fn pow(&self, e: i64) -> Complex64 {
        self.pows[e.rem_euclid(self.n as i64) as usize]
    }
}

/// Normalized Chebyshev polynomial T_m with T_0 = 2, T_1 = x, satisfying
/// T_m(t + 1/t) = t^m + t^{-m}.
pub fn chebyshev_eval(m: u32, x: Complex64) -> Complex64 {
    match m {
        0 => Complex64::new(2.0, 0.0),
        1 => x,
        _ => {
            let mut prev = Complex64::new(2.0, 0.0);
            let mut cur = x;
            for _ in 2..=m {
                let next = x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

// Bernoulli-series coefficients for li2 in u = -log(1-z):
// li2 = u + bf[0] u^2 + bf[1] u^3 + bf[2] u^5 + bf[3] u^7 + ...
const BF: [f64; 10] = [
    -1.0 / 4.0,
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211_680.0,
    -1.0 / 10_886_400.0,
    1.0 / 526_901_760.0,
    -4.064_761_645_144_225_5e-11,
    8.921_691_020_456_452e-13,
    -1.993_929_586_072_107_6e-14,
    4.518_980_029_619_918e-16,
];

fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut odd = Complex64::new(BF[9], 0.0);
    for k in (2..9).rev() {
        odd = odd * u2 + BF[k];
    }
    u + u2 * (BF[0] + u * BF[1]) + u2 * u2 * u * odd
}

fn bernoulli_series_real(u: f64) -> f64 {
    let u2 = u * u;
    let mut odd = BF[9];
    for k in (2..9).rev() {
        odd = odd * u2 + BF[k];
    }
    u + u2 * (BF[0] + u * BF[1]) + u2 * u2 * u * odd
}

/// Real dilogarithm for x <= 1 (where li2 is real).
fn li2_real(x: f64) -> f64 {
    debug_assert!(x <= 1.0);
    if x == 1.0 {
        return PI * PI / 6.0;
    }
    if x < -1.0 {
        // inversion onto (-1, 0)
        let l = (-x).ln();
        return -li2_real(1.0 / x) - PI * PI / 6.0 - 0.5 * l * l;
    }
    if x <= 0.5 {
        return bernoulli_series_real(-(-x).ln_1p());
    }
    // reflection onto (0, 1/2)
    PI * PI / 6.0 - x.ln() * (1.0 - x).ln() - bernoulli_series_real(-x.ln())
}

/// Direct Taylor sum for |z| <= 0.01; full relative accuracy near the origin
/// where forming 1 - z would lose digits.
fn li2_taylor(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (1..=16u32).rev() {
        sum = sum * z + Complex64::new(1.0 / (k * k) as f64, 0.0);
    }
    sum * z
}

/// Principal-branch complex dilogarithm. On the cut [1, ∞) returns the
/// limit from below (negative imaginary part).
pub fn li2(z: Complex64) -> Complex64 {
    let rz = z.re;
    let iz = z.im;
    if iz == 0.0 {
        if rz <= 1.0 {
            return Complex64::new(li2_real(rz), 0.0);
        }
        // x > 1: Re from the inversion formula, Im from the lower side.
        let l = rz.ln();
        let re = PI * PI / 3.0 - 0.5 * l * l - li2_real(1.0 / rz);
        return Complex64::new(re, -PI * l);
    }
    let nz = z.norm_sqr();
    if nz <= 1e-4 {
        return li2_taylor(z);
    }
    let one = Complex64::new(1.0, 0.0);
    let pi2_6 = PI * PI / 6.0;
    let (u, rest, sgn) = if rz <= 0.5 {
        if nz > 1.0 {
            let l = (-z).ln();
            (-(one - one / z).ln(), -0.5 * l * l - pi2_6, -1.0)
        } else {
            (-(one - z).ln(), Complex64::new(0.0, 0.0), 1.0)
        }
    } else if nz <= 2.0 * rz {
        let u = -z.ln();
        (u, u * (one - z).ln() + pi2_6, -1.0)
    } else {
        let l = (-z).ln();
        (-(one - one / z).ln(), -0.5 * l * l - pi2_6, -1.0)
    };
    bernoulli_series(u) * sgn + rest
}

/// Bloch-Wigner dilogarithm D(z) = Im li2(z) + arg(1-z) ln|z|.
///
/// Real-analytic off {0, 1}; gives the volume of the ideal tetrahedron with
/// shape z when Im z > 0.
pub fn bloch_wigner(z: Complex64) -> Result<f64> {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain("bloch_wigner at z in {0, 1}"));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(li2(z).im + (one - z).arg() * z.norm().ln())
}

/// Lobachevsky function Lambda(theta) = -∫_0^theta log|2 sin t| dt,
/// extended to all of R by pi-periodicity. Computed as Im li2(e^{2 i theta})/2.
pub fn lobachevsky(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t == 0.0 {
        return 0.0;
    }
    let z = Complex64::from_polar(1.0, 2.0 * t);
    if z == Complex64::new(1.0, 0.0) {
        return 0.0;
    }
    0.5 * li2(z).im
}

/// Discrete quantum dilogarithm QDL^q(u, v | j) = v^{-j} ∏_{k=1..j} (1 + u q^{-2k}).
///
/// n-periodic in j exactly when v^n = 1 + u^n.
pub fn qdl_discrete(u: Complex64, v: Complex64, j: u32, root: &QRoot) -> Result<Complex64> {
    if v == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroV);
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 1..=j as i64 {
        prod *= 1.0 + u * root.pow(-2 * k);
    }
    Ok(v.powi(-(j as i32)) * prod)
}

/// All QDL^q(u, v | j) for j = 0..=n, sharing one running product.
pub(crate) fn qdl_table(u: Complex64, v: Complex64, root: &QRoot) -> Result<Vec<Complex64>> {
    if v == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroV);
    }
    let n = root.n();
    let vinv = 1.0 / v;
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex64::new(1.0, 0.0));
    let mut prod = Complex64::new(1.0, 0.0);
    let mut vpow = Complex64::new(1.0, 0.0);
    for j in 1..=n as i64 {
        prod *= 1.0 + u * root.pow(-2 * j);
        vpow *= vinv;
        out.push(vpow * prod);
    }
    Ok(out)
}

/// |D^q(u)|^{1/n} for D^q(u) = ∏_{j=1..n} QDL^q(u, v | j), as a positive real.
///
/// Logs are accumulated so the doubly-exponential product never overflows.
pub fn dq_modulus_root(u: Complex64, v: Complex64, root: &QRoot) -> Result<f64> {
    if v == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroV);
    }
    let n = root.n();
    let un = u.powi(n as i32);
    if (1.0 + un).norm() <= 1e-12 * un.norm().max(1.0) {
        return Err(Error::SingularU);
    }
    let ln_v = v.norm().ln();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut log_p = 0.0; // ln |prod_{k<=j} (1 + u q^{-2k})|
    let mut acc = 0.0;
    for j in 1..=n as i64 {
        prod *= 1.0 + u * root.pow(-2 * j);
        // keep the running product at unit modulus, log the rest
        let m = prod.norm();
        log_p += m.ln();
        prod /= m;
        acc += log_p - j as f64 * ln_v;
    }
    Ok((acc / n as f64).exp())
}

/// Closed-form n -> ∞ limit of |D^q(u) D^q(û)|^{1/n} along a fixed residue of
/// n mod 4, where u = q e^{-A/n} and û = q e^{-Â/n} (A, Â the edge-weight logs).
pub fn dq_limit_modulus(a: Complex64, a_hat: Complex64, n_mod_4: u8) -> Result<f64> {
    let quarter = |w: Complex64| w / 4.0;
    let ipi = Complex64::new(0.0, PI);
    let (num, den) = match n_mod_4 {
        1 => (
            quarter(a - ipi).cosh() * quarter(a_hat - ipi).cosh(),
            quarter(a + ipi).cosh() * quarter(a_hat + ipi).cosh(),
        ),
        3 => (
            quarter(a - ipi).sinh() * quarter(a_hat - ipi).sinh(),
            quarter(a + ipi).sinh() * quarter(a_hat + ipi).sinh(),
        ),
        _ => return Err(Error::Domain("n mod 4 must be 1 or 3")),
    };
    if den.norm() < 1e-300 {
        return Err(Error::Domain("vanishing hyperbolic denominator"));
    }
    let pref = 2.0_f64.powf(-(a.im + a_hat.im) / (4.0 * PI));
    Ok(pref * (num.norm() / den.norm()).powf(0.25))
}
