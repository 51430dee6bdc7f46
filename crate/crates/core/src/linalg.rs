//! Small dense-matrix helpers shared across modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest entry modulus.
pub fn norm_inf(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise scalar multiple.
pub fn scale(m: &DMatrix<Complex64>, s: Complex64) -> DMatrix<Complex64> {
    m.map(|z| z * s)
}

/// Condition estimate from a computed inverse.
pub fn cond_inf(a: &DMatrix<Complex64>, a_inv: &DMatrix<Complex64>) -> f64 {
    norm_inf(a) * norm_inf(a_inv)
}
