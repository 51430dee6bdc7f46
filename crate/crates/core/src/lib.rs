//! Quantum intertwiner traces for pseudo-Anosov diffeomorphisms of the
//! four-puncture sphere.
//!
//! The pipeline, module by module:
//!
//! - [`word`]: L/R diffeomorphism words and their sign signatures.
//! - [`dilog`]: dilogarithms, Bloch-Wigner, Lobachevsky, and the discrete
//!   quantum dilogarithm at q = e^{2 pi i/n}.
//! - [`cfrep`]: the standard n-dimensional representation of the quantized
//!   edge algebra, its q-commutation relations, and parameter transport
//!   under the two elementary moves.
//! - [`sweep`]: lifted edge-weight sweeps along a word, periodicity, and
//!   winding integers.
//! - [`intertwiner`]: the move intertwiners, the twist, and |tr| of their
//!   product, with a closed-form sum as an independent oracle.
//! - [`geometry`]: the holomorphic potential, Newton critical points, the
//!   hyperbolic volume of the mapping torus, and the corner g-sum.
//! - [`asympt`]: growth of log |tr| in n and the rate fit against Vol/4 pi.
//!
//! Data-parallel loops (one trace per n) go through [`exec::ExecMode`]; the
//! `parallel` feature (on by default) backs them with rayon, and the
//! sequential fallback computes identical bytes.

pub mod asympt;
pub mod cfrep;
pub mod dilog;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod intertwiner;
mod linalg;
pub mod report;
pub mod sweep;
pub mod word;

pub use dilog::QRoot;
pub use error::{Error, Result};
pub use word::{parse_word, DiffeoWord, Letter};
