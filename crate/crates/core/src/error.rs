use thiserror::Error;

/// Errors surfaced by the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty diffeomorphism word")]
    EmptyWord,
    #[error("word must contain both L and R (missing {0})")]
    MissingLetter(char),
    #[error("word syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("v must be nonzero in the discrete quantum dilogarithm")]
    ZeroV,
    #[error("u^n = -1: cyclic dilogarithm modulus is singular")]
    SingularU,
    #[error("function argument outside domain: {0}")]
    Domain(&'static str),

    #[error("factor 1 + q X^(+/-1) is numerically singular (condition {cond:.2e})")]
    SingularFactor { cond: f64 },
    #[error("degenerate edge weight: {0}")]
    DegenerateWeight(&'static str),

    #[error("edge weight hit -1 at sweep step {step}")]
    DegenerateEdge { step: usize },
    #[error("edge weight system is not periodic (residual {residual:.3e})")]
    NonPeriodic { residual: f64 },

    #[error("index sum n^k0 = {terms:.3e} exceeds the overflow guard")]
    Overflow { terms: f64 },

    #[error("log branch cut crossed: 1 + e^(-2 i alpha) on the negative real axis")]
    BranchCut,
    #[error("Newton did not converge after {restarts} restarts (best residual {best:.3e})")]
    NoConvergence { restarts: usize, best: f64 },
    #[error("critical point left the strip Re(alpha) in (0, pi/2)")]
    OutOfRegion,
    #[error("degenerate tetrahedron shape at index {0}")]
    DegenerateShape(usize),

    #[error("growth fit needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("n must be an odd integer >= 3, got {0}")]
    BadOrder(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
