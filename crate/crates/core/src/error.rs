use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {left:?} cannot be composed with {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },

    #[error("consecutive differentials do not compose to zero{}", location(.degree, .q))]
    CompositionNonzero { degree: Option<i64>, q: Option<i64> },

    #[error("differential does not preserve the q-grading at degree {degree}")]
    GradingBroken { degree: i64 },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("polynomial {0} is not monic of positive degree")]
    NotMonic(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("algebra carries no Frobenius structure")]
    NotFrobenius,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

fn location(degree: &Option<i64>, q: &Option<i64>) -> String {
    match (degree, q) {
        (Some(d), Some(q)) => format!(" at degree {d}, q-degree {q}"),
        (Some(d), None) => format!(" at degree {d}"),
        _ => String::new(),
    }
}
