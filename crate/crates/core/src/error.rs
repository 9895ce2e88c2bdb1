use thiserror::Error;

/// Errors raised by the lattice, modular-data and invariant computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid simple type {series}{rank}: {constraint}")]
    InvalidType {
        series: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("Weyl group has {order} elements, above the configured cap of {cap}")]
    WeylCapExceeded { order: u64, cap: usize },

    #[error("level k = {k} must exceed the dual Coxeter number {dual_coxeter}")]
    LevelTooLow { k: i64, dual_coxeter: i64 },

    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),

    #[error("weight {weight} is not in the level-{k} label set")]
    NotInLevelSet { weight: String, k: i64 },

    #[error("weight {0} lies on an affine wall")]
    OnAffineWall(String),

    #[error("state sum needs about {estimate:.3e} terms, above the budget of {budget}")]
    TermBudgetExceeded { estimate: f64, budget: u64 },

    #[error("invalid torus knot: {0}")]
    InvalidKnot(String),

    #[error("invalid link: {0}")]
    InvalidLink(String),

    #[error("link file line {line}: {message}")]
    LinkParse { line: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("{what}: residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    Numerical {
        what: String,
        residual: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
