use thiserror::Error;

use crate::finset::Elem;

/// Every failure the engine can report.
///
/// Budget overruns are values like any other: law checks turn them into
/// skipped entries, constructions propagate them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch in {context}: expected a set of size {expected}, found {found}")]
    DomainMismatch { context: String, expected: Elem, found: Elem },

    #[error("size budget exceeded: {what} needs {size} elements, budget is {budget}")]
    SizeBudgetExceeded { what: String, size: String, budget: Elem },

    #[error("monad mismatch: {left} vs {right}")]
    MonadMismatch { left: String, right: String },

    #[error("type mismatch in {leg}: {detail}")]
    TypeMismatch { leg: String, detail: String },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: Elem, right: Elem },

    #[error("not an algebra: {0}")]
    NotAnAlgebra(String),

    #[error("not an algebra morphism: {0}")]
    NotAMorphism(String),

    #[error("not a bimorphism: {0}")]
    NotABimorphism(String),

    #[error("component {component} is not invertible: {detail}")]
    NotInvertible { component: String, detail: String },

    #[error("naturality square fails: {witness}")]
    NaturalitySquareFails { witness: String },

    #[error("Kleisli axiom {axiom} fails: {witness}")]
    KleisliAxiomFails { axiom: String, witness: String },

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid definition {definition}: {axiom} fails at {witness}")]
    Validation { definition: String, axiom: String, witness: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: String, name: String },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, size: impl ToString, budget: Elem) -> Self {
        Error::SizeBudgetExceeded {
            what: what.into(),
            size: size.to_string(),
            budget,
        }
    }

    /// A size that does not fit the 128-bit index space.
    pub fn unrepresentable(what: impl Into<String>, budget: Elem) -> Self {
        Error::budget(what, "more than 2^128", budget)
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SizeBudgetExceeded { .. })
    }

    pub fn mismatch(context: impl Into<String>, expected: Elem, found: Elem) -> Self {
        Error::DomainMismatch {
            context: context.into(),
            expected,
            found,
        }
    }

    pub fn type_mismatch(leg: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::TypeMismatch {
            leg: leg.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
