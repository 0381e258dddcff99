use num_bigint::BigUint;
use thiserror::Error;

use crate::model::{Diagnostic, VarRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("malformed fraction `{0}`")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("family `{name}` must have count >= 1 and cardinality >= 1 (got count {count}, cardinality {cardinality})")]
    EmptyFamily { name: String, count: usize, cardinality: u32 },
    #[error("family `{0}` declared more than once")]
    DuplicateFamily(String),
    #[error("`{0}` does not name a draw in this outcome; validate the expression first")]
    UnresolvedVar(VarRef),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("expression is invalid for this space: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("space has {size} outcomes, above the enumeration cap of {cap}; use Monte Carlo estimation instead")]
    SpaceTooLarge { size: BigUint, cap: u64 },
    #[error("binomial term needs k <= n (got k = {k}, n = {n})")]
    BinomialRange { k: u64, n: u64 },
    #[error("success probability must lie in [0, 1]")]
    NotAProbability,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("event `{name}` is invalid for this space: {}", join(.diagnostics))]
    Invalid { name: String, diagnostics: Vec<Diagnostic> },
    #[error("trials and batch_size must both be at least 1")]
    BadConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmbiguityError {
    #[error("at least one atom is required")]
    EmptyAtoms,
    #[error("`{0}` is not an atomic comparison")]
    NotAnAtom(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn join(diagnostics: &[Diagnostic]) -> String {
    diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}
