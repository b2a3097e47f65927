use crate::rational::Rational;

/// Errors shared by the whole crate.
///
/// Structural errors (`MalformedWord`, `NotATree`, ...) come from parsing and
/// forest surgery; the remaining variants are raised by algebraic operations
/// whose preconditions are data dependent and therefore checked at runtime.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Parentheses do not balance, or a closing parenthesis appears too early.
    #[error("malformed parentheses word {0:?}")]
    MalformedWord(String),

    /// A forest literal contains something other than parentheses.
    #[error("illegal character {ch:?} in forest literal")]
    IllegalCharacter { ch: char },

    /// A single tree was required but the word has a different number of roots.
    #[error("expected a single tree, found a forest with {roots} roots")]
    NotATree { roots: usize },

    /// The empty forest has no magma factorization.
    #[error("the empty forest cannot be split")]
    EmptyForest,

    /// Binary operations require both operands to share one truncation order.
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// A series exponential/logarithm was given the wrong constant term.
    /// Boxed: rationals are wide and this sits in every `Result` in the crate.
    #[error("constant term must be {expected}, found {found}")]
    BadConstantTerm { expected: Box<Rational>, found: Box<Rational> },

    /// Strict mode only: a substitution datum failed the infinitesimal check.
    #[error("substitution datum is not an infinitesimal character")]
    NotInfinitesimal,

    /// The substitution base is not first-order consistent.
    #[error("base series must have coefficient 1 on the single-vertex tree")]
    NotConsistent,

    /// The substitution solver's re-substitution check failed.
    #[error("no solution: target is not a substitution image of the base")]
    NoSolution,

    /// A series does not satisfy the invariant of the claimed flow representation.
    #[error("series is not a valid {0} representation")]
    BadRepresentation(&'static str),

    /// A JSON document could not be decoded into the requested value.
    #[error("invalid JSON input: {0}")]
    InvalidJson(String),
}

pub type Result<T> = std::result::Result<T, Error>;
