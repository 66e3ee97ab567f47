//! Guessing, checking and running linear recurrences with polynomial
//! coefficients. Everything here is exact integer or rational arithmetic.

mod guess;
mod nullspace;
mod poly;
mod recurrence;

use thiserror::Error;

pub use guess::{default_holdout, guess, required_terms, search_order};
pub use nullspace::integer_nullspace;
pub use poly::PolyInt;
pub use recurrence::{extend, verify, PRecurrence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomyError {
    #[error("need at least {need} terms, got {have}")]
    InsufficientTerms { have: usize, need: usize },
    #[error("seed has {have} terms, recurrence needs {need}")]
    InsufficientSeed { have: usize, need: usize },
    #[error("seed does not satisfy the recurrence")]
    InconsistentSeed,
    #[error("leading coefficient vanishes at n = {n}")]
    SingularLeadingCoefficient { n: usize },
    #[error("term {index} is not an integer; the recurrence is wrong for this sequence")]
    NonIntegerStep { index: usize },
    #[error("term {index} would be negative; the recurrence is wrong for this sequence")]
    NegativeTerm { index: usize },
    #[error("recurrence has a zero leading polynomial")]
    Degenerate,
    #[error("recurrence format: {0}")]
    Format(String),
}
