//! Interpolant constructions and checkers.
//!
//! * the aggregation combinator that turns a dyadic family of weak
//!   interpolants into a strong one ([`combinator_value`],
//!   [`combinator_sentence`], [`strong_from_weak`]);
//! * the normalization `min(γ/r, 1)` and the `θ ∸ ε/2` adjustment;
//! * separation sentences `1 ∸ (ρ/s)`;
//! * the two uniformly convergent interpolant sequences and a Cauchy-rate
//!   checker;
//! * a bounded enumeration search for weak interpolants over the common
//!   vocabulary.

mod combinator;
mod construct;
mod search;
mod strong;

use thiserror::Error;

use crate::logic::LogicError;
use crate::semantics::SemanticsError;
use crate::Rational;

pub use combinator::{combinator_sentence, combinator_value, DyadicLevel, WeakFamily};
pub use construct::{
    check_separation, check_uniform_cauchy, halve_adjust, rho_from_gamma, separation_scale,
    separation_sentence, strong_limit_sequence, weak_limit_sequence,
};
pub use search::{
    search_weak_interpolant, search_weak_interpolant_detailed, CandidateEnumerator, SearchBudget,
    SearchOutcome,
};
pub use strong::{
    check_weak_family, check_weak_member, strong_from_weak, strong_from_weak_eps, FixedProvider,
    SearchProvider, StrongOutcome, WeakClause, WeakProvider,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("entry {0} is outside [0, 1]")]
    EntryOutOfRange(Rational),
    #[error("weak family is at level {found}, expected level {expected}")]
    LevelMismatch { expected: u32, found: u32 },
    #[error("dyadic level {0} is too large")]
    LevelTooLarge(u32),
    #[error("{name} = {value} is outside (0, 1]")]
    ParameterOutOfRange { name: &'static str, value: Rational },
    #[error("need at least {needed} input sentences, found {found}")]
    InsufficientInputs { needed: usize, found: usize },
    #[error("hypothesis T_V ∪ T_W ⊨ φ ≥ ψ fails in `{model}`: φ = {phi}, ψ = {psi}")]
    HypothesisViolated {
        model: String,
        phi: Box<Rational>,
        psi: Box<Rational>,
    },
    #[error("weak family member {k} fails {clause} in `{model}` (value {value})")]
    ProviderFailure {
        k: usize,
        clause: WeakClause,
        model: String,
        value: Rational,
    },
    #[error("weak family member {k} uses `{symbol}`, outside the common vocabulary")]
    ProviderVocabulary { k: usize, symbol: String },
    #[error("search budget exhausted before finding weak family member {k}")]
    ProviderExhausted { k: usize },
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
}

pub(crate) fn unit_interval(name: &'static str, value: &Rational) -> Result<(), InterpError> {
    use num_traits::{One, Zero};
    if *value <= Rational::zero() || *value > Rational::one() {
        return Err(InterpError::ParameterOutOfRange { name, value: value.clone() });
    }
    Ok(())
}
