//! Exact evaluation in finite structures, metric validation, reducts, and
//! consequence relative to a finite model family.
//!
//! Every `⊨`-style check here quantifies over the members of a
//! [`ModelFamily`] only. Results are therefore family-relative certificates,
//! not claims about all metric structures.

mod certificate;
mod check;
mod eval;
mod family;
mod structure;

use thiserror::Error;

use crate::logic::LogicError;
use crate::Rational;

pub use certificate::{Certificate, CertificateKind, ClauseResult, Counterexample};
pub use check::{check_structure, StructureReport, Violation, ViolationKind};
pub use eval::{evaluate, Assignment};
pub use family::{
    family_consistent, family_entails_ge, family_models, is_strong_interpolant,
    is_weak_interpolant, Entailment, InterpolationProblem, ModelFamily, Theory,
};
pub use structure::{reduct, tuples, Element, Structure, StructureBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("symbol `{0}` is not interpreted in the structure")]
    MissingSymbol(String),
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("`{name}` applied to {found} arguments, arity is {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("universe must be nonempty")]
    EmptyUniverse,
    #[error("duplicate universe element `{0}`")]
    DuplicateElement(String),
    #[error("unknown universe element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} is outside the universe")]
    ElementOutOfRange(usize),
    #[error("value {value} for `{symbol}` is outside [0, 1]")]
    ValueOutOfRange { symbol: String, value: Rational },
    #[error("distance from `{0}` to itself must be 0")]
    NonzeroDiagonal(String),
    #[error("missing table entry for `{symbol}` at ({})", .tuple.join(", "))]
    MissingTableEntry { symbol: String, tuple: Vec<String> },
    #[error("symbol `{0}` was not declared")]
    UndeclaredSymbol(String),
    #[error("symbol `{0}` is not present in the structure's vocabulary")]
    SymbolNotPresent(String),
    #[error("vocabulary mismatch: {0}")]
    VocabularyMismatch(String),
    #[error("duplicate structure name `{0}` in family")]
    DuplicateMember(String),
    #[error("epsilon {0} is outside (0, 1]")]
    EpsilonOutOfRange(Rational),
    #[error("interpolant mentions `{0}`, which is outside the common vocabulary")]
    CommonVocabularyViolation(String),
}
