//! Continuous first-order logic over finite metric structures.
//!
//! Sentences take truth values in `[0, 1]` (with `0` read as "true") and are
//! evaluated exactly over rational-valued finite structures. Consequence is
//! checked relative to an explicit finite [`ModelFamily`]; on top of that the
//! [`interp`] module builds and verifies weak and strong interpolants.

pub mod interp;
pub mod logic;
pub mod semantics;
pub mod textio;

pub use interp::{
    check_uniform_cauchy, combinator_sentence, combinator_value, halve_adjust, rho_from_gamma,
    search_weak_interpolant, separation_sentence, strong_from_weak, strong_limit_sequence,
    weak_limit_sequence, DyadicLevel, InterpError, SearchBudget, WeakFamily, WeakProvider,
};
pub use logic::{
    dot_minus, dot_plus, free_variables, scale_div_clamp, vocabulary_of, Formula, LogicError,
    Sentence, Symbol, SymbolKind, Term, Vocabulary,
};
pub use semantics::{
    check_structure, evaluate, family_consistent, family_entails_ge, family_models,
    is_strong_interpolant, is_weak_interpolant, reduct, Assignment, Certificate, Element,
    InterpolationProblem, ModelFamily, SemanticsError, Structure, StructureBuilder,
    StructureReport, Theory,
};

/// Exact truth values and parameters.
pub type Rational = num_rational::BigRational;

/// `num/den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
