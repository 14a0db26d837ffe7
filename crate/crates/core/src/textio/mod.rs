//! Text formats: sentences (`.csnt`), structures (`.cstr`), family manifests
//! (`.cfam`), theories and weak-family files, plus the canonical printer.
//!
//! Sentence grammar, tightest binding first:
//!
//! ```text
//! formula  := ('sup' | 'inf') VAR '.' formula | additive
//! additive := scaled (('-.' | '+.') scaled)*          left-associative
//! scaled   := product ('/.' RAT)*                     min(f / q, 1)
//! product  := unary ('*' unary)*
//! unary    := '~' unary | primary                     1 - f
//! primary  := RAT | '(' formula ')' | 'min' '(' formula ',' formula ')'
//!           | 'max' '(' formula ',' formula ')' | IDENT '(' terms ')' | IDENT
//!           | ('sup' | 'inf') VAR '.' formula
//! term     := IDENT | IDENT '(' terms ')'
//! RAT      := INT | INT '/' INT
//! ```
//!
//! A bare identifier in term position is a variable when an enclosing
//! quantifier binds it and a constant symbol otherwise; `c()` always means
//! the constant symbol.

mod files;
mod lexer;
mod sentence;
mod structure;

use std::fmt;

use thiserror::Error;

use crate::logic::LogicError;
use crate::semantics::SemanticsError;

pub use files::{parse_sentence_file, parse_theory, parse_weak_family, print_theory, print_weak_family};
pub use lexer::parse_rational;
pub use sentence::{
    parse_formula, parse_sentence, parse_sentence_in, print_formula, print_sentence,
};
pub use structure::{
    load_family, parse_family, parse_family_with, parse_structure, print_structure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("`{name}` expects {expected} arguments, found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("constant {0} is outside [0, 1]")]
    ConstantOutOfRange(String),
    #[error("free variable `{0}`")]
    FreeVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown universe element `{0}`")]
    UnknownElement(String),
    #[error("duplicate structure name `{0}`")]
    DuplicateStructure(String),
    #[error("{0}")]
    Logic(LogicError),
    #[error("{0}")]
    Semantics(Box<SemanticsError>),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

/// A rejection with the 1-based line and column where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    /// Source file, when known.
    pub file: Option<String>,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError {
            line,
            column,
            kind,
            file: None,
        }
    }

    pub fn in_file(mut self, file: impl Into<String>) -> Self {
        if self.file.is_none() {
            self.file = Some(file.into());
        }
        self
    }

    /// Shifts a position reported relative to one line of a larger file.
    pub(crate) fn at_line(mut self, line: usize) -> Self {
        self.line += line - 1;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}: {}", self.line, self.column, self.kind)
    }
}
