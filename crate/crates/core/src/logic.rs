//! Vocabularies, terms, formulas and the truncated connective algebra.
//!
//! Truth values are exact rationals in `[0, 1]`; `0` means "true". Formulas
//! are built from a fixed basis of rational-preserving continuous connectives
//! plus the `sup`/`inf` quantifiers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

/// Name of the distinguished distance predicate.
pub const DISTANCE: &str = "d";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("constant {0} is outside [0, 1]")]
    ConstantOutOfRange(Rational),
    #[error("scale divisor {0} must be positive")]
    NonPositiveScale(Rational),
    #[error("symbol `{name}` used with arity {found}, declared arity is {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol `{name}` used as a {found}, declared as a {expected}")]
    KindMismatch {
        name: String,
        expected: SymbolKind,
        found: SymbolKind,
    },
    #[error("symbol `{0}` is not in the vocabulary")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("the distance symbol `d` must be a binary predicate")]
    BadDistanceSymbol,
    #[error("symbol names must be nonempty")]
    EmptyName,
    #[error("formula has free variables: {}", .0.iter().cloned().collect::<Vec<_>>().join(", "))]
    FreeVariables(BTreeSet<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Predicate,
    Function,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolKind::Predicate => f.write_str("predicate"),
            SymbolKind::Function => f.write_str("function"),
        }
    }
}

/// A predicate or function symbol with an optional Lipschitz modulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub arity: usize,
    pub lipschitz: Option<Rational>,
}

impl Symbol {
    pub fn predicate(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            kind: SymbolKind::Predicate,
            arity,
            lipschitz: None,
        }
    }

    pub fn function(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            kind: SymbolKind::Function,
            arity,
            lipschitz: None,
        }
    }

    pub fn distance() -> Self {
        Symbol::predicate(DISTANCE, 2)
    }

    pub fn with_lipschitz(mut self, constant: Rational) -> Self {
        self.lipschitz = Some(constant);
        self
    }

    /// Same name, kind and arity; moduli are ignored.
    pub fn same_shape(&self, other: &Symbol) -> bool {
        self.name == other.name && self.kind == other.kind && self.arity == other.arity
    }
}

/// A set of symbols, keyed by name, that always contains `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    symbols: BTreeMap<String, Symbol>,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::new()
    }
}

impl Vocabulary {
    /// The minimal vocabulary `{d}`.
    pub fn new() -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert(DISTANCE.to_string(), Symbol::distance());
        Vocabulary { symbols }
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self, LogicError> {
        let mut vocab = Vocabulary::new();
        let mut seen = BTreeSet::new();
        for symbol in symbols {
            if !seen.insert(symbol.name.clone()) {
                return Err(LogicError::DuplicateSymbol(symbol.name));
            }
            vocab.insert(symbol)?;
        }
        Ok(vocab)
    }

    /// Adds a symbol. Re-declaring `d` (as a binary predicate) replaces the
    /// default entry, which is how a modulus gets attached to it.
    pub fn insert(&mut self, symbol: Symbol) -> Result<(), LogicError> {
        if symbol.name.is_empty() {
            return Err(LogicError::EmptyName);
        }
        if symbol.name == DISTANCE {
            if symbol.kind != SymbolKind::Predicate || symbol.arity != 2 {
                return Err(LogicError::BadDistanceSymbol);
            }
            self.symbols.insert(symbol.name.clone(), symbol);
            return Ok(());
        }
        if self.symbols.contains_key(&symbol.name) {
            return Err(LogicError::DuplicateSymbol(symbol.name));
        }
        self.symbols.insert(symbol.name.clone(), symbol);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols
            .values()
            .filter(|s| s.kind == SymbolKind::Predicate)
    }

    pub fn functions(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols
            .values()
            .filter(|s| s.kind == SymbolKind::Function)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Every symbol of `self` appears in `other` with the same kind and arity.
    pub fn is_subset_of(&self, other: &Vocabulary) -> bool {
        self.symbols
            .values()
            .all(|s| other.get(&s.name).is_some_and(|o| o.same_shape(s)))
    }

    /// First symbol of `self` that is missing from (or shaped differently in) `other`.
    pub fn first_outside(&self, other: &Vocabulary) -> Option<&Symbol> {
        self.symbols
            .values()
            .find(|s| !other.get(&s.name).is_some_and(|o| o.same_shape(s)))
    }

    /// Symbols present in both, with matching shape. Entries come from `self`.
    pub fn intersection(&self, other: &Vocabulary) -> Vocabulary {
        let symbols = self
            .symbols
            .iter()
            .filter(|(name, s)| other.get(name).is_some_and(|o| o.same_shape(s)))
            .map(|(name, s)| (name.clone(), s.clone()))
            .collect();
        Vocabulary { symbols }
    }

    /// Union; entries from `self` win on name clashes.
    pub fn union(&self, other: &Vocabulary) -> Vocabulary {
        let mut symbols = self.symbols.clone();
        for (name, s) in &other.symbols {
            symbols.entry(name.clone()).or_insert_with(|| s.clone());
        }
        Vocabulary { symbols }
    }

    /// Keeps only the named symbols (plus `d`).
    pub fn restrict<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Vocabulary {
        let mut out = Vocabulary::new();
        if let Some(d) = self.get(DISTANCE) {
            out.symbols.insert(DISTANCE.to_string(), d.clone());
        }
        for name in names {
            if let Some(s) = self.get(name) {
                out.symbols.insert(name.to_string(), s.clone());
            }
        }
        out
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, name) in self.symbols.keys().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(name)?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// Function application; zero arguments is a constant symbol.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }
}

/// Continuous formula over the fixed connective basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Const(Rational),
    Atom(String, Vec<Term>),
    /// `1 - f`.
    Neg(Box<Formula>),
    Min(Box<Formula>, Box<Formula>),
    Max(Box<Formula>, Box<Formula>),
    /// `max(f - g, 0)`.
    DotMinus(Box<Formula>, Box<Formula>),
    /// `min(f + g, 1)`.
    DotPlus(Box<Formula>, Box<Formula>),
    Prod(Box<Formula>, Box<Formula>),
    /// `min(f / q, 1)` for a positive rational `q`.
    ScaleDivClamp(Box<Formula>, Rational),
    Sup(String, Box<Formula>),
    Inf(String, Box<Formula>),
}

impl Formula {
    pub fn constant(value: Rational) -> Result<Self, LogicError> {
        if value.is_negative() || value > Rational::one() {
            return Err(LogicError::ConstantOutOfRange(value));
        }
        Ok(Formula::Const(value))
    }

    /// Constant `num/den`; panics when the value is outside `[0, 1]`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Formula::constant(crate::rat(num, den)).expect("constant in [0, 1]")
    }

    pub fn zero() -> Self {
        Formula::Const(Rational::zero())
    }

    pub fn one() -> Self {
        Formula::Const(Rational::one())
    }

    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn min(f: Formula, g: Formula) -> Self {
        Formula::Min(Box::new(f), Box::new(g))
    }

    pub fn max(f: Formula, g: Formula) -> Self {
        Formula::Max(Box::new(f), Box::new(g))
    }

    pub fn prod(f: Formula, g: Formula) -> Self {
        Formula::Prod(Box::new(f), Box::new(g))
    }

    pub fn sup(var: impl Into<String>, body: Formula) -> Self {
        Formula::Sup(var.into(), Box::new(body))
    }

    pub fn inf(var: impl Into<String>, body: Formula) -> Self {
        Formula::Inf(var.into(), Box::new(body))
    }

    /// Number of formula nodes (terms are not counted).
    pub fn size(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(..) => 1,
            Formula::Neg(f) | Formula::ScaleDivClamp(f, _) | Formula::Sup(_, f) | Formula::Inf(_, f) => {
                1 + f.size()
            }
            Formula::Min(f, g)
            | Formula::Max(f, g)
            | Formula::DotMinus(f, g)
            | Formula::DotPlus(f, g)
            | Formula::Prod(f, g) => 1 + f.size() + g.size(),
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(..) => 0,
            Formula::Neg(f) | Formula::ScaleDivClamp(f, _) => f.quantifier_depth(),
            Formula::Sup(_, f) | Formula::Inf(_, f) => 1 + f.quantifier_depth(),
            Formula::Min(f, g)
            | Formula::Max(f, g)
            | Formula::DotMinus(f, g)
            | Formula::DotPlus(f, g)
            | Formula::Prod(f, g) => f.quantifier_depth().max(g.quantifier_depth()),
        }
    }

    /// Checks constant ranges, scale divisors and consistent symbol usage.
    pub fn validate(&self) -> Result<(), LogicError> {
        let mut seen: BTreeMap<String, Symbol> = BTreeMap::new();
        self.validate_into(&mut seen)
    }

    fn validate_into(&self, seen: &mut BTreeMap<String, Symbol>) -> Result<(), LogicError> {
        match self {
            Formula::Const(r) => {
                if r.is_negative() || *r > Rational::one() {
                    return Err(LogicError::ConstantOutOfRange(r.clone()));
                }
            }
            Formula::Atom(name, args) => {
                note_symbol(seen, Symbol::predicate(name.clone(), args.len()))?;
                for t in args {
                    validate_term(t, seen)?;
                }
            }
            Formula::Neg(f) | Formula::Sup(_, f) | Formula::Inf(_, f) => f.validate_into(seen)?,
            Formula::ScaleDivClamp(f, q) => {
                if !q.is_positive() {
                    return Err(LogicError::NonPositiveScale(q.clone()));
                }
                f.validate_into(seen)?;
            }
            Formula::Min(f, g)
            | Formula::Max(f, g)
            | Formula::DotMinus(f, g)
            | Formula::DotPlus(f, g)
            | Formula::Prod(f, g) => {
                f.validate_into(seen)?;
                g.validate_into(seen)?;
            }
        }
        Ok(())
    }

    /// Checks every symbol occurrence against a declared vocabulary.
    pub fn check_vocabulary(&self, vocab: &Vocabulary) -> Result<(), LogicError> {
        let used = vocabulary_of(self);
        for symbol in used.symbols() {
            match vocab.get(&symbol.name) {
                None => return Err(LogicError::UnknownSymbol(symbol.name.clone())),
                Some(decl) if decl.kind != symbol.kind => {
                    return Err(LogicError::KindMismatch {
                        name: symbol.name.clone(),
                        expected: decl.kind,
                        found: symbol.kind,
                    })
                }
                Some(decl) if decl.arity != symbol.arity => {
                    return Err(LogicError::ArityMismatch {
                        name: symbol.name.clone(),
                        expected: decl.arity,
                        found: symbol.arity,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

fn note_symbol(seen: &mut BTreeMap<String, Symbol>, symbol: Symbol) -> Result<(), LogicError> {
    if symbol.name == DISTANCE && (symbol.kind != SymbolKind::Predicate || symbol.arity != 2) {
        return Err(LogicError::BadDistanceSymbol);
    }
    match seen.get(&symbol.name) {
        Some(prev) if prev.kind != symbol.kind => Err(LogicError::KindMismatch {
            name: symbol.name,
            expected: prev.kind,
            found: symbol.kind,
        }),
        Some(prev) if prev.arity != symbol.arity => Err(LogicError::ArityMismatch {
            name: symbol.name,
            expected: prev.arity,
            found: symbol.arity,
        }),
        Some(_) => Ok(()),
        None => {
            seen.insert(symbol.name.clone(), symbol);
            Ok(())
        }
    }
}

fn validate_term(t: &Term, seen: &mut BTreeMap<String, Symbol>) -> Result<(), LogicError> {
    if let Term::App(name, args) = t {
        note_symbol(seen, Symbol::function(name.clone(), args.len()))?;
        for a in args {
            validate_term(a, seen)?;
        }
    }
    Ok(())
}

/// Variables occurring outside the scope of a binder naming them.
pub fn free_variables(f: &Formula) -> BTreeSet<String> {
    fn term_vars(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match t {
            Term::Var(v) => {
                if !bound.iter().any(|b| b == v) {
                    out.insert(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| term_vars(a, bound, out)),
        }
    }
    fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match f {
            Formula::Const(_) => {}
            Formula::Atom(_, args) => args.iter().for_each(|a| term_vars(a, bound, out)),
            Formula::Neg(g) | Formula::ScaleDivClamp(g, _) => go(g, bound, out),
            Formula::Min(g, h)
            | Formula::Max(g, h)
            | Formula::DotMinus(g, h)
            | Formula::DotPlus(g, h)
            | Formula::Prod(g, h) => {
                go(g, bound, out);
                go(h, bound, out);
            }
            Formula::Sup(v, g) | Formula::Inf(v, g) => {
                bound.push(v.clone());
                go(g, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

/// Symbols occurring in `f`, plus `d`. When a name is used inconsistently the
/// first occurrence wins; [`Formula::validate`] reports such clashes.
pub fn vocabulary_of(f: &Formula) -> Vocabulary {
    fn term_syms(t: &Term, vocab: &mut Vocabulary) {
        if let Term::App(name, args) = t {
            if !vocab.contains(name) {
                let _ = vocab.insert(Symbol::function(name.clone(), args.len()));
            }
            args.iter().for_each(|a| term_syms(a, vocab));
        }
    }
    fn go(f: &Formula, vocab: &mut Vocabulary) {
        match f {
            Formula::Const(_) => {}
            Formula::Atom(name, args) => {
                if !vocab.contains(name) {
                    let _ = vocab.insert(Symbol::predicate(name.clone(), args.len()));
                }
                args.iter().for_each(|a| term_syms(a, vocab));
            }
            Formula::Neg(g) | Formula::ScaleDivClamp(g, _) | Formula::Sup(_, g) | Formula::Inf(_, g) => {
                go(g, vocab)
            }
            Formula::Min(g, h)
            | Formula::Max(g, h)
            | Formula::DotMinus(g, h)
            | Formula::DotPlus(g, h)
            | Formula::Prod(g, h) => {
                go(g, vocab);
                go(h, vocab);
            }
        }
    }
    let mut vocab = Vocabulary::new();
    go(f, &mut vocab);
    vocab
}

/// `max(f - g, 0)`.
pub fn dot_minus(f: Formula, g: Formula) -> Formula {
    Formula::DotMinus(Box::new(f), Box::new(g))
}

/// `min(f + g, 1)`.
pub fn dot_plus(f: Formula, g: Formula) -> Formula {
    Formula::DotPlus(Box::new(f), Box::new(g))
}

/// `min(f / q, 1)`; `q` must be positive.
pub fn scale_div_clamp(f: Formula, q: Rational) -> Result<Formula, LogicError> {
    if !q.is_positive() {
        return Err(LogicError::NonPositiveScale(q));
    }
    Ok(Formula::ScaleDivClamp(Box::new(f), q))
}

/// Truncated subtraction on values.
pub fn truncated_sub(x: &Rational, y: &Rational) -> Rational {
    if x > y {
        x - y
    } else {
        Rational::zero()
    }
}

/// Truncated addition on values.
pub fn truncated_add(x: &Rational, y: &Rational) -> Rational {
    let s = x + y;
    if s > Rational::one() {
        Rational::one()
    } else {
        s
    }
}

/// A well-formed formula with no free variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(formula: Formula) -> Result<Self, LogicError> {
        formula.validate()?;
        let free = free_variables(&formula);
        if !free.is_empty() {
            return Err(LogicError::FreeVariables(free));
        }
        Ok(Sentence(formula))
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }

    pub fn vocabulary(&self) -> Vocabulary {
        vocabulary_of(&self.0)
    }

    pub fn zero() -> Self {
        Sentence(Formula::zero())
    }

    pub fn one() -> Self {
        Sentence(Formula::one())
    }

    /// Constant sentence; the value must lie in `[0, 1]`.
    pub fn constant(value: Rational) -> Result<Self, LogicError> {
        Formula::constant(value).map(Sentence)
    }

    // Connective constructors bind nothing, so closedness is preserved.

    pub fn dot_minus(&self, other: &Sentence) -> Sentence {
        Sentence(dot_minus(self.0.clone(), other.0.clone()))
    }

    pub fn dot_plus(&self, other: &Sentence) -> Sentence {
        Sentence(dot_plus(self.0.clone(), other.0.clone()))
    }

    pub fn min(&self, other: &Sentence) -> Sentence {
        Sentence(Formula::min(self.0.clone(), other.0.clone()))
    }

    pub fn max(&self, other: &Sentence) -> Sentence {
        Sentence(Formula::max(self.0.clone(), other.0.clone()))
    }

    pub fn prod(&self, other: &Sentence) -> Sentence {
        Sentence(Formula::prod(self.0.clone(), other.0.clone()))
    }

    pub fn neg(&self) -> Sentence {
        Sentence(Formula::neg(self.0.clone()))
    }

    pub fn scale_div_clamp(&self, q: Rational) -> Result<Sentence, LogicError> {
        scale_div_clamp(self.0.clone(), q).map(Sentence)
    }
}

impl AsRef<Formula> for Sentence {
    fn as_ref(&self) -> &Formula {
        &self.0
    }
}

impl TryFrom<Formula> for Sentence {
    type Error = LogicError;

    fn try_from(f: Formula) -> Result<Self, Self::Error> {
        Sentence::new(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(v: &str) -> Formula {
        Formula::atom("P", vec![Term::var(v)])
    }

    #[test]
    fn free_variables_examples() {
        assert!(free_variables(&Formula::ratio(1, 2)).is_empty());
        assert!(free_variables(&Formula::sup("x", p("x"))).is_empty());
        let f = Formula::min(p("x"), Formula::sup("x", Formula::atom("Q", vec![Term::var("x")])));
        assert_eq!(free_variables(&f), BTreeSet::from(["x".to_string()]));
    }

    #[test]
    fn inner_binder_shadows_outer() {
        // sup x . (P(x) -. inf x . P(x)) has no free variables, and the inner x is its own
        let f = Formula::sup("x", dot_minus(p("x"), Formula::inf("x", p("x"))));
        assert!(free_variables(&f).is_empty());
        let g = Formula::sup("y", dot_minus(p("x"), Formula::inf("x", p("x"))));
        assert_eq!(free_variables(&g), BTreeSet::from(["x".to_string()]));
    }

    #[test]
    fn vocabulary_of_examples() {
        let d = Formula::atom(DISTANCE, vec![Term::var("x"), Term::var("y")]);
        let names = |v: Vocabulary| v.symbols().map(|s| s.name.clone()).collect::<Vec<_>>();
        assert_eq!(names(vocabulary_of(&d)), ["d"]);
        let pq = Formula::min(p("x"), Formula::atom("Q", vec![Term::var("x")]));
        assert_eq!(names(vocabulary_of(&pq)), ["P", "Q", "d"]);
        assert_eq!(names(vocabulary_of(&Formula::ratio(1, 3))), ["d"]);
    }

    #[test]
    fn vocabulary_collects_function_symbols() {
        let f = Formula::atom("P", vec![Term::app("f", vec![Term::constant("c")])]);
        let v = vocabulary_of(&f);
        assert_eq!(v.get("f").unwrap().kind, SymbolKind::Function);
        assert_eq!(v.get("c").unwrap().arity, 0);
    }

    #[test]
    fn scale_rejects_nonpositive_divisor() {
        assert!(scale_div_clamp(Formula::zero(), rat(0, 1)).is_err());
        assert!(scale_div_clamp(Formula::zero(), rat(-1, 2)).is_err());
        assert!(scale_div_clamp(Formula::zero(), rat(1, 2)).is_ok());
    }

    #[test]
    fn constants_must_be_in_unit_interval() {
        assert!(Formula::constant(rat(3, 2)).is_err());
        assert!(Formula::constant(rat(-1, 2)).is_err());
        assert!(Sentence::new(Formula::Const(rat(5, 4))).is_err());
    }

    #[test]
    fn sentence_rejects_free_variables_and_arity_clash() {
        assert!(matches!(Sentence::new(p("x")), Err(LogicError::FreeVariables(_))));
        let clash = Formula::min(
            Formula::atom("P", vec![Term::constant("c")]),
            Formula::atom("P", vec![Term::constant("c"), Term::constant("c")]),
        );
        assert!(matches!(Sentence::new(clash), Err(LogicError::ArityMismatch { .. })));
        let bad_d = Formula::atom(DISTANCE, vec![Term::constant("c")]);
        assert_eq!(Sentence::new(bad_d), Err(LogicError::BadDistanceSymbol));
    }

    #[test]
    fn vocabulary_set_operations() {
        let v = Vocabulary::from_symbols([Symbol::predicate("P", 1), Symbol::predicate("R", 2)]).unwrap();
        let w = Vocabulary::from_symbols([Symbol::predicate("Q", 1), Symbol::predicate("R", 2)]).unwrap();
        let common = v.intersection(&w);
        assert_eq!(common.to_string(), "{R, d}");
        assert!(common.is_subset_of(&v) && common.is_subset_of(&w));
        assert_eq!(v.union(&w).len(), 4);
        assert!(Vocabulary::from_symbols([Symbol::predicate("P", 1), Symbol::function("P", 0)]).is_err());
        assert!(Vocabulary::from_symbols([Symbol::function("d", 2)]).is_err());
    }

    #[test]
    fn truncated_value_ops() {
        assert_eq!(truncated_sub(&rat(3, 4), &rat(1, 4)), rat(1, 2));
        assert_eq!(truncated_sub(&rat(0, 1), &rat(1, 1)), rat(0, 1));
        assert_eq!(truncated_add(&rat(1, 2), &rat(3, 4)), rat(1, 1));
        assert_eq!(truncated_add(&rat(1, 4), &rat(1, 4)), rat(1, 2));
    }
}
