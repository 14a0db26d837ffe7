use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, Zero};

use super::SemanticsError;
use crate::logic::{Symbol, SymbolKind, Vocabulary, DISTANCE};
use crate::Rational;

/// Index of a universe element.
pub type Element = usize;

/// Total table over `universe^arity`, stored in row-major (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Table<T> {
    pub(crate) arity: usize,
    pub(crate) data: Vec<T>,
}

pub(crate) fn table_index(size: usize, args: &[Element]) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

/// All tuples in `0..size` of the given length, in lexicographic order.
pub fn tuples(size: usize, arity: usize) -> impl Iterator<Item = Vec<Element>> {
    let total = size.checked_pow(arity as u32).expect("table size overflow");
    (0..total).map(move |mut i| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = i % size;
            i /= size;
        }
        t
    })
}

/// A finite `[0,1]`-valued structure with rational predicate tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub(crate) name: String,
    pub(crate) vocabulary: Vocabulary,
    pub(crate) universe: Vec<String>,
    pub(crate) predicates: BTreeMap<String, Table<Rational>>,
    pub(crate) functions: BTreeMap<String, Table<Element>>,
    pub(crate) pseudo_metric: bool,
}

impl Structure {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.universe.iter().position(|e| e == name)
    }

    /// Whether `d(x, y) = 0` is tolerated for distinct elements.
    pub fn is_pseudo_metric(&self) -> bool {
        self.pseudo_metric
    }

    pub fn predicate_value(&self, name: &str, args: &[Element]) -> Option<&Rational> {
        let table = self.predicates.get(name)?;
        if table.arity != args.len() || args.iter().any(|&a| a >= self.size()) {
            return None;
        }
        table.data.get(table_index(self.size(), args))
    }

    pub fn function_value(&self, name: &str, args: &[Element]) -> Option<Element> {
        let table = self.functions.get(name)?;
        if table.arity != args.len() || args.iter().any(|&a| a >= self.size()) {
            return None;
        }
        table.data.get(table_index(self.size(), args)).copied()
    }

    pub fn distance(&self, x: Element, y: Element) -> &Rational {
        self.predicate_value(DISTANCE, &[x, y])
            .expect("distance table is total")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Transports every table along the bijection `perm` (old index to new
    /// index). Element names move with their elements.
    pub fn permuted(&self, perm: &[Element]) -> Result<Structure, SemanticsError> {
        let n = self.size();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(SemanticsError::ElementOutOfRange(perm.len()));
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(SemanticsError::ElementOutOfRange(p));
            }
            seen[p] = true;
        }
        let mut universe = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            universe[new] = self.universe[old].clone();
        }
        let move_args = |args: &[Element]| args.iter().map(|&a| perm[a]).collect::<Vec<_>>();
        let predicates = self
            .predicates
            .iter()
            .map(|(name, table)| {
                let mut data = vec![Rational::zero(); table.data.len()];
                for args in tuples(n, table.arity) {
                    data[table_index(n, &move_args(&args))] = table.data[table_index(n, &args)].clone();
                }
                (name.clone(), Table { arity: table.arity, data })
            })
            .collect();
        let functions = self
            .functions
            .iter()
            .map(|(name, table)| {
                let mut data = vec![0; table.data.len()];
                for args in tuples(n, table.arity) {
                    data[table_index(n, &move_args(&args))] = perm[table.data[table_index(n, &args)]];
                }
                (name.clone(), Table { arity: table.arity, data })
            })
            .collect();
        Ok(Structure {
            name: self.name.clone(),
            vocabulary: self.vocabulary.clone(),
            universe,
            predicates,
            functions,
            pseudo_metric: self.pseudo_metric,
        })
    }
}

/// Incremental construction of a [`Structure`]; `build` enforces totality.
#[derive(Debug, Clone)]
pub struct StructureBuilder {
    name: String,
    universe: Vec<String>,
    vocabulary: Vocabulary,
    predicates: BTreeMap<String, Table<Option<Rational>>>,
    functions: BTreeMap<String, Table<Option<Element>>>,
    pseudo_metric: bool,
}

impl StructureBuilder {
    pub fn new(name: impl Into<String>, universe: Vec<String>) -> Result<Self, SemanticsError> {
        if universe.is_empty() {
            return Err(SemanticsError::EmptyUniverse);
        }
        let mut seen = HashSet::new();
        for e in &universe {
            if !seen.insert(e.as_str()) {
                return Err(SemanticsError::DuplicateElement(e.clone()));
            }
        }
        let n = universe.len();
        // unspecified distances default to 1, the diagonal is always 0
        let mut dist = vec![Some(Rational::one()); n * n];
        for i in 0..n {
            dist[i * n + i] = Some(Rational::zero());
        }
        let mut predicates = BTreeMap::new();
        predicates.insert(DISTANCE.to_string(), Table { arity: 2, data: dist });
        Ok(StructureBuilder {
            name: name.into(),
            universe,
            vocabulary: Vocabulary::new(),
            predicates,
            functions: BTreeMap::new(),
            pseudo_metric: false,
        })
    }

    pub fn element(&self, name: &str) -> Result<Element, SemanticsError> {
        self.universe
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| SemanticsError::UnknownElement(name.to_string()))
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn pseudo_metric(mut self, allow: bool) -> Self {
        self.pseudo_metric = allow;
        self
    }

    pub fn set_pseudo_metric(&mut self, allow: bool) {
        self.pseudo_metric = allow;
    }

    /// Declares a symbol. Declaring `d` only attaches its modulus.
    pub fn declare(&mut self, symbol: Symbol) -> Result<&mut Self, SemanticsError> {
        let n = self.universe.len();
        let cells = n
            .checked_pow(symbol.arity as u32)
            .ok_or_else(|| SemanticsError::ArityMismatch {
                name: symbol.name.clone(),
                expected: 0,
                found: symbol.arity,
            })?;
        if symbol.name != DISTANCE {
            match symbol.kind {
                SymbolKind::Predicate => {
                    self.predicates.insert(
                        symbol.name.clone(),
                        Table { arity: symbol.arity, data: vec![None; cells] },
                    );
                }
                SymbolKind::Function => {
                    self.functions.insert(
                        symbol.name.clone(),
                        Table { arity: symbol.arity, data: vec![None; cells] },
                    );
                }
            }
        }
        self.vocabulary.insert(symbol)?;
        Ok(self)
    }

    fn check_args(&self, name: &str, arity: usize, args: &[Element]) -> Result<(), SemanticsError> {
        if args.len() != arity {
            return Err(SemanticsError::ArityMismatch {
                name: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.universe.len()) {
            return Err(SemanticsError::ElementOutOfRange(bad));
        }
        Ok(())
    }

    /// Sets a predicate entry. For `d` both orders are set at once and the
    /// diagonal must stay 0.
    pub fn set_predicate(
        &mut self,
        name: &str,
        args: &[Element],
        value: Rational,
    ) -> Result<&mut Self, SemanticsError> {
        if value.is_negative() || value > Rational::one() {
            return Err(SemanticsError::ValueOutOfRange { symbol: name.to_string(), value });
        }
        let n = self.universe.len();
        let arity = self
            .predicates
            .get(name)
            .map(|t| t.arity)
            .ok_or_else(|| SemanticsError::UndeclaredSymbol(name.to_string()))?;
        self.check_args(name, arity, args)?;
        if name == DISTANCE {
            let (x, y) = (args[0], args[1]);
            if x == y && !value.is_zero() {
                return Err(SemanticsError::NonzeroDiagonal(self.universe[x].clone()));
            }
            let table = self.predicates.get_mut(name).expect("d is always present");
            table.data[x * n + y] = Some(value.clone());
            table.data[y * n + x] = Some(value);
        } else {
            let table = self.predicates.get_mut(name).expect("checked above");
            table.data[table_index(n, args)] = Some(value);
        }
        Ok(self)
    }

    /// Sets a single ordered distance entry, with no symmetric completion or
    /// diagonal check. Useful for building deliberately broken metrics.
    pub fn set_distance_raw(
        &mut self,
        x: Element,
        y: Element,
        value: Rational,
    ) -> Result<&mut Self, SemanticsError> {
        if value.is_negative() || value > Rational::one() {
            return Err(SemanticsError::ValueOutOfRange { symbol: DISTANCE.to_string(), value });
        }
        self.check_args(DISTANCE, 2, &[x, y])?;
        let n = self.universe.len();
        self.predicates.get_mut(DISTANCE).expect("d is always present").data[x * n + y] = Some(value);
        Ok(self)
    }

    pub fn set_function(
        &mut self,
        name: &str,
        args: &[Element],
        value: Element,
    ) -> Result<&mut Self, SemanticsError> {
        let n = self.universe.len();
        let arity = self
            .functions
            .get(name)
            .map(|t| t.arity)
            .ok_or_else(|| SemanticsError::UndeclaredSymbol(name.to_string()))?;
        self.check_args(name, arity, args)?;
        if value >= n {
            return Err(SemanticsError::ElementOutOfRange(value));
        }
        self.functions.get_mut(name).expect("checked above").data[table_index(n, args)] = Some(value);
        Ok(self)
    }

    pub fn build(self) -> Result<Structure, SemanticsError> {
        let n = self.universe.len();
        let missing = |symbol: &str, arity: usize, idx: usize| {
            let tuple = tuples(n, arity)
                .nth(idx)
                .unwrap_or_default()
                .into_iter()
                .map(|e| self.universe[e].clone())
                .collect();
            SemanticsError::MissingTableEntry { symbol: symbol.to_string(), tuple }
        };
        let mut predicates = BTreeMap::new();
        for (name, table) in &self.predicates {
            let mut data = Vec::with_capacity(table.data.len());
            for (idx, cell) in table.data.iter().enumerate() {
                data.push(cell.clone().ok_or_else(|| missing(name, table.arity, idx))?);
            }
            predicates.insert(name.clone(), Table { arity: table.arity, data });
        }
        let mut functions = BTreeMap::new();
        for (name, table) in &self.functions {
            let mut data = Vec::with_capacity(table.data.len());
            for (idx, cell) in table.data.iter().enumerate() {
                data.push(cell.ok_or_else(|| missing(name, table.arity, idx))?);
            }
            functions.insert(name.clone(), Table { arity: table.arity, data });
        }
        Ok(Structure {
            name: self.name,
            vocabulary: self.vocabulary,
            universe: self.universe,
            predicates,
            functions,
            pseudo_metric: self.pseudo_metric,
        })
    }
}

/// Restriction of `n` to the symbols of `vocab`. The distance table is kept.
pub fn reduct(n: &Structure, vocab: &Vocabulary) -> Result<Structure, SemanticsError> {
    if let Some(sym) = vocab.first_outside(&n.vocabulary) {
        return Err(SemanticsError::SymbolNotPresent(sym.name.clone()));
    }
    let vocabulary = n.vocabulary.restrict(vocab.symbols().map(|s| s.name.as_str()));
    let predicates = n
        .predicates
        .iter()
        .filter(|(name, _)| name.as_str() == DISTANCE || vocab.contains(name))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let functions = n
        .functions
        .iter()
        .filter(|(name, _)| vocab.contains(name))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok(Structure {
        name: n.name.clone(),
        vocabulary,
        universe: n.universe.clone(),
        predicates,
        functions,
        pseudo_metric: n.pseudo_metric,
    })
}
