use std::fmt;

use num_traits::Zero;

use super::structure::{table_index, tuples, Element, Structure};
use crate::logic::SymbolKind;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// `d(x, x) != 0`.
    Reflexivity,
    /// `d(x, y) = 0` for distinct `x, y` in a strict metric structure.
    Separation,
    Symmetry,
    Triangle,
    /// Modulus failure for `symbol` when varying argument `coordinate`.
    Lipschitz { symbol: String, coordinate: usize },
}

/// One failed axiom instance.
///
/// Witness layouts: reflexivity `(x)`; separation and symmetry `(x, y)`;
/// triangle `(x, y, z)` for `d(x,z) > d(x,y) + d(y,z)`; Lipschitz the
/// argument tuple followed by the replacement element for the coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<String>,
    pub values: Vec<Rational>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            ViolationKind::Reflexivity => "reflexivity".to_string(),
            ViolationKind::Separation => "separation".to_string(),
            ViolationKind::Symmetry => "symmetry".to_string(),
            ViolationKind::Triangle => "triangle".to_string(),
            ViolationKind::Lipschitz { symbol, coordinate } => format!("lipschitz {symbol}[{coordinate}]"),
        };
        let values: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{kind} ({}) values {}", self.witness.join(", "), values.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub metric_ok: bool,
    pub lipschitz_ok: bool,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.metric_ok && self.lipschitz_ok
    }
}

/// Checks the metric axioms for `d` and every declared Lipschitz modulus.
///
/// Violations are listed kind by kind; within a kind, witnesses appear in
/// lexicographic order, so the first entry of each kind is the least witness.
/// Completeness is not checked (finite metrics are complete).
pub fn check_structure(m: &Structure) -> StructureReport {
    let n = m.size();
    let names = |t: &[Element]| t.iter().map(|&e| m.universe[e].clone()).collect::<Vec<_>>();
    let d = |x: Element, y: Element| m.distance(x, y);
    let mut violations = Vec::new();

    for x in 0..n {
        if !d(x, x).is_zero() {
            violations.push(Violation {
                kind: ViolationKind::Reflexivity,
                witness: names(&[x]),
                values: vec![d(x, x).clone()],
            });
        }
    }
    if !m.pseudo_metric {
        for x in 0..n {
            for y in 0..n {
                if x != y && d(x, y).is_zero() {
                    violations.push(Violation {
                        kind: ViolationKind::Separation,
                        witness: names(&[x, y]),
                        values: vec![d(x, y).clone()],
                    });
                }
            }
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if d(x, y) != d(y, x) {
                violations.push(Violation {
                    kind: ViolationKind::Symmetry,
                    witness: names(&[x, y]),
                    values: vec![d(x, y).clone(), d(y, x).clone()],
                });
            }
        }
    }
    for t in tuples(n, 3) {
        let (x, y, z) = (t[0], t[1], t[2]);
        let via = d(x, y) + d(y, z);
        if *d(x, z) > via {
            violations.push(Violation {
                kind: ViolationKind::Triangle,
                witness: names(&t),
                values: vec![d(x, z).clone(), d(x, y).clone(), d(y, z).clone()],
            });
        }
    }
    let metric_count = violations.len();
    let metric_ok = metric_count == 0;

    for symbol in m.vocabulary.symbols() {
        let Some(bound) = &symbol.lipschitz else { continue };
        for args in tuples(n, symbol.arity) {
            for coordinate in 0..symbol.arity {
                for y in (args[coordinate] + 1)..n {
                    let mut other = args.clone();
                    other[coordinate] = y;
                    let allowed = bound * d(args[coordinate], y);
                    let (gap, values) = match symbol.kind {
                        SymbolKind::Predicate => {
                            let table = &m.predicates[&symbol.name];
                            let p = &table.data[table_index(n, &args)];
                            let q = &table.data[table_index(n, &other)];
                            let gap = if p > q { p - q } else { q - p };
                            (gap, vec![p.clone(), q.clone()])
                        }
                        SymbolKind::Function => {
                            let table = &m.functions[&symbol.name];
                            let fx = table.data[table_index(n, &args)];
                            let fy = table.data[table_index(n, &other)];
                            (d(fx, fy).clone(), vec![d(fx, fy).clone()])
                        }
                    };
                    if gap > allowed {
                        let mut witness = names(&args);
                        witness.push(m.universe[y].clone());
                        let mut values = values;
                        values.push(d(args[coordinate], y).clone());
                        values.push(bound.clone());
                        violations.push(Violation {
                            kind: ViolationKind::Lipschitz {
                                symbol: symbol.name.clone(),
                                coordinate,
                            },
                            witness,
                            values,
                        });
                    }
                }
            }
        }
    }
    let lipschitz_ok = violations.len() == metric_count;
    StructureReport {
        metric_ok,
        lipschitz_ok,
        violations,
    }
}
