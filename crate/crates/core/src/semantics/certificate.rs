use std::fmt;

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Weak,
    Strong,
    Separation,
    WeakFamily,
    Cauchy,
}

/// A member of the family on which a clause fails, with the values involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub model: String,
    pub values: Vec<(String, Rational)>,
}

impl Counterexample {
    pub fn value(&self, name: &str) -> Option<&Rational> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.model)?;
        for (name, value) in &self.values {
            write!(f, " {name}={value}")?;
        }
        Ok(())
    }
}

/// Outcome of one clause over the family members in its scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseResult {
    pub name: String,
    /// Number of members satisfying the clause's premises.
    pub checked: usize,
    /// All failing members, in family order.
    pub counterexamples: Vec<Counterexample>,
}

impl ClauseResult {
    pub fn new(name: impl Into<String>) -> Self {
        ClauseResult {
            name: name.into(),
            checked: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Passed because no member met the premises.
    pub fn vacuous(&self) -> bool {
        self.checked == 0
    }
}

/// Report line format: `PASS|FAIL clause model witness-values`, where a
/// passing clause prints `-` for the model and `-` (or `vacuous`) for the
/// values, and a failing clause shows its first counterexample.
impl fmt::Display for ClauseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.counterexamples.first() {
            None if self.vacuous() => write!(f, "PASS {} - vacuous", self.name),
            None => write!(f, "PASS {} - -", self.name),
            Some(cx) => write!(f, "FAIL {} {cx}", self.name),
        }
    }
}

/// Family-relative verdict: one entry per clause checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub clauses: Vec<ClauseResult>,
}

impl Certificate {
    pub fn new(kind: CertificateKind, clauses: Vec<ClauseResult>) -> Self {
        Certificate { kind, clauses }
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(ClauseResult::passed)
    }

    /// Every clause passed without any member in scope.
    pub fn vacuous(&self) -> bool {
        self.clauses.iter().all(ClauseResult::vacuous)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<(&ClauseResult, &Counterexample)> {
        self.clauses
            .iter()
            .find_map(|c| c.counterexamples.first().map(|cx| (c, cx)))
    }

    /// The report text, one line per clause.
    pub fn report(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            writeln!(f, "{clause}")?;
        }
        Ok(())
    }
}
