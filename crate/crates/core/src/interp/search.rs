use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::InterpError;
use crate::logic::{Formula, Sentence, Term, Vocabulary};
use crate::semantics::{
    evaluate, is_weak_interpolant, tuples, Assignment, Certificate, InterpolationProblem, Structure,
};
use crate::textio::print_formula;
use crate::Rational;

/// Limits of the enumeration: quantifier depth, number of candidates
/// checked, and the rational constants allowed as leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    max_depth: usize,
    max_candidates: usize,
    pool: Vec<Rational>,
}

impl SearchBudget {
    pub fn new(max_depth: usize, max_candidates: usize, pool: Vec<Rational>) -> Result<Self, InterpError> {
        if max_candidates == 0 {
            return Err(InterpError::InvalidBudget("max candidates must be positive".into()));
        }
        if let Some(bad) = pool.iter().find(|q| q.is_negative() || **q > Rational::one()) {
            return Err(InterpError::InvalidBudget(format!("pool constant {bad} is outside [0, 1]")));
        }
        let mut pool = pool;
        pool.sort();
        pool.dedup();
        Ok(SearchBudget { max_depth, max_candidates, pool })
    }

    pub fn default_pool() -> Vec<Rational> {
        vec![Rational::zero(), Rational::new(1.into(), 2.into()), Rational::one()]
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn max_candidates(&self) -> usize {
        self.max_candidates
    }

    pub fn pool(&self) -> &[Rational] {
        &self.pool
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(1, 10_000, SearchBudget::default_pool()).expect("valid default budget")
    }
}

/// Candidate sentences over a vocabulary in canonical order: by number of
/// formula nodes, then by printed text.
///
/// Leaves are pool constants and atoms whose arguments are bound variables
/// or 0-ary function symbols; inner nodes are `~`, `-.`, `+.`, `min`, `max`,
/// `sup` and `inf`. The binder at nesting depth `i` binds the `i`-th
/// variable name.
#[derive(Debug)]
pub struct CandidateEnumerator {
    max_depth: usize,
    vars: Vec<String>,
    leaves: Vec<Arc<Vec<Formula>>>,
    memo: HashMap<(usize, usize), Arc<Vec<Formula>>>,
}

impl CandidateEnumerator {
    pub fn new(vocab: &Vocabulary, max_depth: usize, pool: &[Rational]) -> Self {
        let vars: Vec<String> = (0..max_depth)
            .map(|i| {
                let mut name = format!("x{i}");
                while vocab.contains(&name) {
                    name.push('\'');
                }
                name
            })
            .collect();
        let constants: Vec<String> = vocab
            .functions()
            .filter(|s| s.arity == 0)
            .map(|s| s.name.clone())
            .collect();
        let leaves = (0..=max_depth)
            .map(|depth| {
                let terms: Vec<Term> = vars[..depth]
                    .iter()
                    .map(Term::var)
                    .chain(constants.iter().map(Term::constant))
                    .collect();
                let mut out: Vec<Formula> = pool.iter().map(|q| Formula::Const(q.clone())).collect();
                for p in vocab.predicates() {
                    if p.arity > 0 && terms.is_empty() {
                        continue;
                    }
                    for args in tuples(terms.len(), p.arity) {
                        out.push(Formula::atom(p.name.clone(), args.iter().map(|&i| terms[i].clone()).collect()));
                    }
                }
                Arc::new(out)
            })
            .collect();
        CandidateEnumerator { max_depth, vars, leaves, memo: HashMap::new() }
    }

    /// True when no candidate of any size exists.
    pub fn is_empty(&self) -> bool {
        self.leaves.iter().all(|l| l.is_empty())
    }

    fn generate(&mut self, size: usize, depth: usize) -> Arc<Vec<Formula>> {
        if size == 1 {
            return self.leaves[depth].clone();
        }
        if let Some(hit) = self.memo.get(&(size, depth)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for g in self.generate(size - 1, depth).iter() {
            out.push(Formula::neg(g.clone()));
        }
        for left in 1..size - 1 {
            let (ls, rs) = (self.generate(left, depth), self.generate(size - 1 - left, depth));
            for a in ls.iter() {
                for b in rs.iter() {
                    out.push(Formula::DotMinus(Box::new(a.clone()), Box::new(b.clone())));
                    out.push(Formula::DotPlus(Box::new(a.clone()), Box::new(b.clone())));
                    out.push(Formula::min(a.clone(), b.clone()));
                    out.push(Formula::max(a.clone(), b.clone()));
                }
            }
        }
        if depth < self.max_depth {
            let var = self.vars[depth].clone();
            for g in self.generate(size - 1, depth + 1).iter() {
                out.push(Formula::sup(var.clone(), g.clone()));
                out.push(Formula::inf(var.clone(), g.clone()));
            }
        }
        let out = Arc::new(out);
        self.memo.insert((size, depth), out.clone());
        out
    }

    /// All sentences with exactly `size` nodes, sorted by printed text.
    pub fn class(&mut self, size: usize) -> Vec<(String, Formula)> {
        if size == 0 {
            return Vec::new();
        }
        let mut keyed: Vec<(String, Formula)> = self
            .generate(size, 0)
            .iter()
            .map(|f| (print_formula(f), f.clone()))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub found: Option<Sentence>,
    /// Candidates checked, counting the one returned.
    pub examined: usize,
    /// Full weak certificate of the returned sentence.
    pub certificate: Option<Certificate>,
}

fn value(m: &Structure, f: &Formula) -> Option<Rational> {
    evaluate(m, f, &Assignment::new()).ok()
}

/// First weak interpolant for `(φ, ψ, ε)` in canonical order, or `None`
/// when the budget runs out or the candidate space is empty.
pub fn search_weak_interpolant(
    p: &InterpolationProblem,
    eps: &Rational,
    budget: &SearchBudget,
) -> Result<Option<Sentence>, InterpError> {
    Ok(search_weak_interpolant_detailed(p, eps, budget)?.found)
}

pub fn search_weak_interpolant_detailed(
    p: &InterpolationProblem,
    eps: &Rational,
    budget: &SearchBudget,
) -> Result<SearchOutcome, InterpError> {
    super::unit_interval("epsilon", eps)?;
    // a candidate passes iff it is 0 on every `left` member and nonzero on
    // every `bad` member (a T_W-model with ψ > ε)
    let mut left = Vec::new();
    for m in p.left_models()? {
        if m.value(p.phi())?.is_zero() {
            left.push(m);
        }
    }
    let mut bad = Vec::new();
    for m in p.right_models()? {
        if m.value(p.psi())? > *eps {
            bad.push(m);
        }
    }
    let passes = |f: &Formula| {
        left.iter().all(|m| value(m, f).is_some_and(|v| v.is_zero()))
            && bad.iter().all(|m| value(m, f).is_some_and(|v| !v.is_zero()))
    };

    let mut enumerator = CandidateEnumerator::new(&p.common_vocabulary(), budget.max_depth, &budget.pool);
    let mut examined = 0;
    if enumerator.is_empty() {
        return Ok(SearchOutcome { found: None, examined, certificate: None });
    }
    let mut size = 1;
    while examined < budget.max_candidates {
        let class = enumerator.class(size);
        let take = class.len().min(budget.max_candidates - examined);
        let slice = &class[..take];
        if let Some(i) = slice.par_iter().position_first(|(_, f)| passes(f)) {
            examined += i + 1;
            let theta = Sentence::new(slice[i].1.clone())?;
            let certificate = is_weak_interpolant(p, &theta, eps)?;
            debug_assert!(certificate.passed());
            return Ok(SearchOutcome { found: Some(theta), examined, certificate: Some(certificate) });
        }
        examined += take;
        size += 1;
    }
    Ok(SearchOutcome { found: None, examined, certificate: None })
}
