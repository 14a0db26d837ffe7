use std::fmt;

use num_traits::{One, Zero};

use super::combinator::{combinator_sentence, DyadicLevel, WeakFamily};
use super::construct::{halve_adjust, rho_from_gamma};
use super::search::{search_weak_interpolant, SearchBudget};
use super::InterpError;
use crate::logic::Sentence;
use crate::semantics::{
    family_entails_ge, is_strong_interpolant, Certificate, CertificateKind, ClauseResult, Counterexample,
    InterpolationProblem,
};
use crate::Rational;

/// The two conditions a member `ρ_k` of a weak family must meet at level
/// `ε`: `left` asks `ρ_k = 0` on `T_V`-models with `φ ≤ kε`, `right` asks
/// `ρ_k = 1` on `T_W`-models with `ψ ≥ (k+1)ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakClause {
    Left,
    Right,
}

impl fmt::Display for WeakClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeakClause::Left => "left",
            WeakClause::Right => "right",
        })
    }
}

/// Supplies `ρ_k` for a level and index.
pub trait WeakProvider {
    fn provide(
        &mut self,
        problem: &InterpolationProblem,
        level: DyadicLevel,
        k: usize,
    ) -> Result<Sentence, InterpError>;
}

impl<F> WeakProvider for F
where
    F: FnMut(&InterpolationProblem, DyadicLevel, usize) -> Result<Sentence, InterpError>,
{
    fn provide(&mut self, p: &InterpolationProblem, level: DyadicLevel, k: usize) -> Result<Sentence, InterpError> {
        self(p, level, k)
    }
}

/// Hands out the members of a precomputed family.
#[derive(Debug, Clone)]
pub struct FixedProvider(pub WeakFamily);

impl WeakProvider for FixedProvider {
    fn provide(&mut self, _: &InterpolationProblem, level: DyadicLevel, k: usize) -> Result<Sentence, InterpError> {
        if self.0.level() != level {
            return Err(InterpError::LevelMismatch { expected: level.n(), found: self.0.level().n() });
        }
        self.0
            .members()
            .get(k)
            .cloned()
            .ok_or(InterpError::LengthMismatch { expected: level.size(), found: self.0.members().len() })
    }
}

/// Builds `ρ_k` from a searched weak interpolant `γ_k` of
/// `(φ ∸ kε, ψ ∸ kε, ε/2)`, normalised by `r = min γ_k` over the
/// `T_W`-models with `ψ ≥ (k+1)ε`.
#[derive(Debug, Clone)]
pub struct SearchProvider {
    pub budget: SearchBudget,
}

impl SearchProvider {
    pub fn new(budget: SearchBudget) -> Self {
        SearchProvider { budget }
    }
}

impl WeakProvider for SearchProvider {
    fn provide(&mut self, p: &InterpolationProblem, level: DyadicLevel, k: usize) -> Result<Sentence, InterpError> {
        let low = Sentence::constant(level.point(k))?;
        let sub = p.with_sentences(p.phi().dot_minus(&low), p.psi().dot_minus(&low))?;
        let half = level.eps() / Rational::from_integer(2.into());
        let gamma = search_weak_interpolant(&sub, &half, &self.budget)?
            .ok_or(InterpError::ProviderExhausted { k })?;
        let high = level.point(k + 1);
        let mut r = Rational::one();
        for m in p.right_models()? {
            if m.value(p.psi())? >= high {
                let g = m.value(&gamma)?;
                if g.is_zero() {
                    return Err(InterpError::ProviderFailure {
                        k,
                        clause: WeakClause::Right,
                        model: m.name().to_string(),
                        value: g,
                    });
                }
                r = r.min(g);
            }
        }
        rho_from_gamma(&gamma, &r)
    }
}

/// Left and right clauses for member `k` of a family at `level`.
pub fn check_weak_member(
    p: &InterpolationProblem,
    level: DyadicLevel,
    k: usize,
    rho: &Sentence,
) -> Result<(ClauseResult, ClauseResult), InterpError> {
    p.require_common(rho)?;
    let (low, high) = (level.point(k), level.point(k + 1));
    let mut left = ClauseResult::new(format!("left{k}"));
    for m in p.left_models()? {
        let phi = m.value(p.phi())?;
        if phi > low {
            continue;
        }
        left.checked += 1;
        let r = m.value(rho)?;
        if !r.is_zero() {
            left.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("phi".into(), phi), ("rho".into(), r)],
            });
        }
    }
    let mut right = ClauseResult::new(format!("right{k}"));
    for m in p.right_models()? {
        let psi = m.value(p.psi())?;
        if psi < high {
            continue;
        }
        right.checked += 1;
        let r = m.value(rho)?;
        if !r.is_one() {
            right.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("psi".into(), psi), ("rho".into(), r)],
            });
        }
    }
    Ok((left, right))
}

/// Both clauses for every member, in index order.
pub fn check_weak_family(p: &InterpolationProblem, family: &WeakFamily) -> Result<Certificate, InterpError> {
    let mut clauses = Vec::with_capacity(2 * family.members().len());
    for (k, rho) in family.members().iter().enumerate() {
        let (l, r) = check_weak_member(p, family.level(), k, rho)?;
        clauses.push(l);
        clauses.push(r);
    }
    Ok(Certificate::new(CertificateKind::WeakFamily, clauses))
}

#[derive(Debug, Clone)]
pub struct StrongOutcome {
    pub theta: Sentence,
    /// Level of the interpolant's `ε = 2^-n`.
    pub level: DyadicLevel,
    /// The family at level `n + 1`; absent when `n = 0`.
    pub weak_family: Option<WeakFamily>,
    pub certificate: Certificate,
}

impl StrongOutcome {
    pub fn eps(&self) -> Rational {
        self.level.eps()
    }
}

/// A strong interpolant at `ε = 2^-n` from weak interpolants at `ε/2`.
pub fn strong_from_weak(
    p: &InterpolationProblem,
    n: u32,
    provider: &mut dyn WeakProvider,
) -> Result<StrongOutcome, InterpError> {
    let level = DyadicLevel::new(n)?;
    let both = p.tv().union(p.tw());
    let hyp = family_entails_ge(p.family(), &both, p.phi(), p.psi())?;
    if let Some(cx) = hyp.counterexample {
        let get = |name: &str| cx.value(name).cloned().unwrap_or_else(Rational::zero);
        return Err(InterpError::HypothesisViolated {
            phi: Box::new(get("lhs")),
            psi: Box::new(get("rhs")),
            model: cx.model,
        });
    }
    let eps = level.eps();
    if n == 0 {
        let theta = Sentence::zero();
        let certificate = is_strong_interpolant(p, &theta, &eps)?;
        return Ok(StrongOutcome { theta, level, weak_family: None, certificate });
    }
    let fine = level.finer()?;
    let mut members = Vec::with_capacity(fine.size());
    for k in 0..fine.size() {
        let rho = provider.provide(p, fine, k)?;
        if let Some(sym) = rho.vocabulary().first_outside(&p.common_vocabulary()) {
            return Err(InterpError::ProviderVocabulary { k, symbol: sym.name.clone() });
        }
        let (left, right) = check_weak_member(p, fine, k, &rho)?;
        for (clause, result) in [(WeakClause::Left, left), (WeakClause::Right, right)] {
            if let Some(cx) = result.counterexamples.into_iter().next() {
                let value = cx.value("rho").cloned().unwrap_or_else(Rational::zero);
                return Err(InterpError::ProviderFailure { k, clause, model: cx.model, value });
            }
        }
        members.push(rho);
    }
    let family = WeakFamily::new(fine, members)?;
    let theta = halve_adjust(&combinator_sentence(fine, &family)?, &eps)?;
    let certificate = is_strong_interpolant(p, &theta, &eps)?;
    Ok(StrongOutcome { theta, level, weak_family: Some(family), certificate })
}

/// As [`strong_from_weak`] at the coarsest dyadic `2^-n ≤ eps`.
pub fn strong_from_weak_eps(
    p: &InterpolationProblem,
    eps: &Rational,
    provider: &mut dyn WeakProvider,
) -> Result<StrongOutcome, InterpError> {
    strong_from_weak(p, DyadicLevel::at_most(eps)?.n(), provider)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Formula, Symbol, Term, Vocabulary};
    use crate::rat;
    use crate::semantics::{ModelFamily, StructureBuilder, Theory};

    // one-element members over {P, Q, R, c} with P on the V side, Q on
    // the W side and R shared
    fn member(name: &str, p: Rational, q: Rational, r: Rational) -> crate::semantics::Structure {
        let mut b = StructureBuilder::new(name, vec!["a".into()]).unwrap();
        for s in vocab().symbols().filter(|s| s.name != "d") {
            b.declare(s.clone()).unwrap();
        }
        b.set_predicate("P", &[0], p).unwrap();
        b.set_predicate("Q", &[0], q).unwrap();
        b.set_predicate("R", &[0], r).unwrap();
        b.set_function("c", &[], 0).unwrap();
        b.build().unwrap()
    }

    fn vocab() -> Vocabulary {
        Vocabulary::from_symbols([
            Symbol::predicate("P", 1),
            Symbol::predicate("Q", 1),
            Symbol::predicate("R", 1),
            Symbol::function("c", 0),
        ])
        .unwrap()
    }

    fn atom(p: &str) -> Sentence {
        Sentence::new(Formula::atom(p, vec![Term::constant("c")])).unwrap()
    }

    // T_V says P = R, T_W says Q = R / 2: then φ = P ≥ ψ = Q
    fn problem() -> InterpolationProblem {
        let members = [(0, 1), (1, 2), (1, 1), (3, 4), (1, 4)]
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let r = rat(a, b);
                member(&format!("M{i}"), r.clone(), &r / rat(2, 1), r)
            })
            .collect();
        let fam = ModelFamily::new("F", vocab(), members).unwrap();
        let tv = Theory::new([atom("P").dot_minus(&atom("R")).max(&atom("R").dot_minus(&atom("P")))]);
        let half_r = atom("R").prod(&Sentence::constant(rat(1, 2)).unwrap());
        let tw = Theory::new([atom("Q").dot_minus(&half_r).max(&half_r.dot_minus(&atom("Q")))]);
        InterpolationProblem::new(fam, tv, tw, atom("P"), atom("Q")).unwrap()
    }

    #[test]
    fn level_zero_is_constant() {
        let mut never = |_: &InterpolationProblem, _: DyadicLevel, _: usize| -> Result<Sentence, InterpError> {
            panic!("no provider call at level 0")
        };
        let out = strong_from_weak(&problem(), 0, &mut never).unwrap();
        assert_eq!(out.theta, Sentence::zero());
        assert!(out.certificate.passed());
    }

    #[test]
    fn search_provider_pipeline() {
        let p = problem();
        let budget = SearchBudget::new(1, 20_000, vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]).unwrap();
        for n in 1..=2 {
            let mut provider = SearchProvider::new(budget.clone());
            let out = strong_from_weak(&p, n, &mut provider).unwrap();
            assert!(out.certificate.passed(), "n={n}\n{}", out.certificate);
            let fam = out.weak_family.unwrap();
            assert_eq!(fam.members().len(), 1 << (n + 1));
            assert!(check_weak_family(&p, &fam).unwrap().passed());
        }
    }

    #[test]
    fn fixed_provider_failures() {
        let p = problem();
        let fine = DyadicLevel::new(2).unwrap();
        let bad = WeakFamily::new(fine, vec![Sentence::one(); 4]).unwrap();
        let err = strong_from_weak(&p, 1, &mut FixedProvider(bad)).unwrap_err();
        assert!(
            matches!(err, InterpError::ProviderFailure { k: 0, clause: WeakClause::Left, .. }),
            "{err}"
        );
        let wrong = WeakFamily::new(DyadicLevel::new(1).unwrap(), vec![Sentence::one(); 2]).unwrap();
        assert!(matches!(
            strong_from_weak(&p, 1, &mut FixedProvider(wrong)).unwrap_err(),
            InterpError::LevelMismatch { .. }
        ));
        let leaky = WeakFamily::new(fine, vec![atom("P"); 4]).unwrap();
        assert!(matches!(
            strong_from_weak(&p, 1, &mut FixedProvider(leaky)).unwrap_err(),
            InterpError::ProviderVocabulary { k: 0, .. }
        ));
    }

    #[test]
    fn hypothesis_is_checked() {
        let q = problem().with_sentences(Sentence::zero(), atom("Q")).unwrap();
        let err = strong_from_weak(&q, 0, &mut FixedProvider(WeakFamily::new(
            DyadicLevel::new(1).unwrap(),
            vec![Sentence::zero(); 2],
        ).unwrap()))
        .unwrap_err();
        match err {
            InterpError::HypothesisViolated { model, phi, psi } => {
                assert_eq!(model, "M1");
                assert_eq!((*phi, *psi), (rat(0, 1), rat(1, 4)));
            }
            other => panic!("{other}"),
        }
    }
}
