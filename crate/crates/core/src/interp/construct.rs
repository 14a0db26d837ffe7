use num_traits::{One, Signed, Zero};

use super::{unit_interval, InterpError};
use crate::logic::Sentence;
use crate::semantics::{
    family_models, Certificate, CertificateKind, ClauseResult, Counterexample, InterpolationProblem,
    ModelFamily,
};
use crate::Rational;

/// `ρ := min(γ/r, 1)` for `r ∈ (0, 1]`.
pub fn rho_from_gamma(gamma: &Sentence, r: &Rational) -> Result<Sentence, InterpError> {
    unit_interval("r", r)?;
    Ok(gamma.scale_div_clamp(r.clone())?)
}

/// `θ ∸ ε/2`.
pub fn halve_adjust(theta: &Sentence, eps: &Rational) -> Result<Sentence, InterpError> {
    unit_interval("epsilon", eps)?;
    let half = Sentence::constant(eps / Rational::from_integer(2.into()))?;
    Ok(theta.dot_minus(&half))
}

/// `θ := 1 ∸ (ρ/s)` for `s ∈ (0, 1]`.
pub fn separation_sentence(rho: &Sentence, s: &Rational) -> Result<Sentence, InterpError> {
    unit_interval("s", s)?;
    Ok(Sentence::one().dot_minus(&rho.scale_div_clamp(s.clone())?))
}

/// The largest usable `s`: the minimum of `ρ` over members satisfying
/// `T_W ∪ {ψ}`. `Some(1)` when no member does; `None` when the minimum is 0.
pub fn separation_scale(p: &InterpolationProblem, rho: &Sentence) -> Result<Option<Rational>, InterpError> {
    p.require_common(rho)?;
    let mut low = Rational::one();
    for m in p.right_models()? {
        if m.value(p.psi())?.is_zero() {
            low = low.min(m.value(rho)?);
        }
    }
    Ok((!low.is_zero()).then_some(low))
}

/// `T_V ∪ {φ} ⊨ θ = 1` (clause `v`) and `T_W ∪ {ψ} ⊨ θ = 0` (clause `w`).
pub fn check_separation(p: &InterpolationProblem, theta: &Sentence) -> Result<Certificate, InterpError> {
    p.require_common(theta)?;
    let mut v = ClauseResult::new("v");
    for m in p.left_models()? {
        let phi = m.value(p.phi())?;
        if !phi.is_zero() {
            continue;
        }
        v.checked += 1;
        let th = m.value(theta)?;
        if !th.is_one() {
            v.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("phi".into(), phi), ("theta".into(), th)],
            });
        }
    }
    let mut w = ClauseResult::new("w");
    for m in p.right_models()? {
        let psi = m.value(p.psi())?;
        if !psi.is_zero() {
            continue;
        }
        w.checked += 1;
        let th = m.value(theta)?;
        if !th.is_zero() {
            w.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("psi".into(), psi), ("theta".into(), th)],
            });
        }
    }
    Ok(Certificate::new(CertificateKind::Separation, vec![v, w]))
}

fn dyadic(n: usize) -> Result<Sentence, InterpError> {
    let n = u32::try_from(n).map_err(|_| InterpError::LevelTooLarge(u32::MAX))?;
    let level = super::DyadicLevel::new(n)?;
    Ok(Sentence::constant(level.eps())?)
}

fn need(inputs: &[Sentence], needed: usize) -> Result<(), InterpError> {
    if inputs.len() < needed {
        return Err(InterpError::InsufficientInputs { needed, found: inputs.len() });
    }
    Ok(())
}

/// `θ_0 = min(ρ_0, 1)`, `θ_n = max(θ_{n-1}, min(ρ_n, 2^-n))`; returns
/// `θ_0 … θ_N`.
pub fn weak_limit_sequence(rho: &[Sentence], n: usize) -> Result<Vec<Sentence>, InterpError> {
    need(rho, n + 1)?;
    let mut out = vec![rho[0].min(&Sentence::one())];
    for (i, r) in rho.iter().enumerate().take(n + 1).skip(1) {
        let prev = out.last().expect("non-empty");
        out.push(prev.max(&r.min(&dyadic(i)?)));
    }
    Ok(out)
}

/// `θ_0 = 0`, `θ_{n+1} = max(θ_n, min(γ_n, θ_n ∔ 2^-n))`; returns `θ_0 … θ_N`.
pub fn strong_limit_sequence(gamma: &[Sentence], n: usize) -> Result<Vec<Sentence>, InterpError> {
    need(gamma, n)?;
    let mut out = vec![Sentence::zero()];
    for (i, g) in gamma.iter().enumerate().take(n) {
        let prev = out.last().expect("non-empty");
        out.push(prev.max(&g.min(&prev.dot_plus(&dyadic(i)?))));
    }
    Ok(out)
}

/// Clause `step{i}` checks `|θ_{i+1} - θ_i| ≤ bounds[i]` on every member.
pub fn check_uniform_cauchy(
    family: &ModelFamily,
    thetas: &[Sentence],
    bounds: &[Rational],
) -> Result<Certificate, InterpError> {
    let steps = thetas.len().saturating_sub(1);
    if bounds.len() != steps {
        return Err(InterpError::LengthMismatch { expected: steps, found: bounds.len() });
    }
    let members = family_models(family, &crate::semantics::Theory::empty())?;
    let mut clauses = Vec::with_capacity(steps);
    for (i, bound) in bounds.iter().enumerate() {
        let mut clause = ClauseResult::new(format!("step{i}"));
        for m in &members {
            clause.checked += 1;
            let (a, b) = (m.value(&thetas[i])?, m.value(&thetas[i + 1])?);
            if (&b - &a).abs() > *bound {
                clause.counterexamples.push(Counterexample {
                    model: m.name().to_string(),
                    values: vec![
                        (format!("theta{i}"), a),
                        (format!("theta{}", i + 1), b),
                        ("bound".into(), bound.clone()),
                    ],
                });
            }
        }
        clauses.push(clause);
    }
    Ok(Certificate::new(CertificateKind::Cauchy, clauses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Formula;
    use crate::rat;
    use crate::semantics::{StructureBuilder, Theory};
    use crate::logic::{Symbol, Vocabulary};

    fn p_atom() -> Sentence {
        Sentence::new(Formula::atom("P", vec![])).unwrap()
    }

    fn family(values: &[Rational]) -> ModelFamily {
        let vocab = Vocabulary::from_symbols([Symbol::predicate("P", 0)]).unwrap();
        let members = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut b = StructureBuilder::new(format!("M{i}"), vec!["a".into()]).unwrap();
                b.declare(Symbol::predicate("P", 0)).unwrap();
                b.set_predicate("P", &[], v.clone()).unwrap();
                b.build().unwrap()
            })
            .collect();
        ModelFamily::new("F", vocab, members).unwrap()
    }

    #[test]
    fn normalisation_and_adjustment() {
        let rho = rho_from_gamma(&p_atom(), &rat(1, 2)).unwrap();
        assert_eq!(rho.to_string(), "(P() /. 1/2)");
        assert!(rho_from_gamma(&p_atom(), &rat(0, 1)).is_err());
        assert!(rho_from_gamma(&p_atom(), &rat(3, 2)).is_err());
        let th = halve_adjust(&p_atom(), &rat(1, 4)).unwrap();
        assert_eq!(th.to_string(), "(P() -. 1/8)");
        let fam = family(&[rat(1, 16), rat(1, 2)]);
        let vals: Vec<_> = fam.members().iter().map(|m| m.value(&th).unwrap()).collect();
        assert_eq!(vals, [rat(0, 1), rat(3, 8)]);
    }

    #[test]
    fn separation_values() {
        let th = separation_sentence(&p_atom(), &rat(1, 2)).unwrap();
        let fam = family(&[rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)]);
        let vals: Vec<_> = fam.members().iter().map(|m| m.value(&th).unwrap()).collect();
        assert_eq!(vals, [rat(1, 1), rat(1, 2), rat(0, 1), rat(0, 1)]);
        assert!(separation_sentence(&p_atom(), &rat(0, 1)).is_err());
    }

    #[test]
    fn sequences_shape() {
        let rho = vec![p_atom(); 3];
        let w = weak_limit_sequence(&rho, 2).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w[0].to_string(), "min(P(), 1)");
        assert_eq!(w[1].to_string(), "max(min(P(), 1), min(P(), 1/2))");
        assert!(weak_limit_sequence(&rho, 3).is_err());
        let s = strong_limit_sequence(&rho, 2).unwrap();
        assert_eq!(s[0], Sentence::zero());
        assert_eq!(s[1].to_string(), "max(0, min(P(), (0 +. 1)))");
        assert!(strong_limit_sequence(&rho, 4).is_err());
    }

    #[test]
    fn cauchy_check() {
        let fam = family(&[rat(0, 1), rat(1, 1)]);
        let gamma = vec![p_atom(); 3];
        let seq = strong_limit_sequence(&gamma, 3).unwrap();
        let bounds = vec![rat(1, 1), rat(1, 2), rat(1, 4)];
        assert!(check_uniform_cauchy(&fam, &seq, &bounds).unwrap().passed());
        let tight = vec![rat(1, 2), rat(1, 2), rat(1, 4)];
        let cert = check_uniform_cauchy(&fam, &seq, &tight).unwrap();
        let (clause, cx) = cert.first_failure().unwrap();
        assert_eq!((clause.name.as_str(), cx.model.as_str()), ("step0", "M1"));
        assert!(check_uniform_cauchy(&fam, &seq, &bounds[..2]).is_err());
    }

    #[test]
    fn separation_certificate() {
        let fam = family(&[rat(0, 1), rat(1, 1)]);
        // phi = P, psi = ~P: left members have P = 0, right members have P = 1
        let problem = InterpolationProblem::new(fam, Theory::empty(), Theory::empty(), p_atom(), p_atom().neg())
            .unwrap();
        let rho = p_atom();
        assert_eq!(separation_scale(&problem, &rho).unwrap(), Some(rat(1, 1)));
        let th = separation_sentence(&rho, &rat(1, 1)).unwrap();
        let cert = check_separation(&problem, &th).unwrap();
        assert!(cert.passed(), "{cert}");
        let bad = check_separation(&problem, &Sentence::zero()).unwrap();
        assert!(!bad.passed());
        assert!(separation_scale(&problem, &Sentence::zero()).unwrap().is_none());
    }
}
