use std::collections::HashSet;

use num_traits::{One, Zero};

use super::certificate::{Certificate, CertificateKind, ClauseResult, Counterexample};
use super::structure::Structure;
use super::SemanticsError;
use crate::logic::{truncated_sub, Sentence, Vocabulary};
use crate::Rational;

/// An ordered, duplicate-free set of sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    sentences: Vec<Sentence>,
}

impl Theory {
    pub fn new(sentences: impl IntoIterator<Item = Sentence>) -> Self {
        let mut seen = HashSet::new();
        let sentences = sentences
            .into_iter()
            .filter(|s| seen.insert(s.clone()))
            .collect();
        Theory { sentences }
    }

    pub fn empty() -> Self {
        Theory::default()
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn union(&self, other: &Theory) -> Theory {
        Theory::new(self.sentences.iter().chain(&other.sentences).cloned())
    }

    pub fn with(&self, sentence: Sentence) -> Theory {
        Theory::new(self.sentences.iter().cloned().chain(std::iter::once(sentence)))
    }

    pub fn vocabulary(&self) -> Vocabulary {
        self.sentences
            .iter()
            .fold(Vocabulary::new(), |acc, s| acc.union(&s.vocabulary()))
    }

    /// Every sentence has value 0 in `m`.
    pub fn holds_in(&self, m: &Structure) -> Result<bool, SemanticsError> {
        for s in &self.sentences {
            if !m.value(s)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Named finite list of structures over one vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFamily {
    name: String,
    vocabulary: Vocabulary,
    members: Vec<Structure>,
}

impl ModelFamily {
    pub fn new(
        name: impl Into<String>,
        vocabulary: Vocabulary,
        members: Vec<Structure>,
    ) -> Result<Self, SemanticsError> {
        let mut names = HashSet::new();
        for m in &members {
            if !names.insert(m.name()) {
                return Err(SemanticsError::DuplicateMember(m.name().to_string()));
            }
            if m.vocabulary() != &vocabulary {
                return Err(SemanticsError::VocabularyMismatch(format!(
                    "structure `{}` has vocabulary {}, family declares {}",
                    m.name(),
                    m.vocabulary(),
                    vocabulary
                )));
            }
        }
        Ok(ModelFamily {
            name: name.into(),
            vocabulary,
            members,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn members(&self) -> &[Structure] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, name: &str) -> Option<&Structure> {
        self.members.iter().find(|m| m.name() == name)
    }

    pub(crate) fn require(&self, vocab: &Vocabulary, what: &str) -> Result<(), SemanticsError> {
        match vocab.first_outside(&self.vocabulary) {
            None => Ok(()),
            Some(sym) => Err(SemanticsError::VocabularyMismatch(format!(
                "{what} uses `{}`, which family `{}` does not declare",
                sym.name, self.name
            ))),
        }
    }
}

/// Members in which every sentence of `t` is true (value 0), in family order.
pub fn family_models<'a>(f: &'a ModelFamily, t: &Theory) -> Result<Vec<&'a Structure>, SemanticsError> {
    f.require(&t.vocabulary(), "theory")?;
    let mut out = Vec::new();
    for m in f.members() {
        if t.holds_in(m)? {
            out.push(m);
        }
    }
    Ok(out)
}

pub fn family_consistent(f: &ModelFamily, t: &Theory) -> Result<bool, SemanticsError> {
    Ok(!family_models(f, t)?.is_empty())
}

/// Verdict of a family-relative `T ⊨ lhs ≥ rhs` check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entailment {
    pub holds: bool,
    /// Number of models of the theory in the family.
    pub checked: usize,
    /// First violating member with its `lhs` and `rhs` values.
    pub counterexample: Option<Counterexample>,
}

pub fn family_entails_ge(
    f: &ModelFamily,
    t: &Theory,
    lhs: &Sentence,
    rhs: &Sentence,
) -> Result<Entailment, SemanticsError> {
    f.require(&lhs.vocabulary(), "left-hand side")?;
    f.require(&rhs.vocabulary(), "right-hand side")?;
    let models = family_models(f, t)?;
    for m in &models {
        let (l, r) = (m.value(lhs)?, m.value(rhs)?);
        if l < r {
            return Ok(Entailment {
                holds: false,
                checked: models.len(),
                counterexample: Some(Counterexample {
                    model: m.name().to_string(),
                    values: vec![("lhs".into(), l), ("rhs".into(), r)],
                }),
            });
        }
    }
    Ok(Entailment {
        holds: true,
        checked: models.len(),
        counterexample: None,
    })
}

/// Inputs shared by every interpolant check: the family, the two theories,
/// the two sentences and the two side vocabularies `V` and `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationProblem {
    family: ModelFamily,
    tv: Theory,
    tw: Theory,
    phi: Sentence,
    psi: Sentence,
    v: Vocabulary,
    w: Vocabulary,
}

impl InterpolationProblem {
    /// Side vocabularies are read off the inputs: `V` from `T_V` and `φ`,
    /// `W` from `T_W` and `ψ`, with the family's symbol declarations.
    pub fn new(
        family: ModelFamily,
        tv: Theory,
        tw: Theory,
        phi: Sentence,
        psi: Sentence,
    ) -> Result<Self, SemanticsError> {
        let used_v = tv.vocabulary().union(&phi.vocabulary());
        let used_w = tw.vocabulary().union(&psi.vocabulary());
        family.require(&used_v, "the V side")?;
        family.require(&used_w, "the W side")?;
        let v = family.vocabulary().restrict(used_v.symbols().map(|s| s.name.as_str()));
        let w = family.vocabulary().restrict(used_w.symbols().map(|s| s.name.as_str()));
        Ok(InterpolationProblem { family, tv, tw, phi, psi, v, w })
    }

    /// Replaces the derived side vocabularies with declared ones.
    pub fn with_vocabularies(mut self, v: Vocabulary, w: Vocabulary) -> Result<Self, SemanticsError> {
        self.family.require(&v, "V")?;
        self.family.require(&w, "W")?;
        let side = |used: Vocabulary, side: &Vocabulary, what: &str| match used.first_outside(side) {
            None => Ok(()),
            Some(s) => Err(SemanticsError::VocabularyMismatch(format!(
                "{what} uses `{}`, which is not in its declared vocabulary",
                s.name
            ))),
        };
        side(self.tv.vocabulary().union(&self.phi.vocabulary()), &v, "the V side")?;
        side(self.tw.vocabulary().union(&self.psi.vocabulary()), &w, "the W side")?;
        self.v = v;
        self.w = w;
        Ok(self)
    }

    /// Same family, theories and vocabularies with new sentences. The new
    /// sentences must stay inside `V` and `W` respectively.
    pub fn with_sentences(&self, phi: Sentence, psi: Sentence) -> Result<Self, SemanticsError> {
        let mut next = self.clone();
        next.phi = phi;
        next.psi = psi;
        let (v, w) = (self.v.clone(), self.w.clone());
        next.with_vocabularies(v, w)
    }

    pub fn family(&self) -> &ModelFamily {
        &self.family
    }

    pub fn tv(&self) -> &Theory {
        &self.tv
    }

    pub fn tw(&self) -> &Theory {
        &self.tw
    }

    pub fn phi(&self) -> &Sentence {
        &self.phi
    }

    pub fn psi(&self) -> &Sentence {
        &self.psi
    }

    pub fn v(&self) -> &Vocabulary {
        &self.v
    }

    pub fn w(&self) -> &Vocabulary {
        &self.w
    }

    /// `V ∩ W`.
    pub fn common_vocabulary(&self) -> Vocabulary {
        self.v.intersection(&self.w)
    }

    pub fn left_models(&self) -> Result<Vec<&Structure>, SemanticsError> {
        family_models(&self.family, &self.tv)
    }

    pub fn right_models(&self) -> Result<Vec<&Structure>, SemanticsError> {
        family_models(&self.family, &self.tw)
    }

    /// Errors unless `theta` only mentions symbols of `V ∩ W`.
    pub fn require_common(&self, theta: &Sentence) -> Result<(), SemanticsError> {
        match theta.vocabulary().first_outside(&self.common_vocabulary()) {
            None => Ok(()),
            Some(s) => Err(SemanticsError::CommonVocabularyViolation(s.name.clone())),
        }
    }
}

pub(crate) fn check_epsilon(eps: &Rational) -> Result<(), SemanticsError> {
    if *eps <= Rational::zero() || *eps > Rational::one() {
        return Err(SemanticsError::EpsilonOutOfRange(eps.clone()));
    }
    Ok(())
}

/// Checks, over the family, that `T_V ∪ {φ} ⊨ θ = 0` (clause `c1`) and
/// `T_W ∪ {θ} ⊨ ψ ≤ ε` (clause `c2`).
pub fn is_weak_interpolant(
    p: &InterpolationProblem,
    theta: &Sentence,
    eps: &Rational,
) -> Result<Certificate, SemanticsError> {
    check_epsilon(eps)?;
    p.require_common(theta)?;
    let mut c1 = ClauseResult::new("c1");
    for m in p.left_models()? {
        let phi = m.value(&p.phi)?;
        if !phi.is_zero() {
            continue;
        }
        c1.checked += 1;
        let th = m.value(theta)?;
        if !th.is_zero() {
            c1.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("phi".into(), phi), ("theta".into(), th)],
            });
        }
    }
    let mut c2 = ClauseResult::new("c2");
    for m in p.right_models()? {
        let th = m.value(theta)?;
        if !th.is_zero() {
            continue;
        }
        c2.checked += 1;
        let psi = m.value(&p.psi)?;
        if psi > *eps {
            c2.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("theta".into(), th), ("psi".into(), psi)],
            });
        }
    }
    Ok(Certificate::new(CertificateKind::Weak, vec![c1, c2]))
}

/// Checks, over the family, `T_V ⊨ φ ≥ θ` (clause `i`) and
/// `T_W ⊨ θ ≥ ψ ∸ ε` (clause `ii`).
pub fn is_strong_interpolant(
    p: &InterpolationProblem,
    theta: &Sentence,
    eps: &Rational,
) -> Result<Certificate, SemanticsError> {
    check_epsilon(eps)?;
    p.require_common(theta)?;
    let mut first = ClauseResult::new("i");
    for m in p.left_models()? {
        first.checked += 1;
        let (phi, th) = (m.value(&p.phi)?, m.value(theta)?);
        if phi < th {
            first.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![("phi".into(), phi), ("theta".into(), th)],
            });
        }
    }
    let mut second = ClauseResult::new("ii");
    for m in p.right_models()? {
        second.checked += 1;
        let th = m.value(theta)?;
        let psi = m.value(&p.psi)?;
        let lowered = truncated_sub(&psi, eps);
        if th < lowered {
            second.counterexamples.push(Counterexample {
                model: m.name().to_string(),
                values: vec![
                    ("theta".into(), th),
                    ("psi".into(), psi),
                    ("psi-eps".into(), lowered),
                ],
            });
        }
    }
    Ok(Certificate::new(CertificateKind::Strong, vec![first, second]))
}
