use num_traits::{One, Signed, Zero};

use super::InterpError;
use crate::logic::{Sentence, Vocabulary};
use crate::Rational;

const MAX_LEVEL: u32 = 20;

/// `ε = 2^-n` together with the grid of multiples of `ε` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicLevel {
    n: u32,
}

impl DyadicLevel {
    pub fn new(n: u32) -> Result<Self, InterpError> {
        if n > MAX_LEVEL {
            return Err(InterpError::LevelTooLarge(n));
        }
        Ok(DyadicLevel { n })
    }

    /// The coarsest level whose `ε` does not exceed `eps`.
    pub fn at_most(eps: &Rational) -> Result<Self, InterpError> {
        super::unit_interval("epsilon", eps)?;
        let mut level = DyadicLevel { n: 0 };
        while level.eps() > *eps {
            level = DyadicLevel::new(level.n + 1)?;
        }
        Ok(level)
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn eps(self) -> Rational {
        Rational::new(1.into(), num_bigint::BigInt::from(1u64) << self.n)
    }

    /// `2^n`, the number of grid points.
    pub fn size(self) -> usize {
        1usize << self.n
    }

    pub fn grid(self) -> Vec<Rational> {
        let eps = self.eps();
        (0..self.size()).map(|k| &eps * Rational::from_integer(k.into())).collect()
    }

    /// `k·ε`.
    pub fn point(self, k: usize) -> Rational {
        self.eps() * Rational::from_integer(k.into())
    }

    pub fn finer(self) -> Result<Self, InterpError> {
        DyadicLevel::new(self.n + 1)
    }
}

/// Sentences `ρ_0 … ρ_{2^n - 1}` indexed by a dyadic level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakFamily {
    level: DyadicLevel,
    members: Vec<Sentence>,
}

impl WeakFamily {
    pub fn new(level: DyadicLevel, members: Vec<Sentence>) -> Result<Self, InterpError> {
        if members.len() != level.size() {
            return Err(InterpError::LengthMismatch { expected: level.size(), found: members.len() });
        }
        Ok(WeakFamily { level, members })
    }

    pub fn level(&self) -> DyadicLevel {
        self.level
    }

    pub fn members(&self) -> &[Sentence] {
        &self.members
    }

    /// First member that leaves `vocab`, as `(index, symbol name)`.
    pub fn outside(&self, vocab: &Vocabulary) -> Option<(usize, String)> {
        self.members.iter().enumerate().find_map(|(k, s)| {
            s.vocabulary()
                .first_outside(vocab)
                .map(|sym| (k, sym.name.clone()))
        })
    }
}

/// `f(x) = max_k (k+1)·ε·∏_{j≤k} x_j`, computed exactly.
pub fn combinator_value(level: DyadicLevel, x: &[Rational]) -> Result<Rational, InterpError> {
    if x.len() != level.size() {
        return Err(InterpError::LengthMismatch { expected: level.size(), found: x.len() });
    }
    if let Some(bad) = x.iter().find(|v| v.is_negative() || **v > Rational::one()) {
        return Err(InterpError::EntryOutOfRange(bad.clone()));
    }
    let eps = level.eps();
    let mut prefix = Rational::one();
    let mut best = Rational::zero();
    for (k, xk) in x.iter().enumerate() {
        prefix *= xk;
        if prefix.is_zero() {
            break;
        }
        let term = &eps * Rational::from_integer((k + 1).into()) * &prefix;
        best = best.max(term);
    }
    Ok(best)
}

/// `θ := f(ρ_0, …, ρ_{2^n - 1})` as a sentence.
///
/// Term `k` is `prod(const (k+1)ε, ρ_0 * (ρ_1 * (… * ρ_k)))`; the terms are
/// joined by a right-leaning chain of `max`.
pub fn combinator_sentence(level: DyadicLevel, rho: &WeakFamily) -> Result<Sentence, InterpError> {
    if rho.level() != level {
        return Err(InterpError::LevelMismatch { expected: level.n(), found: rho.level().n() });
    }
    let members = rho.members();
    let eps = level.eps();
    let terms: Vec<Sentence> = (0..members.len())
        .map(|k| {
            let chain = members[..k]
                .iter()
                .rev()
                .fold(members[k].clone(), |acc, rj| rj.prod(&acc));
            let weight = Sentence::constant(&eps * Rational::from_integer((k + 1).into()))?;
            Ok(weight.prod(&chain))
        })
        .collect::<Result<_, InterpError>>()?;
    let mut iter = terms.into_iter().rev();
    let last = iter.next().expect("a level has at least one grid point");
    Ok(iter.fold(last, |acc, term| term.max(&acc)))
}
