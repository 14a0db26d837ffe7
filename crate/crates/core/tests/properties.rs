mod common;

use cinterp_core::textio::{parse_formula, parse_sentence, print_formula};
use cinterp_core::{
    combinator_sentence, combinator_value, dot_minus, dot_plus, is_strong_interpolant,
    is_weak_interpolant, rat, reduct, strong_limit_sequence, weak_limit_sequence, DyadicLevel,
    Formula, Rational, Sentence, WeakFamily,
};
use common::{random_sentence, random_structure, random_value, SeedableRng, TestRng};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn grid() -> impl Strategy<Value = Rational> {
    (0i64..=4).prop_map(|k| rat(k, 4))
}

fn vector(n: u32) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(grid(), 1usize << n)
}

fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_sentences_reparse(seed in any::<u64>(), depth in 0usize..6) {
        let s = random_sentence(&mut rng(seed), depth);
        let text = print_formula(s.formula());
        prop_assert_eq!(parse_formula(&text).unwrap(), s.formula().clone(), "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn values_stay_in_range(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_structure(&mut r, "M");
        let s = random_sentence(&mut r, 5);
        let v = m.value(&s).unwrap();
        prop_assert!(v >= Rational::zero() && v <= Rational::one());
    }

    #[test]
    fn reducts_preserve_values(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_structure(&mut r, "M");
        let s = random_sentence(&mut r, 5);
        let small = reduct(&m, &s.vocabulary()).unwrap();
        prop_assert_eq!(small.value(&s).unwrap(), m.value(&s).unwrap());
    }

    #[test]
    fn isomorphic_copies_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_structure(&mut r, "M");
        let s = random_sentence(&mut r, 5);
        let mut perm: Vec<usize> = (0..m.size()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        let copy = m.permuted(&perm).unwrap();
        prop_assert_eq!(copy.value(&s).unwrap(), m.value(&s).unwrap());
    }

    #[test]
    fn connective_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_structure(&mut r, "M");
        let a = random_sentence(&mut r, 3);
        let b = random_sentence(&mut r, 3);
        let (x, y) = (m.value(&a).unwrap(), m.value(&b).unwrap());
        let val = |f: Formula| m.value(&Sentence::new(f).unwrap()).unwrap();
        let (fa, fb) = (a.formula().clone(), b.formula().clone());
        let zero = Rational::zero();
        let one = Rational::one();
        prop_assert_eq!(val(dot_minus(fa.clone(), fb.clone())), (&x - &y).max(zero.clone()));
        prop_assert_eq!(val(dot_plus(fa.clone(), fb.clone())), (&x + &y).min(one.clone()));
        prop_assert_eq!(val(Formula::neg(Formula::neg(fa.clone()))), x.clone());
        prop_assert_eq!(val(Formula::min(fa.clone(), fb.clone())), val(Formula::min(fb.clone(), fa.clone())));
        prop_assert_eq!(val(Formula::max(fa.clone(), fb.clone())), x.clone().max(y.clone()));
        prop_assert_eq!(val(Formula::prod(fa.clone(), fb.clone())), &x * &y);
        // x ∸ y = 1 - (1 - x ∔ y) in Łukasiewicz form: ~(~x +. y)
        prop_assert_eq!(
            val(dot_minus(fa.clone(), fb.clone())),
            val(Formula::neg(dot_plus(Formula::neg(fa), fb)))
        );
    }

    #[test]
    fn combinator_monotone(n in 0u32..=3, seed in any::<u64>()) {
        let level = DyadicLevel::new(n).unwrap();
        let mut r = rng(seed);
        let x: Vec<Rational> = (0..level.size()).map(|_| random_value(&mut r)).collect();
        let y: Vec<Rational> = x.iter().map(|v| v.clone().max(random_value(&mut r))).collect();
        prop_assert!(combinator_value(level, &x).unwrap() <= combinator_value(level, &y).unwrap());
    }

    #[test]
    fn combinator_grid_properties(x in (0u32..=3).prop_flat_map(vector)) {
        let n = x.len().trailing_zeros();
        let level = DyadicLevel::new(n).unwrap();
        let f = combinator_value(level, &x).unwrap();
        prop_assert!(f >= Rational::zero() && f <= Rational::one());
        for k in 0..x.len() {
            if x[k].is_zero() {
                prop_assert!(f <= level.point(k));
            }
            if x[..=k].iter().all(|v| v.is_one()) {
                prop_assert!(f >= level.point(k + 1));
            }
        }
    }

    #[test]
    fn combinator_sentence_coherent(n in 0u32..=2, seed in any::<u64>()) {
        let level = DyadicLevel::new(n).unwrap();
        let mut r = rng(seed);
        let m = random_structure(&mut r, "M");
        let members: Vec<Sentence> = (0..level.size()).map(|_| random_sentence(&mut r, 3)).collect();
        let theta = combinator_sentence(level, &WeakFamily::new(level, members.clone()).unwrap()).unwrap();
        let x: Vec<Rational> = members.iter().map(|s| m.value(s).unwrap()).collect();
        prop_assert_eq!(m.value(&theta).unwrap(), combinator_value(level, &x).unwrap());
        prop_assert_eq!(parse_sentence(&theta.to_string()).unwrap(), theta);
    }

    #[test]
    fn sequences_are_monotone_with_rates(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let m = random_structure(&mut r, "M");
        let inputs: Vec<Sentence> = (0..=n).map(|_| random_sentence(&mut r, 3)).collect();
        let weak = weak_limit_sequence(&inputs, n).unwrap();
        let strong = strong_limit_sequence(&inputs, n).unwrap();
        for i in 0..n {
            let (a, b) = (m.value(&weak[i]).unwrap(), m.value(&weak[i + 1]).unwrap());
            prop_assert!(a <= b && b <= &a + rat(1, 2 << i));
            let (a, b) = (m.value(&strong[i]).unwrap(), m.value(&strong[i + 1]).unwrap());
            prop_assert!(a <= b && b <= &a + rat(1, 1 << i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_implies_weak(seed in any::<u64>(), e in 1i64..=4) {
        let mut r = rng(seed);
        let eps = rat(e, 4);
        for f in common::all_fixtures() {
            let p = &f.problem;
            let common = p.common_vocabulary();
            // keep the random sentence only when it stays over the common symbols
            let s = random_sentence(&mut r, 3);
            let theta = if s.vocabulary().is_subset_of(&common) {
                s
            } else if let Some(sigma) = &f.sigma {
                sigma.clone()
            } else {
                Sentence::constant(random_value(&mut r)).unwrap()
            };
            if is_strong_interpolant(p, &theta, &eps).unwrap().passed() {
                prop_assert!(is_weak_interpolant(p, &theta, &eps).unwrap().passed(), "{}", f.name);
            }
        }
    }
}
