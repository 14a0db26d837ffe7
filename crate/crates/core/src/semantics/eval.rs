use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::structure::{Element, Structure};
use super::SemanticsError;
use crate::logic::{truncated_add, truncated_sub, Formula, Term};
use crate::Rational;

/// Values for free variables.
pub type Assignment = BTreeMap<String, Element>;

/// Exact truth value of `f` in `m` under `assignment`.
///
/// Quantifiers range over the finite universe, so `sup`/`inf` are `max`/`min`.
pub fn evaluate(m: &Structure, f: &Formula, assignment: &Assignment) -> Result<Rational, SemanticsError> {
    let mut env: Vec<(&str, Element)> = assignment.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    if let Some(&(_, bad)) = env.iter().find(|(_, e)| *e >= m.size()) {
        return Err(SemanticsError::ElementOutOfRange(bad));
    }
    eval(m, f, &mut env)
}

impl Structure {
    /// Truth value of a sentence.
    pub fn value(&self, s: &crate::logic::Sentence) -> Result<Rational, SemanticsError> {
        eval(self, s.formula(), &mut Vec::new())
    }
}

fn lookup(env: &[(&str, Element)], name: &str) -> Option<Element> {
    env.iter().rev().find(|(k, _)| *k == name).map(|&(_, e)| e)
}

fn eval_term(m: &Structure, t: &Term, env: &[(&str, Element)]) -> Result<Element, SemanticsError> {
    match t {
        Term::Var(v) => lookup(env, v).ok_or_else(|| SemanticsError::UnboundVariable(v.clone())),
        Term::App(name, args) => {
            let table = m
                .functions
                .get(name)
                .ok_or_else(|| SemanticsError::MissingSymbol(name.clone()))?;
            if table.arity != args.len() {
                return Err(SemanticsError::ArityMismatch {
                    name: name.clone(),
                    expected: table.arity,
                    found: args.len(),
                });
            }
            let vals = args
                .iter()
                .map(|a| eval_term(m, a, env))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(m.function_value(name, &vals).expect("table is total"))
        }
    }
}

fn eval<'f>(m: &Structure, f: &'f Formula, env: &mut Vec<(&'f str, Element)>) -> Result<Rational, SemanticsError> {
    Ok(match f {
        Formula::Const(r) => r.clone(),
        Formula::Atom(name, args) => {
            let table = m
                .predicates
                .get(name)
                .ok_or_else(|| SemanticsError::MissingSymbol(name.clone()))?;
            if table.arity != args.len() {
                return Err(SemanticsError::ArityMismatch {
                    name: name.clone(),
                    expected: table.arity,
                    found: args.len(),
                });
            }
            let vals = args
                .iter()
                .map(|a| eval_term(m, a, env))
                .collect::<Result<Vec<_>, _>>()?;
            m.predicate_value(name, &vals).expect("table is total").clone()
        }
        Formula::Neg(g) => Rational::one() - eval(m, g, env)?,
        Formula::Min(g, h) => {
            let (x, y) = (eval(m, g, env)?, eval(m, h, env)?);
            x.min(y)
        }
        Formula::Max(g, h) => {
            let (x, y) = (eval(m, g, env)?, eval(m, h, env)?);
            x.max(y)
        }
        Formula::DotMinus(g, h) => truncated_sub(&eval(m, g, env)?, &eval(m, h, env)?),
        Formula::DotPlus(g, h) => truncated_add(&eval(m, g, env)?, &eval(m, h, env)?),
        Formula::Prod(g, h) => eval(m, g, env)? * eval(m, h, env)?,
        Formula::ScaleDivClamp(g, q) => {
            let scaled = eval(m, g, env)? / q;
            scaled.min(Rational::one())
        }
        Formula::Sup(v, g) => {
            let mut best = Rational::zero();
            for e in 0..m.size() {
                env.push((v.as_str(), e));
                let val = eval(m, g, env);
                env.pop();
                best = best.max(val?);
            }
            best
        }
        Formula::Inf(v, g) => {
            let mut best = Rational::one();
            for e in 0..m.size() {
                env.push((v.as_str(), e));
                let val = eval(m, g, env);
                env.pop();
                best = best.min(val?);
            }
            best
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{dot_minus, dot_plus, scale_div_clamp, Symbol, DISTANCE};
    use crate::rat;
    use crate::semantics::StructureBuilder;

    fn fixture() -> Structure {
        let mut b = StructureBuilder::new("M", vec!["a".into(), "b".into()]).unwrap();
        b.declare(Symbol::predicate("P", 1)).unwrap();
        b.declare(Symbol::function("c", 0)).unwrap();
        b.set_predicate("P", &[0], rat(1, 4)).unwrap();
        b.set_predicate("P", &[1], rat(2, 3)).unwrap();
        b.set_function("c", &[], 1).unwrap();
        b.build().unwrap()
    }

    fn closed(m: &Structure, f: &Formula) -> Rational {
        evaluate(m, f, &Assignment::new()).unwrap()
    }

    #[test]
    fn distance_reflexive_under_assignment() {
        let m = fixture();
        let f = Formula::atom(DISTANCE, vec![Term::var("x"), Term::var("x")]);
        let a = Assignment::from([("x".to_string(), 0)]);
        assert_eq!(evaluate(&m, &f, &a).unwrap(), rat(0, 1));
    }

    #[test]
    fn quantifiers_take_max_and_min() {
        let m = fixture();
        let px = Formula::atom("P", vec![Term::var("x")]);
        assert_eq!(closed(&m, &Formula::sup("x", px.clone())), rat(2, 3));
        assert_eq!(closed(&m, &Formula::inf("x", px)), rat(1, 4));
    }

    #[test]
    fn connective_contracts() {
        let m = fixture();
        assert_eq!(closed(&m, &dot_minus(Formula::ratio(1, 2), Formula::ratio(3, 4))), rat(0, 1));
        assert_eq!(closed(&m, &dot_minus(Formula::ratio(1, 2), Formula::ratio(1, 2))), rat(0, 1));
        assert_eq!(closed(&m, &dot_minus(Formula::ratio(3, 4), Formula::ratio(1, 4))), rat(1, 2));
        assert_eq!(closed(&m, &dot_plus(Formula::ratio(1, 2), Formula::ratio(3, 4))), rat(1, 1));
        assert_eq!(closed(&m, &dot_plus(Formula::ratio(1, 4), Formula::ratio(1, 4))), rat(1, 2));
        let pc = Formula::atom("P", vec![Term::constant("c")]);
        assert_eq!(closed(&m, &dot_plus(Formula::zero(), pc.clone())), closed(&m, &pc));
        let s = |f: Formula, q| closed(&m, &scale_div_clamp(f, q).unwrap());
        assert_eq!(s(Formula::ratio(3, 10), rat(2, 5)), rat(3, 4));
        assert_eq!(s(Formula::zero(), rat(1, 3)), rat(0, 1));
        assert_eq!(s(Formula::ratio(1, 2), rat(1, 4)), rat(1, 1));
        assert_eq!(closed(&m, &Formula::neg(Formula::ratio(1, 3))), rat(2, 3));
        assert_eq!(closed(&m, &Formula::prod(Formula::ratio(1, 2), Formula::ratio(2, 3))), rat(1, 3));
    }

    #[test]
    fn errors_for_missing_symbols_and_variables() {
        let m = fixture();
        let q = Formula::atom("Q", vec![Term::constant("c")]);
        assert_eq!(
            evaluate(&m, &q, &Assignment::new()).unwrap_err(),
            SemanticsError::MissingSymbol("Q".into())
        );
        let px = Formula::atom("P", vec![Term::var("x")]);
        assert_eq!(
            evaluate(&m, &px, &Assignment::new()).unwrap_err(),
            SemanticsError::UnboundVariable("x".into())
        );
        let bad = Formula::atom("P", vec![Term::constant("c"), Term::constant("c")]);
        assert!(matches!(
            evaluate(&m, &bad, &Assignment::new()),
            Err(SemanticsError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn inner_binder_shadows() {
        let m = fixture();
        // sup x . (P(x) -. inf x . P(x)) = 2/3 - 1/4
        let px = Formula::atom("P", vec![Term::var("x")]);
        let f = Formula::sup("x", dot_minus(px.clone(), Formula::inf("x", px)));
        assert_eq!(closed(&m, &f), rat(5, 12));
    }
}
