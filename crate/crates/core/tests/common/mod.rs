#![allow(dead_code)]

use std::path::{Path, PathBuf};

use cinterp_core::textio::{load_family, parse_sentence_file, parse_theory, print_formula};
use cinterp_core::{
    is_weak_interpolant, rat, Formula, InterpolationProblem, Rational, Sentence, Structure,
    StructureBuilder, Symbol, Term, Vocabulary,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)]
pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn fixture_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub struct Fixture {
    pub name: String,
    pub problem: InterpolationProblem,
    /// A shared sentence with `T_V ⊨ σ ≤ φ` and `T_W ⊨ σ ≥ ψ`, when known.
    pub sigma: Option<Sentence>,
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap_or_else(|e| panic!("{}: {e}", dir.join(file).display()))
}

pub fn fixture(name: &str) -> Fixture {
    let dir = fixture_dir(name);
    let family = load_family(&dir.join("family.cfam")).unwrap();
    let vocab = family.vocabulary().clone();
    let tv = parse_theory(&read(&dir, "tv.csnt"), Some(&vocab)).unwrap();
    let tw = parse_theory(&read(&dir, "tw.csnt"), Some(&vocab)).unwrap();
    let phi = parse_sentence_file(&read(&dir, "phi.csnt"), Some(&vocab)).unwrap();
    let psi = parse_sentence_file(&read(&dir, "psi.csnt"), Some(&vocab)).unwrap();
    let sigma = dir
        .join("sigma.csnt")
        .exists()
        .then(|| parse_sentence_file(&read(&dir, "sigma.csnt"), Some(&vocab)).unwrap());
    let problem = InterpolationProblem::new(family, tv, tw, phi, psi).unwrap();
    Fixture { name: name.to_string(), problem, sigma }
}

/// Fixtures where `T_V ∪ T_W ⊨ φ ≥ ψ` holds over the family.
pub const STRONG_FIXTURES: [&str; 3] = ["linear", "metric", "shared"];

pub fn all_fixtures() -> Vec<Fixture> {
    ["linear", "metric", "shared", "separation", "two", "twins"]
        .into_iter()
        .map(fixture)
        .collect()
}

// ---------------------------------------------------------------------------
// random structures and sentences over {P/1, R/2, f/1, c/0, d}

pub fn random_vocabulary() -> Vocabulary {
    Vocabulary::from_symbols([
        Symbol::predicate("P", 1),
        Symbol::predicate("R", 2),
        Symbol::function("f", 1),
        Symbol::function("c", 0),
    ])
    .unwrap()
}

pub fn random_value(rng: &mut TestRng) -> Rational {
    let den = *[1i64, 2, 3, 4, 6, 8, 12].choose(rng).unwrap();
    rat(rng.gen_range(0..=den), den)
}

pub fn random_structure(rng: &mut TestRng, name: &str) -> Structure {
    let n = rng.gen_range(1..=4usize);
    let universe: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut b = StructureBuilder::new(name, universe).unwrap();
    for s in random_vocabulary().symbols().filter(|s| s.name != "d") {
        b.declare(s.clone()).unwrap();
    }
    // distinct points of {0, 1/4, ..., 1} give a metric
    let mut points: Vec<i64> = (0..=4).collect();
    points.shuffle(rng);
    for x in 0..n {
        for y in (x + 1)..n {
            b.set_predicate("d", &[x, y], rat((points[x] - points[y]).abs(), 4)).unwrap();
        }
        b.set_predicate("P", &[x], random_value(rng)).unwrap();
        b.set_function("f", &[x], rng.gen_range(0..n)).unwrap();
        for y in 0..n {
            b.set_predicate("R", &[x, y], random_value(rng)).unwrap();
        }
    }
    b.set_function("c", &[], rng.gen_range(0..n)).unwrap();
    b.build().unwrap()
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_term(rng: &mut TestRng, bound: &[String], depth: usize) -> Term {
    let roll = rng.gen_range(0..10);
    if depth > 0 && roll < 2 {
        return Term::app("f", vec![random_term(rng, bound, depth - 1)]);
    }
    if bound.is_empty() || roll < 4 {
        Term::constant("c")
    } else {
        Term::var(bound.choose(rng).unwrap().clone())
    }
}

fn random_leaf(rng: &mut TestRng, bound: &[String]) -> Formula {
    match rng.gen_range(0..4) {
        0 => Formula::Const(random_value(rng)),
        1 => Formula::atom("P", vec![random_term(rng, bound, 1)]),
        2 => Formula::atom("R", vec![random_term(rng, bound, 1), random_term(rng, bound, 1)]),
        _ => Formula::atom("d", vec![random_term(rng, bound, 1), random_term(rng, bound, 1)]),
    }
}

pub fn random_formula(rng: &mut TestRng, depth: usize, bound: &mut Vec<String>) -> Formula {
    if depth == 0 || rng.gen_range(0..5) == 0 {
        return random_leaf(rng, bound);
    }
    let sub = |rng: &mut TestRng, bound: &mut Vec<String>| Box::new(random_formula(rng, depth - 1, bound));
    match rng.gen_range(0..9) {
        0 => Formula::Neg(sub(rng, bound)),
        1 => Formula::Min(sub(rng, bound), sub(rng, bound)),
        2 => Formula::Max(sub(rng, bound), sub(rng, bound)),
        3 => Formula::DotMinus(sub(rng, bound), sub(rng, bound)),
        4 => Formula::DotPlus(sub(rng, bound), sub(rng, bound)),
        5 => Formula::Prod(sub(rng, bound), sub(rng, bound)),
        6 => {
            let q = [rat(1, 2), rat(2, 3), rat(1, 1), rat(3, 2), rat(2, 1)].choose(rng).unwrap().clone();
            Formula::ScaleDivClamp(sub(rng, bound), q)
        }
        k => {
            let var = VARS.choose(rng).unwrap().to_string();
            bound.push(var.clone());
            let body = sub(rng, bound);
            bound.pop();
            if k == 7 {
                Formula::Sup(var, body)
            } else {
                Formula::Inf(var, body)
            }
        }
    }
}

pub fn random_sentence(rng: &mut TestRng, depth: usize) -> Sentence {
    Sentence::new(random_formula(rng, depth, &mut Vec::new())).unwrap()
}

// ---------------------------------------------------------------------------
// brute-force search oracle: plain recursive enumeration, sequential scan,
// full certificate for every candidate

fn variable_name(vocab: &Vocabulary, i: usize) -> String {
    let mut name = format!("x{i}");
    while vocab.contains(&name) {
        name.push('\'');
    }
    name
}

fn all_tuples(items: &[Term], arity: usize) -> Vec<Vec<Term>> {
    if arity == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for head in items {
        for rest in all_tuples(items, arity - 1) {
            let mut t = vec![head.clone()];
            t.extend(rest);
            out.push(t);
        }
    }
    out
}

fn formulas(vocab: &Vocabulary, pool: &[Rational], size: usize, depth: usize, max_depth: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    if size == 1 {
        out.extend(pool.iter().map(|q| Formula::Const(q.clone())));
        let mut terms: Vec<Term> = (0..depth).map(|i| Term::var(variable_name(vocab, i))).collect();
        terms.extend(vocab.functions().filter(|s| s.arity == 0).map(|s| Term::constant(s.name.clone())));
        for p in vocab.predicates() {
            for args in all_tuples(&terms, p.arity) {
                out.push(Formula::atom(p.name.clone(), args));
            }
        }
        return out;
    }
    for g in formulas(vocab, pool, size - 1, depth, max_depth) {
        out.push(Formula::neg(g));
    }
    for l in 1..size - 1 {
        for a in formulas(vocab, pool, l, depth, max_depth) {
            for b in formulas(vocab, pool, size - 1 - l, depth, max_depth) {
                out.push(cinterp_core::dot_minus(a.clone(), b.clone()));
                out.push(cinterp_core::dot_plus(a.clone(), b.clone()));
                out.push(Formula::min(a.clone(), b.clone()));
                out.push(Formula::max(a.clone(), b));
            }
        }
    }
    if depth < max_depth {
        for g in formulas(vocab, pool, size - 1, depth + 1, max_depth) {
            out.push(Formula::sup(variable_name(vocab, depth), g.clone()));
            out.push(Formula::inf(variable_name(vocab, depth), g));
        }
    }
    out
}

/// First passing candidate and the number of candidates checked.
pub fn oracle_search(
    p: &InterpolationProblem,
    eps: &Rational,
    max_depth: usize,
    max_candidates: usize,
    pool: &[Rational],
) -> (Option<Sentence>, usize) {
    let vocab = p.common_vocabulary();
    let mut pool = pool.to_vec();
    pool.sort();
    pool.dedup();
    let mut examined = 0;
    let mut size = 1;
    let mut empty_run = 0;
    while examined < max_candidates {
        let mut class: Vec<(String, Formula)> = formulas(&vocab, &pool, size, 0, max_depth)
            .into_iter()
            .map(|f| (print_formula(&f), f))
            .collect();
        class.sort_by(|a, b| a.0.cmp(&b.0));
        if class.is_empty() {
            // sizes up to max_depth + 1 may be empty before the first leaf is reachable
            empty_run += 1;
            if empty_run > max_depth + 1 {
                return (None, examined);
            }
        }
        for (_, f) in class {
            if examined == max_candidates {
                return (None, examined);
            }
            examined += 1;
            let theta = Sentence::new(f).unwrap();
            if is_weak_interpolant(p, &theta, eps).unwrap().passed() {
                return (Some(theta), examined);
            }
        }
        size += 1;
    }
    (None, examined)
}
