//! Batch front end over `cinterp-core`.
//!
//! [`run`] takes an argument list and returns the exit status with the text
//! that would go to standard output and standard error. Status 0 means the
//! command succeeded or its certificate passed, 1 a failed certificate or an
//! absent search result, 2 a usage or input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use cinterp_core::interp::{
    check_separation, search_weak_interpolant_detailed, separation_scale, strong_from_weak_eps,
    FixedProvider, SearchProvider, WeakProvider,
};
use cinterp_core::semantics::Entailment;
use cinterp_core::textio::{
    load_family, parse_rational, parse_sentence_file, parse_structure, parse_theory, parse_weak_family,
    ParseError,
};
use cinterp_core::{
    check_structure, check_uniform_cauchy, family_consistent, family_entails_ge, family_models,
    is_strong_interpolant, is_weak_interpolant, separation_sentence, strong_limit_sequence,
    weak_limit_sequence, Certificate, InterpolationProblem, ModelFamily, Rational, SearchBudget,
    Sentence, Theory, Vocabulary,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "cinterp", version, about = "Interpolants in continuous logic over finite model families")]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact value of a sentence in a structure.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        sentence: PathBuf,
    },
    /// Metric axioms and Lipschitz moduli of a structure.
    Check {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Family-relative consequence queries.
    Holds {
        #[arg(value_enum)]
        query: HoldsQuery,
        #[arg(long)]
        family: PathBuf,
        /// Theory file; omitted means the empty theory.
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Left-hand side for `ge`.
        #[arg(long, required_if_eq("query", "ge"))]
        lhs: Option<PathBuf>,
        /// Right-hand side for `ge`.
        #[arg(long, required_if_eq("query", "ge"))]
        rhs: Option<PathBuf>,
    },
    /// Weak interpolant by rescaling a separating sentence.
    Weak {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Shared sentence with `T_V ∪ {φ} ⊨ ρ = 0` and positive on `T_W ∪ {ψ}`.
        #[arg(long)]
        rho: PathBuf,
        /// Scale; defaults to the least value of ρ over `T_W ∪ {ψ}`.
        #[arg(long, value_parser = rational)]
        s: Option<Rational>,
    },
    /// Strong interpolant from weak interpolants at half the precision.
    Strong {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_parser = rational)]
        eps: Rational,
        /// Weak family file (`level n` header, one sentence per line);
        /// without it the members are searched for.
        #[arg(long)]
        weak_family: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Limit sequences built from a list of sentences.
    Sequence {
        #[arg(value_enum)]
        kind: Kind,
        /// One sentence per line.
        #[arg(long)]
        inputs: PathBuf,
        /// Index of the last element.
        #[arg(long)]
        n: usize,
        /// Also check the Cauchy rate on this family.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Enumerative search for a weak interpolant.
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_parser = rational)]
        eps: Rational,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certificate for a proposed interpolant.
    Verify {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HoldsQuery {
    Models,
    Consistent,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Weak,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    Weak,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    tv: PathBuf,
    #[arg(long)]
    tw: PathBuf,
    #[arg(long)]
    phi: PathBuf,
    #[arg(long)]
    psi: PathBuf,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 1)]
    max_depth: usize,
    #[arg(long, default_value_t = 10_000)]
    max_candidates: usize,
    /// Comma-separated constants allowed as leaves.
    #[arg(long, value_delimiter = ',', value_parser = rational, default_value = "0,1/2,1")]
    pool: Vec<Rational>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        Ok(SearchBudget::new(self.max_depth, self.max_candidates, self.pool.clone())?)
    }
}

fn rational(raw: &str) -> Result<Rational, String> {
    parse_rational(raw.trim())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("{}: cannot read file", path.display()))
}

fn located(path: &Path) -> impl FnOnce(ParseError) -> anyhow::Error + '_ {
    move |e| anyhow!(e.in_file(path.display().to_string()))
}

fn sentence(path: &Path, vocab: Option<&Vocabulary>) -> Result<Sentence> {
    parse_sentence_file(&read(path)?, vocab).map_err(located(path))
}

fn theory(path: &Path, vocab: Option<&Vocabulary>) -> Result<Theory> {
    parse_theory(&read(path)?, vocab).map_err(located(path))
}

fn family(path: &Path) -> Result<ModelFamily> {
    load_family(path).map_err(|e| anyhow!(e))
}

fn problem(args: &ProblemArgs) -> Result<InterpolationProblem> {
    let fam = family(&args.family)?;
    let vocab = fam.vocabulary().clone();
    let tv = theory(&args.tv, Some(&vocab))?;
    let tw = theory(&args.tw, Some(&vocab))?;
    let phi = sentence(&args.phi, Some(&vocab))?;
    let psi = sentence(&args.psi, Some(&vocab))?;
    Ok(InterpolationProblem::new(fam, tv, tw, phi, psi)?)
}

fn verdict(cert: &Certificate) -> i32 {
    if cert.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn entailment_line(e: &Entailment) -> String {
    match &e.counterexample {
        None if e.checked == 0 => "PASS ge - vacuous\n".to_string(),
        None => "PASS ge - -\n".to_string(),
        Some(cx) => {
            let values: Vec<String> = cx.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("FAIL ge {} {}\n", cx.model, values.join(" "))
        }
    }
}

fn execute(cmd: &Command, out: &mut String, err: &mut String) -> Result<i32> {
    match cmd {
        Command::Eval { structure, sentence: s } => {
            let m = parse_structure(&read(structure)?).map_err(located(structure))?;
            let s = sentence(s, Some(m.vocabulary()))?;
            writeln!(out, "{}", m.value(&s)?)?;
            Ok(EXIT_PASS)
        }
        Command::Check { structure } => {
            let m = parse_structure(&read(structure)?).map_err(located(structure))?;
            let report = check_structure(&m);
            let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
            writeln!(out, "{} metric", status(report.metric_ok))?;
            writeln!(out, "{} lipschitz", status(report.lipschitz_ok))?;
            for v in &report.violations {
                writeln!(out, "violation {v}")?;
            }
            Ok(if report.ok() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Holds { query, family: fpath, theory: tpath, lhs, rhs } => {
            let fam = family(fpath)?;
            let vocab = fam.vocabulary().clone();
            let t = match tpath {
                Some(p) => theory(p, Some(&vocab))?,
                None => Theory::empty(),
            };
            match query {
                HoldsQuery::Models => {
                    let models = family_models(&fam, &t)?;
                    for m in &models {
                        writeln!(out, "{}", m.name())?;
                    }
                    Ok(if models.is_empty() { EXIT_FAIL } else { EXIT_PASS })
                }
                HoldsQuery::Consistent => {
                    let ok = family_consistent(&fam, &t)?;
                    writeln!(out, "{}", if ok { "consistent" } else { "inconsistent" })?;
                    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
                }
                HoldsQuery::Ge => {
                    let lhs = sentence(lhs.as_ref().expect("required by clap"), Some(&vocab))?;
                    let rhs = sentence(rhs.as_ref().expect("required by clap"), Some(&vocab))?;
                    let e = family_entails_ge(&fam, &t, &lhs, &rhs)?;
                    out.push_str(&entailment_line(&e));
                    Ok(if e.holds { EXIT_PASS } else { EXIT_FAIL })
                }
            }
        }
        Command::Weak { problem: args, rho, s } => {
            let p = problem(args)?;
            let rho = sentence(rho, Some(p.family().vocabulary()))?;
            let s = match s {
                Some(s) => s.clone(),
                None => separation_scale(&p, &rho)?
                    .ok_or_else(|| anyhow!("rho is 0 on a model of T_W with psi; no positive scale exists"))?,
            };
            let theta = separation_sentence(&rho, &s)?;
            let cert = check_separation(&p, &theta)?;
            writeln!(out, "{theta}")?;
            out.push_str(&cert.report());
            Ok(verdict(&cert))
        }
        Command::Strong { problem: args, eps, weak_family, budget } => {
            let p = problem(args)?;
            let mut provider: Box<dyn WeakProvider> = match weak_family {
                Some(path) => {
                    let w = parse_weak_family(&read(path)?, Some(p.family().vocabulary())).map_err(located(path))?;
                    Box::new(FixedProvider(w))
                }
                None => Box::new(SearchProvider::new(budget.budget()?)),
            };
            let outcome = strong_from_weak_eps(&p, eps, provider.as_mut())?;
            writeln!(err, "level {} eps {}", outcome.level.n(), outcome.eps())?;
            writeln!(out, "{}", outcome.theta)?;
            out.push_str(&outcome.certificate.report());
            Ok(verdict(&outcome.certificate))
        }
        Command::Sequence { kind, inputs, n, family: fpath } => {
            let fam = fpath.as_deref().map(family).transpose()?;
            let vocab = fam.as_ref().map(|f| f.vocabulary());
            let inputs = theory(inputs, vocab)?;
            let (thetas, bounds): (Vec<Sentence>, Vec<Rational>) = match kind {
                Kind::Weak => (
                    weak_limit_sequence(inputs.sentences(), *n)?,
                    (0..*n).map(|i| dyadic(i + 1)).collect(),
                ),
                Kind::Strong => (strong_limit_sequence(inputs.sentences(), *n)?, (0..*n).map(dyadic).collect()),
            };
            for t in &thetas {
                writeln!(out, "{t}")?;
            }
            match fam {
                Some(fam) => {
                    let cert = check_uniform_cauchy(&fam, &thetas, &bounds)?;
                    out.push_str(&cert.report());
                    Ok(verdict(&cert))
                }
                None => Ok(EXIT_PASS),
            }
        }
        Command::Search { kind: SearchKind::Weak, problem: args, eps, budget } => {
            let p = problem(args)?;
            let outcome = search_weak_interpolant_detailed(&p, eps, &budget.budget()?)?;
            writeln!(err, "examined {}", outcome.examined)?;
            match outcome.found {
                Some(theta) => {
                    writeln!(out, "{theta}")?;
                    Ok(EXIT_PASS)
                }
                None => {
                    writeln!(out, "absent")?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Verify { kind, problem: args, theta, eps } => {
            let p = problem(args)?;
            let theta = sentence(theta, Some(p.family().vocabulary()))?;
            let cert = match kind {
                Kind::Weak => is_weak_interpolant(&p, &theta, eps)?,
                Kind::Strong => is_strong_interpolant(&p, &theta, eps)?,
            };
            out.push_str(&cert.report());
            Ok(verdict(&cert))
        }
    }
}

/// `2^-i`.
fn dyadic(i: usize) -> Rational {
    let half = Rational::new(1.into(), 2.into());
    (0..i).fold(Rational::new(1.into(), 1.into()), |acc, _| acc * &half)
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_ERROR, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match execute(&cli.command, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(e) => {
            writeln!(stderr, "error: {e:#}").expect("writing to a String");
            return Outcome { code: EXIT_ERROR, stdout, stderr };
        }
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &stdout) {
            writeln!(stderr, "error: {}: cannot write file: {e}", path.display()).expect("writing to a String");
            return Outcome { code: EXIT_ERROR, stdout: String::new(), stderr };
        }
        stdout.clear();
    }
    Outcome { code, stdout, stderr }
}
