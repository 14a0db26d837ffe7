//! Line-oriented structure (`.cstr`) and family manifest (`.cfam`) formats.
//!
//! ```text
//! structure M1
//! universe a b c
//! pred P 1 lipschitz 1
//! P a = 1/4
//! func f 1
//! f a = b
//! dist
//! d a b = 1/2
//! end
//! ```
//!
//! Distances: `d(x,x) = 0` always, one entry fills both orders, and pairs
//! without an entry default to 1. `dist pseudo` tolerates zero distances
//! between distinct elements. `#` starts a comment.
//!
//! A family manifest starts with `family NAME`, declares the shared
//! vocabulary with `pred`/`func`/`dist` lines, then lists members as inline
//! `structure … end` blocks or `include PATH` lines.

use std::collections::HashSet;
use std::path::Path;

use super::lexer::parse_rational;
use super::{ParseError, ParseErrorKind};
use crate::logic::{Symbol, SymbolKind, Vocabulary, DISTANCE};
use crate::semantics::{tuples, ModelFamily, SemanticsError, Structure, StructureBuilder};
use crate::Rational;

#[derive(Debug, Clone)]
struct Word<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    words: Vec<Word<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, i: usize, kind: ParseErrorKind) -> ParseError {
        let column = self
            .words
            .get(i)
            .map(|w| w.column)
            .unwrap_or_else(|| self.words.last().map(|w| w.column + w.text.len()).unwrap_or(1));
        ParseError::new(self.number, column, kind)
    }

    fn syntax(&self, i: usize, msg: impl Into<String>) -> ParseError {
        self.err(i, ParseErrorKind::Syntax(msg.into()))
    }

    fn word(&self, i: usize, what: &str) -> Result<&'a str, ParseError> {
        self.words
            .get(i)
            .map(|w| w.text)
            .ok_or_else(|| self.syntax(i, format!("expected {what}")))
    }

    fn keyword(&self) -> &'a str {
        self.words[0].text
    }
}

fn split_lines(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut words = Vec::new();
        let mut start = None;
        for (i, ch) in content.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    words.push(Word { text: &content[s..i], column: content[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            words.push(Word { text: &content[s..], column: content[..s].chars().count() + 1 });
        }
        if !words.is_empty() {
            out.push(Line { number: idx + 1, words });
        }
    }
    out
}

fn rational_word(line: &Line<'_>, i: usize, what: &str) -> Result<Rational, ParseError> {
    let raw = line.word(i, what)?;
    parse_rational(raw).map_err(|msg| line.syntax(i, msg))
}

fn count_word(line: &Line<'_>, i: usize) -> Result<usize, ParseError> {
    let raw = line.word(i, "an arity")?;
    raw.parse()
        .map_err(|_| line.syntax(i, format!("malformed arity `{raw}`")))
}

fn semantic(line: &Line<'_>, i: usize, e: SemanticsError) -> ParseError {
    line.err(i, ParseErrorKind::Semantics(Box::new(e)))
}

/// `pred NAME ARITY [lipschitz L]`, `func NAME ARITY [lipschitz L]`, or
/// `dist [pseudo] [lipschitz L]`. Returns the symbol and the pseudo flag.
fn declaration(line: &Line<'_>) -> Result<(Symbol, bool), ParseError> {
    let mut i = 1;
    let (mut symbol, mut pseudo) = match line.keyword() {
        "dist" => (Symbol::distance(), false),
        kw => {
            let name = line.word(1, "a symbol name")?;
            if name == DISTANCE {
                return Err(line.syntax(1, "`d` is declared with a `dist` line"));
            }
            let arity = count_word(line, 2)?;
            i = 3;
            let kind = if kw == "pred" { SymbolKind::Predicate } else { SymbolKind::Function };
            (
                Symbol { name: name.to_string(), kind, arity, lipschitz: None },
                false,
            )
        }
    };
    while i < line.words.len() {
        match line.words[i].text {
            "pseudo" if symbol.name == DISTANCE && !pseudo => {
                pseudo = true;
                i += 1;
            }
            "lipschitz" if symbol.lipschitz.is_none() => {
                symbol.lipschitz = Some(rational_word(line, i + 1, "a Lipschitz constant")?);
                i += 2;
            }
            other => return Err(line.syntax(i, format!("unexpected `{other}`"))),
        }
    }
    Ok((symbol, pseudo))
}

/// Parses the `structure … end` block starting at `lines[start]`.
fn structure_block(lines: &[Line<'_>], start: usize) -> Result<(Structure, usize), ParseError> {
    let head = &lines[start];
    let name = head.word(1, "a structure name")?;
    if head.words.len() > 2 {
        return Err(head.syntax(2, "unexpected text after structure name"));
    }
    let mut builder: Option<StructureBuilder> = None;
    let mut declared: HashSet<String> = HashSet::new();
    let mut i = start + 1;
    while i < lines.len() {
        let line = &lines[i];
        i += 1;
        match line.keyword() {
            "end" => {
                let b = builder.ok_or_else(|| line.syntax(0, "structure has no `universe` line"))?;
                let structure = b.build().map_err(|e| semantic(line, 0, e))?;
                return Ok((structure, i));
            }
            "universe" => {
                if builder.is_some() {
                    return Err(line.syntax(0, "duplicate `universe` line"));
                }
                let elements: Vec<String> = line.words[1..].iter().map(|w| w.text.to_string()).collect();
                builder = Some(
                    StructureBuilder::new(name, elements).map_err(|e| semantic(line, 0, e))?,
                );
            }
            "pred" | "func" | "dist" => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| line.syntax(0, "`universe` must come before declarations"))?;
                let (symbol, pseudo) = declaration(line)?;
                if !declared.insert(symbol.name.clone()) {
                    return Err(line.syntax(1, format!("`{}` declared twice", symbol.name)));
                }
                if pseudo {
                    b.set_pseudo_metric(true);
                }
                b.declare(symbol).map_err(|e| semantic(line, 1, e))?;
            }
            "structure" | "family" | "include" => {
                return Err(line.syntax(0, "missing `end` for the previous structure"));
            }
            sym => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| line.syntax(0, "`universe` must come before table entries"))?;
                let decl = match b.vocabulary().get(sym) {
                    Some(d) => d.clone(),
                    None => return Err(line.err(0, ParseErrorKind::UnknownSymbol(sym.to_string()))),
                };
                let eq = line
                    .words
                    .iter()
                    .position(|w| w.text == "=")
                    .ok_or_else(|| line.syntax(line.words.len(), "expected `=`"))?;
                if eq - 1 != decl.arity {
                    return Err(line.err(
                        0,
                        ParseErrorKind::ArityMismatch {
                            name: sym.to_string(),
                            expected: decl.arity,
                            found: eq - 1,
                        },
                    ));
                }
                if line.words.len() != eq + 2 {
                    return Err(line.syntax(eq + 1, "expected exactly one value after `=`"));
                }
                let mut args = Vec::with_capacity(decl.arity);
                for j in 1..eq {
                    let e = line.words[j].text;
                    args.push(
                        b.element(e)
                            .map_err(|_| line.err(j, ParseErrorKind::UnknownElement(e.to_string())))?,
                    );
                }
                let value_at = eq + 1;
                match decl.kind {
                    SymbolKind::Predicate => {
                        let v = rational_word(line, value_at, "a value")?;
                        b.set_predicate(sym, &args, v).map_err(|e| semantic(line, value_at, e))?;
                    }
                    SymbolKind::Function => {
                        let e = line.words[value_at].text;
                        let out = b
                            .element(e)
                            .map_err(|_| line.err(value_at, ParseErrorKind::UnknownElement(e.to_string())))?;
                        b.set_function(sym, &args, out).map_err(|e| semantic(line, value_at, e))?;
                    }
                }
            }
        }
    }
    Err(head.syntax(0, format!("structure `{name}` is missing `end`")))
}

/// Parses a file holding exactly one `structure … end` block.
pub fn parse_structure(src: &str) -> Result<Structure, ParseError> {
    let lines = split_lines(src);
    let first = lines
        .first()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::Syntax("empty structure file".into())))?;
    if first.keyword() != "structure" {
        return Err(first.syntax(0, "expected `structure NAME`"));
    }
    let (s, next) = structure_block(&lines, 0)?;
    if let Some(extra) = lines.get(next) {
        return Err(extra.syntax(0, "unexpected text after `end`"));
    }
    Ok(s)
}

/// Parses a family manifest without `include` support.
pub fn parse_family(src: &str) -> Result<ModelFamily, ParseError> {
    parse_family_with(src, |path| Err(format!("cannot include `{path}` without a file context")))
}

/// Parses a family manifest; `include PATH` lines are read through `resolve`,
/// which returns the included structure file's text.
pub fn parse_family_with(
    src: &str,
    mut resolve: impl FnMut(&str) -> Result<String, String>,
) -> Result<ModelFamily, ParseError> {
    let lines = split_lines(src);
    let head = lines
        .first()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::Syntax("empty family file".into())))?;
    if head.keyword() != "family" {
        return Err(head.syntax(0, "expected `family NAME`"));
    }
    let name = head.word(1, "a family name")?;
    let mut vocab = Vocabulary::new();
    let mut members: Vec<Structure> = Vec::new();
    let mut names = HashSet::new();
    let mut i = 1;
    while i < lines.len() {
        let line = &lines[i];
        let (member, next) = match line.keyword() {
            "pred" | "func" | "dist" => {
                if !members.is_empty() {
                    return Err(line.syntax(0, "vocabulary declarations must precede the members"));
                }
                let (symbol, _) = declaration(line)?;
                if symbol.name != DISTANCE && vocab.contains(&symbol.name) {
                    return Err(line.syntax(1, format!("`{}` declared twice", symbol.name)));
                }
                vocab
                    .insert(symbol)
                    .map_err(|e| line.err(1, ParseErrorKind::Logic(e)))?;
                i += 1;
                continue;
            }
            "structure" => structure_block(&lines, i)?,
            "include" => {
                let path = line.word(1, "a path")?;
                let text = resolve(path).map_err(|message| {
                    line.err(1, ParseErrorKind::Io { path: path.to_string(), message })
                })?;
                let s = parse_structure(&text).map_err(|e| e.in_file(path))?;
                (s, i + 1)
            }
            other => return Err(line.syntax(0, format!("unexpected `{other}` in family file"))),
        };
        if !names.insert(member.name().to_string()) {
            return Err(line.err(0, ParseErrorKind::DuplicateStructure(member.name().to_string())));
        }
        if member.vocabulary() != &vocab {
            let msg = format!(
                "structure `{}` has vocabulary {}, family declares {}",
                member.name(),
                member.vocabulary(),
                vocab
            );
            return Err(line.err(0, ParseErrorKind::Semantics(Box::new(SemanticsError::VocabularyMismatch(msg)))));
        }
        members.push(member);
        i = next;
    }
    ModelFamily::new(name, vocab, members).map_err(|e| head.err(0, ParseErrorKind::Semantics(Box::new(e))))
}

/// Reads a family manifest from disk, resolving includes relative to it.
pub fn load_family(path: &Path) -> Result<ModelFamily, ParseError> {
    let shown = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|e| {
        ParseError::new(0, 0, ParseErrorKind::Io { path: shown.clone(), message: e.to_string() })
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_family_with(&src, |inc| {
        std::fs::read_to_string(base.join(inc)).map_err(|e| e.to_string())
    })
    .map_err(|e| e.in_file(shown))
}

/// Canonical structure text; `parse_structure` reads it back unchanged.
pub fn print_structure(m: &Structure) -> String {
    let mut out = format!("structure {}\nuniverse {}\n", m.name(), m.universe().join(" "));
    let modulus = |s: &Symbol| match &s.lipschitz {
        Some(l) => format!(" lipschitz {l}"),
        None => String::new(),
    };
    let n = m.size();
    for s in m.vocabulary().symbols().filter(|s| s.name != DISTANCE) {
        let kw = if s.kind == SymbolKind::Predicate { "pred" } else { "func" };
        out.push_str(&format!("{kw} {} {}{}\n", s.name, s.arity, modulus(s)));
        for args in tuples(n, s.arity) {
            let mut entry = s.name.clone();
            for &a in &args {
                entry.push(' ');
                entry.push_str(&m.universe()[a]);
            }
            let value = match s.kind {
                SymbolKind::Predicate => m.predicate_value(&s.name, &args).expect("total").to_string(),
                SymbolKind::Function => m.universe()[m.function_value(&s.name, &args).expect("total")].clone(),
            };
            out.push_str(&format!("{entry} = {value}\n"));
        }
    }
    let d = m.vocabulary().get(DISTANCE).expect("d is always declared");
    out.push_str("dist");
    if m.is_pseudo_metric() {
        out.push_str(" pseudo");
    }
    out.push_str(&modulus(d));
    out.push('\n');
    for x in 0..n {
        for y in (x + 1)..n {
            out.push_str(&format!("d {} {} = {}\n", m.universe()[x], m.universe()[y], m.distance(x, y)));
        }
    }
    out.push_str("end\n");
    out
}
