use super::sentence::{parse_sentence, parse_sentence_in};
use super::{ParseError, ParseErrorKind};
use crate::interp::{DyadicLevel, WeakFamily};
use crate::logic::{Sentence, Vocabulary};
use crate::semantics::Theory;

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        (!trimmed.is_empty() && !trimmed.starts_with('#')).then_some((i + 1, line))
    })
}

fn sentence_line(line: &str, number: usize, vocab: Option<&Vocabulary>) -> Result<Sentence, ParseError> {
    let parsed = match vocab {
        Some(v) => parse_sentence_in(line, v),
        None => parse_sentence(line),
    };
    parsed.map_err(|e| e.at_line(number))
}

/// One sentence per line; blank lines and `#` comment lines are skipped.
pub fn parse_theory(src: &str, vocab: Option<&Vocabulary>) -> Result<Theory, ParseError> {
    let sentences = content_lines(src)
        .map(|(n, line)| sentence_line(line, n, vocab))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Theory::new(sentences))
}

/// A sentence file holds exactly one sentence line.
pub fn parse_sentence_file(src: &str, vocab: Option<&Vocabulary>) -> Result<Sentence, ParseError> {
    let mut lines = content_lines(src);
    let (n, first) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::Syntax("no sentence in file".into())))?;
    if let Some((extra, _)) = lines.next() {
        return Err(ParseError::new(
            extra,
            1,
            ParseErrorKind::Syntax("expected a single sentence; use a theory file for several".into()),
        ));
    }
    sentence_line(first, n, vocab)
}

pub fn print_theory(t: &Theory) -> String {
    t.sentences().iter().map(|s| format!("{s}\n")).collect()
}

/// `level n` header, then line `k` holds the `k`-th member.
pub fn parse_weak_family(src: &str, vocab: Option<&Vocabulary>) -> Result<WeakFamily, ParseError> {
    let mut lines = content_lines(src);
    let (n, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::Syntax("missing `level n` header".into())))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let level = match words.as_slice() {
        ["level", k] => k.parse::<u32>().ok().and_then(|k| DyadicLevel::new(k).ok()),
        _ => None,
    }
    .ok_or_else(|| ParseError::new(n, 1, ParseErrorKind::Syntax("expected `level n`".into())))?;
    let members = lines
        .map(|(n, line)| sentence_line(line, n, vocab))
        .collect::<Result<Vec<_>, _>>()?;
    WeakFamily::new(level, members).map_err(|e| ParseError::new(n, 1, ParseErrorKind::Syntax(e.to_string())))
}

pub fn print_weak_family(w: &WeakFamily) -> String {
    let mut out = format!("level {}\n", w.level().n());
    for s in w.members() {
        out.push_str(&format!("{s}\n"));
    }
    out
}
