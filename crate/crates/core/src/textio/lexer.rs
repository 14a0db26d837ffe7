use num_bigint::BigInt;
use num_traits::Zero;

use super::{ParseError, ParseErrorKind};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(Rational, String),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Star,
    DotMinus,
    DotPlus,
    SlashDot,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(_, raw) => format!("`{raw}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Star => "`*`".into(),
            Tok::DotMinus => "`-.`".into(),
            Tok::DotPlus => "`+.`".into(),
            Tok::SlashDot => "`/.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start_line,
                column: start_col,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let two = |tok: Tok| (tok, 2);
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '~' => (Tok::Tilde, 1),
            '*' => (Tok::Star, 1),
            '-' if next == Some('.') => two(Tok::DotMinus),
            '+' if next == Some('.') => two(Tok::DotPlus),
            '/' if next == Some('.') => two(Tok::SlashDot),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let raw: String = chars[i..j].iter().collect();
                let value = parse_rational(&raw)
                    .map_err(|msg| ParseError::new(start_line, start_col, ParseErrorKind::Syntax(msg)))?;
                (Tok::Num(value, raw), j - i)
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                (Tok::Ident(chars[i..j].iter().collect()), j - i)
            }
            other => {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                ))
            }
        };
        push(&mut out, tok);
        i += width;
        column += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

/// Parses `INT` or `INT/INT` (nonnegative, nonzero denominator). No decimals.
pub fn parse_rational(raw: &str) -> Result<Rational, String> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match raw.split_once('/') {
        Some((n, d)) => (n, d),
        None => (raw, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(format!("malformed rational `{raw}` (expected p or p/q)"));
    }
    let num: BigInt = num.parse().map_err(|_| format!("malformed rational `{raw}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("malformed rational `{raw}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{raw}`"));
    }
    Ok(Rational::new(num, den))
}
