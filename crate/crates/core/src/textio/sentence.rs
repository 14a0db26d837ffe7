use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind};
use crate::logic::{Formula, Sentence, SymbolKind, Term, Vocabulary, DISTANCE};

const KEYWORDS: [&str; 4] = ["sup", "inf", "min", "max"];

struct Parser<'v> {
    toks: Vec<Token>,
    pos: usize,
    bound: Vec<String>,
    vocab: Option<&'v Vocabulary>,
    seen: BTreeMap<String, (SymbolKind, usize)>,
}

impl<'v> Parser<'v> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError::new(t.line, t.column, kind)
    }

    fn expect(&mut self, want: Tok) -> Result<Token, ParseError> {
        let t = self.advance();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.error_at(
                &t,
                ParseErrorKind::Syntax(format!("expected {}, found {}", want.describe(), t.tok.describe())),
            ))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.advance();
        match &t.tok {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => Ok((name.clone(), t.clone())),
            other => Err(self.error_at(
                &t,
                ParseErrorKind::Syntax(format!("expected {what}, found {}", other.describe())),
            )),
        }
    }

    fn note_symbol(
        &mut self,
        at: &Token,
        name: &str,
        kind: SymbolKind,
        arity: usize,
        bare: bool,
    ) -> Result<(), ParseError> {
        let mismatch = |expected: usize| {
            ParseErrorKind::ArityMismatch {
                name: name.to_string(),
                expected,
                found: arity,
            }
        };
        if name == DISTANCE && (kind != SymbolKind::Predicate || arity != 2) {
            return Err(self.error_at(at, mismatch(2)));
        }
        if let Some(vocab) = self.vocab {
            match vocab.get(name) {
                None if bare => {
                    return Err(self.error_at(at, ParseErrorKind::FreeVariable(name.to_string())))
                }
                None => return Err(self.error_at(at, ParseErrorKind::UnknownSymbol(name.to_string()))),
                Some(decl) if decl.kind != kind => {
                    let msg = format!("`{name}` is a {}, used as a {kind}", decl.kind);
                    return Err(self.error_at(at, ParseErrorKind::Syntax(msg)));
                }
                Some(decl) if decl.arity != arity => return Err(self.error_at(at, mismatch(decl.arity))),
                Some(_) => {}
            }
        }
        match self.seen.get(name) {
            Some(&(k, _)) if k != kind => {
                let msg = format!("`{name}` used both as a {k} and as a {kind}");
                Err(self.error_at(at, ParseErrorKind::Syntax(msg)))
            }
            Some(&(_, a)) if a != arity => Err(self.error_at(at, mismatch(a))),
            Some(_) => Ok(()),
            None => {
                self.seen.insert(name.to_string(), (kind, arity));
                Ok(())
            }
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match &self.peek().tok {
            Tok::Ident(k) if k == "sup" || k == "inf" => self.quantifier(),
            _ => self.additive(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let kw = self.advance();
        let (var, _) = self.expect_ident("a variable")?;
        self.expect(Tok::Dot)?;
        self.bound.push(var.clone());
        let body = self.formula();
        self.bound.pop();
        let body = body?;
        Ok(match &kw.tok {
            Tok::Ident(k) if k == "sup" => Formula::sup(var, body),
            _ => Formula::inf(var, body),
        })
    }

    fn additive(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.scaled()?;
        loop {
            match self.peek().tok {
                Tok::DotMinus => {
                    self.advance();
                    let right = self.scaled()?;
                    left = Formula::DotMinus(Box::new(left), Box::new(right));
                }
                Tok::DotPlus => {
                    self.advance();
                    let right = self.scaled()?;
                    left = Formula::DotPlus(Box::new(left), Box::new(right));
                }
                _ => return Ok(left),
            }
        }
    }

    fn scaled(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.product()?;
        while self.peek().tok == Tok::SlashDot {
            self.advance();
            let t = self.advance();
            match &t.tok {
                Tok::Num(q, _) if q.is_positive() => f = Formula::ScaleDivClamp(Box::new(f), q.clone()),
                Tok::Num(_, raw) => {
                    return Err(self.error_at(
                        &t,
                        ParseErrorKind::Syntax(format!("scale divisor `{raw}` must be positive")),
                    ))
                }
                other => {
                    return Err(self.error_at(
                        &t,
                        ParseErrorKind::Syntax(format!("expected a rational after `/.`, found {}", other.describe())),
                    ))
                }
            }
        }
        Ok(f)
    }

    fn product(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.advance();
            let g = self.unary()?;
            f = Formula::prod(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.peek().tok == Tok::Tilde {
            self.advance();
            return Ok(Formula::neg(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(r, raw) => {
                self.advance();
                if *r > crate::Rational::one() {
                    return Err(self.error_at(&t, ParseErrorKind::ConstantOutOfRange(raw.clone())));
                }
                Ok(Formula::Const(r.clone()))
            }
            Tok::LParen => {
                self.advance();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(k) if k == "sup" || k == "inf" => self.quantifier(),
            Tok::Ident(k) if k == "min" || k == "max" => {
                let is_min = k == "min";
                self.advance();
                self.expect(Tok::LParen)?;
                let a = self.formula()?;
                self.expect(Tok::Comma)?;
                let b = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(if is_min { Formula::min(a, b) } else { Formula::max(a, b) })
            }
            Tok::Ident(name) => {
                let name = name.clone();
                self.advance();
                let args = if self.peek().tok == Tok::LParen {
                    self.advance();
                    self.term_list()?
                } else {
                    Vec::new()
                };
                self.note_symbol(&t, &name, SymbolKind::Predicate, args.len(), false)?;
                Ok(Formula::Atom(name, args))
            }
            other => Err(self.error_at(
                &t,
                ParseErrorKind::Syntax(format!("expected a formula, found {}", other.describe())),
            )),
        }
    }

    /// Arguments after an opening parenthesis, through the closing one.
    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.peek().tok == Tok::RParen {
            self.advance();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            let t = self.advance();
            match &t.tok {
                Tok::Comma => continue,
                Tok::RParen => return Ok(args),
                other => {
                    return Err(self.error_at(
                        &t,
                        ParseErrorKind::Syntax(format!("expected `,` or `)`, found {}", other.describe())),
                    ))
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, t) = self.expect_ident("a term")?;
        if *self.peek_at(0) == Tok::LParen {
            self.advance();
            let args = self.term_list()?;
            self.note_symbol(&t, &name, SymbolKind::Function, args.len(), false)?;
            return Ok(Term::App(name, args));
        }
        if self.bound.contains(&name) {
            return Ok(Term::Var(name));
        }
        self.note_symbol(&t, &name, SymbolKind::Function, 0, true)?;
        Ok(Term::App(name, Vec::new()))
    }
}

fn parse_with(src: &str, vocab: Option<&Vocabulary>) -> Result<Formula, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        bound: Vec::new(),
        vocab,
        seen: BTreeMap::new(),
    };
    let f = p.formula()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(p.error_at(
            &t,
            ParseErrorKind::Syntax(format!("unexpected {} after formula", t.tok.describe())),
        ));
    }
    Ok(f)
}

/// Parses a closed formula without a vocabulary; unbound identifiers in term
/// position become constant symbols.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    parse_with(src, None)
}

pub fn parse_sentence(src: &str) -> Result<Sentence, ParseError> {
    let f = parse_with(src, None)?;
    Sentence::new(f).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Logic(e)))
}

/// Parses against a declared vocabulary: every symbol must be declared with
/// the arity used, and an unbound identifier that is not a declared constant
/// is reported as a free variable.
pub fn parse_sentence_in(src: &str, vocab: &Vocabulary) -> Result<Sentence, ParseError> {
    let f = parse_with(src, Some(vocab))?;
    Sentence::new(f).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Logic(e)))
}

fn write_term(t: &Term, bound: &[&str], out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::App(name, args) => {
            out.push_str(name);
            if args.is_empty() {
                if bound.contains(&name.as_str()) {
                    out.push_str("()");
                }
                return;
            }
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(a, bound, out);
            }
            out.push(')');
        }
    }
}

fn write_operand<'f>(f: &'f Formula, bound: &mut Vec<&'f str>, out: &mut String) {
    if matches!(f, Formula::Sup(..) | Formula::Inf(..)) {
        out.push('(');
        write_formula(f, bound, out);
        out.push(')');
    } else {
        write_formula(f, bound, out);
    }
}

fn write_infix<'f>(a: &'f Formula, op: &str, b: &'f Formula, bound: &mut Vec<&'f str>, out: &mut String) {
    out.push('(');
    write_operand(a, bound, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_operand(b, bound, out);
    out.push(')');
}

fn write_formula<'f>(f: &'f Formula, bound: &mut Vec<&'f str>, out: &mut String) {
    match f {
        Formula::Const(r) => out.push_str(&r.to_string()),
        Formula::Atom(name, args) => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(a, bound, out);
            }
            out.push(')');
        }
        Formula::Neg(g) => {
            out.push('~');
            write_operand(g, bound, out);
        }
        Formula::Min(g, h) | Formula::Max(g, h) => {
            out.push_str(if matches!(f, Formula::Min(..)) { "min(" } else { "max(" });
            write_formula(g, bound, out);
            out.push_str(", ");
            write_formula(h, bound, out);
            out.push(')');
        }
        Formula::DotMinus(g, h) => write_infix(g, "-.", h, bound, out),
        Formula::DotPlus(g, h) => write_infix(g, "+.", h, bound, out),
        Formula::Prod(g, h) => write_infix(g, "*", h, bound, out),
        Formula::ScaleDivClamp(g, q) => {
            out.push('(');
            write_operand(g, bound, out);
            out.push_str(" /. ");
            out.push_str(&q.to_string());
            out.push(')');
        }
        Formula::Sup(v, g) | Formula::Inf(v, g) => {
            out.push_str(if matches!(f, Formula::Sup(..)) { "sup " } else { "inf " });
            out.push_str(v);
            out.push_str(" . ");
            bound.push(v);
            write_formula(g, bound, out);
            bound.pop();
        }
    }
}

/// Canonical text: infix connectives are always parenthesized, quantifiers
/// used as operands are wrapped, rationals are in lowest terms.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut Vec::new(), &mut out);
    out
}

pub fn print_sentence(s: &Sentence) -> String {
    print_formula(s.formula())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self.formula()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{dot_minus, Symbol};
    use crate::rat;

    fn pc(name: &str) -> Formula {
        Formula::atom(name, vec![Term::constant("c")])
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_formula("1/2").unwrap(), Formula::ratio(1, 2));
        assert_eq!(
            parse_formula("sup x . d(x,x)").unwrap(),
            Formula::sup("x", Formula::atom("d", vec![Term::var("x"), Term::var("x")]))
        );
        assert_eq!(
            parse_formula("max(P(c) -. 1/4 , Q(c))").unwrap(),
            Formula::max(dot_minus(pc("P"), Formula::ratio(1, 4)), pc("Q"))
        );
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_formula(&Formula::ratio(1, 2)), "1/2");
        assert_eq!(print_formula(&dot_minus(Formula::one(), Formula::zero())), "(1 -. 0)");
        let s = Formula::sup("x", Formula::atom("d", vec![Term::var("x"), Term::var("x")]));
        assert_eq!(print_formula(&s), "sup x . d(x, x)");
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("~P(c) * Q(c) /. 1/2 -. 1/4 +. 1/8").unwrap();
        let expected = Formula::DotPlus(
            Box::new(dot_minus(
                Formula::ScaleDivClamp(
                    Box::new(Formula::prod(Formula::neg(pc("P")), pc("Q"))),
                    rat(1, 2),
                ),
                Formula::ratio(1, 4),
            )),
            Box::new(Formula::ratio(1, 8)),
        );
        assert_eq!(f, expected);
        // quantifier bodies extend as far right as possible
        let g = parse_formula("sup x . P(x) -. 1/2").unwrap();
        assert!(matches!(g, Formula::Sup(_, ref b) if matches!(**b, Formula::DotMinus(..))));
    }

    #[test]
    fn quantifier_operands_round_trip() {
        for src in [
            "((sup x . P(x)) -. 1/2)",
            "~(inf y . Q(y))",
            "min(sup x . P(x), inf x . P(x))",
            "sup x . sup c . R(x, c())",
            "(P(c) /. 3/2)",
            "Z()",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(print_formula(&f), src);
            assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("max(P(c),\n  3/2)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(matches!(e.kind, ParseErrorKind::ConstantOutOfRange(_)));
        let e = parse_formula("P(c) -.").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_formula("min(P(c), P(c, c))").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { .. }));
        let e = parse_formula("d(x)").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { expected: 2, .. }));
        let e = parse_formula("P(c) /. 0").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(parse_formula("P(c) Q(c)").is_err());
    }

    #[test]
    fn vocabulary_checked_parse() {
        let v = Vocabulary::from_symbols([Symbol::predicate("P", 1), Symbol::function("c", 0)]).unwrap();
        assert!(parse_sentence_in("P(c)", &v).is_ok());
        let e = parse_sentence_in("P(x)", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::FreeVariable("x".into()));
        assert_eq!(e.column, 3);
        let e = parse_sentence_in("Q(c)", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("Q".into()));
        let e = parse_sentence_in("P(c, c)", &v).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { expected: 1, found: 2, .. }));
    }
}
