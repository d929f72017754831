//! Parser for the program surface syntax.
//!
//! ```text
//! program   := (directive | rule)*
//! directive := "#const" ident "."
//! rule      := head? (":-" body)? "."
//! head      := objlit ("|" objlit)*
//! body      := lit ("," lit)*
//! lit       := ("not" ["not"])? ("K" | "M" | "eNot") objlit | objlit
//! objlit    := ("not" ["not"])? ["-"] atom | "#true" | "#false"
//! atom      := lowerident ["(" term ("," term)* ")"]
//! term      := lowerident | number | UPPERIDENT
//! ```
//!
//! Comments run from `%` to end of line. Variables start with an upper-case
//! letter; `K`, `M`, `eNot` and `not` are reserved. `eNot l` is rewritten to
//! `not K l` while parsing and never reaches the AST.

use crate::ast::{Atom, BodyLit, Lit, Modality, ObjLit, Program, Rule, Term};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LowerIdent(String),
    UpperIdent(String),
    Number(String),
    Not,
    K,
    M,
    ENot,
    HashConst,
    HashTrue,
    HashFalse,
    Dot,
    Comma,
    Pipe,
    LParen,
    RParen,
    If,
    Minus,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::LowerIdent(s) | Tok::UpperIdent(s) | Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Not => write!(f, "`not`"),
            Tok::K => write!(f, "`K`"),
            Tok::M => write!(f, "`M`"),
            Tok::ENot => write!(f, "`eNot`"),
            Tok::HashConst => write!(f, "`#const`"),
            Tok::HashTrue => write!(f, "`#true`"),
            Tok::HashFalse => write!(f, "`#false`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::If => write!(f, "`:-`"),
            Tok::Minus => write!(f, "`-`"),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let (line, col) = (self.line, self.col);
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'%' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.bump();
                    }
                }
                b'.' => {
                    self.bump();
                    out.push((Tok::Dot, line, col));
                }
                b',' => {
                    self.bump();
                    out.push((Tok::Comma, line, col));
                }
                b'|' => {
                    self.bump();
                    out.push((Tok::Pipe, line, col));
                }
                b'(' => {
                    self.bump();
                    out.push((Tok::LParen, line, col));
                }
                b')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                b'-' => {
                    self.bump();
                    out.push((Tok::Minus, line, col));
                }
                b':' => {
                    self.bump();
                    if self.pos < self.src.len() && self.src[self.pos] == b'-' {
                        self.bump();
                        out.push((Tok::If, line, col));
                    } else {
                        return Err(self.err("expected `:-`"));
                    }
                }
                b'#' => {
                    self.bump();
                    let word = self.ident_chars();
                    let tok = match word.as_str() {
                        "const" => Tok::HashConst,
                        "true" => Tok::HashTrue,
                        "false" => Tok::HashFalse,
                        other => return Err(self.err(format!("unknown directive `#{other}`"))),
                    };
                    out.push((tok, line, col));
                }
                b'0'..=b'9' => {
                    let mut s = String::new();
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        s.push(self.bump() as char);
                    }
                    out.push((Tok::Number(s), line, col));
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let word = self.ident_chars();
                    let tok = match word.as_str() {
                        "not" => Tok::Not,
                        "K" => Tok::K,
                        "M" => Tok::M,
                        "eNot" => Tok::ENot,
                        _ if word.starts_with(|c: char| c.is_ascii_uppercase()) => {
                            Tok::UpperIdent(word)
                        }
                        _ => Tok::LowerIdent(word),
                    };
                    out.push((tok, line, col));
                }
                other => {
                    return Err(self.err(format!("unexpected character `{}`", other as char)));
                }
            }
        }
        Ok(out)
    }

    fn ident_chars(&mut self) -> String {
        let mut s = String::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' {
                s.push(self.bump() as char);
            } else {
                break;
            }
        }
        s
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, msg: msg.into() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {tok}, found {t}"))),
            None => Err(self.err(format!("expected {tok}, found end of input"))),
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut rules = Vec::new();
        let mut constants = Vec::new();
        while self.peek().is_some() {
            if self.peek() == Some(&Tok::HashConst) {
                self.pos += 1;
                match self.next().cloned() {
                    Some(Tok::LowerIdent(c)) | Some(Tok::Number(c)) => constants.push(c),
                    _ => return Err(self.err("expected constant name after `#const`")),
                }
                self.expect(Tok::Dot)?;
            } else {
                rules.push(self.rule()?);
            }
        }
        Ok(Program::new(rules).with_constants(constants))
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let mut head = Vec::new();
        if !matches!(self.peek(), Some(Tok::If) | Some(Tok::Dot) | None) {
            head.push(self.objlit()?);
            while self.peek() == Some(&Tok::Pipe) {
                self.pos += 1;
                head.push(self.objlit()?);
            }
        }
        let mut body = Vec::new();
        if self.peek() == Some(&Tok::If) {
            self.pos += 1;
            body.push(self.body_lit()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                body.push(self.body_lit()?);
            }
        }
        if head.is_empty() && body.is_empty() {
            return Err(self.err("a rule needs a head or a body"));
        }
        self.expect(Tok::Dot)?;
        Ok(Rule::new(head, body))
    }

    fn default_negs(&mut self) -> Result<u8, ParseError> {
        let mut n = 0u8;
        while self.peek() == Some(&Tok::Not) {
            if n == 2 {
                return Err(self.err("more than two stacked default negations"));
            }
            n += 1;
            self.pos += 1;
        }
        Ok(n)
    }

    fn body_lit(&mut self) -> Result<BodyLit, ParseError> {
        let save = self.pos;
        let neg = self.default_negs()?;
        match self.peek() {
            Some(Tok::K) => {
                self.pos += 1;
                Ok(BodyLit::subj(neg, Modality::K, self.objlit()?))
            }
            Some(Tok::M) => {
                self.pos += 1;
                Ok(BodyLit::subj(neg, Modality::M, self.objlit()?))
            }
            Some(Tok::ENot) => {
                // eNot F abbreviates not K F.
                self.pos += 1;
                let inner = self.objlit()?;
                match BodyLit::subj(1, Modality::K, inner) {
                    BodyLit::Subj(s) => Ok(BodyLit::Subj(s.negate(neg))),
                    BodyLit::Obj(o) => Ok(BodyLit::Obj(o.negate(neg))),
                }
            }
            _ => {
                self.pos = save;
                Ok(BodyLit::Obj(self.objlit()?))
            }
        }
    }

    fn objlit(&mut self) -> Result<ObjLit, ParseError> {
        let neg = self.default_negs()?;
        match self.peek() {
            Some(Tok::HashTrue) => {
                self.pos += 1;
                Ok(ObjLit::True.negate(neg))
            }
            Some(Tok::HashFalse) => {
                self.pos += 1;
                Ok(ObjLit::False.negate(neg))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                let atom = self.atom()?;
                Ok(ObjLit::new(neg, Lit::neg(atom)))
            }
            _ => {
                let atom = self.atom()?;
                Ok(ObjLit::new(neg, Lit::pos(atom)))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let pred = match self.peek().cloned() {
            Some(Tok::LowerIdent(s)) => {
                self.pos += 1;
                s
            }
            Some(t) => return Err(self.err(format!("expected atom, found {t}"))),
            None => return Err(self.err("expected atom, found end of input")),
        };
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            args.push(self.term()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
        }
        Ok(Atom::new(pred, args))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next().cloned() {
            Some(Tok::LowerIdent(s)) | Some(Tok::Number(s)) => Ok(Term::Const(s)),
            Some(Tok::UpperIdent(s)) => Ok(Term::Var(s)),
            Some(t) => Err(self.err(format!("expected term, found {t}"))),
            None => Err(self.err("expected term, found end of input")),
        }
    }
}

/// Parses a program from text. The result is canonical: rules and literals
/// are sorted and deduplicated.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    Parser { toks, pos: 0 }.program()
}

/// Parses a comma-separated conjunction of body literals, as used for
/// integrity constraints on the command line.
pub fn parse_literal_conjunction(text: &str) -> Result<Vec<BodyLit>, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let mut lits = vec![p.body_lit()?];
    while p.peek() == Some(&Tok::Comma) {
        p.pos += 1;
        lits.push(p.body_lit()?);
    }
    if p.peek().is_some() {
        return Err(p.err("trailing input after literal conjunction"));
    }
    Ok(lits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Modality;

    #[test]
    fn parses_modal_rule() {
        let p = parse_program("p :- K p.").unwrap();
        assert_eq!(p.rules.len(), 1);
        let r = &p.rules[0];
        assert_eq!(r.head, vec![ObjLit::lit(Lit::pos(Atom::prop("p")))]);
        assert_eq!(
            r.body,
            vec![BodyLit::subj(0, Modality::K, ObjLit::lit(Lit::pos(Atom::prop("p"))))]
        );
    }

    #[test]
    fn empty_input_is_empty_program() {
        let p = parse_program("").unwrap();
        assert!(p.rules.is_empty());
    }

    #[test]
    fn parses_disjunction_and_constraint() {
        let p = parse_program("p | q. s :- K p. :- not s.").unwrap();
        assert_eq!(p.rules.len(), 3);
        let constraint = p.rules.iter().find(|r| r.head.is_empty()).unwrap();
        assert_eq!(constraint.body.len(), 1);
    }

    #[test]
    fn rejects_three_stacked_negations() {
        let e = parse_program("p :- not not not q.").unwrap_err();
        assert!(e.msg.contains("two stacked"), "{e}");
        assert_eq!(e.line, 1);
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse_program("p :- q.\nr :- ,").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.col >= 6);
    }

    #[test]
    fn enot_is_rewritten_at_parse_time() {
        let a = parse_program("s :- eNot p.").unwrap();
        let b = parse_program("s :- not K p.").unwrap();
        assert_eq!(a, b);
        let c = parse_program("s :- not eNot p.").unwrap();
        let d = parse_program("s :- not not K p.").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn parses_terms_and_directives() {
        let p = parse_program("#const c. r(Y) :- K r(X), edge(X,Y). ftp(0,2).").unwrap();
        assert!(p.declared_constants.contains("c"));
        assert_eq!(p.constants().len(), 3); // c, 0, 2
    }

    #[test]
    fn comments_are_skipped() {
        let p = parse_program("% a comment\np. % trailing\n").unwrap();
        assert_eq!(p.rules.len(), 1);
    }

    #[test]
    fn double_default_negation_inside_modality() {
        let p = parse_program("p :- not not K not q.").unwrap();
        match &p.rules[0].body[0] {
            BodyLit::Subj(s) => {
                assert_eq!(s.neg, 2);
                assert_eq!(s.inner.neg_depth(), 1);
            }
            _ => panic!("expected subjective literal"),
        }
    }
}
