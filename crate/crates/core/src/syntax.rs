//! Tokenizer and expression AST for the textual scalar / element syntax.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int | ident | 'g' '[' '(' [int (',' int)*] ')' ']' | '(' expr ')'
//! ident  := letter+ digit*          e.g. z, w3, t
//! ```
//!
//! Interpretation of identifiers is left to the evaluator.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Int(BigInt),
    Ident(String),
    Group(Vec<i64>),
    Paren(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub exponent: Option<i64>,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulOp {
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub negated: bool,
    pub factors: Vec<(MulOp, Factor)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((col, Tok::Int(s.parse().expect("digits parse as integer"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()[],".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::new(col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(ParseError::new(self.col(), format!("expected '{c}'")))
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym('-');
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                let v: i64 = v.try_into().map_err(|_| ParseError::new(col, "integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(ParseError::new(col, "expected integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negated = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        loop {
            let factors = self.term()?;
            terms.push(Term { negated, factors });
            if self.eat_sym('+') {
                negated = false;
            } else if self.eat_sym('-') {
                negated = true;
            } else {
                break;
            }
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Vec<(MulOp, Factor)>, ParseError> {
        let mut out = vec![(MulOp::Mul, self.factor()?)];
        loop {
            if self.eat_sym('*') {
                out.push((MulOp::Mul, self.factor()?));
            } else if self.eat_sym('/') {
                out.push((MulOp::Div, self.factor()?));
            } else {
                return Ok(out);
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let column = self.col();
        let atom = match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Atom::Int(v)
            }
            Some(Tok::Ident(name))
                if name == "g" && self.toks.get(self.pos + 1).map(|t| &t.1) == Some(&Tok::Sym('[')) =>
            {
                self.pos += 2;
                self.expect_sym('(')?;
                let mut exps = Vec::new();
                if !self.eat_sym(')') {
                    loop {
                        exps.push(self.signed_int()?);
                        if self.eat_sym(')') {
                            break;
                        }
                        self.expect_sym(',')?;
                    }
                }
                self.expect_sym(']')?;
                Atom::Group(exps)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Atom::Ident(name)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Atom::Paren(Box::new(e))
            }
            _ => return Err(ParseError::new(column, "expected a number, identifier, or '('")),
        };
        let exponent = if self.eat_sym('^') { Some(self.signed_int()?) } else { None };
        Ok(Factor { atom, exponent, column })
    }
}

/// Parses a complete expression; trailing tokens are an error.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError::new(1, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}
