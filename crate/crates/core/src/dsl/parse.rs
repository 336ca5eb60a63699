//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' nat)?
//! atom   := 'e' '(' int ')' | 'c' | rational | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! Products are noncommutative, so multiplication is always written with `*`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Parsed expression; factor order of products is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprTree {
    Sum(Box<ExprTree>, Box<ExprTree>),
    Difference(Box<ExprTree>, Box<ExprTree>),
    Product(Box<ExprTree>, Box<ExprTree>),
    Power(Box<ExprTree>, u32),
    Gen(i64),
    Central,
    Rational(BigRational),
    Neg(Box<ExprTree>),
    Group(Box<ExprTree>),
}

/// Position and expectation of the first offending token.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct SourceError {
    /// Byte offset into the input.
    pub offset: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

/// Bounds on literal sizes accepted by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseLimits {
    pub max_index: i64,
    pub max_exponent: u32,
}

impl Default for ParseLimits {
    fn default() -> Self {
        Self {
            max_index: 1_000_000,
            max_exponent: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    E,
    C,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Int(BigInt),
    Invalid(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::E => "'e'".into(),
            Tok::C => "'c'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Invalid(s) => s.clone(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    offset: usize,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col_start = before.rfind('\n').map_or(0, |p| p + 1);
    (line, text[col_start..offset].chars().count() + 1)
}

fn error_at(text: &str, offset: usize, expected: &[&str], found: String) -> SourceError {
    let (line, column) = position(text, offset);
    SourceError {
        offset,
        line,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

const ATOM_START: &[&str] = &["'e('", "'c'", "number", "'('", "'-'"];

// Never fails: unknown input becomes `Tok::Invalid` so the parser reports
// the first offending token in reading order.
fn lex(text: &str) -> Vec<Lexed> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = text[i..].chars().next().expect("in bounds");
        if ch.is_whitespace() {
            i += ch.len_utf8();
            continue;
        }
        let start = i;
        let tok = match ch {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Lexed {
                    tok: Tok::Int(text[start..i].parse().expect("digits")),
                    offset: start,
                });
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < bytes.len() {
                    let c = text[i..].chars().next().expect("in bounds");
                    if !(c.is_alphanumeric() || c == '_') {
                        break;
                    }
                    i += c.len_utf8();
                }
                let word = &text[start..i];
                let tok = match word {
                    "e" => Tok::E,
                    "c" => Tok::C,
                    _ => Tok::Invalid(format!("identifier {word:?}")),
                };
                out.push(Lexed { tok, offset: start });
                continue;
            }
            other => Tok::Invalid(format!("{other:?}")),
        };
        i += ch.len_utf8();
        out.push(Lexed { tok, offset: start });
    }
    out.push(Lexed {
        tok: Tok::Eof,
        offset: text.len(),
    });
    out
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Lexed>,
    pos: usize,
    limits: ParseLimits,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, SourceError> {
        Err(error_at(self.text, self.offset(), expected, self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), SourceError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn expr(&mut self) -> Result<ExprTree, SourceError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprTree::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprTree::Difference(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprTree, SourceError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = ExprTree::Product(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprTree, SourceError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(ExprTree::Neg(Box::new(self.factor()?)));
        }
        let base_offset = self.offset();
        let atom = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(atom);
        }
        let mut inner = &atom;
        while let ExprTree::Group(g) = inner {
            inner = g;
        }
        if !matches!(inner, ExprTree::Gen(_) | ExprTree::Central) {
            return Err(error_at(
                self.text,
                base_offset,
                &["generator base for '^'"],
                "non-generator base".into(),
            ));
        }
        self.bump();
        let exp = self.nat("exponent")?;
        let exp = u32::try_from(&exp)
            .ok()
            .filter(|e| *e <= self.limits.max_exponent);
        match exp {
            Some(e) => Ok(ExprTree::Power(Box::new(atom), e)),
            None => {
                self.pos -= 1;
                self.fail(&["exponent within limits"])
            }
        }
    }

    fn nat(&mut self, what: &str) -> Result<BigInt, SourceError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&[what]),
        }
    }

    fn atom(&mut self) -> Result<ExprTree, SourceError> {
        match self.peek().clone() {
            Tok::E => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let neg = *self.peek() == Tok::Minus;
                if neg {
                    self.bump();
                }
                let n = self.nat("integer index")?;
                let n = if neg { -n } else { n };
                let index = n
                    .to_i64()
                    .filter(|i| i.abs() <= self.limits.max_index);
                let Some(index) = index else {
                    self.pos -= 1;
                    return self.fail(&["index within limits"]);
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(ExprTree::Gen(index))
            }
            Tok::C => {
                self.bump();
                Ok(ExprTree::Central)
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(ExprTree::Rational(BigRational::from_integer(n)));
                }
                self.bump();
                let d = self.nat("denominator")?;
                if d.is_zero() {
                    self.pos -= 1;
                    return self.fail(&["nonzero denominator"]);
                }
                Ok(ExprTree::Rational(BigRational::new(n, d)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(ExprTree::Group(Box::new(inner)))
            }
            _ => self.fail(ATOM_START),
        }
    }
}

pub fn parse(text: &str) -> Result<ExprTree, SourceError> {
    parse_with_limits(text, ParseLimits::default())
}

pub fn parse_with_limits(text: &str, limits: ParseLimits) -> Result<ExprTree, SourceError> {
    let toks = lex(text);
    let mut p = Parser {
        text,
        toks,
        pos: 0,
        limits,
    };
    let tree = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(tree)
}
