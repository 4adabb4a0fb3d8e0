//! Polynomial expressions: integer and rational literals, variables x0..x9
//! (x, y, z stand for x1, x2, x3 in affine mode), + - * ^ and parentheses.

use bezout_core::field::FieldTag;
use bezout_core::geometry::{homogenize_twisted, HomogeneousPoly};
use bezout_core::poly::MPoly;
use bezout_core::{Field, Rational};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("polynomial is not homogeneous: offending term {0}")]
    NotHomogeneous(String),
    #[error("{0}")]
    Field(String),
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError { position, message: message.into() }
}

/// How variable names are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Variables x0..xn; the total degree is checked.
    Homogeneous { n: usize, d: Option<u32> },
    /// Chart x0 = 1; variables x1..x9 or the aliases x, y, z.
    Affine,
}

#[derive(Debug, Clone)]
pub struct PolyExpr<F: Field> {
    pub source: String,
    pub poly: MPoly<F>,
    pub field: FieldTag,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Rat(BigInt, BigInt),
    Var(usize, bool),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let end = digits(i);
                let num: BigInt = text[i..end].parse().expect("digits");
                if end < bytes.len() && bytes[end] == b'/' {
                    let dend = digits(end + 1);
                    if dend == end + 1 {
                        return Err(syntax(end, "expected a denominator after '/'"));
                    }
                    let den: BigInt = text[end + 1..dend].parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(syntax(end + 1, "zero denominator"));
                    }
                    i = dend;
                    out.push((start, Token::Rat(num, den)));
                } else {
                    i = end;
                    out.push((start, Token::Num(num)));
                }
                continue;
            }
            b'x' | b'y' | b'z' => {
                let end = digits(i + 1);
                if end > i + 2 {
                    return Err(syntax(i, "variable index must be a single digit"));
                }
                let tok = if end == i + 2 {
                    if c != b'x' {
                        return Err(syntax(i, format!("unknown variable '{}'", &text[i..end])));
                    }
                    Token::Var((bytes[i + 1] - b'0') as usize, false)
                } else {
                    Token::Var((c - b'x') as usize + 1, true)
                };
                if end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    return Err(syntax(i, "unknown identifier"));
                }
                i = end;
                out.push((start, tok));
                continue;
            }
            b'/' => return Err(syntax(i, "'/' is only allowed inside rational literals")),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    field: &'a F,
    vars: Vec<String>,
    mode: Mode,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn zero(&self) -> MPoly<F> {
        MPoly::zero(self.field, &self.vars.iter().map(String::as_str).collect::<Vec<_>>())
    }

    fn constant(&self, q: &Rational, at: usize) -> Result<MPoly<F>, ParseError> {
        let c = self
            .field
            .from_rational(q)
            .ok_or_else(|| syntax(at, format!("denominator of {q} vanishes in {}", self.field.tag())))?;
        Ok(self.zero().constant_like(c))
    }

    fn expr(&mut self) -> Result<MPoly<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<F>, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly<F>, ParseError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly<F>, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let e = match self.tokens.get(self.pos) {
            Some((_, Token::Num(n))) => {
                u32::try_from(n).map_err(|_| syntax(at, "exponent too large"))?
            }
            _ => return Err(syntax(at, "expected a nonnegative integer exponent")),
        };
        self.pos += 1;
        if self.peek() == Some(&Token::Caret) {
            return Err(syntax(self.offset(), "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MPoly<F>, ParseError> {
        let at = self.offset();
        let Some((_, tok)) = self.tokens.get(self.pos).cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Num(n) => self.constant(&Rational::from_integer(n), at),
            Token::Rat(n, d) => self.constant(&Rational::new(n, d), at),
            Token::Var(i, alias) => {
                let slot = match self.mode {
                    Mode::Affine if i == 0 => return Err(syntax(at, "x0 is fixed to 1 in affine mode")),
                    Mode::Affine => i - 1,
                    Mode::Homogeneous { .. } if alias => {
                        return Err(syntax(at, "aliases x, y, z are only available in affine mode"))
                    }
                    Mode::Homogeneous { .. } => i,
                };
                if slot >= self.vars.len() {
                    return Err(syntax(at, format!("variable outside the {} coordinates in use", self.vars.len())));
                }
                Ok(self.zero().var_like(slot))
            }
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(syntax(at, "expected a number, a variable or '('")),
        }
    }
}

/// Exact parse. Homogeneous mode checks the total degree (against `d` when given).
pub fn parse_poly<F: Field>(text: &str, field: &F, mode: Mode) -> Result<PolyExpr<F>, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let vars: Vec<String> = match mode {
        Mode::Homogeneous { n, .. } => (0..=n).map(|i| format!("x{i}")).collect(),
        Mode::Affine => vec!["u1".into(), "u2".into()],
    };
    let mut p = Parser { tokens, pos: 0, end: text.len(), field, vars, mode };
    let poly = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(syntax(p.offset(), "unexpected token"));
    }
    if let Mode::Homogeneous { d, .. } = mode {
        let h = match d {
            Some(d) => HomogeneousPoly::with_degree(poly.clone(), d),
            None => HomogeneousPoly::new(poly.clone()),
        };
        h.map_err(|e| match e {
            bezout_core::Error::NotHomogeneous(t) => ParseError::NotHomogeneous(t),
            other => ParseError::Field(other.to_string()),
        })?;
    }
    Ok(PolyExpr { source: text.to_string(), poly, field: field.tag() })
}

/// Affine mode when the text uses x, y or z; otherwise homogeneous in x0, x1, x2.
pub fn detect_mode(text: &str) -> Mode {
    let bytes = text.as_bytes();
    let alias = bytes.iter().enumerate().any(|(i, &c)| {
        matches!(c, b'x' | b'y' | b'z') && bytes.get(i + 1).map_or(true, |b| !b.is_ascii_digit())
    });
    if alias {
        Mode::Affine
    } else {
        Mode::Homogeneous { n: 2, d: None }
    }
}

/// A plane curve; affine input is homogenized in chart 0 at its total degree.
pub fn parse_curve<F: Field>(text: &str, field: &F) -> Result<HomogeneousPoly<F>, ParseError> {
    let mode = detect_mode(text);
    let expr = parse_poly(text, field, mode)?;
    let result = match mode {
        Mode::Affine => {
            let d = expr.poly.total_degree().ok_or_else(|| ParseError::Field("zero polynomial".into()))?;
            homogenize_twisted(&expr.poly, 0, d)
        }
        Mode::Homogeneous { .. } => HomogeneousPoly::new(expr.poly),
    };
    result.map_err(|e| match e {
        bezout_core::Error::NotHomogeneous(t) => ParseError::NotHomogeneous(t),
        other => ParseError::Field(other.to_string()),
    })
}
