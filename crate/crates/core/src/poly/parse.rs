//! Text form of polynomials:
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := coef ('*' monom)? | monom
//! coef  := integer ('/' positive-integer)?
//! monom := var ('^' positive-integer)? ('*' var ('^' positive-integer)?)*
//! var   := 'x' positive-integer
//! ```
//!
//! Whitespace is ignored; a sign may precede the first term.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{var} at position {pos} is out of range (nvars = {nvars})")]
    VariableOutOfRange { var: usize, pos: usize, nvars: usize },
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            idx: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.src.len(), |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.idx += 1;
        c
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.idx += 1;
        }
        if s.is_empty() {
            return self.err("expected digits");
        }
        Ok(s.parse().expect("ascii digits"))
    }

    fn positive(&mut self) -> Result<BigInt, ParseError> {
        let pos = self.pos();
        let v = self.digits()?;
        if v.is_zero() {
            return Err(ParseError::Syntax {
                pos,
                msg: "expected a positive integer".into(),
            });
        }
        Ok(v)
    }
}

fn small(v: &BigInt, pos: usize) -> Result<u32, ParseError> {
    u32::try_from(v).map_err(|_| ParseError::Syntax {
        pos,
        msg: "integer too large".into(),
    })
}

fn monomial(cur: &mut Cursor<'_>, nvars: usize) -> Result<Monomial, ParseError> {
    let mut exps = vec![0u32; nvars];
    loop {
        let pos = cur.pos();
        if cur.bump() != Some('x') {
            return Err(ParseError::Syntax {
                pos,
                msg: "expected variable 'x<k>'".into(),
            });
        }
        let vpos = cur.pos();
        let k = cur.positive()?;
        let k = small(&k, vpos)? as usize;
        if k > nvars {
            return Err(ParseError::VariableOutOfRange { var: k, pos, nvars });
        }
        let mut e = 1;
        if cur.peek() == Some('^') {
            cur.bump();
            let epos = cur.pos();
            let v = cur.positive()?;
            e = small(&v, epos)?;
        }
        exps[k - 1] += e;
        // '*' followed by another variable continues the monomial.
        if cur.peek() == Some('*') && cur.chars.get(cur.idx + 1).map(|&(_, c)| c) == Some('x') {
            cur.bump();
        } else {
            return Ok(Monomial(exps));
        }
    }
}

fn term(cur: &mut Cursor<'_>, nvars: usize) -> Result<(Monomial, Rational), ParseError> {
    match cur.peek() {
        Some('x') => Ok((monomial(cur, nvars)?, Rational::one())),
        Some(c) if c.is_ascii_digit() => {
            let num = cur.digits()?;
            let mut coef = Rational::from_integer(num);
            if cur.peek() == Some('/') {
                cur.bump();
                let den = cur.positive()?;
                coef /= Rational::from_integer(den);
            }
            if cur.peek() == Some('*') {
                cur.bump();
                Ok((monomial(cur, nvars)?, coef))
            } else {
                Ok((Monomial::one(nvars), coef))
            }
        }
        Some(_) => cur.err("expected a coefficient or a variable"),
        None => cur.err("unexpected end of input"),
    }
}

pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = Polynomial::zero(nvars);
    let mut sign = match cur.peek() {
        Some('-') => {
            cur.bump();
            -Rational::one()
        }
        Some('+') => {
            cur.bump();
            Rational::one()
        }
        _ => Rational::one(),
    };
    loop {
        let (m, c) = term(&mut cur, nvars)?;
        out.add_term(m, c * &sign);
        match cur.bump() {
            None => return Ok(out),
            Some('+') => sign = Rational::one(),
            Some('-') => sign = -Rational::one(),
            Some(_) => {
                cur.idx -= 1;
                return cur.err("expected '+', '-' or end of input");
            }
        }
    }
}

/// Parses `"-3"`, `"2/5"`, `"-7/2"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut cur = Cursor::new(text);
    let neg = match cur.peek() {
        Some('-') => {
            cur.bump();
            true
        }
        Some('+') => {
            cur.bump();
            false
        }
        _ => false,
    };
    let mut r = Rational::from_integer(cur.digits()?);
    if cur.peek() == Some('/') {
        cur.bump();
        r /= Rational::from_integer(cur.positive()?);
    }
    if cur.peek().is_some() {
        return cur.err("trailing characters after rational");
    }
    Ok(if neg { -r } else { r })
}
