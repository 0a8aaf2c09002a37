//! A small infix parser shared by scalar and noncommutative expressions.
//!
//! Grammar: sums and differences of products; products are written with `*`
//! or by juxtaposition; `^k` raises to a nonnegative integer power; `a/b`
//! divides by an integer. Atoms are integers, identifiers, or identifiers
//! with a bracketed index list such as `E[1,2]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{NcError, Rational, Scalar, Symbol};

/// Supplies the meaning of atoms and the ring operations for [`parse_expression`].
pub trait ExprAtoms {
    type Value: Clone;
    fn constant(&self, s: Scalar) -> Self::Value;
    fn atom(&self, name: &str, indices: &[usize]) -> Result<Self::Value, String>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn scale(&self, a: Self::Value, k: &Rational) -> Self::Value;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, NcError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(NcError::Parse { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a, A: ExprAtoms> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    atoms: &'a A,
}

impl<A: ExprAtoms> Parser<'_, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, NcError> {
        Err(NcError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A::Value, NcError> {
        let mut acc = if self.eat('-') {
            let t = self.term()?;
            self.atoms.scale(t, &-Rational::one())
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.atoms.add(acc, t);
            } else if self.eat('-') {
                let t = self.term()?;
                let t = self.atoms.scale(t, &-Rational::one());
                acc = self.atoms.add(acc, t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<A::Value, NcError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = self.atoms.mul(acc, f);
            } else if self.eat('/') {
                match self.peek().cloned() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        self.pos += 1;
                        acc = self.atoms.scale(acc, &Rational::new(BigInt::one(), d));
                    }
                    _ => return self.err("expected a nonzero integer divisor"),
                }
            } else if self.starts_factor() {
                let f = self.power()?;
                acc = self.atoms.mul(acc, f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<A::Value, NcError> {
        let base = self.primary()?;
        if self.eat('^') {
            let e = match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    u32::try_from(e).map_err(|_| NcError::Parse {
                        pos: self.here(),
                        msg: "exponent too large".into(),
                    })?
                }
                _ => return self.err("expected an integer exponent"),
            };
            let mut out = self.atoms.constant(Scalar::one());
            for _ in 0..e {
                out = self.atoms.mul(out, base.clone());
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<A::Value, NcError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(self.atoms.constant(Scalar::from_rational(Rational::from_integer(v))))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                let start = self.here();
                self.pos += 1;
                let mut indices = Vec::new();
                if self.eat('[') {
                    loop {
                        match self.peek().cloned() {
                            Some(Tok::Int(v)) => {
                                self.pos += 1;
                                let v = usize::try_from(v).map_err(|_| NcError::Parse {
                                    pos: self.here(),
                                    msg: "index too large".into(),
                                })?;
                                indices.push(v);
                            }
                            _ => return self.err("expected an index"),
                        }
                        if self.eat(']') {
                            break;
                        }
                        if !self.eat(',') {
                            return self.err("expected ',' or ']'");
                        }
                    }
                }
                self.atoms
                    .atom(&name, &indices)
                    .map_err(|msg| NcError::Parse { pos: start, msg })
            }
            _ => self.err("expected a number, name or '('"),
        }
    }
}

/// Parses `src` using the atom interpretation in `atoms`.
pub fn parse_expression<A: ExprAtoms>(src: &str, atoms: &A) -> Result<A::Value, NcError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), atoms };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

struct ScalarAtoms;

impl ExprAtoms for ScalarAtoms {
    type Value = Scalar;
    fn constant(&self, s: Scalar) -> Scalar {
        s
    }
    fn atom(&self, name: &str, indices: &[usize]) -> Result<Scalar, String> {
        if !indices.is_empty() {
            return Err(format!("indexed name {name} is not a scalar"));
        }
        Ok(Scalar::var(&Symbol::new(name)))
    }
    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        a * b
    }
    fn scale(&self, a: Scalar, k: &Rational) -> Scalar {
        a.scale(k)
    }
}

/// Parses a polynomial such as `2*c^2 - 1/2*mubar*nubar + 3`.
pub fn parse_scalar(src: &str) -> Result<Scalar, NcError> {
    parse_expression(src, &ScalarAtoms)
}
