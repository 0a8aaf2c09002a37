//! Exact scalars, words and noncommutative polynomials over a graded alphabet.

mod parse;
mod scalar;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use parse::{parse_expression, parse_scalar, ExprAtoms};
pub use scalar::{q, qi, rational_roots_of, Monomial, Rational, Scalar, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("alphabet mismatch: {0:?} vs {1:?}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot divide by non-constant {0}")]
    NonConstantDivisor(String),
    #[error("no value for indeterminate {0}")]
    UnboundSymbol(String),
    #[error("not a univariate polynomial with constant coefficients: {0}")]
    NotUnivariate(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// A generator of the tensor algebra: the `index`-th even or odd basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub index: usize,
    pub parity: Parity,
}

impl GeneratorId {
    pub fn even(index: usize) -> Self {
        GeneratorId { index, parity: Parity::Even }
    }

    pub fn odd(index: usize) -> Self {
        GeneratorId { index, parity: Parity::Odd }
    }
}

/// Sizes of the even and odd parts. Generators are numbered even first, then odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub even: usize,
    pub odd: usize,
}

impl Alphabet {
    pub fn new(even: usize, odd: usize) -> Self {
        Alphabet { even, odd }
    }

    pub fn len(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letter(&self, g: GeneratorId) -> Letter {
        match g.parity {
            Parity::Even => {
                assert!(g.index < self.even, "even index out of range");
                g.index as Letter
            }
            Parity::Odd => {
                assert!(g.index < self.odd, "odd index out of range");
                (self.even + g.index) as Letter
            }
        }
    }

    pub fn generator(&self, a: Letter) -> GeneratorId {
        let a = a as usize;
        if a < self.even {
            GeneratorId::even(a)
        } else {
            GeneratorId::odd(a - self.even)
        }
    }

    pub fn parity(&self, a: Letter) -> Parity {
        if (a as usize) < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self, a: Letter) -> bool {
        a as usize >= self.even
    }

    /// Parity of a word, as 0 or 1.
    pub fn word_parity(&self, w: &Word) -> u8 {
        (w.0.iter().filter(|&&a| self.is_odd(a)).count() % 2) as u8
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(|a| a as Letter)
    }
}

/// Index of a generator in the combined even-then-odd numbering.
pub type Letter = u16;

/// A word in the generators. Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Names used when printing generators.
pub trait GeneratorNames {
    fn name(&self, g: GeneratorId) -> String;
}

/// Default names `x[i]` and `y[p]`, one-based.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlainNames;

impl GeneratorNames for PlainNames {
    fn name(&self, g: GeneratorId) -> String {
        match g.parity {
            Parity::Even => format!("x[{}]", g.index + 1),
            Parity::Odd => format!("y[{}]", g.index + 1),
        }
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NCPoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn scalar(alphabet: Alphabet, s: Scalar) -> Self {
        NCPoly::monomial(alphabet, Word::empty(), s)
    }

    pub fn one(alphabet: Alphabet) -> Self {
        NCPoly::scalar(alphabet, Scalar::one())
    }

    pub fn generator(alphabet: Alphabet, g: GeneratorId) -> Self {
        NCPoly::monomial(alphabet, Word::letter(alphabet.letter(g)), Scalar::one())
    }

    pub fn letter(alphabet: Alphabet, a: Letter) -> Self {
        NCPoly::monomial(alphabet, Word::letter(a), Scalar::one())
    }

    pub fn monomial(alphabet: Alphabet, w: Word, s: Scalar) -> Self {
        let mut p = NCPoly::zero(alphabet);
        p.add_term(w, s);
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &NCPoly) -> Result<(), NcError> {
        if self.alphabet != other.alphabet {
            return Err(NcError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly, NcError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &Scalar::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly, NcError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &Scalar::from_int(-1));
        Ok(out)
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly, NcError> {
        self.check(other)?;
        let mut out = NCPoly::zero(self.alphabet);
        for (w1, s1) in &self.terms {
            for (w2, s2) in &other.terms {
                out.add_term(w1.concat(w2), s1 * s2);
            }
        }
        Ok(out)
    }

    /// `self += k * other`; the alphabets are assumed equal.
    pub fn add_scaled(&mut self, other: &NCPoly, k: &Scalar) {
        debug_assert_eq!(self.alphabet, other.alphabet);
        self.add_assign_unchecked(other, k);
    }

    fn add_assign_unchecked(&mut self, other: &NCPoly, k: &Scalar) {
        for (w, s) in &other.terms {
            self.add_term(w.clone(), s * k);
        }
    }

    pub fn scale(&self, k: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, s) in &self.terms {
            out.add_term(w.clone(), s * k);
        }
        out
    }

    /// Parity of a homogeneous element, or `None` for a mixed one. Zero is even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|w| self.alphabet.word_parity(w));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// Applies a map to every scalar coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, s) in &self.terms {
            out.add_term(w.clone(), f(s));
        }
        out
    }

    pub fn render(&self, names: &dyn GeneratorNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, s)) in self.terms.iter().enumerate() {
            let word: Vec<String> =
                w.0.iter().map(|&a| names.name(self.alphabet.generator(a))).collect();
            let word = word.join(" ");
            let (neg, mag) = match s.as_rational() {
                Some(r) if r < Rational::from_integer(0.into()) => (true, Scalar::from_rational(-r)),
                _ => (false, s.clone()),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let coef = if mag.num_terms() > 1 { format!("({mag})") } else { mag.to_string() };
            if w.is_empty() {
                out.push_str(&coef);
            } else if mag.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&coef);
                out.push('*');
                out.push_str(&word);
            }
        }
        out
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&PlainNames))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&PlainNames))
    }
}

/// Panics on alphabet mismatch; use [`NCPoly::try_add`] for a checked version.
impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(rhs).expect("alphabet mismatch")
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.try_sub(rhs).expect("alphabet mismatch")
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.try_mul(rhs).expect("alphabet mismatch")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

/// Super-commutator `ab - (-1)^{|a||b|} ba`, extended bilinearly over homogeneous parts.
pub fn super_commutator(a: &NCPoly, b: &NCPoly) -> Result<NCPoly, NcError> {
    a.check(b)?;
    let alphabet = a.alphabet;
    let mut out = NCPoly::zero(alphabet);
    for (wa, sa) in &a.terms {
        let pa = alphabet.word_parity(wa);
        for (wb, sb) in &b.terms {
            let pb = alphabet.word_parity(wb);
            let s = sa * sb;
            out.add_term(wa.concat(wb), s.clone());
            let sign = if pa & pb == 1 { Scalar::one() } else { Scalar::from_int(-1) };
            out.add_term(wb.concat(wa), &s * &sign);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(2, 2)
    }

    #[test]
    fn word_order_is_degree_then_lex() {
        let a = Word(vec![3]);
        let b = Word(vec![0, 0]);
        let c = Word(vec![0, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn commutator_of_odd_pair_is_anticommutator() {
        let al = ab();
        let y1 = NCPoly::generator(al, GeneratorId::odd(0));
        let y2 = NCPoly::generator(al, GeneratorId::odd(1));
        let s = super_commutator(&y1, &y2).unwrap();
        let expect = &(&y1 * &y2) + &(&y2 * &y1);
        assert_eq!(s, expect);
        let x1 = NCPoly::generator(al, GeneratorId::even(0));
        let s = super_commutator(&x1, &y2).unwrap();
        assert_eq!(s, &(&x1 * &y2) - &(&y2 * &x1));
    }

    #[test]
    fn mismatch_is_reported() {
        let p = NCPoly::one(Alphabet::new(1, 0));
        let r = NCPoly::one(Alphabet::new(0, 1));
        assert!(matches!(p.try_mul(&r), Err(NcError::AlphabetMismatch(..))));
    }

    #[test]
    fn render_uses_names() {
        let al = ab();
        let x = NCPoly::generator(al, GeneratorId::even(1));
        let y = NCPoly::generator(al, GeneratorId::odd(0));
        let p = &(&x * &y).scale(&Scalar::from_frac(-1, 2)) + &NCPoly::one(al);
        assert_eq!(p.to_string(), "1 - 1/2*x[2] y[1]");
    }
}
