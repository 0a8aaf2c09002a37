//! Exact multivariate polynomials over the rationals.
//!
//! A [`Scalar`] is a polynomial in named indeterminates with [`BigRational`]
//! coefficients. Presentations use them for structure constants that carry a
//! symbolic central charge or family parameters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NcError;

pub type Rational = BigRational;

/// Builds a rational from a numerator and a nonzero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

/// A named indeterminate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A power product of indeterminates, kept sorted by symbol with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: Symbol) -> Self {
        Monomial(vec![(sym, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, sym: &Symbol) -> u32 {
        self.0.iter().find(|(s, _)| s == sym).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn without(&self, sym: &Symbol) -> Monomial {
        Monomial(self.0.iter().filter(|(s, _)| s != sym).cloned().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An exact polynomial with rational coefficients. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::from_rational(qi(v))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar::from_rational(q(num, den))
    }

    pub fn from_rational(v: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert(Monomial::one(), v);
        }
        Scalar { terms }
    }

    pub fn var(sym: &Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(sym.clone()), Rational::one());
        Scalar { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut s = Scalar::zero();
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// True when no indeterminate occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, sym: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(sym)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Divides by a nonzero constant.
    pub fn div_rational(&self, k: &Rational) -> Result<Scalar, NcError> {
        if k.is_zero() {
            return Err(NcError::DivisionByZero);
        }
        Ok(self.scale(&(Rational::one() / k)))
    }

    /// Divides by another polynomial when that polynomial is a nonzero constant.
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, NcError> {
        match other.as_rational() {
            Some(k) => self.div_rational(&k),
            None => Err(NcError::NonConstantDivisor(other.to_string())),
        }
    }

    /// Substitutes values for some indeterminates, leaving the rest symbolic.
    pub fn substitute(&self, values: &HashMap<Symbol, Scalar>) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = Scalar::from_rational(c.clone());
            let mut rest = Monomial::one();
            for (s, e) in &m.0 {
                match values.get(s) {
                    Some(v) => term = &term * &v.pow(*e),
                    None => rest = rest.mul(&Monomial(vec![(s.clone(), *e)])),
                }
            }
            let mut shifted = Scalar::zero();
            for (tm, tc) in term.terms {
                shifted.add_term(tm.mul(&rest), tc);
            }
            out += shifted;
        }
        out
    }

    pub fn substitute_one(&self, sym: &Symbol, value: &Scalar) -> Scalar {
        let mut map = HashMap::new();
        map.insert(sym.clone(), value.clone());
        self.substitute(&map)
    }

    /// Evaluates at rational values; fails if an indeterminate is left unassigned.
    pub fn eval(&self, values: &HashMap<Symbol, Rational>) -> Result<Rational, NcError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in &m.0 {
                let v = values
                    .get(s)
                    .ok_or_else(|| NcError::UnboundSymbol(s.name().to_string()))?;
                for _ in 0..*e {
                    t *= v;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficients of the powers of `sym`, lowest first.
    pub fn coefficients_in(&self, sym: &Symbol) -> Vec<Scalar> {
        let deg = self.degree_in(sym) as usize;
        let mut out = vec![Scalar::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(sym) as usize;
            out[e].add_term(m.without(sym), c.clone());
        }
        out
    }

    /// Rational roots of a univariate polynomial in `sym` with constant coefficients.
    pub fn rational_roots(&self, sym: &Symbol) -> Result<Vec<Rational>, NcError> {
        let coeffs: Vec<Rational> = self
            .coefficients_in(sym)
            .iter()
            .map(|c| c.as_rational().ok_or_else(|| NcError::NotUnivariate(self.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(rational_roots_of(&coeffs))
    }
}

/// Rational roots (with multiplicity removed) of `sum coeffs[k] x^k` by the rational root test.
pub fn rational_roots_of(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let lcm = c
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut roots = Vec::new();
    let mut low = 0;
    while ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rational::zero());
    }
    let a0 = ints[low].abs();
    let an = ints.last().unwrap().abs();
    let divisors = |v: &BigInt| -> Vec<BigInt> {
        let v = v.to_u64().expect("coefficient too large for root search");
        (1..=v).filter(|d| v % d == 0).map(BigInt::from).collect()
    };
    let eval = |x: &Rational| -> Rational {
        c.iter().rev().fold(Rational::zero(), |acc, k| acc * x + k)
    };
    let mut seen = BTreeSet::new();
    for p in divisors(&a0) {
        for qd in divisors(&an) {
            for sign in [1i64, -1] {
                let x = BigRational::new(&p * BigInt::from(sign), qd.clone());
                if seen.insert(x.clone()) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical rendering: terms by descending degree then lexicographically.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (k, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::from_rational(v)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += rhs;
        self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let c = Symbol::new("c");
        let x = Scalar::var(&c);
        let p = &(&x * &x) - &Scalar::from_frac(1, 2);
        assert_eq!(p.to_string(), "c^2 - 1/2");
        assert!((&p - &p).is_zero());
        assert_eq!(p.degree_in(&c), 2);
        let v = p.eval(&[(c.clone(), qi(3))].into_iter().collect()).unwrap();
        assert_eq!(v, q(17, 2));
    }

    #[test]
    fn roots_of_quadratic() {
        // c^2 - 3c + 2
        let roots = rational_roots_of(&[qi(2), qi(-3), qi(1)]);
        assert_eq!(roots, vec![qi(1), qi(2)]);
        let roots = rational_roots_of(&[qi(-1), qi(0), qi(4)]);
        assert_eq!(roots, vec![q(-1, 2), q(1, 2)]);
    }

    #[test]
    fn substitution() {
        let a = Symbol::new("a");
        let b = Symbol::new("b");
        let p = &Scalar::var(&a) * &Scalar::var(&b);
        let s = p.substitute_one(&a, &Scalar::from_int(2));
        assert_eq!(s, Scalar::var(&b).scale(&qi(2)));
    }
}
