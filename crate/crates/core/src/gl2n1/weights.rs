//! Highest weights, Casimir eigenvalues, characteristic identities and projectors of `gl(n)`.

use num_traits::{One, Zero};

use super::GlError;
use crate::nc_core::{Rational, Scalar};

/// A `gl(n)` weight in Cartesian components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn new(components: Vec<Rational>) -> Self {
        Weight(components)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// `(μ^r, ν^(n-r))`.
    pub fn rectangular(n: usize, r: usize, mu: &Rational, nu: &Rational) -> Self {
        Weight((0..n).map(|i| if i < r { mu.clone() } else { nu.clone() }).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `ρ0 = ½(n-1, n-3, .., 1-n)`.
    pub fn rho0(n: usize) -> Self {
        Weight((0..n).map(|i| Rational::new((n as i64 - 1 - 2 * i as i64).into(), 2.into())).collect())
    }

    /// `ρ1 = ½(1, .., 1)`.
    pub fn rho1(n: usize) -> Self {
        Weight(vec![Rational::new(1.into(), 2.into()); n])
    }

    /// `Λ' = Λ - 2ρ1`.
    pub fn shifted(&self) -> Self {
        Weight(self.0.iter().map(|x| x - Rational::one()).collect())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.0.windows(2).all(|w| {
            let d = &w[0] - &w[1];
            d.is_integer() && d >= Rational::zero()
        })
    }

    pub fn scalars(&self) -> Vec<Scalar> {
        self.0.iter().cloned().map(Scalar::from_rational).collect()
    }
}

/// `C1 = Σ λ_r`, `C2 = Σ λ_r (λ_r + n + 1 - 2r)`.
pub fn casimirs(w: &[Scalar]) -> (Scalar, Scalar) {
    let n = w.len() as i64;
    let mut c1 = Scalar::zero();
    let mut c2 = Scalar::zero();
    for (r, l) in w.iter().enumerate() {
        c1 += l;
        c2 += l * &(l + &Scalar::from_int(n + 1 - 2 * (r as i64 + 1)));
    }
    (c1, c2)
}

/// Roots of the characteristic identity of `E` (and of `Ebar`), with the retained ones flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharIdentity {
    pub roots: Vec<Scalar>,
    pub dual_roots: Vec<Scalar>,
    pub retained: Vec<bool>,
}

/// `α_s = λ_s + n - s`, `ᾱ_s = n - 1 - λ_s`; root `s` is kept when `λ - e_s` is dominant.
pub fn char_roots(w: &Weight) -> CharIdentity {
    let n = w.n();
    let roots = (0..n).map(|s| Scalar::from_rational(&w.0[s] + Rational::from_integer((n - s - 1).into()))).collect();
    let dual_roots =
        (0..n).map(|s| Scalar::from_rational(Rational::from_integer((n as i64 - 1).into()) - &w.0[s])).collect();
    let retained = (0..n).map(|s| s + 1 == n || &w.0[s] - &w.0[s + 1] >= Rational::one()).collect();
    CharIdentity { roots, dual_roots, retained }
}

impl CharIdentity {
    /// Roots given directly, e.g. symbolic ones for a rectangular weight.
    pub fn from_roots(roots: Vec<Scalar>, retained: Vec<bool>) -> Self {
        let dual_roots = Vec::new();
        CharIdentity { roots, dual_roots, retained }
    }

    pub fn retained_indices(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&s| self.retained[s]).collect()
    }

    /// `Π_{retained} (E - α_s)`, monic.
    pub fn identity_poly(&self) -> UniPoly {
        self.retained_indices()
            .into_iter()
            .fold(UniPoly::constant(Scalar::one()), |acc, s| acc.mul(&UniPoly::linear(-&self.roots[s])))
    }
}

/// Polynomial in a single matrix variable `E`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Scalar>);

impl UniPoly {
    pub fn constant(s: Scalar) -> Self {
        UniPoly(vec![s]).trimmed()
    }

    /// `E + a`.
    pub fn linear(a: Scalar) -> Self {
        UniPoly(vec![a, Scalar::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Scalar::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let len = self.0.len().max(o.0.len());
        UniPoly((0..len).map(|k| self.coeff(k) + o.coeff(k)).collect()).trimmed()
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let len = self.0.len().max(o.0.len());
        UniPoly((0..len).map(|k| self.coeff(k) - o.coeff(k)).collect()).trimmed()
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly(out).trimmed()
    }

    pub fn scale(&self, k: &Scalar) -> UniPoly {
        UniPoly(self.0.iter().map(|a| a * k).collect()).trimmed()
    }

    /// Replaces the variable by a scalar.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, a| &(&acc * x) + a)
    }
}

/// Remainder of `p` modulo a monic polynomial.
pub fn reduce_mod(p: &UniPoly, monic: &UniPoly) -> UniPoly {
    let Some(d) = monic.degree() else {
        return p.clone();
    };
    assert!(monic.coeff(d).is_one(), "modulus must be monic");
    let mut r = p.0.clone();
    while r.len() > d {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for k in 0..d {
            r[shift + k] -= &top * &monic.0[k];
        }
    }
    UniPoly(r).trimmed()
}

/// `P[s] = numerator(E) / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    pub s: usize,
    pub numerator: UniPoly,
    pub denominator: Scalar,
}

impl Projector {
    /// The numerator scaled by the inverse denominator, when that is a nonzero rational.
    pub fn normalized(&self) -> Option<UniPoly> {
        let d = self.denominator.as_rational()?;
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.scale(&Scalar::from_rational(d.recip())))
    }
}

/// `P[s] = Π_{s'≠s}(E - α_s') / Π_{s'≠s}(α_s - α_s')` over retained roots.
pub fn projector(ci: &CharIdentity, s: usize) -> Result<Projector, GlError> {
    if s >= ci.roots.len() || !ci.retained[s] {
        return Err(GlError::NotRetained(s));
    }
    let mut numerator = UniPoly::constant(Scalar::one());
    let mut denominator = Scalar::one();
    for t in ci.retained_indices() {
        if t == s {
            continue;
        }
        let diff = &ci.roots[s] - &ci.roots[t];
        if diff.is_zero() {
            return Err(GlError::CoincidentRoots);
        }
        numerator = numerator.mul(&UniPoly::linear(-&ci.roots[t]));
        denominator = &denominator * &diff;
    }
    Ok(Projector { s, numerator, denominator })
}

/// Cross-multiplied projector relations over the retained roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorAlgebra {
    /// `Σ_s num_s Π_{t≠s} den_t ≡ Π_t den_t`.
    pub resolves_identity: bool,
    /// `num_s num_t ≡ 0` for `s ≠ t`.
    pub orthogonal: bool,
    /// `(E - α_s) num_s ≡ 0`.
    pub eigen: bool,
}

/// Checks `Σ P[s] = 1`, `P[s] P[t] = 0` and `E P[s] = α_s P[s]` modulo the
/// identity, without dividing by the (possibly symbolic) denominators.
pub fn projector_algebra(ci: &CharIdentity) -> Result<ProjectorAlgebra, GlError> {
    let id = ci.identity_poly();
    let kept = ci.retained_indices();
    let ps: Vec<Projector> = kept.iter().map(|&s| projector(ci, s)).collect::<Result<_, _>>()?;
    let total = ps.iter().fold(Scalar::one(), |acc, p| &acc * &p.denominator);
    let mut sum = UniPoly(Vec::new());
    for (a, p) in ps.iter().enumerate() {
        let others = ps.iter().enumerate().filter(|(b, _)| *b != a).fold(Scalar::one(), |acc, (_, q)| &acc * &q.denominator);
        sum = sum.add(&p.numerator.scale(&others));
    }
    let resolves_identity = reduce_mod(&sum, &id) == UniPoly::constant(total);
    let orthogonal = ps
        .iter()
        .enumerate()
        .all(|(a, p)| ps.iter().skip(a + 1).all(|q| reduce_mod(&p.numerator.mul(&q.numerator), &id).is_zero()));
    let eigen = ps
        .iter()
        .all(|p| reduce_mod(&UniPoly::linear(-&ci.roots[p.s]).mul(&p.numerator), &id).is_zero());
    Ok(ProjectorAlgebra { resolves_identity, orthogonal, eigen })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_retention() {
        let ci = char_roots(&Weight::from_ints(&[1, 1, 0, 0]));
        let r: Vec<Rational> = ci.roots.iter().map(|s| s.as_rational().unwrap()).collect();
        assert_eq!(r, Weight::from_ints(&[4, 3, 1, 0]).0);
        assert_eq!(ci.retained, vec![false, true, false, true]);
        assert_eq!(char_roots(&Weight::from_ints(&[2, 2, 2])).retained_indices(), vec![2]);
    }

    #[test]
    fn casimir_fundamental() {
        let (c1, c2) = casimirs(&Weight::from_ints(&[1, 0]).scalars());
        assert_eq!((c1, c2), (Scalar::from_int(1), Scalar::from_int(2)));
        let (c1, c2) = casimirs(&Weight::from_ints(&[0, 0, 0]).scalars());
        assert!(c1.is_zero() && c2.is_zero());
    }

    #[test]
    fn projectors_resolve_identity() {
        let ci = char_roots(&Weight::from_ints(&[3, 1, 1, 0]));
        let id = ci.identity_poly();
        let ps: Vec<UniPoly> =
            ci.retained_indices().iter().map(|&s| projector(&ci, s).unwrap().normalized().unwrap()).collect();
        let sum = ps.iter().fold(UniPoly(Vec::new()), |a, p| a.add(p));
        assert_eq!(reduce_mod(&sum, &id), UniPoly::constant(Scalar::one()));
        for (a, &s) in ps.iter().zip(&ci.retained_indices()) {
            let ep = UniPoly::linear(Scalar::zero()).mul(a);
            assert_eq!(reduce_mod(&ep.sub(&a.scale(&ci.roots[s])), &id), UniPoly(Vec::new()));
            for b in &ps {
                if a != b {
                    assert!(reduce_mod(&a.mul(b), &id).is_zero());
                }
            }
        }
        assert_eq!(projector(&ci, 1).unwrap_err(), GlError::NotRetained(1));
        let pa = projector_algebra(&ci).unwrap();
        assert!(pa.resolves_identity && pa.orthogonal && pa.eigen);
    }
}
