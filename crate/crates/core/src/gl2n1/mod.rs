//! The quadratic superalgebra `gl2(n/1)`.
//!
//! Even generators `E^i_j` span `gl(n)`; odd generators `Qbar^i` and `Q_i`
//! transform as the vector and covector. The odd brackets close quadratically:
//!
//! ```text
//! {Qbar^i, Q_j} = (E^2)^i_j - <E> E^i_j - 1/2 δ^i_j (<E^2> - <E>^2 + (n-1)<E>) + c δ^i_j
//! ```
//!
//! where `<X>` is the matrix trace and `c` is a central charge.

mod family;
mod sbar;
mod weights;

use thiserror::Error;

use crate::nc_core::{
    parse_expression, Alphabet, ExprAtoms, GeneratorId, GeneratorNames, Letter, NCPoly, NcError, Parity,
    Rational, Scalar, Symbol, Word,
};
use crate::pbw::{GeneratorOrder, PbwError, RewriteSystem};
use crate::presentation::{PresentationBuilder, PresentationError, QlsPresentation, SparseTensor};

pub use family::{family_data, mubar_symbol, nubar_symbol, AForm, BForm, FamilyData, FamilyParams};
pub use sbar::{Sbar, SbarCheck};
pub use weights::{
    casimirs, char_roots, projector, projector_algebra, reduce_mod, CharIdentity, Projector, ProjectorAlgebra, UniPoly,
    Weight,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlError {
    #[error("rank n must be at least {min}, got {n}")]
    InvalidRank { n: usize, min: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("weight is not dominant integral")]
    NotDominant,
    #[error("projector index {0} is not a retained root")]
    NotRetained(usize),
    #[error("family needs 1 <= r < n and mu > nu")]
    BadFamily,
    #[error("roots coincide; projector undefined")]
    CoincidentRoots,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Nc(#[from] NcError),
}

/// Value of the central charge: a rational number or the indeterminate `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralCharge {
    Symbolic,
    Value(Rational),
}

impl CentralCharge {
    pub fn scalar(&self) -> Scalar {
        match self {
            CentralCharge::Symbolic => Scalar::var(&central_symbol()),
            CentralCharge::Value(v) => Scalar::from_rational(v.clone()),
        }
    }
}

pub fn central_symbol() -> Symbol {
    Symbol::new("c")
}

/// Splits a quadratic polynomial in the even generators into symmetric
/// quadratic, linear and constant parts using `x_k x_l = 1/2 (x_k x_l + x_l x_k) + 1/2 c_kl^m x_m`.
pub fn symmetrize_even_quadratic(
    c: &SparseTensor<3>,
    n: usize,
    poly: &NCPoly,
) -> (SparseTensor<2>, Vec<Scalar>, Scalar) {
    let half = Scalar::from_frac(1, 2);
    let mut quad = SparseTensor::new();
    let mut lin = vec![Scalar::zero(); n];
    let mut cst = Scalar::zero();
    for (w, s) in poly.terms() {
        match w.len() {
            0 => cst += s,
            1 => lin[w.0[0] as usize] += s,
            2 => {
                let (k, l) = (w.0[0] as usize, w.0[1] as usize);
                let h = s * &half;
                quad.add([k, l], &h);
                quad.add([l, k], &h);
                for mm in 0..n {
                    let ckl = c.get([k, l, mm]);
                    if !ckl.is_zero() {
                        lin[mm] += &h * &ckl;
                    }
                }
            }
            _ => panic!("polynomial of degree above two"),
        }
    }
    (quad, lin, cst)
}

/// `gl2(n/1)` with its rewrite system for the order `E` (row-major) `< Qbar < Q`.
#[derive(Debug, Clone)]
pub struct Gl2n1 {
    n: usize,
    charge: CentralCharge,
    presentation: QlsPresentation,
    rewrite: RewriteSystem,
}

/// One-based display names `E[i,j]`, `Qbar[i]`, `Q[i]`.
#[derive(Debug, Clone, Copy)]
pub struct Gl2n1Names {
    pub n: usize,
}

impl GeneratorNames for Gl2n1Names {
    fn name(&self, g: GeneratorId) -> String {
        match g.parity {
            Parity::Even => format!("E[{},{}]", g.index / self.n + 1, g.index % self.n + 1),
            Parity::Odd if g.index < self.n => format!("Qbar[{}]", g.index + 1),
            Parity::Odd => format!("Q[{}]", g.index - self.n + 1),
        }
    }
}

pub fn build_gl2n1(n: usize, charge: CentralCharge) -> Result<Gl2n1, GlError> {
    Gl2n1::new(n, charge)
}

impl Gl2n1 {
    pub fn new(n: usize, charge: CentralCharge) -> Result<Self, GlError> {
        if n < 2 {
            return Err(GlError::InvalidRank { n, min: 2 });
        }
        let ev = |i: usize, j: usize| i * n + j;
        let mut b = PresentationBuilder::new(n * n, 2 * n);
        if charge == CentralCharge::Symbolic {
            b.declare("c");
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut coeffs = std::collections::BTreeMap::<usize, i64>::new();
                        if j == k {
                            *coeffs.entry(ev(i, l)).or_default() += 1;
                        }
                        if i == l {
                            *coeffs.entry(ev(k, j)).or_default() -= 1;
                        }
                        for (t, v) in coeffs {
                            b.set_c(ev(i, j), ev(k, l), t, Scalar::from_int(v));
                        }
                    }
                }
                // [E^i_j, Qbar^k] = δ^k_j Qbar^i ; [E^i_j, Q_k] = -δ^i_k Q_j
                b.set_cbar(ev(i, j), j, i, Scalar::one());
                b.set_cbar(ev(i, j), n + i, n + j, Scalar::from_int(-1));
            }
        }
        let c_tensor = b.clone().build()?.c().clone();
        let even = Alphabet::new(n * n, 0);
        let e = |i: usize, j: usize| NCPoly::letter(even, ev(i, j) as Letter);
        let tr_e = (0..n).fold(NCPoly::zero(even), |acc, i| &acc + &e(i, i));
        let e2 = |i: usize, j: usize| (0..n).fold(NCPoly::zero(even), |acc, k| &acc + &(&e(i, k) * &e(k, j)));
        let tr_e2 = (0..n).fold(NCPoly::zero(even), |acc, i| &acc + &e2(i, i));
        let nm1 = Scalar::from_int(n as i64 - 1);
        let trace_part = &(&tr_e2 - &(&tr_e * &tr_e)) + &tr_e.scale(&nm1);
        let cc = charge.scalar();
        for i in 0..n {
            for j in 0..n {
                let mut rhs = &e2(i, j) - &(&tr_e * &e(i, j));
                if i == j {
                    rhs = &rhs - &trace_part.scale(&Scalar::from_frac(1, 2));
                    rhs = &rhs + &NCPoly::scalar(even, cc.clone());
                }
                let (quad, lin, cst) = symmetrize_even_quadratic(&c_tensor, n * n, &rhs);
                let (p, q) = (i, n + j);
                for (key, v) in quad.iter() {
                    b.set_d(p, q, key[0], key[1], v.clone());
                    b.set_d(q, p, key[0], key[1], v.clone());
                }
                for (k, v) in lin.into_iter().enumerate() {
                    b.set_b(p, q, k, v.clone());
                    b.set_b(q, p, k, v);
                }
                b.set_a(p, q, cst.clone());
                b.set_a(q, p, cst);
            }
        }
        let presentation = b.build()?;
        let order = GeneratorOrder::standard(presentation.alphabet());
        let rewrite = RewriteSystem::new(&presentation, order)?;
        Ok(Gl2n1 { n, charge, presentation, rewrite })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn charge(&self) -> &CentralCharge {
        &self.charge
    }

    pub fn presentation(&self) -> &QlsPresentation {
        &self.presentation
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn alphabet(&self) -> Alphabet {
        self.presentation.alphabet()
    }

    pub fn names(&self) -> Gl2n1Names {
        Gl2n1Names { n: self.n }
    }

    pub fn render(&self, p: &NCPoly) -> String {
        p.render(&self.names())
    }

    pub fn e_letter(&self, i: usize, j: usize) -> Letter {
        (i * self.n + j) as Letter
    }

    pub fn qbar_letter(&self, i: usize) -> Letter {
        self.alphabet().letter(GeneratorId::odd(i))
    }

    pub fn q_letter(&self, i: usize) -> Letter {
        self.alphabet().letter(GeneratorId::odd(self.n + i))
    }

    /// `E^i_j`, zero-based.
    pub fn e(&self, i: usize, j: usize) -> NCPoly {
        NCPoly::letter(self.alphabet(), self.e_letter(i, j))
    }

    pub fn qbar(&self, i: usize) -> NCPoly {
        NCPoly::letter(self.alphabet(), self.qbar_letter(i))
    }

    pub fn q(&self, i: usize) -> NCPoly {
        NCPoly::letter(self.alphabet(), self.q_letter(i))
    }

    pub fn constant(&self, s: Scalar) -> NCPoly {
        NCPoly::scalar(self.alphabet(), s)
    }

    pub fn delta(&self, i: usize, j: usize) -> NCPoly {
        if i == j {
            NCPoly::one(self.alphabet())
        } else {
            NCPoly::zero(self.alphabet())
        }
    }

    /// `(E^2)^i_j = E^i_k E^k_j`.
    pub fn e_squared(&self, i: usize, j: usize) -> NCPoly {
        (0..self.n).fold(NCPoly::zero(self.alphabet()), |acc, k| &acc + &(&self.e(i, k) * &self.e(k, j)))
    }

    /// `<E> = E^i_i`.
    pub fn trace_e(&self) -> NCPoly {
        (0..self.n).fold(NCPoly::zero(self.alphabet()), |acc, i| &acc + &self.e(i, i))
    }

    /// `<E^2> = E^i_k E^k_i`.
    pub fn trace_e_squared(&self) -> NCPoly {
        (0..self.n).fold(NCPoly::zero(self.alphabet()), |acc, i| &acc + &self.e_squared(i, i))
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, GlError> {
        Ok(self.rewrite.normal_form(p)?)
    }

    /// Normal form of the super-commutator of two elements.
    pub fn bracket(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, GlError> {
        let s = crate::nc_core::super_commutator(a, b)?;
        self.normal_form(&s)
    }

    /// Parses an expression in `E[i,j]`, `Qbar[i]`, `Q[i]` (one-based) and `c`.
    pub fn parse(&self, src: &str) -> Result<NCPoly, GlError> {
        Ok(parse_expression(src, self)?)
    }

    /// The right side of `{Qbar^i, Q_j}` as written in the defining relation.
    pub fn odd_bracket_rhs(&self, i: usize, j: usize) -> NCPoly {
        let n = self.n as i64;
        let mut rhs = &self.e_squared(i, j) - &(&self.trace_e() * &self.e(i, j));
        if i == j {
            let tr = self.trace_e();
            let part = &(&self.trace_e_squared() - &(&tr * &tr)) + &tr.scale(&Scalar::from_int(n - 1));
            rhs = &rhs - &part.scale(&Scalar::from_frac(1, 2));
            rhs = &rhs + &self.constant(self.charge.scalar());
        }
        rhs
    }
}

impl ExprAtoms for Gl2n1 {
    type Value = NCPoly;
    fn constant(&self, s: Scalar) -> NCPoly {
        NCPoly::scalar(self.alphabet(), s)
    }
    fn atom(&self, name: &str, idx: &[usize]) -> Result<NCPoly, String> {
        let n = self.n;
        let ok = |i: usize| (1..=n).contains(&i);
        match (name, idx) {
            ("E", [i, j]) if ok(*i) && ok(*j) => Ok(self.e(i - 1, j - 1)),
            ("Qbar", [i]) if ok(*i) => Ok(self.qbar(i - 1)),
            ("Q", [i]) if ok(*i) => Ok(self.q(i - 1)),
            ("c", []) if self.charge == CentralCharge::Symbolic => Ok(self.constant(self.charge.scalar())),
            _ => Err(format!("unknown generator {name}{idx:?} for gl2({n}/1)")),
        }
    }
    fn add(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a + b
    }
    fn mul(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a * b
    }
    fn scale(&self, a: NCPoly, k: &Rational) -> NCPoly {
        a.scale(&Scalar::from_rational(k.clone()))
    }
}

/// Parses `x[i]`, `y[p]` (one-based) and declared indeterminates for a general presentation.
pub struct PlainAtoms<'a>(pub &'a QlsPresentation);

impl ExprAtoms for PlainAtoms<'_> {
    type Value = NCPoly;
    fn constant(&self, s: Scalar) -> NCPoly {
        NCPoly::scalar(self.0.alphabet(), s)
    }
    fn atom(&self, name: &str, idx: &[usize]) -> Result<NCPoly, String> {
        let al = self.0.alphabet();
        match (name, idx) {
            ("x", [i]) if (1..=al.even).contains(i) => Ok(NCPoly::generator(al, GeneratorId::even(i - 1))),
            ("y", [p]) if (1..=al.odd).contains(p) => Ok(NCPoly::generator(al, GeneratorId::odd(p - 1))),
            (s, []) if self.0.indeterminates().contains(&Symbol::new(s)) => {
                Ok(NCPoly::scalar(al, Scalar::var(&Symbol::new(s))))
            }
            _ => Err(format!("unknown generator {name}{idx:?}")),
        }
    }
    fn add(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a + b
    }
    fn mul(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        a * b
    }
    fn scale(&self, a: NCPoly, k: &Rational) -> NCPoly {
        a.scale(&Scalar::from_rational(k.clone()))
    }
}

/// Words in the letters of `w`, for building test inputs.
pub fn word(letters: &[Letter]) -> Word {
    Word(letters.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_has_no_quadratic_part() {
        let g = Gl2n1::new(2, CentralCharge::Symbolic).unwrap();
        assert!(g.presentation().d().is_zero());
        let brackets = [
            ((0, 0), "c - E[2,2]"),
            ((0, 1), "E[1,2]"),
            ((1, 0), "E[2,1]"),
            ((1, 1), "c - E[1,1]"),
        ];
        for ((i, j), expect) in brackets {
            let got = g.bracket(&g.qbar(i), &g.q(j)).unwrap();
            assert_eq!(g.render(&got), expect, "{{Qbar^{i}, Q_{j}}}");
        }
    }

    #[test]
    fn odd_bracket_matches_relation() {
        for n in 2..=4 {
            let g = Gl2n1::new(n, CentralCharge::Symbolic).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let lhs = g.bracket(&g.qbar(i), &g.q(j)).unwrap();
                    let rhs = g.normal_form(&g.odd_bracket_rhs(i, j)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn parse_uses_one_based_names() {
        let g = Gl2n1::new(2, CentralCharge::Value(Rational::from_integer(3.into()))).unwrap();
        let p = g.parse("Qbar[1] Q[1] + Q[1] Qbar[1]").unwrap();
        assert_eq!(g.render(&g.normal_form(&p).unwrap()), "3 - E[2,2]");
        assert!(g.parse("E[3,1]").is_err());
        assert!(g.parse("c").is_err());
    }
}
