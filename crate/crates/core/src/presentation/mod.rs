//! Quadratic Lie superalgebra presentations and their Jacobi conditions.
//!
//! A presentation has `n` even generators `x_i` and `m` odd generators `y_p`
//! subject to
//!
//! ```text
//! [x_i, x_j] = c_ij^k x_k
//! [x_i, y_p] = cbar_ip^q y_q
//! {y_p, y_q} = d_pq^kl x_k x_l + b_pq^k x_k + a_pq
//! ```
//!
//! with `c` antisymmetric in `i, j`, and `d`, `b`, `a` symmetric in `p, q`
//! (`d` also in `k, l`).

mod abstract_check;
mod casimir;
mod component;
mod ideal;
mod tensor;
mod text;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::nc_core::{Alphabet, GeneratorId, Letter, NCPoly, NcError, Scalar, Symbol, Word};

pub use abstract_check::{Intersection, TripleTensor};
pub use casimir::{build_from_casimirs, BalancedData};
pub use ideal::QuadraticIdeal;
pub use tensor::SparseTensor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("tensor {tensor} index {indices:?} out of range")]
    IndexOutOfRange { tensor: &'static str, indices: Vec<usize> },
    #[error("tensor {tensor} violates its symmetry at {indices:?}")]
    Asymmetric { tensor: &'static str, indices: Vec<usize> },
    #[error("undeclared indeterminate {0}")]
    UndeclaredSymbol(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("the quadratic tensor d contains indeterminates; the intersection needs rational d")]
    SymbolicQuadraticPart,
    #[error("element is not in the quadratic ideal: remainder {0}")]
    NotInIdeal(String),
    #[error("element is not homogeneous of degree two")]
    NotQuadratic,
    #[error("the pairing on the odd space is singular")]
    SingularForm,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Nc(#[from] NcError),
}

/// Structure constants of a quadratic Lie superalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QlsPresentation {
    n: usize,
    m: usize,
    indeterminates: BTreeSet<Symbol>,
    c: SparseTensor<3>,
    cbar: SparseTensor<3>,
    d: SparseTensor<4>,
    b: SparseTensor<3>,
    a: SparseTensor<2>,
}

/// Collects tensor entries; [`PresentationBuilder::build`] validates them.
#[derive(Debug, Clone, Default)]
pub struct PresentationBuilder {
    n: usize,
    m: usize,
    indeterminates: BTreeSet<Symbol>,
    c: SparseTensor<3>,
    cbar: SparseTensor<3>,
    d: SparseTensor<4>,
    b: SparseTensor<3>,
    a: SparseTensor<2>,
}

impl PresentationBuilder {
    pub fn new(n: usize, m: usize) -> Self {
        PresentationBuilder { n, m, ..Default::default() }
    }

    pub fn indeterminate(mut self, name: &str) -> Self {
        self.indeterminates.insert(Symbol::new(name));
        self
    }

    pub fn declare(&mut self, name: &str) -> Symbol {
        let s = Symbol::new(name);
        self.indeterminates.insert(s.clone());
        s
    }

    /// Sets one entry exactly as given.
    pub fn set_c(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.c.set([i, j, k], v);
    }
    pub fn set_cbar(&mut self, i: usize, p: usize, q: usize, v: Scalar) {
        self.cbar.set([i, p, q], v);
    }
    pub fn set_d(&mut self, p: usize, q: usize, k: usize, l: usize, v: Scalar) {
        self.d.set([p, q, k, l], v);
    }
    pub fn set_b(&mut self, p: usize, q: usize, k: usize, v: Scalar) {
        self.b.set([p, q, k], v);
    }
    pub fn set_a(&mut self, p: usize, q: usize, v: Scalar) {
        self.a.set([p, q], v);
    }

    /// Sets `c_ij^k = v` and `c_ji^k = -v`.
    pub fn c_antisym(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.c.set([j, i, k], -&v);
        self.c.set([i, j, k], v);
    }

    /// Adds `v` to `d_pq^kl` over all orderings of the pairs, so that a
    /// quadratic term `v x_k x_l` in `{y_p, y_q}` is recorded symmetrically.
    pub fn d_sym(&mut self, p: usize, q: usize, k: usize, l: usize, v: Scalar) {
        let mut keys = BTreeSet::new();
        for (pp, qq) in [(p, q), (q, p)] {
            for (kk, ll) in [(k, l), (l, k)] {
                keys.insert([pp, qq, kk, ll]);
            }
        }
        for key in keys {
            self.d.set(key, v.clone());
        }
    }

    pub fn b_sym(&mut self, p: usize, q: usize, k: usize, v: Scalar) {
        self.b.set([q, p, k], v.clone());
        self.b.set([p, q, k], v);
    }

    pub fn a_sym(&mut self, p: usize, q: usize, v: Scalar) {
        self.a.set([q, p], v.clone());
        self.a.set([p, q], v);
    }

    pub fn build(self) -> Result<QlsPresentation, PresentationError> {
        let p = QlsPresentation {
            n: self.n,
            m: self.m,
            indeterminates: self.indeterminates,
            c: self.c,
            cbar: self.cbar,
            d: self.d,
            b: self.b,
            a: self.a,
        };
        p.validate()?;
        Ok(p)
    }
}

/// How to move `w_a` past `w_b`: `w_a w_b = sign * w_b w_a + tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapRule {
    pub sign: i8,
    pub tail: NCPoly,
}

/// Per-family outcome of a Jacobi check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyResult {
    pub name: String,
    pub violations: Vec<Violation>,
}

/// A nonzero residual at the given free indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub residual: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub families: Vec<FamilyResult>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.violations.is_empty())
    }

    pub fn violation_count(&self) -> usize {
        self.families.iter().map(|f| f.violations.len()).sum()
    }

    pub fn family(&self, name: &str) -> Option<&FamilyResult> {
        self.families.iter().find(|f| f.name == name)
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fam in &self.families {
            let status = if fam.violations.is_empty() { "ok" } else { "FAILED" };
            writeln!(f, "{:<24} {status} ({} violations)", fam.name, fam.violations.len())?;
            for v in fam.violations.iter().take(5) {
                writeln!(f, "    at {:?}: {}", v.indices, v.residual)?;
            }
        }
        Ok(())
    }
}

impl QlsPresentation {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.n, self.m)
    }
    pub fn indeterminates(&self) -> &BTreeSet<Symbol> {
        &self.indeterminates
    }
    pub fn c(&self) -> &SparseTensor<3> {
        &self.c
    }
    pub fn cbar(&self) -> &SparseTensor<3> {
        &self.cbar
    }
    pub fn d(&self) -> &SparseTensor<4> {
        &self.d
    }
    pub fn b(&self) -> &SparseTensor<3> {
        &self.b
    }
    pub fn a(&self) -> &SparseTensor<2> {
        &self.a
    }

    pub fn to_builder(&self) -> PresentationBuilder {
        PresentationBuilder {
            n: self.n,
            m: self.m,
            indeterminates: self.indeterminates.clone(),
            c: self.c.clone(),
            cbar: self.cbar.clone(),
            d: self.d.clone(),
            b: self.b.clone(),
            a: self.a.clone(),
        }
    }

    fn validate(&self) -> Result<(), PresentationError> {
        let (n, m) = (self.n, self.m);
        let range = |tensor: &'static str, idx: &[usize], dims: &[usize]| {
            if idx.iter().zip(dims).any(|(i, d)| i >= d) {
                Err(PresentationError::IndexOutOfRange { tensor, indices: idx.to_vec() })
            } else {
                Ok(())
            }
        };
        let asym = |tensor: &'static str, idx: &[usize]| PresentationError::Asymmetric {
            tensor,
            indices: idx.to_vec(),
        };
        let mut scalars: Vec<&Scalar> = Vec::new();
        for (k, v) in self.c.iter() {
            range("c", k, &[n, n, n])?;
            if self.c.get([k[1], k[0], k[2]]) != -v {
                return Err(asym("c", k));
            }
            scalars.push(v);
        }
        for (k, v) in self.cbar.iter() {
            range("cbar", k, &[n, m, m])?;
            scalars.push(v);
        }
        for (k, v) in self.d.iter() {
            range("d", k, &[m, m, n, n])?;
            if self.d.get_ref(&[k[1], k[0], k[2], k[3]]) != Some(v)
                || self.d.get_ref(&[k[0], k[1], k[3], k[2]]) != Some(v)
            {
                return Err(asym("d", k));
            }
            scalars.push(v);
        }
        for (k, v) in self.b.iter() {
            range("b", k, &[m, m, n])?;
            if self.b.get_ref(&[k[1], k[0], k[2]]) != Some(v) {
                return Err(asym("b", k));
            }
            scalars.push(v);
        }
        for (k, v) in self.a.iter() {
            range("a", k, &[m, m])?;
            if self.a.get_ref(&[k[1], k[0]]) != Some(v) {
                return Err(asym("a", k));
            }
            scalars.push(v);
        }
        for s in scalars {
            for sym in s.symbols() {
                if !self.indeterminates.contains(&sym) {
                    return Err(PresentationError::UndeclaredSymbol(sym.name().to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn letter(&self, g: GeneratorId) -> Letter {
        self.alphabet().letter(g)
    }

    /// The rule `w_a w_b = sign * w_b w_a + tail` read off the defining relations.
    pub fn swap_rule(&self, a: Letter, b: Letter) -> SwapRule {
        let al = self.alphabet();
        let (ga, gb) = (al.generator(a), al.generator(b));
        let mut tail = NCPoly::zero(al);
        let odd = |q: usize| al.letter(GeneratorId::odd(q));
        let even = |k: usize| al.letter(GeneratorId::even(k));
        use crate::nc_core::Parity::*;
        let sign = match (ga.parity, gb.parity) {
            (Even, Even) => {
                for k in 0..self.n {
                    tail.add_term(Word::letter(even(k)), self.c.get([ga.index, gb.index, k]));
                }
                1
            }
            (Even, Odd) => {
                for q in 0..self.m {
                    tail.add_term(Word::letter(odd(q)), self.cbar.get([ga.index, gb.index, q]));
                }
                1
            }
            (Odd, Even) => {
                for q in 0..self.m {
                    tail.add_term(Word::letter(odd(q)), -self.cbar.get([gb.index, ga.index, q]));
                }
                1
            }
            (Odd, Odd) => {
                let (p, q) = (ga.index, gb.index);
                for (key, v) in self.d.iter().filter(|(k, _)| k[0] == p && k[1] == q) {
                    tail.add_term(Word(vec![even(key[2]), even(key[3])]), v.clone());
                }
                for k in 0..self.n {
                    tail.add_term(Word::letter(even(k)), self.b.get([p, q, k]));
                }
                tail.add_term(Word::empty(), self.a.get([p, q]));
                -1
            }
        };
        SwapRule { sign, tail }
    }

    /// The inhomogeneous quadratic relations generating the defining ideal.
    pub fn ideal_generators(&self) -> Vec<NCPoly> {
        let al = self.alphabet();
        let mut out = Vec::new();
        let x = |i: usize| al.letter(GeneratorId::even(i));
        let y = |p: usize| al.letter(GeneratorId::odd(p));
        let mut push = |u: Letter, v: Letter| {
            let rule = self.swap_rule(u, v);
            let mut g = NCPoly::monomial(al, Word(vec![u, v]), Scalar::one());
            g.add_term(Word(vec![v, u]), Scalar::from_int(-(rule.sign as i64)));
            out.push(&g - &rule.tail);
        };
        for i in 0..self.n {
            for j in i + 1..self.n {
                push(x(i), x(j));
            }
        }
        for p in 0..self.m {
            for q in p..self.m {
                push(y(p), y(q));
            }
        }
        for i in 0..self.n {
            for p in 0..self.m {
                push(x(i), y(p));
            }
        }
        out
    }

    /// The linear and scalar parts attached to a homogeneous quadratic element of the ideal.
    pub fn alpha_beta(&self, element: &NCPoly) -> Result<(NCPoly, Scalar), PresentationError> {
        QuadraticIdeal::new(self).alpha_beta(element)
    }

    /// True when every entry is free of indeterminates.
    pub fn is_rational(&self) -> bool {
        self.c.iter().chain(self.cbar.iter()).chain(self.b.iter()).all(|(_, v)| v.is_constant())
            && self.d.iter().all(|(_, v)| v.is_constant())
            && self.a.iter().all(|(_, v)| v.is_constant())
    }

    /// Replaces indeterminates by the given scalars.
    pub fn substitute(
        &self,
        values: &std::collections::HashMap<Symbol, Scalar>,
    ) -> Result<QlsPresentation, PresentationError> {
        let mut b = self.to_builder();
        fn sub<const R: usize>(
            t: &SparseTensor<R>,
            values: &std::collections::HashMap<Symbol, Scalar>,
        ) -> SparseTensor<R> {
            let mut out = SparseTensor::new();
            for (k, v) in t.iter() {
                out.set(*k, v.substitute(values));
            }
            out
        }
        b.c = sub(&self.c, values);
        b.cbar = sub(&self.cbar, values);
        b.d = sub(&self.d, values);
        b.b = sub(&self.b, values);
        b.a = sub(&self.a, values);
        b.build()
    }
}
