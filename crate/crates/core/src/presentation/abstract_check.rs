//! Jacobi conditions through the intersection `I2 ⊗ L ∩ L ⊗ I2` in degree three.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::ideal::QuadraticIdeal;
use super::{FamilyResult, JacobiReport, PresentationError, QlsPresentation, Violation};
use crate::linalg::{nullspace, SparseVec};
use crate::nc_core::{Alphabet, Letter, Rational, Scalar};

/// A degree-three tensor over the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TripleTensor {
    pub terms: BTreeMap<[Letter; 3], Scalar>,
}

impl TripleTensor {
    pub fn add(&mut self, w: [Letter; 3], s: Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += s;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A basis of `I2 ⊗ L ∩ L ⊗ I2`, stored in coordinates `λ_(g, w)` on the
/// spanning set `g ⊗ w` of `I2 ⊗ L`.
#[derive(Debug, Clone)]
pub struct Intersection {
    ideal: QuadraticIdeal,
    basis: Vec<(usize, SparseVec)>,
}

fn rational(s: &Scalar) -> Result<Rational, PresentationError> {
    s.as_rational().ok_or(PresentationError::SymbolicQuadraticPart)
}

impl Intersection {
    pub fn compute(p: &QlsPresentation) -> Result<Self, PresentationError> {
        if p.d().iter().any(|(_, v)| !v.is_constant()) {
            return Err(PresentationError::SymbolicQuadraticPart);
        }
        let ideal = QuadraticIdeal::new(p);
        let nl = ideal.alphabet().len();
        let gens = ideal.gens();
        let ncols = gens.len() * nl;
        // Rational versions of the degree-two projections.
        let pi: Vec<Vec<(usize, Rational)>> = (0..nl * nl)
            .map(|w| {
                ideal.reduction(w).rem.iter().map(|(v, s)| Ok((*v, rational(s)?))).collect()
            })
            .collect::<Result<_, PresentationError>>()?;
        // Row per coordinate (u, normal word) of (id ⊗ π)(g ⊗ w).
        let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (g, gen) in gens.iter().enumerate() {
            let terms: Vec<((Letter, Letter), Rational)> = gen
                .terms
                .iter()
                .map(|(w, s)| Ok((*w, rational(s)?)))
                .collect::<Result<_, PresentationError>>()?;
            for w in 0..nl {
                let col = g * nl + w;
                let mut entries: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
                for ((u, v), s) in &terms {
                    for (nw, c) in &pi[*v as usize * nl + w] {
                        let e = entries.entry((*u as usize, *nw)).or_insert_with(Rational::zero);
                        *e += s * c;
                    }
                }
                for (key, val) in entries {
                    if !val.is_zero() {
                        rows.entry(key).or_default().push((col, val));
                    }
                }
            }
        }
        let rows: Vec<SparseVec> = rows.into_values().collect();
        let basis = nullspace(&rows, ncols);
        Ok(Intersection { ideal, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.ideal.alphabet()
    }

    /// The `k`-th basis element as a tensor.
    pub fn element(&self, k: usize) -> TripleTensor {
        let nl = self.alphabet().len();
        let mut t = TripleTensor::default();
        for (col, lam) in &self.basis[k].1 {
            let (g, w) = (col / nl, col % nl);
            for ((u, v), s) in &self.ideal.gens()[g].terms {
                t.add([*u, *v, w as Letter], s * &Scalar::from_rational(lam.clone()));
            }
        }
        t
    }

    /// Coordinates of `t` on the spanning set of `I2 ⊗ L`, if `t` lies there.
    fn left_coordinates(&self, t: &TripleTensor) -> Option<BTreeMap<usize, Scalar>> {
        let nl = self.alphabet().len();
        let mut by_last: BTreeMap<Letter, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (w, s) in &t.terms {
            by_last.entry(w[2]).or_default().push((w[0] as usize * nl + w[1] as usize, s.clone()));
        }
        let mut out = BTreeMap::new();
        for (last, elem) in by_last {
            let r = self.ideal.reduce(&elem);
            if !r.rem.is_empty() {
                return None;
            }
            for (g, s) in r.quo {
                out.insert(g * nl + last as usize, s);
            }
        }
        Some(out)
    }

    /// True when `t` is a linear combination of the computed basis.
    pub fn contains(&self, t: &TripleTensor) -> bool {
        let Some(mut x) = self.left_coordinates(t) else {
            return false;
        };
        for (free, v) in &self.basis {
            let k = x.get(free).cloned().unwrap_or_default();
            if k.is_zero() {
                continue;
            }
            for (col, lam) in v {
                let e = x.entry(*col).or_default();
                *e -= &k * &Scalar::from_rational(lam.clone());
            }
        }
        x.values().all(Scalar::is_zero)
    }

    /// Residuals of the three conditions for basis element `k`.
    fn residuals(&self, k: usize) -> [Vec<(Vec<usize>, Scalar)>; 3] {
        let nl = self.alphabet().len();
        let gens = self.ideal.gens();
        let mut y: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut lin: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut by_first: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (col, lam) in &self.basis[k].1 {
            let lam = Scalar::from_rational(lam.clone());
            let (g, w) = (col / nl, col % nl);
            let gen = &gens[g];
            for (l, s) in &gen.alpha {
                *y.entry(*l as usize * nl + w).or_default() += s * &lam;
            }
            *lin.entry(w).or_default() += &gen.beta * &lam;
            for ((u, v), s) in &gen.terms {
                by_first.entry(*u as usize).or_default().push((*v as usize * nl + w, s * &lam));
            }
        }
        for (u, elem) in by_first {
            let r = self.ideal.reduce(&elem);
            debug_assert!(r.rem.is_empty(), "basis element outside L ⊗ I2");
            for (g, mu) in r.quo {
                let gen = &gens[g];
                for (l, s) in &gen.alpha {
                    *y.entry(u * nl + *l as usize).or_default() -= s * &mu;
                }
                *lin.entry(u).or_default() -= &gen.beta * &mu;
            }
        }
        let y: Vec<(usize, Scalar)> = y.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        let ry = self.ideal.reduce(&y);
        let j1 = ry.rem.iter().map(|(w, s)| (vec![k, w / nl, w % nl], s.clone())).collect();
        let mut beta_y = Scalar::zero();
        for (g, s) in &ry.quo {
            for (l, a) in &gens[*g].alpha {
                *lin.entry(*l as usize).or_default() += a * s;
            }
            beta_y += &gens[*g].beta * s;
        }
        let j2 = lin
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(l, s)| (vec![k, l], s))
            .collect();
        let j3 = if beta_y.is_zero() { Vec::new() } else { vec![(vec![k], beta_y)] };
        [j1, j2, j3]
    }
}

impl QlsPresentation {
    /// Checks the three conditions on `α` and `β` over a computed basis of
    /// `I2 ⊗ L ∩ L ⊗ I2`:
    ///
    /// ```text
    /// (α⊗1 - 1⊗α)(X) ∈ I2
    /// α(α⊗1 - 1⊗α)(X) + (β⊗1 - 1⊗β)(X) = 0
    /// β(α⊗1 - 1⊗α)(X) = 0
    /// ```
    ///
    /// Violation indices are `[basis element, word...]`.
    pub fn check_abstract_jacobi(&self) -> Result<JacobiReport, PresentationError> {
        let inter = Intersection::compute(self)?;
        let per: Vec<[Vec<(Vec<usize>, Scalar)>; 3]> =
            (0..inter.dim()).into_par_iter().map(|k| inter.residuals(k)).collect();
        let mut fams: [Vec<Violation>; 3] = Default::default();
        for r in per {
            for (f, list) in r.into_iter().enumerate() {
                fams[f].extend(list.into_iter().map(|(indices, residual)| Violation { indices, residual }));
            }
        }
        let names = ["J1 image in I2", "J2 linear", "J3 constant"];
        Ok(JacobiReport {
            families: names
                .iter()
                .zip(fams)
                .map(|(n, v)| FamilyResult { name: n.to_string(), violations: v })
                .collect(),
        })
    }

    pub fn intersection(&self) -> Result<Intersection, PresentationError> {
        Intersection::compute(self)
    }
}
