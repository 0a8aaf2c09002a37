//! Fermionic Fock space with exact sparse operators, and the composite
//! generators `E^i_j = a†_i a_j`, `Q_{ijk} = a_i a_j a_k`, `Qbar^{ijk} = a†_i a†_j a†_k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::char_poly;
use crate::nc_core::{rational_roots_of, Rational};

pub const MAX_MODES: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("number of modes must be in 1..={MAX_MODES}, got {0}")]
    ModesOutOfRange(usize),
    #[error("composite generators need at least 3 modes, got {0}")]
    TooFewModes(usize),
}

/// Sparse square matrix over the rationals, stored by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOp {
    dim: usize,
    cols: Vec<BTreeMap<usize, Rational>>,
}

impl SparseOp {
    pub fn zero(dim: usize) -> Self {
        SparseOp { dim, cols: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zero(dim);
        for i in 0..dim {
            op.cols[i].insert(i, Rational::one());
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.cols[col].get(&row).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_entry(&mut self, row: usize, col: usize, v: Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.cols[col].entry(row).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn add(&self, o: &SparseOp) -> SparseOp {
        let mut out = self.clone();
        for (c, col) in o.cols.iter().enumerate() {
            for (r, v) in col {
                out.add_entry(*r, c, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, o: &SparseOp) -> SparseOp {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> SparseOp {
        if k.is_zero() {
            return SparseOp::zero(self.dim);
        }
        SparseOp { dim: self.dim, cols: self.cols.iter().map(|c| c.iter().map(|(r, v)| (*r, v * k)).collect()).collect() }
    }

    /// `self · o`.
    pub fn mul(&self, o: &SparseOp) -> SparseOp {
        let mut out = SparseOp::zero(self.dim);
        for (c, col) in o.cols.iter().enumerate() {
            for (k, v) in col {
                for (r, w) in &self.cols[*k] {
                    out.add_entry(*r, c, w * v);
                }
            }
        }
        out
    }

    pub fn anticommutator(&self, o: &SparseOp) -> SparseOp {
        self.mul(o).add(&o.mul(self))
    }

    pub fn commutator(&self, o: &SparseOp) -> SparseOp {
        self.mul(o).sub(&o.mul(self))
    }

    /// Applies the operator to the basis vector `col`.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (&usize, &Rational)> {
        self.cols[col].iter()
    }

    /// Dense block `rows × cols` on the given basis indices.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
        rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c)).collect()).collect()
    }
}

/// The `2^n`-dimensional Fock space, basis indexed by occupation bitstrings.
#[derive(Debug, Clone)]
pub struct FockSpace {
    n: usize,
    a: Vec<SparseOp>,
    adag: Vec<SparseOp>,
}

impl FockSpace {
    /// Jordan–Wigner operators: `a_i` carries the sign `(-1)^(occupied modes below i)`.
    pub fn new(n: usize) -> Result<Self, FockError> {
        if n == 0 || n > MAX_MODES {
            return Err(FockError::ModesOutOfRange(n));
        }
        let dim = 1usize << n;
        let mut a = Vec::with_capacity(n);
        let mut adag = Vec::with_capacity(n);
        for i in 0..n {
            let mut lower = SparseOp::zero(dim);
            let mut raise = SparseOp::zero(dim);
            for b in 0..dim {
                let sign = if (b & ((1 << i) - 1)).count_ones() % 2 == 0 { Rational::one() } else { -Rational::one() };
                if b & (1 << i) != 0 {
                    lower.add_entry(b ^ (1 << i), b, sign);
                } else {
                    raise.add_entry(b | (1 << i), b, sign);
                }
            }
            a.push(lower);
            adag.push(raise);
        }
        Ok(FockSpace { n, a, adag })
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn a(&self, i: usize) -> &SparseOp {
        &self.a[i]
    }

    pub fn adag(&self, i: usize) -> &SparseOp {
        &self.adag[i]
    }

    /// Basis states with `k` occupied modes.
    pub fn sector(&self, k: u32) -> Vec<usize> {
        (0..self.dim()).filter(|b| b.count_ones() == k).collect()
    }

    /// Checks `{a_i, a†_j} = δ_ij`, `{a_i, a_j} = 0`, `{a†_i, a†_j} = 0`.
    pub fn check_car(&self) -> bool {
        let id = SparseOp::identity(self.dim());
        let zero = SparseOp::zero(self.dim());
        (0..self.n).into_par_iter().all(|i| {
            (0..self.n).all(|j| {
                let expect = if i == j { &id } else { &zero };
                self.a[i].anticommutator(&self.adag[j]) == *expect
                    && self.a[i].anticommutator(&self.a[j]).is_zero()
                    && self.adag[i].anticommutator(&self.adag[j]).is_zero()
            })
        })
    }
}

/// Composite generators on a Fock space.
#[derive(Debug, Clone)]
pub struct Composites {
    pub space: FockSpace,
    /// `e[i][j] = a†_i a_j`.
    pub e: Vec<Vec<SparseOp>>,
    pub number: SparseOp,
}

/// Sorted index triples `i < j < k`.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

impl Composites {
    pub fn new(n: usize) -> Result<Self, FockError> {
        if n < 3 {
            return Err(FockError::TooFewModes(n));
        }
        let space = FockSpace::new(n)?;
        let e: Vec<Vec<SparseOp>> =
            (0..n).map(|i| (0..n).map(|j| space.adag(i).mul(space.a(j))).collect()).collect();
        let number = (0..n).fold(SparseOp::zero(space.dim()), |acc, i| acc.add(&e[i][i]));
        Ok(Composites { space, e, number })
    }

    pub fn n(&self) -> usize {
        self.space.modes()
    }

    /// `Q_{ijk} = a_i a_j a_k`.
    pub fn q(&self, t: [usize; 3]) -> SparseOp {
        let s = &self.space;
        s.a(t[0]).mul(s.a(t[1])).mul(s.a(t[2]))
    }

    /// `Qbar^{ijk} = a†_i a†_j a†_k`.
    pub fn qbar(&self, t: [usize; 3]) -> SparseOp {
        let s = &self.space;
        s.adag(t[0]).mul(s.adag(t[1])).mul(s.adag(t[2]))
    }

    /// `[E^i_j, E^k_l] = δ_jk E^i_l - δ_il E^k_j` for all indices.
    pub fn check_gl_relations(&self) -> bool {
        let n = self.n();
        let dim = self.space.dim();
        (0..n * n).into_par_iter().all(|ij| {
            let (i, j) = (ij / n, ij % n);
            (0..n).all(|k| {
                (0..n).all(|l| {
                    let mut rhs = SparseOp::zero(dim);
                    if j == k {
                        rhs = rhs.add(&self.e[i][l]);
                    }
                    if i == l {
                        rhs = rhs.sub(&self.e[k][j]);
                    }
                    self.e[i][j].commutator(&self.e[k][l]) == rhs
                })
            })
        })
    }

    /// Operator-valued matrix `M^I_J` on sorted triples for the action of `gl(n)`
    /// on `Λ^3`, `M = Σ_slots E` in the given convention; equals `6 𝓔^I_J`.
    pub fn triple_action(&self, conv: EConvention) -> Vec<Vec<SparseOp>> {
        let ts = triples(self.n());
        let dim = self.space.dim();
        let pos: BTreeMap<[usize; 3], usize> = ts.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        let mut m = vec![vec![SparseOp::zero(dim); ts.len()]; ts.len()];
        for (ci, col) in ts.iter().enumerate() {
            for slot in 0..3 {
                for x in 0..self.n() {
                    // replace col[slot] by x; entry E^x_{col[slot]}
                    let mut t = *col;
                    t[slot] = x;
                    let Some((sorted, sign)) = sort_triple(t) else { continue };
                    let ri = pos[&sorted];
                    let op = conv.entry(self, x, col[slot]);
                    m[ri][ci] = m[ri][ci].add(&op.scale(&Rational::from_integer(sign.into())));
                }
            }
        }
        m
    }
}

/// Sorts three distinct indices, returning the permutation sign; `None` on a repeat.
pub fn sort_triple(mut t: [usize; 3]) -> Option<([usize; 3], i64)> {
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return None;
    }
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some((t, sign))
}

/// How the entries of `𝓔` are built from the Fock operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EConvention {
    /// `𝓔^{..x..}_{..y..}` built from `E^x_y = a†_x a_y`.
    Direct,
    /// Built from `-E^y_x`, the matrix elements on the dual representation.
    Dual,
}

impl EConvention {
    fn entry(self, c: &Composites, x: usize, y: usize) -> SparseOp {
        match self {
            EConvention::Direct => c.e[x][y].clone(),
            EConvention::Dual => c.e[y][x].scale(&-Rational::one()),
        }
    }
}

/// Which triple of `{Q_I, Qbar^J}` is compared with the row index of `𝓔`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// `{Q_I, Qbar^J}` against the `(I, J)` entry.
    RowIsQ,
    /// `{Q_I, Qbar^J}` against the `(J, I)` entry.
    RowIsQbar,
}

fn op_matmul(a: &[Vec<SparseOp>], b: &[Vec<SparseOp>]) -> Vec<Vec<SparseOp>> {
    let k = a.len();
    let dim = a[0][0].dim();
    (0..k)
        .into_par_iter()
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(SparseOp::zero(dim), |acc, l| acc.add(&a[i][l].mul(&b[l][j]))))
                .collect()
        })
        .collect()
}

/// `𝓔^2 - (n + 3 - N) 𝓔 + 4 δ` on sorted triples, in the normalization `M = 6𝓔`,
/// where it equals `(M^2 - (n + 3 - N) M + 4) / 6`.
pub fn bracket_polynomial(c: &Composites, conv: EConvention) -> Vec<Vec<SparseOp>> {
    let m = c.triple_action(conv);
    let m2 = op_matmul(&m, &m);
    let dim = c.space.dim();
    let shift = SparseOp::identity(dim).scale(&Rational::from_integer(((c.n() + 3) as i64).into())).sub(&c.number);
    let sixth = Rational::new(1.into(), 6.into());
    let k = m.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut x = m2[i][j].sub(&shift.mul(&m[i][j]));
                    if i == j {
                        x = x.add(&SparseOp::identity(dim).scale(&Rational::from_integer(4.into())));
                    }
                    x.scale(&sixth)
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketCheck {
    pub convention: EConvention,
    pub pairing: Pairing,
    /// `κ` with `{Q, Qbar} = κ (𝓔^2 - (n+3-N)𝓔 + 4)` on every component, if one exists.
    pub factor: Option<String>,
    pub components: usize,
}

impl BracketCheck {
    pub fn holds(&self) -> bool {
        self.factor.is_some()
    }
}

/// Finds a single rational `κ` with `{Q_I, Qbar^J} = κ P_(I,J)` for all sorted triples.
fn common_factor(lhs: &[Vec<SparseOp>], rhs: &[Vec<SparseOp>]) -> Option<Rational> {
    let mut kappa: Option<Rational> = None;
    for (lr, rr) in lhs.iter().zip(rhs) {
        for (l, r) in lr.iter().zip(rr) {
            if r.is_zero() {
                if !l.is_zero() {
                    return None;
                }
                continue;
            }
            let k = match &kappa {
                Some(k) => k.clone(),
                None => {
                    let (col, row, v) = r
                        .cols
                        .iter()
                        .enumerate()
                        .find_map(|(c, m)| m.iter().next().map(|(rw, v)| (c, *rw, v.clone())))
                        .expect("nonzero");
                    let k = l.get(row, col) / v;
                    kappa = Some(k.clone());
                    k
                }
            };
            if *l != r.scale(&k) {
                return None;
            }
        }
    }
    kappa
}

/// Compares `{Q_I, Qbar^J}` with the polynomial in `𝓔` under each convention.
pub fn bracket_polynomial_check(n: usize) -> Result<Vec<BracketCheck>, FockError> {
    let c = Composites::new(n)?;
    let ts = triples(n);
    let lhs: Vec<Vec<SparseOp>> = ts
        .par_iter()
        .map(|&i| ts.iter().map(|&j| c.q(i).anticommutator(&c.qbar(j))).collect())
        .collect();
    let transposed: Vec<Vec<SparseOp>> = (0..ts.len()).map(|i| (0..ts.len()).map(|j| lhs[j][i].clone()).collect()).collect();
    let mut out = Vec::new();
    for conv in [EConvention::Direct, EConvention::Dual] {
        let poly = bracket_polynomial(&c, conv);
        for (pairing, l) in [(Pairing::RowIsQ, &lhs), (Pairing::RowIsQbar, &transposed)] {
            let factor = common_factor(l, &poly).map(|k| k.to_string());
            out.push(BracketCheck { convention: conv, pairing, factor, components: ts.len() * ts.len() });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroStepDemo {
    pub n: usize,
    pub occupation: u32,
    pub sector_dim: usize,
    pub q_annihilate: bool,
    pub qbar_annihilate: bool,
    /// Characteristic polynomial of `M = 6𝓔` on `Λ^3 ⊗ sector`, lowest degree first.
    pub char_poly: Vec<String>,
    /// Distinct rational roots with multiplicities.
    pub roots: Vec<(String, usize)>,
    pub spectrum_in_1_4: bool,
    /// `(M - 1)(M - 4)` vanishes on the sector.
    pub quadratic_identity: bool,
}

fn multiplicity(coeffs: &[Rational], root: &Rational) -> usize {
    let mut c = coeffs.to_vec();
    let mut m = 0;
    loop {
        // synthetic division by (x - root)
        let deg = c.len() - 1;
        if deg == 0 {
            return m;
        }
        let mut q = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for k in (0..=deg).rev() {
            let v = &c[k] + &carry * root;
            if k == 0 {
                if !v.is_zero() {
                    return m;
                }
            } else {
                q[k - 1] = v.clone();
            }
            carry = v;
        }
        c = q;
        m += 1;
    }
}

/// A fixed-occupation sector under the composites `Q`, `Qbar` and `𝓔`.
pub fn zero_step_demo(n: usize, occupation: u32, conv: EConvention) -> Result<ZeroStepDemo, FockError> {
    let c = Composites::new(n)?;
    let sector = c.space.sector(occupation);
    let ts = triples(n);
    let kills = |op: &SparseOp| sector.iter().all(|&b| op.column(b).next().is_none());
    let q_annihilate = ts.iter().all(|&t| kills(&c.q(t)));
    let qbar_annihilate = ts.iter().all(|&t| kills(&c.qbar(t)));
    let m = c.triple_action(conv);
    let (k, d) = (ts.len(), sector.len());
    let mut dense = vec![vec![Rational::zero(); k * d]; k * d];
    for i in 0..k {
        for j in 0..k {
            let blk = m[i][j].block(&sector, &sector);
            for (a, row) in blk.into_iter().enumerate() {
                for (b, v) in row.into_iter().enumerate() {
                    dense[i * d + a][j * d + b] = v;
                }
            }
        }
    }
    let cp = char_poly(&dense);
    let roots: Vec<(String, usize)> =
        rational_roots_of(&cp).iter().map(|r| (r.to_string(), multiplicity(&cp, r))).collect();
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    let allowed = ["1", "4"];
    let spectrum_in_1_4 = total == k * d && roots.iter().all(|(r, _)| allowed.contains(&r.as_str()));
    let size = k * d;
    let shifted = |s: i64| -> Vec<Vec<Rational>> {
        (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { &dense[i][j] - Rational::from_integer(s.into()) } else { dense[i][j].clone() })
                    .collect()
            })
            .collect()
    };
    let prod = crate::linalg::mat_mul(&shifted(1), &shifted(4));
    let quadratic_identity = prod.iter().flatten().all(Zero::is_zero);
    Ok(ZeroStepDemo {
        n,
        occupation,
        sector_dim: d,
        q_annihilate,
        qbar_annihilate,
        char_poly: cp.iter().map(|x| x.to_string()).collect(),
        roots,
        spectrum_in_1_4,
        quadratic_identity,
    })
}
