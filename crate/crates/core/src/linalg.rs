//! Exact sparse linear algebra over the rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::nc_core::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Reduced row echelon data for one block of columns.
struct Echelon {
    rows: Vec<BTreeMap<usize, Rational>>,
    pivot_col: Vec<usize>,
    pivot_of: HashMap<usize, usize>,
    occurs: HashMap<usize, BTreeSet<usize>>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), pivot_col: Vec::new(), pivot_of: HashMap::new(), occurs: HashMap::new() }
    }

    fn insert(&mut self, row: &[(usize, Rational)]) {
        let mut r: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in row {
            if !v.is_zero() {
                let e = r.entry(*c).or_insert_with(Rational::zero);
                *e += v;
            }
        }
        r.retain(|_, v| !v.is_zero());
        let hits: Vec<(usize, Rational)> = r
            .iter()
            .filter_map(|(c, v)| self.pivot_of.get(c).map(|&ri| (ri, v.clone())))
            .collect();
        for (ri, k) in hits {
            for (c, v) in &self.rows[ri] {
                let e = r.entry(*c).or_insert_with(Rational::zero);
                *e -= &k * v;
                if e.is_zero() {
                    r.remove(c);
                }
            }
        }
        if r.is_empty() {
            return;
        }
        let p = *r
            .keys()
            .min_by_key(|c| (self.occurs.get(c).map_or(0, BTreeSet::len), **c))
            .unwrap();
        let inv = Rational::one() / &r[&p];
        for v in r.values_mut() {
            *v *= &inv;
        }
        let new_id = self.rows.len();
        let users: Vec<usize> = self.occurs.get(&p).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for ri in users {
            let k = self.rows[ri][&p].clone();
            for (c, v) in &r {
                let e = self.rows[ri].entry(*c).or_insert_with(Rational::zero);
                *e -= &k * v;
                if e.is_zero() {
                    self.rows[ri].remove(c);
                    if let Some(s) = self.occurs.get_mut(c) {
                        s.remove(&ri);
                    }
                } else {
                    self.occurs.entry(*c).or_default().insert(ri);
                }
            }
        }
        for c in r.keys() {
            if *c != p {
                self.occurs.entry(*c).or_default().insert(new_id);
            }
        }
        self.occurs.remove(&p);
        self.rows.push(r);
        self.pivot_col.push(p);
        self.pivot_of.insert(p, new_id);
    }

    fn kernel(&self, cols: &[usize]) -> Vec<(usize, SparseVec)> {
        let mut out = Vec::new();
        for &f in cols {
            if self.pivot_of.contains_key(&f) {
                continue;
            }
            let mut v = vec![(f, Rational::one())];
            if let Some(users) = self.occurs.get(&f) {
                for &ri in users {
                    v.push((self.pivot_col[ri], -self.rows[ri][&f].clone()));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            out.push((f, v));
        }
        out
    }
}

/// A basis of `{x : A x = 0}` for sparse rows `A`, with the free column of each vector.
///
/// Each basis vector has coefficient one at its free column and zero at the
/// other free columns.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<(usize, SparseVec)> {
    let mut parent: Vec<usize> = (0..ncols).collect();
    for row in rows {
        if let Some((first, _)) = row.first() {
            let a = find(&mut parent, *first);
            for (c, _) in row.iter().skip(1) {
                let b = find(&mut parent, *c);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut cols_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..ncols {
        let r = find(&mut parent, c);
        cols_of.entry(r).or_default().push(c);
    }
    let mut rows_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        if let Some((first, _)) = row.first() {
            let r = find(&mut parent, *first);
            rows_of.entry(r).or_default().push(i);
        }
    }
    let blocks: Vec<(Vec<usize>, Vec<usize>)> = cols_of
        .into_iter()
        .map(|(root, cols)| (cols, rows_of.remove(&root).unwrap_or_default()))
        .collect();
    use rayon::prelude::*;
    let mut out: Vec<(usize, SparseVec)> = blocks
        .par_iter()
        .flat_map_iter(|(cols, row_ids)| {
            let mut ech = Echelon::new();
            for &ri in row_ids {
                ech.insert(&rows[ri]);
            }
            ech.kernel(cols)
        })
        .collect();
    out.sort_by_key(|(f, _)| *f);
    out
}

/// Rank of a list of sparse rows.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rows.len()
}

/// Dense matrix product over the rationals.
pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

/// Characteristic polynomial `det(x I - A)`, coefficients lowest degree first,
/// by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).fold(Rational::zero(), |x, y| x + y);
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    coeffs
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let k = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &k * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc_core::{q, qi};

    #[test]
    fn kernel_of_small_system() {
        // x0 + x1 = 0, x2 - 2 x3 = 0, x4 free
        let rows = vec![vec![(0, qi(1)), (1, qi(1))], vec![(2, qi(1)), (3, qi(-2))]];
        let ker = nullspace(&rows, 5);
        assert_eq!(ker.len(), 3);
        for (_, v) in &ker {
            for row in &rows {
                let dot: Rational = row
                    .iter()
                    .map(|(c, a)| v.iter().find(|(k, _)| k == c).map_or(Rational::zero(), |(_, b)| a * b))
                    .fold(Rational::zero(), |x, y| x + y);
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn char_poly_of_two_by_two() {
        let a = vec![vec![qi(2), qi(1)], vec![qi(0), qi(3)]];
        assert_eq!(char_poly(&a), vec![qi(6), qi(-5), qi(1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][1], q(-1, 6));
        assert!(inverse(&[vec![qi(1), qi(2)], vec![qi(2), qi(4)]]).is_none());
    }
}
