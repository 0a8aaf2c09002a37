use std::collections::BTreeMap;

use crate::nc_core::Scalar;

/// A sparse tensor of fixed rank with scalar entries; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseTensor<const R: usize> {
    entries: BTreeMap<[usize; R], Scalar>,
}

impl<const R: usize> SparseTensor<R> {
    pub fn new() -> Self {
        SparseTensor { entries: BTreeMap::new() }
    }

    pub fn get(&self, idx: [usize; R]) -> Scalar {
        self.entries.get(&idx).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, idx: &[usize; R]) -> Option<&Scalar> {
        self.entries.get(idx)
    }

    pub fn set(&mut self, idx: [usize; R], v: Scalar) {
        if v.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, v);
        }
    }

    pub fn add(&mut self, idx: [usize; R], v: &Scalar) {
        let cur = self.get(idx);
        self.set(idx, &cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; R], &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries grouped by their first index.
    pub fn by_first(&self, dim: usize) -> Vec<Vec<([usize; R], Scalar)>> {
        let mut out = vec![Vec::new(); dim];
        for (k, v) in &self.entries {
            out[k[0]].push((*k, v.clone()));
        }
        out
    }
}

/// Accumulates residual entries keyed by index tuples, dropping zeros.
#[derive(Debug, Default)]
pub(crate) struct Accum {
    pub map: BTreeMap<Vec<usize>, Scalar>,
}

impl Accum {
    pub fn add(&mut self, key: Vec<usize>, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.map.entry(key).or_default();
        *e += v;
    }
}
