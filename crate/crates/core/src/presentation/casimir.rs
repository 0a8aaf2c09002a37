//! Building the odd-odd brackets from invariant tensors and an odd pairing.

use num_traits::Zero;

use super::{PresentationError, QlsPresentation, SparseTensor};
use crate::linalg::inverse;
use crate::nc_core::{Rational, Scalar};

/// Matrices `π(x_i)_p^q` of the even part on the odd space and an invertible
/// pairing `Ω_pq` with `Ω^qr π(x_i)_r^s Ω_sp = -π(x_i)_p^q`.
#[derive(Debug, Clone)]
pub struct BalancedData {
    pub pi: Vec<Vec<Vec<Scalar>>>,
    pub omega: Vec<Vec<Rational>>,
}

impl BalancedData {
    /// Reads `π(x_i)_p^q = -cbar_ip^q` from a presentation.
    pub fn from_presentation(p: &QlsPresentation, omega: Vec<Vec<Rational>>) -> Self {
        let m = p.m();
        let pi = (0..p.n())
            .map(|i| (0..m).map(|a| (0..m).map(|b| -p.cbar().get([i, a, b])).collect()).collect())
            .collect();
        BalancedData { pi, omega }
    }

    /// Checks the intertwining identity; returns the first failing even index.
    pub fn check_intertwiner(&self) -> Result<(), PresentationError> {
        let m = self.omega.len();
        let inv = inverse(&self.omega).ok_or(PresentationError::SingularForm)?;
        for (i, pi) in self.pi.iter().enumerate() {
            for q in 0..m {
                for p in 0..m {
                    let mut acc = Scalar::zero();
                    for r in 0..m {
                        if inv[q][r].is_zero() {
                            continue;
                        }
                        for s in 0..m {
                            if self.omega[s][p].is_zero() {
                                continue;
                            }
                            let k = &inv[q][r] * &self.omega[s][p];
                            acc += pi[r][s].scale(&k);
                        }
                    }
                    if acc != -&pi[p][q] {
                        return Err(PresentationError::Dimension(format!(
                            "pairing does not intertwine the action of even generator {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Computes `b_pq^i = C^ij π(x_j)_p^r Ω_rq` and `d_pq^kl = C^mkl π(x_m)_p^r Ω_rq`.
pub fn build_from_casimirs(
    c2: &SparseTensor<2>,
    c3: &SparseTensor<3>,
    bal: &BalancedData,
) -> Result<(SparseTensor<3>, SparseTensor<4>), PresentationError> {
    let m = bal.omega.len();
    if bal.omega.iter().any(|row| row.len() != m) || bal.pi.iter().any(|p| p.len() != m) {
        return Err(PresentationError::Dimension("pairing and action sizes differ".into()));
    }
    bal.check_intertwiner()?;
    let n = bal.pi.len();
    // (π(x_j) Ω)_pq
    let pio: Vec<Vec<Vec<Scalar>>> = bal
        .pi
        .iter()
        .map(|pi| {
            (0..m)
                .map(|p| {
                    (0..m)
                        .map(|q| {
                            let mut acc = Scalar::zero();
                            for (r, row) in bal.omega.iter().enumerate() {
                                if !row[q].is_zero() {
                                    acc += pi[p][r].scale(&row[q]);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut b = SparseTensor::new();
    for (key, cij) in c2.iter() {
        let (i, j) = (key[0], key[1]);
        if i >= n || j >= n {
            return Err(PresentationError::IndexOutOfRange { tensor: "C2", indices: key.to_vec() });
        }
        for p in 0..m {
            for q in 0..m {
                b.add([p, q, i], &(cij * &pio[j][p][q]));
            }
        }
    }
    let mut d = SparseTensor::new();
    for (key, cm) in c3.iter() {
        let (mm, k, l) = (key[0], key[1], key[2]);
        if key.iter().any(|&x| x >= n) {
            return Err(PresentationError::IndexOutOfRange { tensor: "C3", indices: key.to_vec() });
        }
        for p in 0..m {
            for q in 0..m {
                d.add([p, q, k, l], &(cm * &pio[mm][p][q]));
            }
        }
    }
    for (key, v) in b.iter() {
        if b.get_ref(&[key[1], key[0], key[2]]) != Some(v) {
            return Err(PresentationError::Asymmetric { tensor: "b", indices: key.to_vec() });
        }
    }
    for (key, v) in d.iter() {
        if d.get_ref(&[key[1], key[0], key[2], key[3]]) != Some(v)
            || d.get_ref(&[key[0], key[1], key[3], key[2]]) != Some(v)
        {
            return Err(PresentationError::Asymmetric { tensor: "d", indices: key.to_vec() });
        }
    }
    Ok((b, d))
}
