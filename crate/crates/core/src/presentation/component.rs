//! Jacobi conditions written out in components.

use super::tensor::Accum;
use super::{FamilyResult, JacobiReport, QlsPresentation, Violation};
use crate::nc_core::Scalar;

pub(crate) const FAMILY_NAMES: [&str; 7] = [
    "even-even-even",
    "even-even-odd",
    "even-odd-odd quadratic",
    "even-odd-odd linear",
    "odd-odd-odd linear",
    "odd-odd-odd quadratic",
    "even-odd-odd constant",
];

fn family(name: &str, acc: Accum) -> FamilyResult {
    FamilyResult {
        name: name.to_string(),
        violations: acc
            .map
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(indices, residual)| Violation { indices, residual })
            .collect(),
    }
}

/// Adds `t(σ key)` over the cyclic shifts σ of the first three positions.
fn cyclic3(t: &Accum) -> Accum {
    let mut out = Accum::default();
    for (key, v) in &t.map {
        // t(i,j,k,..) contributes to residual at (i,j,k), (k,i,j) and (j,k,i).
        let (i, j, k) = (key[0], key[1], key[2]);
        for (a, b, c) in [(i, j, k), (k, i, j), (j, k, i)] {
            let mut idx = vec![a, b, c];
            idx.extend_from_slice(&key[3..]);
            out.add(idx, v.clone());
        }
    }
    out
}

impl QlsPresentation {
    /// Evaluates each component family of the Jacobi conditions and lists the
    /// index tuples with nonzero residual.
    ///
    /// Families, with summation over repeated indices:
    ///
    /// ```text
    /// c_ij^l c_lk^m + c_jk^l c_li^m + c_ki^l c_lj^m                        = 0
    /// c_ij^l cbar_lp^q - cbar_jp^r cbar_ir^q + cbar_ip^r cbar_jr^q          = 0
    /// c_ik^m d_pq^kl + c_ik^l d_pq^km - cbar_ip^s d_sq^ml - cbar_iq^s d_ps^ml = 0
    /// b_pq^k c_ik^m - cbar_ip^s b_sq^m - cbar_iq^s b_ps^m                   = 0
    /// cyclic over (p,q,r) of cbar_kp^t b_qr^k                               = 0
    /// cyclic over (p,q,r) of cbar_kp^s d_qr^kl                              = 0
    /// cbar_ip^s a_sq + cbar_iq^s a_ps                                       = 0
    /// ```
    pub fn check_component_jacobi(&self) -> JacobiReport {
        let (n, m) = (self.n, self.m);
        let c_first = self.c.by_first(n);
        let cbar_first = self.cbar.by_first(n);
        // cbar_kp^t indexed by p
        let mut cbar_by_p = vec![Vec::new(); m];
        for (k, v) in self.cbar.iter() {
            cbar_by_p[k[1]].push((*k, v.clone()));
        }
        let mut d_by_pq = vec![Vec::new(); m * m];
        for (k, v) in self.d.iter() {
            d_by_pq[k[0] * m + k[1]].push((*k, v.clone()));
        }
        let mut b_by_pq = vec![Vec::new(); m * m];
        for (k, v) in self.b.iter() {
            b_by_pq[k[0] * m + k[1]].push((*k, v.clone()));
        }

        // c_ij^l c_lk^m, cyclic in (i,j,k)
        let mut t = Accum::default();
        for (key, v) in self.c.iter() {
            let (i, j, l) = (key[0], key[1], key[2]);
            for (k2, w) in &c_first[l] {
                t.add(vec![i, j, k2[1], k2[2]], v * w);
            }
        }
        let f1 = cyclic3(&t);

        // c_ij^l cbar_lp^q - cbar_jp^r cbar_ir^q + cbar_ip^r cbar_jr^q
        let mut f2 = Accum::default();
        for (key, v) in self.c.iter() {
            let (i, j, l) = (key[0], key[1], key[2]);
            for (k2, w) in &cbar_first[l] {
                f2.add(vec![i, j, k2[1], k2[2]], v * w);
            }
        }
        for (key, v) in self.cbar.iter() {
            // v = cbar_jp^r; pair with cbar_ir^q
            let (j, p, r) = (key[0], key[1], key[2]);
            for i in 0..n {
                for (k2, w) in cbar_first[i].iter().filter(|(k2, _)| k2[1] == r) {
                    let prod = v * w;
                    f2.add(vec![i, j, p, k2[2]], -&prod);
                    f2.add(vec![j, i, p, k2[2]], prod);
                }
            }
        }

        // quadratic part of (even, odd, odd)
        let mut f3 = Accum::default();
        for (key, v) in self.c.iter() {
            let (i, k, mm) = (key[0], key[1], key[2]);
            for (dk, w) in self.d.iter().filter(|(dk, _)| dk[2] == k) {
                let (p, q, l) = (dk[0], dk[1], dk[3]);
                let prod = v * w;
                f3.add(vec![i, p, q, mm, l], prod.clone());
                f3.add(vec![i, p, q, l, mm], prod);
            }
        }
        for (key, v) in self.cbar.iter() {
            let (i, p, s) = (key[0], key[1], key[2]);
            for q in 0..m {
                for (dk, w) in &d_by_pq[s * m + q] {
                    let prod = v * w;
                    f3.add(vec![i, p, q, dk[2], dk[3]], -&prod);
                    f3.add(vec![i, q, p, dk[2], dk[3]], -&prod);
                }
            }
        }

        // linear part of (even, odd, odd)
        let mut f4 = Accum::default();
        for (bk, v) in self.b.iter() {
            let (p, q, k) = (bk[0], bk[1], bk[2]);
            for i in 0..n {
                for (ck, w) in c_first[i].iter().filter(|(ck, _)| ck[1] == k) {
                    f4.add(vec![i, p, q, ck[2]], v * w);
                }
            }
        }
        for (key, v) in self.cbar.iter() {
            let (i, p, s) = (key[0], key[1], key[2]);
            for q in 0..m {
                for (bk, w) in &b_by_pq[s * m + q] {
                    let prod = v * w;
                    f4.add(vec![i, p, q, bk[2]], -&prod);
                    f4.add(vec![i, q, p, bk[2]], -&prod);
                }
            }
        }

        // cyclic cbar_kp^t b_qr^k and cbar_kp^s d_qr^kl
        let mut t5 = Accum::default();
        let mut t6 = Accum::default();
        for p in 0..m {
            for (ck, v) in &cbar_by_p[p] {
                let (k, t) = (ck[0], ck[2]);
                for (bk, w) in self.b.iter().filter(|(bk, _)| bk[2] == k) {
                    t5.add(vec![p, bk[0], bk[1], t], v * w);
                }
                for (dk, w) in self.d.iter().filter(|(dk, _)| dk[2] == k) {
                    t6.add(vec![p, dk[0], dk[1], t, dk[3]], v * w);
                }
            }
        }
        let f5 = cyclic3(&t5);
        let f6 = cyclic3(&t6);

        // cbar_ip^s a_sq + cbar_iq^s a_ps
        let mut f7 = Accum::default();
        for (key, v) in self.cbar.iter() {
            let (i, p, s) = (key[0], key[1], key[2]);
            for (ak, w) in self.a.iter().filter(|(ak, _)| ak[0] == s) {
                let q = ak[1];
                let prod: Scalar = v * w;
                f7.add(vec![i, p, q], prod.clone());
                f7.add(vec![i, q, p], prod);
            }
        }

        let accs = [f1, f2, f3, f4, f5, f6, f7];
        JacobiReport {
            families: FAMILY_NAMES.iter().zip(accs).map(|(name, acc)| family(name, acc)).collect(),
        }
    }
}
