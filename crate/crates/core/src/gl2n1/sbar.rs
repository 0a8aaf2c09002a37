//! Multinomials in the `Qbar` generators and the adjoint operators `A`, `B`.

use super::{Gl2n1, GlError};
use crate::nc_core::{NCPoly, Scalar, Word};

/// `Sbar_{i1..ik}`; `degenerate` is set when an index repeats and the value is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sbar {
    pub poly: NCPoly,
    pub degenerate: bool,
}

/// Outcome of one family of identities in the `Sbar` calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbarCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SbarCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn perm_sign(seq: &[usize]) -> i64 {
    let mut s = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                s = -s;
            }
        }
    }
    s
}

/// All ordered tuples of `k` distinct indices below `n`.
fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..n {
                if !t.contains(&i) {
                    let mut u = t.clone();
                    u.push(i);
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}

impl Gl2n1 {
    /// `Sbar_{i1..ik} = (-1)^(k(k-1)/2) / (n-k)! ε_{i1..ik j..} Qbar^j..`, zero-based indices.
    ///
    /// With no indices this is `Sbar = Qbar^1 Qbar^2 .. Qbar^n`.
    pub fn sbar(&self, indices: &[usize]) -> Result<Sbar, GlError> {
        let n = self.n();
        if let Some(&i) = indices.iter().find(|&&i| i >= n) {
            return Err(GlError::IndexOutOfRange(i));
        }
        let k = indices.len();
        let mut seen = vec![false; n];
        for &i in indices {
            if seen[i] {
                return Ok(Sbar { poly: NCPoly::zero(self.alphabet()), degenerate: true });
            }
            seen[i] = true;
        }
        // The (n-k)! orderings of the complement all agree after anticommuting.
        let rest: Vec<usize> = (0..n).filter(|i| !seen[*i]).collect();
        let full: Vec<usize> = indices.iter().chain(rest.iter()).copied().collect();
        let sign = perm_sign(&full) * if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        let w = Word(rest.iter().map(|&i| self.qbar_letter(i)).collect());
        Ok(Sbar { poly: NCPoly::monomial(self.alphabet(), w, Scalar::from_int(sign)), degenerate: false })
    }

    fn sbar_poly(&self, indices: &[usize]) -> NCPoly {
        self.sbar(indices).expect("indices in range").poly
    }

    /// `A^i_j = (E^2)^i_j - (<E> + n - 2) E^i_j - 1/2 δ^i_j (<E^2> - <E>^2 - (n-3)<E>) + (c - (n-1)) δ^i_j`.
    pub fn adjoint_a(&self, i: usize, j: usize) -> NCPoly {
        let n = self.n() as i64;
        let tr = self.trace_e();
        let shift = &tr + &self.constant(Scalar::from_int(n - 2));
        let mut out = &self.e_squared(i, j) - &(&shift * &self.e(i, j));
        if i == j {
            let inner = &(&self.trace_e_squared() - &(&tr * &tr)) - &tr.scale(&Scalar::from_int(n - 3));
            out = &out - &inner.scale(&Scalar::from_frac(1, 2));
            out = &out + &self.constant(self.charge().scalar() - Scalar::from_int(n - 1));
        }
        out
    }

    /// `B^{kl}_{ij}`, antisymmetric in `k, l`, with `[Q_i, Sbar_j] = Σ_{k<l} Sbar_kl B^kl_ij`:
    ///
    /// ```text
    /// (E^2 δ) - (E δ)(<E> + n - 3) + (δ E) - 1/2 (δ δ)(<E^2> - <E>^2 - (n-5)<E>) + (δ δ)(c - 2(n-2))
    /// ```
    ///
    /// where `(X Y)^{kl}_{ij} = X^k_i Y^l_j - X^l_i Y^k_j`.
    pub fn adjoint_b(&self, k: usize, l: usize, i: usize, j: usize) -> NCPoly {
        self.b_operator(k, l, i, j, 2 * (self.n() as i64 - 2))
    }

    /// Variant with constant term `c - (n-2)`; fails the bracket check for `n > 2`.
    pub fn adjoint_b_quoted(&self, k: usize, l: usize, i: usize, j: usize) -> NCPoly {
        self.b_operator(k, l, i, j, self.n() as i64 - 2)
    }

    fn b_operator(&self, k: usize, l: usize, i: usize, j: usize, shift: i64) -> NCPoly {
        let n = self.n() as i64;
        let one = |a: usize, b: usize| self.delta(a, b);
        let anti = |x: &dyn Fn(usize, usize) -> NCPoly, y: &dyn Fn(usize, usize) -> NCPoly| {
            &(&x(k, i) * &y(l, j)) - &(&x(l, i) * &y(k, j))
        };
        let e = |a: usize, b: usize| self.e(a, b);
        let e2 = |a: usize, b: usize| self.e_squared(a, b);
        let tr = self.trace_e();
        let t1 = anti(&e2, &one);
        let t2 = &anti(&e, &one) * &(&tr + &self.constant(Scalar::from_int(n - 3)));
        let t3 = anti(&one, &e);
        let dd = anti(&one, &one);
        let inner = &(&self.trace_e_squared() - &(&tr * &tr)) - &tr.scale(&Scalar::from_int(n - 5));
        let t4 = &dd * &inner.scale(&Scalar::from_frac(1, 2));
        let t5 = dd.scale(&(self.charge().scalar() - Scalar::from_int(shift)));
        &(&(&(&t1 - &t2) + &t3) - &t4) + &t5
    }

    /// Checks the `Sbar` calculus and the `A`, `B` bracket formulas under normal form.
    pub fn sbar_calculus_report(&self) -> Result<Vec<SbarCheck>, GlError> {
        let n = self.n();
        let mut checks = Vec::new();
        let mut run = |name: &str, cases: Vec<(String, NCPoly, NCPoly)>| -> Result<(), GlError> {
            let mut c = SbarCheck { name: name.to_string(), cases: cases.len(), failures: Vec::new() };
            for (label, lhs, rhs) in cases {
                if self.normal_form(&(&lhs - &rhs))? != NCPoly::zero(self.alphabet()) {
                    c.failures.push(label);
                }
            }
            checks.push(c);
            Ok(())
        };
        let sbar = self.sbar_poly(&[]);
        let zero = NCPoly::zero(self.alphabet());

        run("Qbar^i Sbar = 0", (0..n).map(|i| (format!("i={}", i + 1), &self.qbar(i) * &sbar, zero.clone())).collect())?;

        let mut cases = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let rhs = if i == j { sbar.clone() } else { zero.clone() };
                cases.push((format!("i={} j={}", i + 1, j + 1), &self.qbar(i) * &self.sbar_poly(&[j]), rhs));
            }
        }
        run("Qbar^i Sbar_j = δ^i_j Sbar", cases)?;

        let mut cases = Vec::new();
        for k in 2..=n {
            for idx in arrangements(n, k) {
                for i in 0..n {
                    let mut rhs = zero.clone();
                    for (t, &it) in idx.iter().enumerate() {
                        if it == i {
                            let mut rest = idx.clone();
                            rest.remove(t);
                            let s = if t % 2 == 0 { 1 } else { -1 };
                            rhs = &rhs + &self.sbar_poly(&rest).scale(&Scalar::from_int(s));
                        }
                    }
                    cases.push((format!("i={} I={:?}", i + 1, one_based(&idx)), &self.qbar(i) * &self.sbar_poly(&idx), rhs));
                }
            }
        }
        run("Qbar^i Sbar_{jk..} alternating contraction", cases)?;

        let mut cases = Vec::new();
        let mut trace_cases = Vec::new();
        for k in 0..=n {
            for idx in arrangements(n, k) {
                let s = self.sbar_poly(&idx);
                for i in 0..n {
                    for j in 0..n {
                        let mut rhs = if i == j { s.clone() } else { zero.clone() };
                        for (t, &it) in idx.iter().enumerate() {
                            if it == i {
                                let mut rep = idx.clone();
                                rep[t] = j;
                                rhs = &rhs - &self.sbar_poly(&rep);
                            }
                        }
                        let lhs = crate::nc_core::super_commutator(&self.e(i, j), &s)?;
                        cases.push((format!("E[{},{}] I={:?}", i + 1, j + 1, one_based(&idx)), lhs, rhs));
                    }
                }
                let lhs = crate::nc_core::super_commutator(&self.trace_e(), &s)?;
                trace_cases.push((format!("I={:?}", one_based(&idx)), lhs, s.scale(&Scalar::from_int((n - k) as i64))));
            }
        }
        run("[E^i_j, Sbar_I] index substitution", cases)?;
        run("[<E>, Sbar_I] = (n-k) Sbar_I", trace_cases)?;

        let mut cases = Vec::new();
        for i in 0..n {
            let lhs = crate::nc_core::super_commutator(&self.q(i), &sbar)?;
            let rhs = (0..n).fold(zero.clone(), |acc, k| &acc + &(&self.sbar_poly(&[k]) * &self.adjoint_a(k, i)));
            cases.push((format!("i={}", i + 1), lhs, rhs));
        }
        run("[Q_i, Sbar] = Sbar_k A^k_i", cases)?;

        let b_cases = |b: &dyn Fn(usize, usize, usize, usize) -> NCPoly| -> Result<Vec<(String, NCPoly, NCPoly)>, GlError> {
            let mut cases = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let lhs = crate::nc_core::super_commutator(&self.q(i), &self.sbar_poly(&[j]))?;
                    let mut rhs = zero.clone();
                    for k in 0..n {
                        for l in k + 1..n {
                            rhs = &rhs + &(&self.sbar_poly(&[k, l]) * &b(k, l, i, j));
                        }
                    }
                    cases.push((format!("i={} j={}", i + 1, j + 1), lhs, rhs));
                }
            }
            Ok(cases)
        };
        let verified = b_cases(&|k, l, i, j| self.adjoint_b(k, l, i, j))?;
        let quoted = b_cases(&|k, l, i, j| self.adjoint_b_quoted(k, l, i, j))?;
        run("[Q_i, Sbar_j] = Sbar_kl B^kl_ij", verified)?;
        run("[Q_i, Sbar_j] with constant c-(n-2) in B", quoted)?;
        Ok(checks)
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2n1::CentralCharge;

    #[test]
    fn sbar_small_cases() {
        let g = Gl2n1::new(2, CentralCharge::Symbolic).unwrap();
        assert_eq!(g.sbar(&[]).unwrap().poly, &g.qbar(0) * &g.qbar(1));
        assert_eq!(g.sbar(&[0]).unwrap().poly, g.qbar(1));
        assert_eq!(g.sbar(&[1]).unwrap().poly, -&g.qbar(0));
        let d = g.sbar(&[1, 1]).unwrap();
        assert!(d.degenerate && d.poly.is_zero());
        assert!(g.sbar(&[2]).is_err());
    }
}
