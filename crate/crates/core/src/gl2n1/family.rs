//! Data for the rectangular family `Λ = (μ^r, ν^(n-r))`.
//!
//! All quantities are polynomials in `mubar = μ + n - r`, `nubar = ν` and the
//! central charge, evaluated on the shifted module `V0(Λ')`, `Λ' = Λ - 2ρ1`,
//! whose Gel'fand array satisfies `E^2 = s' E - p'`.

use num_traits::Zero;
use std::collections::HashMap;

use super::weights::{casimirs, CharIdentity};
use super::{central_symbol, CentralCharge, GlError};
use crate::nc_core::{Rational, Scalar, Symbol};

pub fn mubar_symbol() -> Symbol {
    Symbol::new("mubar")
}

pub fn nubar_symbol() -> Symbol {
    Symbol::new("nubar")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: usize,
    pub r: usize,
    pub mu: Rational,
    pub nu: Rational,
}

impl FamilyParams {
    /// Requires `1 <= r <= n` and `μ - ν` a non-negative integer.
    pub fn new(n: usize, r: usize, mu: Rational, nu: Rational) -> Result<Self, GlError> {
        let d = &mu - &nu;
        if n < 2 || r == 0 || r > n || !d.is_integer() || d < Rational::zero() {
            return Err(GlError::BadFamily);
        }
        Ok(FamilyParams { n, r, mu, nu })
    }

    /// `V(k^r, 0^(n-r))`.
    pub fn tensor(n: usize, r: usize, k: i64) -> Result<Self, GlError> {
        Self::new(n, r, Rational::from_integer(k.into()), Rational::zero())
    }

    pub fn mubar(&self) -> Rational {
        &self.mu + Rational::from_integer(((self.n - self.r) as i64).into())
    }

    pub fn nubar(&self) -> Rational {
        self.nu.clone()
    }
}

/// Coefficients of `(E δ)`, `(δ E)`, `(δ δ)` in a reduced `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BForm {
    pub e_delta: Scalar,
    pub delta_e: Scalar,
    pub delta_delta: Scalar,
}

/// Coefficients of `E` and `δ` in a reduced `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AForm {
    pub e: Scalar,
    pub delta: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyData {
    pub n: usize,
    pub r: usize,
    pub mubar: Scalar,
    pub nubar: Scalar,
    pub c: Scalar,
    pub s_prime: Scalar,
    pub p_prime: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
    pub a1: Scalar,
    pub a0: Scalar,
    pub b1: Scalar,
    pub b1bar: Scalar,
    pub b0: Scalar,
    /// `b0` with constant `c - (n-2)` in place of `c - 2(n-2)`.
    pub b0_quoted: Scalar,
    pub a_form: AForm,
    pub b_form: BForm,
    /// Fully expanded closed forms in `mubar`, `nubar`, kept for comparison with `a_form`, `b_form`.
    pub a_form_closed: AForm,
    pub b_form_closed: BForm,
}

fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

impl FamilyData {
    pub fn new(n: usize, r: usize, mubar: Scalar, nubar: Scalar, c: Scalar) -> Result<Self, GlError> {
        if n < 2 || r == 0 || r >= n {
            return Err(GlError::BadFamily);
        }
        let (ni, ri) = (n as i64, r as i64);
        let half = Scalar::from_frac(1, 2);
        let one = Scalar::one();
        let s_prime = &(&mubar + &nubar) - &int(2);
        let p_prime = &(&mubar - &one) * &(&nubar - &one);
        let c1 = &(&(&mubar.scale(&Rational::from_integer(ri.into())) + &nubar.scale(&Rational::from_integer((ni - ri).into())))
            - &int(ri * (ni - ri)))
            - &int(ni);
        let c2 = &(&s_prime * &c1) - &p_prime.scale(&Rational::from_integer(ni.into()));
        let trace_term = |k: i64| &(&c2 - &(&c1 * &c1)) - &(&c1 * &int(k));
        let a1 = &c1 + &int(ni - 2);
        let a0 = &(&c - &int(ni - 1)) - &(&half * &trace_term(ni - 3));
        let b1 = &a1 - &one;
        let b1bar = int(-1);
        let b0 = &(&c - &int(2 * (ni - 2))) - &(&half * &trace_term(ni - 5));
        let b0_quoted = &(&c - &int(ni - 2)) - &(&half * &trace_term(ni - 5));
        let a_form = AForm { e: &s_prime - &a1, delta: &a0 - &p_prime };
        let b_form = BForm { e_delta: &s_prime - &b1, delta_e: -&b1bar, delta_delta: &b0 - &p_prime };

        // Closed forms in terms of L = (r-1) mubar + (n-r-1) nubar - r(n-r).
        let l = &(&mubar.scale(&Rational::from_integer((ri - 1).into()))
            + &nubar.scale(&Rational::from_integer((ni - ri - 1).into())))
            - &int(ri * (ni - ri));
        let k = &c1; // r mubar + (n-r)(nubar - r) - n
        let lm1 = &l - &one;
        let common = &(&(&c - &int(ni - 1)) + &(&half * &(k * &lm1)));
        let a_form_closed = AForm {
            e: -&l,
            delta: common + &(&Scalar::from_frac(ni - 2, 2) * &p_prime),
        };
        let b_form_closed = BForm {
            e_delta: lm1.clone(),
            delta_e: -&(k + &int(ni - 3)),
            delta_delta: common + &(&Scalar::from_frac(ni - 1, 2) * &p_prime),
        };
        Ok(FamilyData {
            n,
            r,
            mubar,
            nubar,
            c,
            s_prime,
            p_prime,
            c1,
            c2,
            a1,
            a0,
            b1,
            b1bar,
            b0,
            b0_quoted,
            a_form,
            b_form,
            a_form_closed,
            b_form_closed,
        })
    }

    /// Everything as polynomials in `mubar`, `nubar`, `c`.
    pub fn symbolic(n: usize, r: usize) -> Result<Self, GlError> {
        Self::new(
            n,
            r,
            Scalar::var(&mubar_symbol()),
            Scalar::var(&nubar_symbol()),
            Scalar::var(&central_symbol()),
        )
    }

    /// Substitutes values for any of `mubar`, `nubar`, `c`.
    pub fn substitute(&self, values: &HashMap<Symbol, Scalar>) -> Self {
        let s = |x: &Scalar| x.substitute(values);
        let af = |a: &AForm| AForm { e: s(&a.e), delta: s(&a.delta) };
        let bf = |b: &BForm| BForm { e_delta: s(&b.e_delta), delta_e: s(&b.delta_e), delta_delta: s(&b.delta_delta) };
        FamilyData {
            n: self.n,
            r: self.r,
            mubar: s(&self.mubar),
            nubar: s(&self.nubar),
            c: s(&self.c),
            s_prime: s(&self.s_prime),
            p_prime: s(&self.p_prime),
            c1: s(&self.c1),
            c2: s(&self.c2),
            a1: s(&self.a1),
            a0: s(&self.a0),
            b1: s(&self.b1),
            b1bar: s(&self.b1bar),
            b0: s(&self.b0),
            b0_quoted: s(&self.b0_quoted),
            a_form: af(&self.a_form),
            b_form: bf(&self.b_form),
            a_form_closed: af(&self.a_form_closed),
            b_form_closed: bf(&self.b_form_closed),
        }
    }

    /// Roots `α_s = Λ'_s + n - s` of the shifted weight; only `s = r` and `s = n` are retained.
    pub fn char_identity(&self) -> CharIdentity {
        let (n, r) = (self.n, self.r);
        let one = Scalar::one();
        let roots = (0..n)
            .map(|s| {
                if s < r {
                    &(&self.mubar - &one) + &int((r - 1 - s) as i64)
                } else {
                    &(&self.nubar - &one) + &int((n - 1 - s) as i64)
                }
            })
            .collect();
        let retained = (0..n).map(|s| s + 1 == r || s + 1 == n).collect();
        CharIdentity::from_roots(roots, retained)
    }

    /// Components of `Λ' = (μ-1)^r (ν-1)^(n-r)`.
    pub fn shifted_weight(&self) -> Vec<Scalar> {
        let one = Scalar::one();
        let mu_m1 = &(&self.mubar - &int((self.n - self.r) as i64)) - &one;
        let nu_m1 = &self.nubar - &one;
        (0..self.n).map(|s| if s < self.r { mu_m1.clone() } else { nu_m1.clone() }).collect()
    }

    /// `C1'`, `C2'` recomputed from the shifted weight.
    pub fn casimirs_from_weight(&self) -> (Scalar, Scalar) {
        casimirs(&self.shifted_weight())
    }

    /// Level-one polynomials `a_r`, `a_n`: the reduced `A` at `E = mubar - 1` and `E = nubar - 1`.
    pub fn level_one(&self) -> (Scalar, Scalar) {
        let one = Scalar::one();
        let at = |x: Scalar| &(&self.a_form.e * &x) + &self.a_form.delta;
        (at(&self.mubar - &one), at(&self.nubar - &one))
    }
}

/// Family data for concrete parameters.
pub fn family_data(p: &FamilyParams, c: &CentralCharge) -> Result<FamilyData, GlError> {
    FamilyData::new(
        p.n,
        p.r,
        Scalar::from_rational(p.mubar()),
        Scalar::from_rational(p.nubar()),
        c.scalar(),
    )
}
