//! Level-one atypicality, zero-step and one-step analysis for `gl2(n/1)` Kac modules.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gl2n1::{
    casimirs, central_symbol, char_roots, family_data, mubar_symbol, nubar_symbol, CentralCharge, FamilyData,
    FamilyParams, GlError, Weight,
};
use crate::nc_core::{Rational, Scalar, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtypError {
    #[error("weight is not dominant integral")]
    NotDominant,
    #[error("root {0} is not retained for this weight")]
    NotRetained(usize),
    #[error("analysis requires n >= 3, got {0}")]
    RankTooSmall(usize),
    #[error("analysis does not apply when mubar = nubar")]
    EqualRoots,
    #[error(transparent)]
    Gl(#[from] GlError),
}

fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

/// `a(α) = α^2 - a1 α + a0` with `a1 = C1' + n - 2`, `a0 = c - (n-1) - 1/2 (C2' - C1'^2 - (n-3) C1')`.
pub fn a_polynomial(n: usize, alpha: &Scalar, c1: &Scalar, c2: &Scalar, c: &Scalar) -> Scalar {
    let ni = n as i64;
    let a1 = c1 + &int(ni - 2);
    let inner = &(c2 - &(c1 * c1)) - &(c1 * &int(ni - 3));
    let a0 = &(c - &int(ni - 1)) - &(&Scalar::from_frac(1, 2) * &inner);
    &(&(alpha * alpha) - &(&a1 * alpha)) + &a0
}

/// Level-one polynomial for root `s` (zero-based): `A` evaluated at `E = α'_s` on `V0(Λ')`.
pub fn level1_poly(w: &Weight, c: &Scalar, s: usize) -> Result<Scalar, AtypError> {
    if !w.is_dominant_integral() {
        return Err(AtypError::NotDominant);
    }
    let shifted = w.shifted();
    let ci = char_roots(&shifted);
    if s >= w.n() || !ci.retained[s] {
        return Err(AtypError::NotRetained(s));
    }
    let (c1, c2) = casimirs(&shifted.scalars());
    Ok(a_polynomial(w.n(), &ci.roots[s], &c1, &c2, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LevelStatus {
    Present,
    Killed,
    /// Depends on the value of an indeterminate.
    Conditional,
    NotAnalyzed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootValue {
    /// One-based root index.
    pub s: usize,
    pub value: String,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtypicalityReport {
    pub weight: Vec<String>,
    pub c: String,
    pub roots: Vec<RootValue>,
    pub zero_step: bool,
    pub levels: Vec<LevelStatus>,
}

/// Level-one polynomials at every retained root, and the resulting occupancy of levels `0..=n`.
pub fn atypicality_report(w: &Weight, c: &Scalar) -> Result<AtypicalityReport, AtypError> {
    if !w.is_dominant_integral() {
        return Err(AtypError::NotDominant);
    }
    let ci = char_roots(&w.shifted());
    let mut roots = Vec::new();
    let mut values = Vec::new();
    for s in ci.retained_indices() {
        let v = level1_poly(w, c, s)?;
        roots.push(RootValue { s: s + 1, value: v.to_string(), vanishes: v.is_zero() });
        values.push(v);
    }
    let zero_step = values.iter().all(Scalar::is_zero);
    let level1 = if zero_step {
        LevelStatus::Killed
    } else if values.iter().any(|v| v.is_constant() && !v.is_zero()) {
        LevelStatus::Present
    } else {
        LevelStatus::Conditional
    };
    let n = w.n();
    let mut levels = vec![LevelStatus::Present, level1];
    let rest = if zero_step { LevelStatus::Killed } else { LevelStatus::NotAnalyzed };
    levels.extend(std::iter::repeat(rest).take(n - 1));
    Ok(AtypicalityReport {
        weight: w.0.iter().map(|x| x.to_string()).collect(),
        c: c.to_string(),
        roots,
        zero_step,
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroStep {
    Holds,
    Fails,
    /// Holds exactly when the central charge takes this value.
    RequiresCharge(Scalar),
    /// Fails for every value of the central charge.
    Impossible,
}

impl ZeroStep {
    pub fn holds(&self) -> bool {
        matches!(self, ZeroStep::Holds)
    }
}

impl fmt::Display for ZeroStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroStep::Holds => write!(f, "zero-step"),
            ZeroStep::Fails => write!(f, "not zero-step"),
            ZeroStep::RequiresCharge(v) => write!(f, "zero-step iff c = {v}"),
            ZeroStep::Impossible => write!(f, "not zero-step for any c"),
        }
    }
}

fn solve_for_charge(expr: &Scalar) -> ZeroStep {
    if expr.is_zero() {
        return ZeroStep::Holds;
    }
    let c = central_symbol();
    if expr.degree_in(&c) == 0 {
        return if expr.is_constant() { ZeroStep::Fails } else { ZeroStep::Impossible };
    }
    // expr is linear in c with unit coefficient for every caller here.
    let coeffs = expr.coefficients_in(&c);
    match (coeffs.len(), coeffs.get(1).and_then(Scalar::as_rational)) {
        (2, Some(k)) if !k.is_zero() => ZeroStep::RequiresCharge((-&coeffs[0]).scale(&k.recip())),
        _ => ZeroStep::Impossible,
    }
}

/// Zero-step test for `V(μ^r, ν^(n-r))`: `A` vanishes on `V0(Λ')`.
///
/// For `r < n` this means both reduced coefficients of `A` vanish; for `r = n`
/// the module `V0(Λ')` is one-dimensional and `A` is the scalar `a(μ - 1)`.
pub fn zero_step(p: &FamilyParams, c: &CentralCharge) -> Result<ZeroStep, AtypError> {
    if p.n < 3 {
        return Err(AtypError::RankTooSmall(p.n));
    }
    let cs = c.scalar();
    if p.r == p.n {
        let mu1 = Scalar::from_rational(&p.mu - Rational::one());
        let (c1, c2) = casimirs(&vec![mu1.clone(); p.n]);
        return Ok(solve_for_charge(&a_polynomial(p.n, &mu1, &c1, &c2, &cs)));
    }
    let fd = family_data(p, c)?;
    if !fd.a_form.e.is_zero() {
        return Ok(if fd.a_form.delta.degree_in(&central_symbol()) > 0 { ZeroStep::Impossible } else { ZeroStep::Fails });
    }
    Ok(solve_for_charge(&fd.a_form.delta))
}

/// Residuals of the conditions `(r-1)mubar + (n-r-1)nubar = r(n-r)` and
/// `(mubar - (n+1)/n)(nubar - (n+1)/n) = ((n+1)/n)^2 - (2c+1)/n`, or for `r = n`
/// of `(μ - n/(2(n-2)))^2 = (n/(2(n-2)))^2 - 2c/((n-1)(n-2))`.
pub fn zero_step_closed_conditions(p: &FamilyParams, c: &Scalar) -> Result<Vec<Scalar>, AtypError> {
    if p.n < 3 {
        return Err(AtypError::RankTooSmall(p.n));
    }
    let (n, r) = (p.n as i64, p.r as i64);
    if p.r == p.n {
        let h = Scalar::from_frac(n, 2 * (n - 2));
        let mu = Scalar::from_rational(p.mu.clone());
        let d = &mu - &h;
        let rhs = &(&h * &h) - &c.scale(&Rational::new(2.into(), ((n - 1) * (n - 2)).into()));
        return Ok(vec![&(&d * &d) - &rhs]);
    }
    let mb = Scalar::from_rational(p.mubar());
    let nb = Scalar::from_rational(p.nubar());
    let first = &(&(&mb * &int(r - 1)) + &(&nb * &int(n - r - 1))) - &int(r * (n - r));
    let q = Scalar::from_frac(n + 1, n);
    let second = &(&(&mb - &q) * &(&nb - &q)) - &(&(&q * &q) - &(&(&c.scale(&Rational::from_integer(2.into())) + &int(1)) * &Scalar::from_frac(1, n)));
    Ok(vec![first, second])
}

/// Residuals of `(r-1)mubar + (n-r-1)nubar = r(n-r)` and `(n-2) mubar nubar - (n-1)(mubar + nubar) + 2c = 0`.
pub fn zero_step_derived_conditions(p: &FamilyParams, c: &Scalar) -> Result<Vec<Scalar>, AtypError> {
    if p.n < 3 || p.r >= p.n {
        return Err(AtypError::RankTooSmall(p.n));
    }
    let (n, r) = (p.n as i64, p.r as i64);
    let mb = Scalar::from_rational(p.mubar());
    let nb = Scalar::from_rational(p.nubar());
    let first = &(&(&mb * &int(r - 1)) + &(&nb * &int(n - r - 1))) - &int(r * (n - r));
    let second = &(&(&(&mb * &nb) * &int(n - 2)) - &(&(&mb + &nb) * &int(n - 1))) + &c.scale(&Rational::from_integer(2.into()));
    Ok(vec![first, second])
}

/// Checks that `{Qbar^i, Q_j}` vanishes on `V0(Λ)`, where `E` satisfies the
/// quadratic identity with sum `s' + 2` and product `p' + s' + 1`, and
/// `C1 = C1' + n`, `C2 = C2' + 2 C1' + n`.
pub fn zero_step_equivalence_check(p: &FamilyParams, c: &Scalar) -> Result<bool, AtypError> {
    if p.n < 3 {
        return Err(AtypError::RankTooSmall(p.n));
    }
    if p.mubar() == p.nubar() || p.r == p.n {
        return Err(AtypError::EqualRoots);
    }
    let fd = crate::gl2n1::FamilyData::new(
        p.n,
        p.r,
        Scalar::from_rational(p.mubar()),
        Scalar::from_rational(p.nubar()),
        c.clone(),
    )?;
    let n = p.n as i64;
    let sum = &fd.s_prime + &int(2);
    let prod = &(&fd.p_prime + &fd.s_prime) + &int(1);
    let c1 = &fd.c1 + &int(n);
    let c2 = &(&fd.c2 + &(&fd.c1 * &int(2))) + &int(n);
    // E^2 - <E> E - 1/2 (<E^2> - <E>^2 + (n-1)<E>) + c  with  E^2 = sum E - prod
    let e_coef = &sum - &c1;
    let inner = &(&c2 - &(&c1 * &c1)) + &(&c1 * &int(n - 1));
    let d_coef = &(&(-&prod) - &(&Scalar::from_frac(1, 2) * &inner)) + c;
    Ok(e_coef.is_zero() && d_coef.is_zero())
}

/// `(n, r, k)` with `3 <= n <= n_max`, `2 <= r <= n-1`, `k >= 1` and `(r-1)(k+n-r) = r(n-r)`.
pub fn table_zero_step(n_max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for r in 2..n {
            // k = (n-r)/(r-1)
            if (n - r) % (r - 1) == 0 {
                let k = (n - r) / (r - 1);
                if k >= 1 {
                    out.push((n, r, k));
                }
            }
        }
    }
    out
}

/// Central charge solving the zero-step conditions for `V(k^r, 0^(n-r))`, if any.
pub fn zero_step_charge(n: usize, r: usize, k: i64) -> Result<Option<Rational>, AtypError> {
    let p = FamilyParams::tensor(n, r, k)?;
    Ok(match zero_step(&p, &CentralCharge::Symbolic)? {
        ZeroStep::RequiresCharge(v) => v.as_rational(),
        _ => None,
    })
}

/// Coefficients of `(EE)`, `(Eδ)`, `(δE)`, `(δδ)` in `B^{kl}_{ij} A^j_m` after reduction
/// by the quadratic identity, with `A = α1 E + α0`, `B = β1 (Eδ) + β2 (δE) + β0 (δδ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaCoefficients {
    pub ee: Scalar,
    pub e_delta: Scalar,
    pub delta_e: Scalar,
    pub delta_delta: Scalar,
}

impl BaCoefficients {
    pub fn all(&self) -> [&Scalar; 4] {
        [&self.ee, &self.e_delta, &self.delta_e, &self.delta_delta]
    }
}

/// Which constant term to use in `b0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BConstant {
    /// `c - 2(n-2)`, the value fixed by the bracket `[Q_i, Sbar_j]`.
    Verified,
    /// `c - (n-2)`.
    Quoted,
}

pub fn ba_coefficients(fd: &FamilyData, which: BConstant) -> BaCoefficients {
    let a1 = &fd.a_form.e;
    let a0 = &fd.a_form.delta;
    let b0 = match which {
        BConstant::Verified => fd.b0.clone(),
        BConstant::Quoted => fd.b0_quoted.clone(),
    };
    let beta1 = &fd.b_form.e_delta;
    let beta2 = &fd.b_form.delta_e;
    let beta0 = &b0 - &fd.p_prime;
    // (δE)A = α1 (δ E^2) + α0 (δE) and E^2 = s'E - p'
    BaCoefficients {
        ee: a1 * beta1,
        e_delta: a0 * beta1,
        delta_e: &(beta2 * &(&(a1 * &fd.s_prime) + a0)) + &(&beta0 * a1),
        delta_delta: &(a0 * &beta0) - &(&(beta2 * a1) * &fd.p_prime),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStepBranch {
    pub r: usize,
    /// On `s' = a1`: value of `s' - b1` (nonzero forces `a0 = p'`, the zero-step case).
    pub a_branch_b_gap: Scalar,
    /// On `s' = b1`: `(δE)` coefficient, equal to `a0 - b0 - s'`.
    pub residual: Scalar,
    /// The same with the quoted constant in `b0`.
    pub residual_quoted: Scalar,
    /// On `s' = b1`: the `(δδ)` coefficient left to vanish.
    pub remaining: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStepReport {
    pub n: usize,
    pub branches: Vec<OneStepBranch>,
}

impl OneStepReport {
    /// True when every `s' = b1` branch is inconsistent, i.e. no one-step modules.
    pub fn none(&self) -> bool {
        self.branches.iter().all(|b| b.residual.is_constant() && !b.residual.is_zero())
    }

    pub fn none_quoted(&self) -> bool {
        self.branches.iter().all(|b| b.residual_quoted.is_constant() && !b.residual_quoted.is_zero())
    }
}

/// Solves a linear relation `k_mu mubar + k_nu nubar + k0 = 0` for one of the two.
fn eliminate(rel: &Scalar) -> Option<(Symbol, Scalar)> {
    for sym in [mubar_symbol(), nubar_symbol()] {
        let co = rel.coefficients_in(&sym);
        if co.len() == 2 {
            if let Some(k) = co[1].as_rational() {
                return Some((sym, (-&co[0]).scale(&k.recip())));
            }
        }
    }
    None
}

/// Case analysis of `B A = 0` for every `1 <= r < n`, symbolic in `mubar`, `nubar`, `c`.
pub fn one_step_analysis(n: usize) -> Result<OneStepReport, AtypError> {
    if n < 2 {
        return Err(AtypError::RankTooSmall(n));
    }
    let mut branches = Vec::new();
    for r in 1..n {
        let fd = FamilyData::symbolic(n, r)?;
        let sub = |rel: &Scalar, x: &Scalar| -> Scalar {
            match eliminate(rel) {
                Some((sym, v)) => x.substitute_one(&sym, &v),
                None => x.clone(),
            }
        };
        // s' = a1
        let a_branch_b_gap = sub(&fd.a_form.e, &fd.b_form.e_delta);
        // s' = b1
        let rel = &fd.b_form.e_delta;
        let ver = ba_coefficients(&fd, BConstant::Verified);
        let quo = ba_coefficients(&fd, BConstant::Quoted);
        branches.push(OneStepBranch {
            r,
            a_branch_b_gap,
            residual: sub(rel, &ver.delta_e),
            residual_quoted: sub(rel, &quo.delta_e),
            remaining: sub(rel, &ver.delta_delta),
        });
    }
    Ok(OneStepReport { n, branches })
}

/// A parameter point where `B A` reduces to zero while `A` does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneStepWitness {
    pub n: usize,
    pub r: usize,
    pub mubar: i64,
    pub nubar: i64,
    pub c: i64,
}

/// Exhaustive search over integer `mubar`, `nubar`, `c` in `[lo, hi]` with `μ - ν >= 1`.
pub fn one_step_grid_scan(n: usize, lo: i64, hi: i64, which: BConstant) -> Result<Vec<OneStepWitness>, AtypError> {
    let mut out = Vec::new();
    for r in 1..n {
        let fd = FamilyData::symbolic(n, r)?;
        let ba = ba_coefficients(&fd, which);
        let (mb, nb, cs) = (mubar_symbol(), nubar_symbol(), central_symbol());
        let found: Vec<OneStepWitness> = (lo..=hi)
            .into_par_iter()
            .flat_map_iter(|m| {
                let (mb, nb, cs) = (mb.clone(), nb.clone(), cs.clone());
                let fd = &fd;
                let ba = &ba;
                (lo..=hi).flat_map(move |v| {
                    let (mb, nb, cs) = (mb.clone(), nb.clone(), cs.clone());
                    (lo..=hi).filter_map(move |c| {
                        if m - v < (n - r) as i64 + 1 {
                            return None;
                        }
                        let vals: HashMap<Symbol, Rational> = [
                            (mb.clone(), Rational::from_integer(m.into())),
                            (nb.clone(), Rational::from_integer(v.into())),
                            (cs.clone(), Rational::from_integer(c.into())),
                        ]
                        .into_iter()
                        .collect();
                        let ev = |s: &Scalar| s.eval(&vals).expect("all symbols bound");
                        let a_zero = ev(&fd.a_form.e).is_zero() && ev(&fd.a_form.delta).is_zero();
                        let ba_zero = ba.all().iter().all(|s| ev(s).is_zero());
                        (ba_zero && !a_zero).then_some(OneStepWitness { n, r, mubar: m, nubar: v, c })
                    })
                })
            })
            .collect();
        out.extend(found);
    }
    Ok(out)
}

/// `(n, r, k)` triples with their zero-step central charge, for `3 <= n <= n_max`.
pub fn table_with_charges(n_max: usize) -> Result<Vec<((usize, usize, usize), Rational)>, AtypError> {
    table_zero_step(n_max)
        .into_par_iter()
        .map(|(n, r, k)| {
            let c = zero_step_charge(n, r, k as i64)?.expect("first condition holds by construction");
            Ok(((n, r, k), c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn small_table() {
        assert_eq!(table_zero_step(3), vec![(3, 2, 1)]);
        assert!(table_zero_step(2).is_empty());
        for (n, r, k) in table_zero_step(12) {
            assert_eq!((r - 1) * (k + n - r), r * (n - r));
        }
    }

    #[test]
    fn rank_n_case() {
        // n = 3, μ = 1: μ^2 - 3μ + c = 0 gives c = 2
        let p = FamilyParams::new(3, 3, rat(1), rat(1)).unwrap();
        assert_eq!(zero_step(&p, &CentralCharge::Symbolic).unwrap(), ZeroStep::RequiresCharge(Scalar::from_int(2)));
        assert!(zero_step(&p, &CentralCharge::Value(rat(2))).unwrap().holds());
        let closed = zero_step_closed_conditions(&p, &Scalar::from_int(2)).unwrap();
        assert!(closed[0].is_zero());
    }

    #[test]
    fn n3_r2_k1() {
        let p = FamilyParams::tensor(3, 2, 1).unwrap();
        let ZeroStep::RequiresCharge(c) = zero_step(&p, &CentralCharge::Symbolic).unwrap() else { panic!() };
        assert_eq!(c, Scalar::from_int(2));
        assert!(zero_step_equivalence_check(&p, &c).unwrap());
        assert!(!zero_step_equivalence_check(&p, &Scalar::from_int(3)).unwrap());
        let derived = zero_step_derived_conditions(&p, &c).unwrap();
        assert!(derived.iter().all(Scalar::is_zero));
    }

    #[test]
    fn errors() {
        let p = FamilyParams::tensor(2, 1, 1).unwrap();
        assert_eq!(zero_step(&p, &CentralCharge::Symbolic), Err(AtypError::RankTooSmall(2)));
        assert!(level1_poly(&Weight::from_ints(&[0, 1]), &Scalar::zero(), 1).is_err());
    }
}
