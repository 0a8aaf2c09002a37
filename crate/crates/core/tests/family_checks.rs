use std::collections::HashMap;

use qlsa::atypicality::{
    level1_poly, table_with_charges, zero_step, zero_step_closed_conditions, zero_step_derived_conditions,
    zero_step_equivalence_check, ZeroStep,
};
use qlsa::gl2n1::{
    central_symbol, mubar_symbol, nubar_symbol, projector_algebra, CentralCharge, FamilyData, FamilyParams, Weight,
};
use qlsa::nc_core::{qi, Rational, Scalar};

#[test]
fn a_form_matches_closed_expression() {
    for n in 2..=6 {
        for r in 1..n {
            let fd = FamilyData::symbolic(n, r).unwrap();
            assert_eq!(fd.a_form, fd.a_form_closed, "n = {n}, r = {r}");
        }
    }
}

#[test]
fn b_form_closed_expression_is_kept_for_comparison() {
    // The reduced B differs from the stored closed expression for every n >= 3.
    for n in 3..=6 {
        for r in 1..n {
            let fd = FamilyData::symbolic(n, r).unwrap();
            assert_ne!(fd.b_form, fd.b_form_closed, "n = {n}, r = {r}");
            assert_eq!(fd.b_form.delta_e, Scalar::one());
        }
    }
}

#[test]
fn casimir_relation_is_polynomial_identity() {
    for n in 2..=6 {
        for r in 1..n {
            let fd = FamilyData::symbolic(n, r).unwrap();
            let rhs = &(&fd.s_prime * &fd.c1) - &fd.p_prime.scale(&qi(n as i64));
            assert_eq!(fd.c2, rhs);
            assert_eq!(fd.casimirs_from_weight(), (fd.c1.clone(), fd.c2.clone()));
        }
    }
}

#[test]
fn symbolic_projectors() {
    for n in 2..=6 {
        for r in 1..n {
            let ci = FamilyData::symbolic(n, r).unwrap().char_identity();
            assert_eq!(ci.retained_indices(), vec![r - 1, n - 1]);
            let pa = projector_algebra(&ci).unwrap();
            assert!(pa.resolves_identity && pa.orthogonal && pa.eigen, "n = {n}, r = {r}");
        }
    }
}

#[test]
fn level_one_agrees_with_weight_formula() {
    // family level-one values against the Casimir formula evaluated from the weight
    for n in 3..=6 {
        for r in 1..n {
            for (mu, nu) in [(2, 0), (3, 1), (5, -2), (1, 1)] {
                let p = FamilyParams::new(n, r, qi(mu), qi(nu)).unwrap();
                let c = Scalar::var(&central_symbol());
                let fd = FamilyData::new(n, r, Scalar::from_rational(p.mubar()), Scalar::from_rational(p.nubar()), c.clone())
                    .unwrap();
                let w = Weight::rectangular(n, r, &qi(mu), &qi(nu));
                let (ar, an) = fd.level_one();
                if mu > nu {
                    assert_eq!(level1_poly(&w, &c, r - 1).unwrap(), ar, "n={n} r={r} mu={mu} nu={nu}");
                }
                assert_eq!(level1_poly(&w, &c, n - 1).unwrap(), an, "n={n} r={r} mu={mu} nu={nu}");
            }
        }
    }
}

#[test]
fn table_charges_kill_level_one() {
    for ((n, r, k), c) in table_with_charges(10).unwrap() {
        let p = FamilyParams::tensor(n, r, k as i64).unwrap();
        let at = |c: &Rational| {
            let fd = FamilyData::new(n, r, Scalar::from_rational(p.mubar()), Scalar::from_rational(p.nubar()), Scalar::from_rational(c.clone()))
                .unwrap();
            fd.level_one()
        };
        let (ar, an) = at(&c);
        assert!(ar.is_zero() && an.is_zero(), "({n},{r},{k})");
        let (ar, an) = at(&(&c + qi(1)));
        assert!(!ar.is_zero() || !an.is_zero());
        let cs = Scalar::from_rational(c.clone());
        assert!(zero_step_equivalence_check(&p, &cs).unwrap());
        assert!(zero_step_derived_conditions(&p, &cs).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(zero_step(&p, &CentralCharge::Value(c)).unwrap(), ZeroStep::Holds);
    }
}

#[test]
fn closed_conditions_vs_derived() {
    // first conditions coincide; the closed product form disagrees with the derived one
    let p = FamilyParams::tensor(3, 2, 1).unwrap();
    let c = Scalar::from_int(2);
    let closed = zero_step_closed_conditions(&p, &c).unwrap();
    let derived = zero_step_derived_conditions(&p, &c).unwrap();
    assert_eq!(closed[0], derived[0]);
    assert!(derived[1].is_zero());
    assert!(!closed[1].is_zero());
}

#[test]
fn rank_n_closed_condition_holds() {
    for n in 3..=6 {
        for mu in 1..=4 {
            let p = FamilyParams::new(n, n, qi(mu), qi(mu)).unwrap();
            if let ZeroStep::RequiresCharge(c) = zero_step(&p, &CentralCharge::Symbolic).unwrap() {
                assert!(zero_step_closed_conditions(&p, &c).unwrap()[0].is_zero());
            } else {
                panic!("charge expected for n = {n}, mu = {mu}");
            }
        }
    }
}

#[test]
fn symbolic_substitution_is_consistent() {
    let fd = FamilyData::symbolic(5, 2).unwrap();
    let vals: HashMap<_, _> =
        [(mubar_symbol(), Scalar::from_int(7)), (nubar_symbol(), Scalar::from_int(2)), (central_symbol(), Scalar::from_int(-3))]
            .into_iter()
            .collect();
    let direct = FamilyData::new(5, 2, Scalar::from_int(7), Scalar::from_int(2), Scalar::from_int(-3)).unwrap();
    assert_eq!(fd.substitute(&vals), direct);
}
