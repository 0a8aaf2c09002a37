use qlsa::fock::{bracket_polynomial_check, zero_step_demo, Composites, EConvention, FockSpace, Pairing};

#[test]
fn car_up_to_eight_modes() {
    for n in 1..=8 {
        assert!(FockSpace::new(n).unwrap().check_car(), "n = {n}");
    }
}

#[test]
fn gl_relations_up_to_six_modes() {
    for n in 3..=6 {
        assert!(Composites::new(n).unwrap().check_gl_relations(), "n = {n}");
    }
}

#[test]
fn bracket_identity_and_factor() {
    for n in 3..=5 {
        let checks = bracket_polynomial_check(n).unwrap();
        let lit = checks
            .iter()
            .find(|c| c.convention == EConvention::Direct && c.pairing == Pairing::RowIsQbar)
            .unwrap();
        assert_eq!(lit.factor.as_deref(), Some("-3/2"), "n = {n}");
        assert!(checks.iter().filter(|c| c.convention == EConvention::Dual).all(|c| !c.holds()));
    }
}

#[test]
fn occupation_two_sector_of_four_modes() {
    let z = zero_step_demo(4, 2, EConvention::Direct).unwrap();
    assert_eq!(z.sector_dim, 6);
    assert!(z.q_annihilate && z.qbar_annihilate);
    assert_eq!(z.roots, vec![("1".to_string(), 20), ("4".to_string(), 4)]);
    assert!(z.quadratic_identity);
    // a sector that Qbar does not annihilate
    let z = zero_step_demo(4, 1, EConvention::Direct).unwrap();
    assert!(!z.qbar_annihilate);
}
