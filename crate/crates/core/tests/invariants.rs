use proptest::prelude::*;

use qlsa::gl2n1::{CentralCharge, Gl2n1, PlainAtoms};
use qlsa::nc_core::{parse_expression, super_commutator, Alphabet, NCPoly, PlainNames, Scalar, Word};
use qlsa::presentation::PresentationBuilder;

const AL: Alphabet = Alphabet { even: 2, odd: 2 };

fn poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((prop::collection::vec(0u16..4, 0..4), -3i64..=3), 0..5).prop_map(|terms| {
        let mut p = NCPoly::zero(AL);
        for (w, k) in terms {
            p.add_term(Word(w), Scalar::from_int(k));
        }
        p
    })
}

/// Homogeneous: every word has the given parity.
fn homogeneous(parity: u8) -> impl Strategy<Value = NCPoly> {
    poly().prop_map(move |p| {
        let mut out = NCPoly::zero(AL);
        for (w, s) in p.terms() {
            if AL.word_parity(w) == parity {
                out.add_term(w.clone(), s.clone());
            }
        }
        out
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn super_antisymmetry(pa in 0u8..2, pb in 0u8..2, seed_a in homogeneous(0), seed_b in homogeneous(1)) {
        let pick = |p: u8| if p == 0 { seed_a.clone() } else { seed_b.clone() };
        let (a, b) = (pick(pa), pick(pb));
        let ab = super_commutator(&a, &b).unwrap();
        let ba = super_commutator(&b, &a).unwrap();
        let sign = if pa == 1 && pb == 1 { 1 } else { -1 };
        prop_assert_eq!(ab, ba.scale(&Scalar::from_int(sign)));
    }

    #[test]
    fn render_parse_round_trip(a in poly()) {
        let p = PresentationBuilder::new(2, 2).build().unwrap();
        let text = a.render(&PlainNames);
        let back = parse_expression(&text, &PlainAtoms(&p)).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn gl_word() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    // (kind, i, j): kind 0 = E[i,j], 1 = Qbar[i], 2 = Q[i]
    prop::collection::vec((0usize..3, 0usize..3, 0usize..3), 1..5)
}

fn gl_elem(g: &Gl2n1, w: &[(usize, usize, usize)]) -> NCPoly {
    w.iter().fold(NCPoly::one(g.alphabet()), |acc, &(k, i, j)| {
        let x = match k {
            0 => g.e(i, j),
            1 => g.qbar(i),
            _ => g.q(i),
        };
        &acc * &x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_a_projection(u in gl_word(), v in gl_word()) {
        let g = Gl2n1::new(3, CentralCharge::Symbolic).unwrap();
        let (a, b) = (gl_elem(&g, &u), gl_elem(&g, &v));
        let na = g.normal_form(&a).unwrap();
        prop_assert_eq!(g.normal_form(&na).unwrap(), na.clone());
        let nb = g.normal_form(&b).unwrap();
        prop_assert_eq!(g.normal_form(&(&a * &b)).unwrap(), g.normal_form(&(&na * &nb)).unwrap());
        for (w, _) in na.terms() {
            prop_assert!(g.rewrite_system().is_ordered(w));
        }
    }

    #[test]
    fn jacobi_in_normal_form(u in gl_word(), v in gl_word(), w in gl_word()) {
        let g = Gl2n1::new(3, CentralCharge::Symbolic).unwrap();
        let (a, b, c) = (gl_elem(&g, &u[..1]), gl_elem(&g, &v[..1]), gl_elem(&g, &w[..1]));
        let pa = a.parity().unwrap();
        let pc = c.parity().unwrap();
        let pb = b.parity().unwrap();
        let sgn = |x: u8, y: u8| Scalar::from_int(if x & y & 1 == 1 { -1 } else { 1 });
        let br = |x: &NCPoly, y: &NCPoly| super_commutator(x, y).unwrap();
        // (-1)^{ac}[a,[b,c]] + (-1)^{ba}[b,[c,a]] + (-1)^{cb}[c,[a,b]] = 0
        let total = &(&br(&a, &br(&b, &c)).scale(&sgn(pa, pc)) + &br(&b, &br(&c, &a)).scale(&sgn(pb, pa)))
            + &br(&c, &br(&a, &b)).scale(&sgn(pc, pb));
        prop_assert!(g.normal_form(&total).unwrap().is_zero());
    }
}
