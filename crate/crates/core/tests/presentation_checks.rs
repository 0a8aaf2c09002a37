use qlsa::gl2n1::{CentralCharge, Gl2n1};
use qlsa::nc_core::{Alphabet, GeneratorId, Letter, Scalar};
use qlsa::presentation::{PresentationBuilder, QlsPresentation, TripleTensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    let v = rng.gen_range(-2..=2);
    Scalar::from_int(if v == 0 { 1 } else { v })
}

/// Sparse random data with the required symmetries. `mask` switches tensors off
/// so that a fair share of the samples are genuine superalgebras.
fn random_presentation(rng: &mut ChaCha8Rng, mask: u8) -> QlsPresentation {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    let mut b = PresentationBuilder::new(n, m);
    let p = 0.25;
    if mask & 1 != 0 {
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if rng.gen_bool(p) {
                        let v = small(rng);
                        b.c_antisym(i, j, k, v);
                    }
                }
            }
        }
    }
    if mask & 2 != 0 {
        for i in 0..n {
            for q in 0..m {
                for r in 0..m {
                    if rng.gen_bool(p) {
                        let v = small(rng);
                        b.set_cbar(i, q, r, v);
                    }
                }
            }
        }
    }
    for q in 0..m {
        for r in q..m {
            if mask & 4 != 0 {
                for k in 0..n {
                    for l in k..n {
                        if rng.gen_bool(0.15) {
                            let v = small(rng);
                            b.d_sym(q, r, k, l, v);
                        }
                    }
                }
            }
            if mask & 8 != 0 {
                for k in 0..n {
                    if rng.gen_bool(p) {
                        let v = small(rng);
                        b.b_sym(q, r, k, v);
                    }
                }
            }
            if mask & 16 != 0 && rng.gen_bool(p) {
                let v = small(rng);
                b.a_sym(q, r, v);
            }
        }
    }
    b.build().expect("symmetric by construction")
}

#[test]
fn checkers_agree_on_random_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut total, mut passing) = (0, 0);
    for round in 0..160 {
        let mask = [0b11111, 0b11000, 0b10100, 0b00001, 0b00011, 0b11100, 0b10011, 0b01001][round % 8];
        let p = random_presentation(&mut rng, mask);
        let comp = p.check_component_jacobi().passed();
        let abs = p.check_abstract_jacobi().unwrap().passed();
        assert_eq!(comp, abs, "disagreement on\n{}", p.to_text());
        total += 1;
        passing += usize::from(comp);
    }
    assert!(total >= 50);
    assert!(passing >= 10 && passing < total, "{passing} of {total} pass");
}

#[test]
fn gl2n1_passes_both_checkers() {
    for n in 2..=4 {
        for c in [CentralCharge::Symbolic, CentralCharge::Value(qlsa::nc_core::qi(3))] {
            let g = Gl2n1::new(n, c).unwrap();
            let p = g.presentation();
            assert!(p.check_component_jacobi().passed(), "component, n = {n}");
            assert!(p.check_abstract_jacobi().unwrap().passed(), "abstract, n = {n}");
        }
    }
}

#[test]
fn broken_gl2n1_is_caught() {
    let g = Gl2n1::new(3, CentralCharge::Symbolic).unwrap();
    let mut b = g.presentation().to_builder();
    let old = g.presentation().d().get([0, 3, 1, 5]);
    b.d_sym(0, 3, 1, 5, &old + &Scalar::one());
    let p = b.build().unwrap();
    assert!(!p.check_component_jacobi().passed());
    assert!(!p.check_abstract_jacobi().unwrap().passed());
}

/// `(y_p y_q + y_q y_p - d_pq^kl x_k x_l) x_i + [x_i, y_q] y_p + [x_i, y_p] y_q - d_pq^kl [x_i, x_k] x_l`.
fn z_pqi(p: &QlsPresentation, al: Alphabet, pp: usize, q: usize, i: usize) -> TripleTensor {
    let x = |k: usize| -> Letter { al.letter(GeneratorId::even(k)) };
    let y = |k: usize| -> Letter { al.letter(GeneratorId::odd(k)) };
    let one = Scalar::one();
    let mut t = TripleTensor::default();
    t.add([y(pp), y(q), x(i)], one.clone());
    t.add([y(q), y(pp), x(i)], one.clone());
    t.add([x(i), y(q), y(pp)], one.clone());
    t.add([y(q), x(i), y(pp)], -&one);
    t.add([x(i), y(pp), y(q)], one.clone());
    t.add([y(pp), x(i), y(q)], -&one);
    for (key, d) in p.d().iter() {
        if key[0] == pp && key[1] == q {
            let (k, l) = (key[2], key[3]);
            t.add([x(k), x(l), x(i)], -d);
            t.add([x(i), x(k), x(l)], -d);
            t.add([x(k), x(i), x(l)], d.clone());
        }
    }
    t
}

#[test]
fn cyclic_elements_lie_in_intersection() {
    let g = Gl2n1::new(3, CentralCharge::Symbolic).unwrap();
    let p = g.presentation();
    let inter = p.intersection().unwrap();
    let al = p.alphabet();
    for pp in 0..p.m() {
        for q in pp..p.m() {
            for i in 0..p.n() {
                assert!(inter.contains(&z_pqi(p, al, pp, q, i)), "z_{pp}{q}{i}");
            }
        }
    }
    // a single cyclic piece is not in the intersection
    let mut lone = TripleTensor::default();
    lone.add([al.letter(GeneratorId::odd(0)), al.letter(GeneratorId::odd(3)), al.letter(GeneratorId::even(0))], Scalar::one());
    assert!(!inter.contains(&lone));
}

#[test]
fn text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let p = random_presentation(&mut rng, 0b11111);
        let text = p.to_text();
        let back = QlsPresentation::from_text(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_text(), text);
    }
    let g = Gl2n1::new(3, CentralCharge::Symbolic).unwrap();
    let text = g.presentation().to_text();
    assert_eq!(QlsPresentation::from_text(&text).unwrap(), *g.presentation());
}

#[test]
fn shipped_example_matches_builder() {
    let src = include_str!("../data/gl2_3_1.qls");
    let g = Gl2n1::new(3, CentralCharge::Symbolic).unwrap();
    assert_eq!(QlsPresentation::from_text(src).unwrap(), *g.presentation());
}
