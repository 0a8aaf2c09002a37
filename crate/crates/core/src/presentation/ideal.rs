//! The homogeneous quadratic part `I2` of the defining ideal and reduction modulo it.

use num_traits::One;

use super::{PresentationError, QlsPresentation};
use crate::nc_core::{Alphabet, GeneratorId, Letter, NCPoly, Rational, Scalar, Word};

/// A spanning element of `I2` with its linear and constant images.
#[derive(Debug, Clone)]
pub struct IdealGen {
    /// Two-letter words with coefficients.
    pub terms: Vec<((Letter, Letter), Scalar)>,
    pub alpha: Vec<(Letter, Scalar)>,
    pub beta: Scalar,
    pub lead: (Letter, Letter),
    pub lead_coef: Rational,
}

/// Reduction of a two-letter word: `w = sum quo_G G + sum rem_v v` with `v` normal.
#[derive(Debug, Clone, Default)]
pub struct Reduction {
    pub rem: Vec<(usize, Scalar)>,
    pub quo: Vec<(usize, Scalar)>,
}

/// `I2` together with a normal-form projection on degree-two tensors.
///
/// Leading words are `x_j x_i` for `i < j`, `y_q y_p` for `p <= q` and
/// `y_p x_i`; the remaining two-letter words span a complement.
#[derive(Debug, Clone)]
pub struct QuadraticIdeal {
    alphabet: Alphabet,
    gens: Vec<IdealGen>,
    reductions: Vec<Reduction>,
}

fn push(v: &mut Vec<(usize, Scalar)>, idx: usize, s: Scalar) {
    if !s.is_zero() {
        v.push((idx, s));
    }
}

fn merge(v: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    let mut map = std::collections::BTreeMap::<usize, Scalar>::new();
    for (k, s) in v {
        *map.entry(k).or_default() += s;
    }
    map.into_iter().filter(|(_, s)| !s.is_zero()).collect()
}

impl QuadraticIdeal {
    pub fn new(p: &QlsPresentation) -> Self {
        let al = p.alphabet();
        let nl = al.len();
        let x = |i: usize| al.letter(GeneratorId::even(i));
        let y = |q: usize| al.letter(GeneratorId::odd(q));
        let mut gens = Vec::new();
        let minus = Scalar::from_int(-1);
        for i in 0..p.n() {
            for j in i + 1..p.n() {
                let alpha = (0..p.n())
                    .map(|k| (x(k), p.c().get([i, j, k])))
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
                gens.push(IdealGen {
                    terms: vec![((x(i), x(j)), Scalar::one()), ((x(j), x(i)), minus.clone())],
                    alpha,
                    beta: Scalar::zero(),
                    lead: (x(j), x(i)),
                    lead_coef: -Rational::one(),
                });
            }
        }
        for pp in 0..p.m() {
            for qq in pp..p.m() {
                let mut terms = if pp == qq {
                    vec![((y(pp), y(pp)), Scalar::from_int(2))]
                } else {
                    vec![((y(pp), y(qq)), Scalar::one()), ((y(qq), y(pp)), Scalar::one())]
                };
                for (key, v) in p.d().iter().filter(|(k, _)| k[0] == pp && k[1] == qq) {
                    terms.push(((x(key[2]), x(key[3])), -v));
                }
                let alpha = (0..p.n())
                    .map(|k| (x(k), p.b().get([pp, qq, k])))
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
                gens.push(IdealGen {
                    terms,
                    alpha,
                    beta: p.a().get([pp, qq]),
                    lead: (y(qq), y(pp)),
                    lead_coef: if pp == qq { Rational::from_integer(2.into()) } else { Rational::one() },
                });
            }
        }
        for i in 0..p.n() {
            for pp in 0..p.m() {
                let alpha = (0..p.m())
                    .map(|q| (y(q), p.cbar().get([i, pp, q])))
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
                gens.push(IdealGen {
                    terms: vec![((x(i), y(pp)), Scalar::one()), ((y(pp), x(i)), minus.clone())],
                    alpha,
                    beta: Scalar::zero(),
                    lead: (y(pp), x(i)),
                    lead_coef: -Rational::one(),
                });
            }
        }

        let mut lead_of = vec![None; nl * nl];
        for (g, gen) in gens.iter().enumerate() {
            lead_of[gen.lead.0 as usize * nl + gen.lead.1 as usize] = Some(g);
        }
        let mut reductions: Vec<Option<Reduction>> = vec![None; nl * nl];
        fn reduce(
            w: usize,
            nl: usize,
            gens: &[IdealGen],
            lead_of: &[Option<usize>],
            memo: &mut Vec<Option<Reduction>>,
        ) -> Reduction {
            if let Some(r) = &memo[w] {
                return r.clone();
            }
            let r = match lead_of[w] {
                None => Reduction { rem: vec![(w, Scalar::one())], quo: Vec::new() },
                Some(g) => {
                    let gen = &gens[g];
                    let inv = Scalar::from_rational(Rational::one() / &gen.lead_coef);
                    let mut rem = Vec::new();
                    let mut quo = vec![(g, inv.clone())];
                    for ((u, v), s) in &gen.terms {
                        let t = *u as usize * nl + *v as usize;
                        if t == w {
                            continue;
                        }
                        let sub = reduce(t, nl, gens, lead_of, memo);
                        let k = -&(s * &inv);
                        for (idx, c) in sub.rem {
                            push(&mut rem, idx, &c * &k);
                        }
                        for (idx, c) in sub.quo {
                            push(&mut quo, idx, &c * &k);
                        }
                    }
                    Reduction { rem: merge(rem), quo: merge(quo) }
                }
            };
            memo[w] = Some(r.clone());
            r
        }
        for w in 0..nl * nl {
            reduce(w, nl, &gens, &lead_of, &mut reductions);
        }
        QuadraticIdeal {
            alphabet: al,
            gens,
            reductions: reductions.into_iter().map(Option::unwrap).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn gens(&self) -> &[IdealGen] {
        &self.gens
    }

    /// Reduction of the word `u v`, indexed as `u * len + v`.
    pub fn reduction(&self, word: usize) -> &Reduction {
        &self.reductions[word]
    }

    pub fn is_normal(&self, word: usize) -> bool {
        let r = &self.reductions[word];
        r.quo.is_empty() && r.rem.len() == 1 && r.rem[0].0 == word
    }

    /// Splits a degree-two tensor into ideal coordinates and a normal remainder.
    pub fn reduce(&self, elem: &[(usize, Scalar)]) -> Reduction {
        let mut rem = Vec::new();
        let mut quo = Vec::new();
        for (w, s) in elem {
            let r = &self.reductions[*w];
            for (idx, c) in &r.rem {
                push(&mut rem, *idx, c * s);
            }
            for (idx, c) in &r.quo {
                push(&mut quo, *idx, c * s);
            }
        }
        Reduction { rem: merge(rem), quo: merge(quo) }
    }

    pub fn alpha_beta(&self, element: &NCPoly) -> Result<(NCPoly, Scalar), PresentationError> {
        let nl = self.alphabet.len();
        let mut elem = Vec::new();
        for (w, s) in element.terms() {
            if w.len() != 2 {
                return Err(PresentationError::NotQuadratic);
            }
            elem.push((w.0[0] as usize * nl + w.0[1] as usize, s.clone()));
        }
        let r = self.reduce(&elem);
        if !r.rem.is_empty() {
            let mut rem = NCPoly::zero(self.alphabet);
            for (w, s) in r.rem {
                rem.add_term(Word(vec![(w / nl) as Letter, (w % nl) as Letter]), s);
            }
            return Err(PresentationError::NotInIdeal(rem.to_string()));
        }
        let mut alpha = NCPoly::zero(self.alphabet);
        let mut beta = Scalar::zero();
        for (g, s) in r.quo {
            for (l, v) in &self.gens[g].alpha {
                alpha.add_term(Word::letter(*l), v * &s);
            }
            beta += &self.gens[g].beta * &s;
        }
        Ok((alpha, beta))
    }
}
