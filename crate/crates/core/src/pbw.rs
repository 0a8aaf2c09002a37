//! Ordered-monomial normal forms in the enveloping algebra of a presentation.
//!
//! Given a total order on generators, a word is *ordered* when its letters are
//! weakly increasing with no repeated odd letter. Rewriting always acts on the
//! leftmost adjacent pair that is out of order (or an equal odd pair).

use std::collections::HashMap;

use num_integer::binomial;
use thiserror::Error;

use crate::linalg::{rank, SparseVec};
use crate::nc_core::{Alphabet, GeneratorId, Letter, NCPoly, Scalar, Word};
use crate::presentation::{QlsPresentation, SwapRule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbwError {
    #[error("order is not a permutation of the {0} generators")]
    BadOrder(usize),
    #[error("order is not admissible: d_{p}{q}^{k}{l} is nonzero")]
    NotAdmissible { p: Letter, q: Letter, k: Letter, l: Letter },
    #[error("order is admissible; no odd-odd violation to build a witness from")]
    NoViolation,
    #[error("polynomial alphabet does not match the presentation")]
    AlphabetMismatch,
    #[error("coefficient {0} is not a rational number")]
    SymbolicCoefficient(String),
}

/// A total order on generators, stored as a rank per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrder {
    rank: Vec<usize>,
}

impl GeneratorOrder {
    /// Letters listed from smallest to largest.
    pub fn from_sequence(seq: &[Letter], alphabet: Alphabet) -> Result<Self, PbwError> {
        let nl = alphabet.len();
        let mut rank = vec![usize::MAX; nl];
        if seq.len() != nl {
            return Err(PbwError::BadOrder(nl));
        }
        for (r, &a) in seq.iter().enumerate() {
            if a as usize >= nl || rank[a as usize] != usize::MAX {
                return Err(PbwError::BadOrder(nl));
            }
            rank[a as usize] = r;
        }
        Ok(GeneratorOrder { rank })
    }

    /// Even generators first, then odd, each by index.
    pub fn standard(alphabet: Alphabet) -> Self {
        GeneratorOrder { rank: (0..alphabet.len()).collect() }
    }

    pub fn rank(&self, a: Letter) -> usize {
        self.rank[a as usize]
    }

    pub fn sequence(&self) -> Vec<Letter> {
        let mut seq: Vec<Letter> = (0..self.rank.len() as Letter).collect();
        seq.sort_by_key(|&a| self.rank[a as usize]);
        seq
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

/// The first nonzero `d_pq^kl` whose quadratic letters do not both precede `p` and `q`.
pub fn admissibility_violation(p: &QlsPresentation, order: &GeneratorOrder) -> Option<(Letter, Letter, Letter, Letter)> {
    let al = p.alphabet();
    for (key, _) in p.d().iter() {
        let yp = al.letter(GeneratorId::odd(key[0]));
        let yq = al.letter(GeneratorId::odd(key[1]));
        let xk = al.letter(GeneratorId::even(key[2]));
        let xl = al.letter(GeneratorId::even(key[3]));
        let low = order.rank(yp).min(order.rank(yq));
        if order.rank(xk) >= low || order.rank(xl) >= low {
            return Some((yp, yq, xk, xl));
        }
    }
    None
}

pub fn check_admissible(p: &QlsPresentation, order: &GeneratorOrder) -> Result<(), PbwError> {
    match admissibility_violation(p, order) {
        None => Ok(()),
        Some((p, q, k, l)) => Err(PbwError::NotAdmissible { p, q, k, l }),
    }
}

/// Rewriting rules for an admissible order.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    order: GeneratorOrder,
    rules: Vec<SwapRule>,
}

fn measure(order: &GeneratorOrder, al: Alphabet, w: &[Letter]) -> (usize, Vec<usize>, usize) {
    let mut ranks: Vec<usize> = w.iter().map(|&a| order.rank(a)).collect();
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if ranks[i] > ranks[j] || (w[i] == w[j] && al.is_odd(w[i])) {
                inv += 1;
            }
        }
    }
    ranks.sort_unstable_by(|a, b| b.cmp(a));
    (w.len(), ranks, inv)
}

impl RewriteSystem {
    pub fn new(p: &QlsPresentation, order: GeneratorOrder) -> Result<Self, PbwError> {
        let al = p.alphabet();
        if order.len() != al.len() {
            return Err(PbwError::BadOrder(al.len()));
        }
        check_admissible(p, &order)?;
        let mut rules = Vec::with_capacity(al.len() * al.len());
        for a in al.letters() {
            for b in al.letters() {
                rules.push(p.swap_rule(a, b));
            }
        }
        Ok(RewriteSystem { alphabet: al, order, rules })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> &GeneratorOrder {
        &self.order
    }

    pub fn rule(&self, a: Letter, b: Letter) -> &SwapRule {
        &self.rules[a as usize * self.alphabet.len() + b as usize]
    }

    fn violation_at(&self, w: &[Letter]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&i| {
            let (u, v) = (w[i], w[i + 1]);
            self.order.rank(u) > self.order.rank(v) || (u == v && self.alphabet.is_odd(u))
        })
    }

    pub fn is_ordered(&self, w: &Word) -> bool {
        self.violation_at(&w.0).is_none()
    }

    /// The unique ordered-monomial expansion of `poly`.
    pub fn normal_form(&self, poly: &NCPoly) -> Result<NCPoly, PbwError> {
        if poly.alphabet() != self.alphabet {
            return Err(PbwError::AlphabetMismatch);
        }
        let mut memo = HashMap::new();
        let mut out = NCPoly::zero(self.alphabet);
        for (w, s) in poly.terms() {
            let nf = self.word_normal_form(w, &mut memo);
            out.add_scaled(&nf, s);
        }
        Ok(out)
    }

    fn word_normal_form(&self, w: &Word, memo: &mut HashMap<Word, NCPoly>) -> NCPoly {
        if let Some(r) = memo.get(w) {
            return r.clone();
        }
        let result = match self.violation_at(&w.0) {
            None => NCPoly::monomial(self.alphabet, w.clone(), Scalar::one()),
            Some(i) => {
                let (u, v) = (w.0[i], w.0[i + 1]);
                let rule = self.rule(u, v);
                let prefix = &w.0[..i];
                let suffix = &w.0[i + 2..];
                let splice = |mid: &[Letter]| {
                    let mut nw = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
                    nw.extend_from_slice(prefix);
                    nw.extend_from_slice(mid);
                    nw.extend_from_slice(suffix);
                    Word(nw)
                };
                let mut replacement: Vec<(Word, Scalar)> = Vec::new();
                if u == v {
                    let half = Scalar::from_frac(1, 2);
                    for (tw, ts) in rule.tail.terms() {
                        replacement.push((splice(&tw.0), ts * &half));
                    }
                } else {
                    replacement.push((splice(&[v, u]), Scalar::from_int(rule.sign as i64)));
                    for (tw, ts) in rule.tail.terms() {
                        replacement.push((splice(&tw.0), ts.clone()));
                    }
                }
                let mut out = NCPoly::zero(self.alphabet);
                let before = if cfg!(debug_assertions) { Some(measure(&self.order, self.alphabet, &w.0)) } else { None };
                for (nw, s) in replacement {
                    if let Some(b) = &before {
                        debug_assert!(measure(&self.order, self.alphabet, &nw.0) < *b, "rewrite step did not decrease");
                    }
                    let sub = self.word_normal_form(&nw, memo);
                    out.add_scaled(&sub, &s);
                }
                out
            }
        };
        memo.insert(w.clone(), result.clone());
        result
    }
}

/// Counterexample to the module condition `w_a w_b z_N = s w_b w_a z_N + tail z_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFailure {
    pub a: Letter,
    pub b: Letter,
    pub base: Word,
    pub residual: Vec<(Word, Scalar)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreOutcome {
    pub holds: bool,
    pub checked: usize,
    pub failure: Option<ModuleFailure>,
}

type Vector = HashMap<Word, Scalar>;

fn add_into(acc: &mut Vector, v: &Vector, k: &Scalar) {
    for (w, s) in v {
        let e = acc.entry(w.clone()).or_default();
        *e += s * k;
    }
}

fn prune(v: &mut Vector) {
    v.retain(|_, s| !s.is_zero());
}

/// Builds the candidate module on ordered words of length at most `max_len`
/// and tests the defining relations on it.
struct SerreModule<'a> {
    p: &'a QlsPresentation,
    al: Alphabet,
    order: &'a GeneratorOrder,
    memo: HashMap<(Letter, Word), Vector>,
}

impl SerreModule<'_> {
    fn act(&mut self, a: Letter, m: &Word) -> Vector {
        if let Some(v) = self.memo.get(&(a, m.clone())) {
            return v.clone();
        }
        let mut out = Vector::new();
        let first = m.0.first().copied();
        match first {
            Some(b) if self.order.rank(a) > self.order.rank(b) => {
                let rest = Word(m.0[1..].to_vec());
                let rule = self.p.swap_rule(a, b);
                let inner = self.act(a, &rest);
                let outer = self.act_vec(b, &inner);
                add_into(&mut out, &outer, &Scalar::from_int(rule.sign as i64));
                let t = self.act_poly(&rule.tail, &rest);
                add_into(&mut out, &t, &Scalar::one());
            }
            Some(b) if a == b && self.al.is_odd(a) => {
                let rest = Word(m.0[1..].to_vec());
                let rule = self.p.swap_rule(a, a);
                let t = self.act_poly(&rule.tail, &rest);
                add_into(&mut out, &t, &Scalar::from_frac(1, 2));
            }
            _ => {
                let mut w = vec![a];
                w.extend_from_slice(&m.0);
                out.insert(Word(w), Scalar::one());
            }
        }
        prune(&mut out);
        self.memo.insert((a, m.clone()), out.clone());
        out
    }

    fn act_vec(&mut self, a: Letter, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (w, s) in v {
            let r = self.act(a, w);
            add_into(&mut out, &r, s);
        }
        prune(&mut out);
        out
    }

    fn act_poly(&mut self, poly: &NCPoly, base: &Word) -> Vector {
        let mut out = Vector::new();
        for (w, s) in poly.terms() {
            let mut v = Vector::new();
            v.insert(base.clone(), Scalar::one());
            for &l in w.0.iter().rev() {
                v = self.act_vec(l, &v);
            }
            add_into(&mut out, &v, s);
        }
        prune(&mut out);
        out
    }
}

fn ordered_words(al: Alphabet, order: &GeneratorOrder, max_len: usize) -> Vec<Word> {
    let seq = order.sequence();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![(Word::empty(), 0usize)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, start) in &frontier {
            for (pos, &a) in seq.iter().enumerate().skip(*start) {
                if al.is_odd(a) && w.0.last() == Some(&a) {
                    continue;
                }
                let mut nw = w.0.clone();
                nw.push(a);
                next.push((Word(nw), pos));
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        frontier = next;
    }
    out
}

/// Verifies the module condition for all generator pairs on ordered words of
/// length at most `max_len - 2`. Odd squares use `y_a y_a = 1/2 tail_aa`.
pub fn serre_module_check(p: &QlsPresentation, order: &GeneratorOrder, max_len: usize) -> SerreOutcome {
    let al = p.alphabet();
    let mut module = SerreModule { p, al, order, memo: HashMap::new() };
    let bases = ordered_words(al, order, max_len.saturating_sub(2));
    let mut checked = 0;
    for base in &bases {
        for a in al.letters() {
            for b in al.letters() {
                checked += 1;
                let zb = module.act(b, base);
                let mut lhs = module.act_vec(a, &zb);
                let za = module.act(a, base);
                let ba = module.act_vec(b, &za);
                let rule = p.swap_rule(a, b);
                add_into(&mut lhs, &ba, &Scalar::from_int(-(rule.sign as i64)));
                let t = module.act_poly(&rule.tail, base);
                add_into(&mut lhs, &t, &Scalar::from_int(-1));
                prune(&mut lhs);
                if !lhs.is_empty() {
                    let mut residual: Vec<(Word, Scalar)> = lhs.into_iter().collect();
                    residual.sort_by(|x, y| x.0.cmp(&y.0));
                    return SerreOutcome {
                        holds: false,
                        checked,
                        failure: Some(ModuleFailure { a, b, base: base.clone(), residual }),
                    };
                }
            }
        }
    }
    SerreOutcome { holds: true, checked, failure: None }
}

/// An element that vanishes in the algebra but expands to a nonzero
/// combination of words that would all be ordered monomials.
#[derive(Debug, Clone)]
pub struct DependenceWitness {
    pub a: Letter,
    pub b: Letter,
    pub relation: NCPoly,
}

/// For an inadmissible order with violating pair `y_a, y_b`, returns
/// `1/2 {y_a, y_a} y_b + y_a y_b y_a - y_a {y_a, y_b}` with the brackets
/// replaced by their right-hand sides,
/// which is `(y_a y_a) y_b - y_a (y_a y_b)` after the odd-odd relations.
pub fn inadmissible_dependence_witness(
    p: &QlsPresentation,
    order: &GeneratorOrder,
) -> Result<DependenceWitness, PbwError> {
    let (a, b, _, _) = admissibility_violation(p, order).ok_or(PbwError::NoViolation)?;
    let al = p.alphabet();
    let (pa, pb) = (al.generator(a).index, al.generator(b).index);
    let x = |k: usize| al.letter(GeneratorId::even(k));
    let mut rel = NCPoly::zero(al);
    let half = Scalar::from_frac(1, 2);
    for (key, v) in p.d().iter() {
        if key[0] == pa && key[1] == pa {
            rel.add_term(Word(vec![x(key[2]), x(key[3]), b]), v * &half);
        }
        if key[0] == pa && key[1] == pb {
            rel.add_term(Word(vec![a, x(key[2]), x(key[3])]), -v);
        }
    }
    for (key, v) in p.b().iter() {
        if key[0] == pa && key[1] == pa {
            rel.add_term(Word(vec![x(key[2]), b]), v * &half);
        }
        if key[0] == pa && key[1] == pb {
            rel.add_term(Word(vec![a, x(key[2])]), -v);
        }
    }
    for (key, v) in p.a().iter() {
        if key[0] == pa && key[1] == pa {
            rel.add_term(Word(vec![b]), v * &half);
        }
        if key[0] == pa && key[1] == pb {
            rel.add_term(Word(vec![a]), -v);
        }
    }
    rel.add_term(Word(vec![a, b, a]), Scalar::one());
    Ok(DependenceWitness { a, b, relation: rel })
}

/// Dimension of the span of the normal forms of all words of length `d`,
/// modulo the span of shorter words, for `d = 0..=max_deg`.
///
/// Requires rational structure constants.
pub fn normal_form_span_dims(rs: &RewriteSystem, max_deg: usize) -> Result<Vec<usize>, PbwError> {
    let al = rs.alphabet();
    let mut cols: HashMap<Word, usize> = HashMap::new();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut dims = Vec::new();
    let mut prev = 0;
    let mut words = vec![Word::empty()];
    for d in 0..=max_deg {
        if d > 0 {
            words = words
                .iter()
                .flat_map(|w| al.letters().map(move |a| w.concat(&Word::letter(a))))
                .collect();
        }
        for w in &words {
            let nf = rs.normal_form(&NCPoly::monomial(al, w.clone(), Scalar::one()))?;
            let mut row: SparseVec = Vec::with_capacity(nf.len());
            for (t, s) in nf.terms() {
                let v = s.as_rational().ok_or_else(|| PbwError::SymbolicCoefficient(s.to_string()))?;
                let next = cols.len();
                row.push((*cols.entry(t.clone()).or_insert(next), v));
            }
            row.sort_by_key(|(c, _)| *c);
            rows.push(row);
        }
        let r = rank(&rows);
        dims.push(r - prev);
        prev = r;
    }
    Ok(dims)
}

/// Number of ordered monomials of degree `deg` in `n` even and `m` odd generators.
pub fn pbw_monomial_count(n: usize, m: usize, deg: usize) -> u128 {
    (0..=deg)
        .map(|j| {
            let even = if n == 0 {
                u128::from(j == 0)
            } else {
                binomial((n + j - 1) as u128, j as u128)
            };
            let k = deg - j;
            let odd = if k > m { 0 } else { binomial(m as u128, k as u128) };
            even * odd
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::PresentationBuilder;

    fn heisenberg_like() -> QlsPresentation {
        // one even central x, one odd y with {y,y} = 2x
        let mut b = PresentationBuilder::new(1, 1);
        b.b_sym(0, 0, 0, Scalar::from_int(2));
        b.build().unwrap()
    }

    #[test]
    fn odd_square_rewrites_to_half_tail() {
        let p = heisenberg_like();
        let rs = RewriteSystem::new(&p, GeneratorOrder::standard(p.alphabet())).unwrap();
        let al = p.alphabet();
        let y = NCPoly::letter(al, 1);
        let nf = rs.normal_form(&(&y * &y)).unwrap();
        assert_eq!(nf, NCPoly::letter(al, 0));
    }

    #[test]
    fn counts_match_small_cases() {
        assert_eq!(pbw_monomial_count(1, 1, 2), 2);
        assert_eq!(pbw_monomial_count(2, 2, 2), 3 + 4 + 1);
        assert_eq!(pbw_monomial_count(0, 2, 3), 0);
        let al = Alphabet::new(2, 2);
        let words = ordered_words(al, &GeneratorOrder::standard(al), 3);
        for d in 0..=3 {
            let count = words.iter().filter(|w| w.len() == d).count() as u128;
            assert_eq!(count, pbw_monomial_count(2, 2, d));
        }
    }

    #[test]
    fn span_dims_match_counts() {
        let p = heisenberg_like();
        let rs = RewriteSystem::new(&p, GeneratorOrder::standard(p.alphabet())).unwrap();
        let dims = normal_form_span_dims(&rs, 3).unwrap();
        let expect: Vec<usize> = (0..=3).map(|d| pbw_monomial_count(p.n(), p.m(), d) as usize).collect();
        assert_eq!(dims, expect);
    }

    #[test]
    fn bad_orders_are_rejected() {
        let al = Alphabet::new(1, 1);
        assert!(GeneratorOrder::from_sequence(&[0, 0], al).is_err());
        assert!(GeneratorOrder::from_sequence(&[0], al).is_err());
        assert!(GeneratorOrder::from_sequence(&[1, 0], al).is_ok());
    }
}
