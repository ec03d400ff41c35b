//! Buchberger's algorithm over the rationals.
//!
//! Pairs are pruned with the coprime-leading-monomial criterion and the chain
//! criterion, and selected by the normal strategy (smallest lcm first). The
//! output is the reduced, monic Gröbner basis sorted by increasing leading
//! monomial, so it is unique for a given ideal and order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::poly::{Monomial, Poly};
use crate::Q;

/// Monomial orders available to the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `x0 > x1 > ...`.
    Grevlex,
    /// Pure lexicographic, `x0 > x1 > ...`.
    Lex,
    /// Product order eliminating the first `block` variables: grevlex on the
    /// first block, ties broken by grevlex on the rest.
    Elimination { block: usize },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Grevlex => grevlex(ea, eb),
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Elimination { block } => {
                let k = block.min(ea.len());
                grevlex(&ea[..k], &eb[..k]).then_with(|| grevlex(&ea[k..], &eb[k..]))
            }
        }
    }
}

/// Monomial carrying its order, so it can key a `BTreeMap`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Keyed {
    order: MonomialOrder,
    m: Monomial,
}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.compare(&self.m, &other.m)
    }
}

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted by decreasing order (leading term first).
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    pub(crate) terms: Vec<(Monomial, Q)>,
}

impl OrderedPoly {
    pub(crate) fn from_poly(p: &Poly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Q)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        OrderedPoly { terms }
    }

    pub(crate) fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().cloned())
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
        self
    }
}

/// Full reduction of `p` modulo `basis` (monic elements, any order of list).
pub(crate) fn reduce_full(p: &Poly, basis: &[OrderedPoly], order: MonomialOrder) -> OrderedPoly {
    let mut work: BTreeMap<Keyed, Q> = p
        .terms()
        .map(|(m, c)| (Keyed { order, m: m.clone() }, c.clone()))
        .collect();
    let mut rem: Vec<(Monomial, Q)> = Vec::new();
    while let Some((key, c)) = work.pop_last() {
        let divisor = basis.iter().find(|g| g.lm().divides(&key.m));
        match divisor {
            None => rem.push((key.m, c)),
            Some(g) => {
                let shift = g.lm().quotient_of(&key.m);
                for (m, a) in g.terms.iter().skip(1) {
                    let k = Keyed { order, m: m.mul(&shift) };
                    let delta = -(a * &c);
                    match work.entry(k) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += delta;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
            }
        }
    }
    OrderedPoly { terms: rem }
}

fn s_polynomial(f: &OrderedPoly, g: &OrderedPoly, nvars: usize) -> Poly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let mut out = Poly::zero(nvars);
    for (m, c) in f.terms.iter().skip(1) {
        out.add_term(m.mul(&mf), c.clone());
    }
    for (m, c) in g.terms.iter().skip(1) {
        out.add_term(m.mul(&mg), -c.clone());
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
struct Pair {
    lcm: Keyed,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lcm
            .m
            .degree()
            .cmp(&other.lcm.m.degree())
            .then_with(|| self.lcm.cmp(&other.lcm))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
/// The zero ideal yields an empty basis.
pub fn groebner_basis(gens: &[Poly], nvars: usize, order: MonomialOrder) -> Vec<Poly> {
    let mut basis: Vec<OrderedPoly> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut alive: Vec<bool> = Vec::new();

    let add = |h: OrderedPoly,
               basis: &mut Vec<OrderedPoly>,
               pairs: &mut BTreeSet<Pair>,
               alive: &mut Vec<bool>| {
        let idx = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let l = g.lm().lcm(h.lm());
            pairs.insert(Pair { lcm: Keyed { order, m: l }, i, j: idx });
        }
        basis.push(h);
        alive.push(true);
    };

    for g in gens {
        let r = reduce_full(g, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        let r = r.monic();
        if r.lm().is_one() {
            return vec![Poly::one(nvars)];
        }
        add(r, &mut basis, &mut pairs, &mut alive);
    }

    while let Some(pair) = pairs.pop_first() {
        let (i, j) = (pair.i, pair.j);
        done.insert((i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        // chain criterion: some k with LM_k | lcm and both (i,k), (j,k) treated
        let l = &pair.lcm.m;
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(fi, fj, nvars);
        let r = reduce_full(&s, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        let r = r.monic();
        if r.lm().is_one() {
            return vec![Poly::one(nvars)];
        }
        add(r, &mut basis, &mut pairs, &mut alive);
    }

    // minimize
    let mut keep: Vec<OrderedPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h.lm().divides(g.lm()) && (h.lm() != g.lm() || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce
    let mut reduced: Vec<OrderedPoly> = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<OrderedPoly> =
            keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
        let lead = keep[idx].terms[0].clone();
        let tail = Poly::from_terms(nvars, keep[idx].terms.iter().skip(1).cloned());
        let mut r = reduce_full(&tail, &others, order);
        r.terms.insert(0, lead);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    reduced.iter().map(|g| g.to_poly(nvars)).collect()
}

/// Leading monomial of `p` for `order`.
pub fn leading_monomial(p: &Poly, order: MonomialOrder) -> Option<Monomial> {
    p.terms().map(|(m, _)| m).max_by(|a, b| order.compare(a, b)).cloned()
}

/// Normal form of `p` against a Gröbner basis for `order`.
pub fn normal_form(p: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let ordered: Vec<OrderedPoly> =
        basis.iter().map(|g| OrderedPoly::from_poly(g, order).monic()).collect();
    reduce_full(p, &ordered, order).to_poly(p.nvars())
}

/// Checks that every S-polynomial of `basis` reduces to zero.
pub fn is_groebner(basis: &[Poly], order: MonomialOrder) -> bool {
    let ordered: Vec<OrderedPoly> =
        basis.iter().filter(|g| !g.is_zero()).map(|g| OrderedPoly::from_poly(g, order).monic()).collect();
    let n = basis.first().map(Poly::nvars).unwrap_or(0);
    for i in 0..ordered.len() {
        for j in i + 1..ordered.len() {
            let s = s_polynomial(&ordered[i], &ordered[j], n);
            if !reduce_full(&s, &ordered, order).terms.is_empty() {
                return false;
            }
        }
    }
    true
}
