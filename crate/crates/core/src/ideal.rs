//! Polynomial ideals backed by cached reduced Gröbner bases.

use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::{self, leading_monomial, MonomialOrder};
use crate::poly::{default_names, Monomial, Poly};
use crate::Q;

/// Vector-space dimension of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VsDim {
    Finite(u64),
    Infinite,
}

impl VsDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            VsDim::Finite(v) => Some(v),
            VsDim::Infinite => None,
        }
    }
}

impl std::fmt::Display for VsDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VsDim::Finite(v) => write!(f, "{v}"),
            VsDim::Infinite => f.write_str("infinite"),
        }
    }
}

/// Default truncation bound for local quotient dimensions.
pub const DEFAULT_LOCAL_BOUND: u32 = 30;

/// A finitely generated ideal of `Q[x_0, ..., x_{n-1}]`.
#[derive(Debug)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Poly>,
    order: MonomialOrder,
    basis: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { nvars: self.nvars, generators: self.generators.clone(), order: self.order, basis }
    }
}

impl PartialEq for Ideal {
    /// Equality as ideals (same reduced basis), not as generator lists.
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.contains_ideal(other) && other.contains_ideal(self)
    }
}

impl Ideal {
    /// Ideal generated by `generators` in `nvars` variables (grevlex).
    /// Zero generators are dropped; no generators means the zero ideal.
    pub fn new(nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        Self::with_order(nvars, generators, MonomialOrder::Grevlex)
    }

    pub fn with_order(nvars: usize, generators: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(AlgebraError::DimensionMismatch { left: nvars, right: bad.nvars() });
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { nvars, generators, order, basis: OnceLock::new() })
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![Poly::one(nvars)]).expect("consistent")
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal::new(nvars, Vec::new()).expect("consistent")
    }

    /// The maximal ideal of the origin.
    pub fn maximal_at_origin(nvars: usize) -> Self {
        Ideal::new(nvars, (0..nvars).map(|i| Poly::var(nvars, i)).collect()).expect("consistent")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Reduced Gröbner basis, computed once.
    pub fn groebner_basis(&self) -> &[Poly] {
        self.basis
            .get_or_init(|| groebner::groebner_basis(&self.generators, self.nvars, self.order))
    }

    /// The same ideal, re-tagged with a different order.
    pub fn in_order(&self, order: MonomialOrder) -> Ideal {
        Ideal { nvars: self.nvars, generators: self.generators.clone(), order, basis: OnceLock::new() }
    }

    /// Ideal generated by the reduced basis (same ideal, canonical generators).
    pub fn canonical(&self) -> Ideal {
        Ideal::with_order(self.nvars, self.groebner_basis().to_vec(), self.order).expect("consistent")
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        groebner::normal_form(p, self.groebner_basis(), self.order)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        let b = self.groebner_basis();
        b.len() == 1 && b[0].is_constant() && !b[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::with_order(self.nvars, gens, self.order)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ideal::with_order(self.nvars, gens, self.order)
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn leading_monomials(&self) -> Vec<Monomial> {
        let order = self.order;
        self.groebner_basis().iter().filter_map(|g| leading_monomial(g, order)).collect()
    }

    /// Krull dimension of the quotient ring; −1 for the unit ideal.
    /// Computed as the largest set of variables independent modulo the
    /// leading-term ideal.
    pub fn krull_dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let lms = if self.order == MonomialOrder::Grevlex || self.is_zero() {
            self.leading_monomials()
        } else {
            self.in_order(MonomialOrder::Grevlex).leading_monomials()
        };
        let n = self.nvars;
        let supports: Vec<u64> = lms
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as i64;
            if size <= best {
                continue;
            }
            // independent: no leading monomial lives entirely inside `mask`
            if supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        best
    }

    /// Number of standard monomials (monomials outside the leading-term
    /// ideal) when finite.
    pub fn quotient_vs_dimension(&self) -> VsDim {
        match self.standard_monomials() {
            Some(v) => VsDim::Finite(v.len() as u64),
            None => VsDim::Infinite,
        }
    }

    /// All standard monomials if there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let lms = self.leading_monomials();
        let n = self.nvars;
        let mut caps = vec![u32::MAX; n];
        for m in &lms {
            let support: Vec<usize> = m.support().collect();
            if support.len() == 1 {
                let i = support[0];
                caps[i] = caps[i].min(m.exponent(i));
            }
        }
        if caps.contains(&u32::MAX) {
            return None;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn walk(i: usize, exps: &mut Vec<u32>, caps: &[u32], lms: &[Monomial], out: &mut Vec<Monomial>) {
            if i == exps.len() {
                let m = Monomial::from_exponents(exps);
                if !lms.iter().any(|l| l.divides(&m)) {
                    out.push(m);
                }
                return;
            }
            for e in 0..caps[i] {
                exps[i] = e;
                walk(i + 1, exps, caps, lms, out);
            }
            exps[i] = 0;
        }
        walk(0, &mut exps, &caps, &lms, &mut out);
        out.sort();
        Some(out)
    }

    /// Eliminates the first `k` variables, returning an ideal in the remaining
    /// `n − k` variables.
    pub fn eliminate_leading(&self, k: usize) -> Ideal {
        let order = MonomialOrder::Elimination { block: k };
        let basis = groebner::groebner_basis(&self.generators, self.nvars, order);
        let vars: Vec<usize> = (0..k).collect();
        let gens: Vec<Poly> = basis.iter().filter_map(|g| g.project_out(&vars)).collect();
        Ideal::new(self.nvars - k, gens).expect("consistent")
    }

    /// `I ∩ J` via `t·I + (1 − t)·J` and elimination of `t`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.nvars));
        }
        let n = self.nvars + 1;
        let t = Poly::var(n, 0);
        let one_minus_t = &Poly::one(n) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.embed(1, true));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.embed(1, true));
        }
        let lifted = Ideal::new(n, gens)?;
        Ok(lifted.eliminate_leading(1).in_order(self.order))
    }

    /// `I : f`.
    pub fn ideal_quotient(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        if f.nvars() != self.nvars {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars, right: f.nvars() });
        }
        if self.is_zero() {
            return Ok(Ideal::zero(self.nvars));
        }
        let principal = Ideal::new(self.nvars, vec![f.clone()])?;
        let meet = self.intersection(&principal)?;
        let gens = meet
            .generators
            .iter()
            .map(|g| g.div_exact(f).expect("elements of (f) are divisible by f"))
            .collect();
        Ideal::with_order(self.nvars, gens, self.order)
    }

    /// `I + (1 − t·f)` in one extra leading variable `t`. Its variety is
    /// `V(I) \ V(f)`, so it has the same dimension as `I : f^∞`.
    fn rabinowitsch(&self, f: &Poly) -> Result<Ideal> {
        if f.nvars() != self.nvars {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars, right: f.nvars() });
        }
        let n = self.nvars + 1;
        let mut gens: Vec<Poly> = self.generators.iter().map(|g| g.embed(1, true)).collect();
        gens.push(&Poly::one(n) - &(&Poly::var(n, 0) * &f.embed(1, true)));
        Ideal::new(n, gens)
    }

    /// `I : f^∞ = (I + (1 − t·f)) ∩ Q[x]`.
    pub fn saturate_by(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        Ok(self.rabinowitsch(f)?.eliminate_leading(1).in_order(self.order))
    }

    /// Krull dimension of `I : J^∞` without computing the saturation:
    /// the maximum over generators `g` of `J` of `dim V(I) \ V(g)`.
    pub fn saturation_dimension(&self, other: &Ideal) -> Result<i64> {
        self.check(other)?;
        // removing a locus never raises the dimension
        let ceiling = self.krull_dimension();
        let mut best = -1;
        for g in other.canonical().generators() {
            if best == ceiling {
                break;
            }
            best = best.max(self.rabinowitsch(g)?.krull_dimension());
        }
        Ok(best)
    }

    /// `I : J^∞ = ∩_g (I : g^∞)` over the generators `g` of `J`.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if other.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let gens = other.canonical();
        let mut result: Option<Ideal> = None;
        for g in gens.generators() {
            let sat = self.saturate_by(g)?;
            result = Some(match result {
                None => sat,
                Some(r) => r.intersection(&sat)?.canonical(),
            });
        }
        Ok(result.expect("nonzero ideal has generators"))
    }

    /// Ideal of the polynomials with `x ↦ x + point` applied.
    pub fn translate(&self, point: &[Q]) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.translate(point)).collect::<Result<Vec<_>>>()?;
        Ideal::with_order(self.nvars, gens, self.order)
    }

    /// Dimension of the local quotient at the origin. Computes
    /// `dim Q[x]/(I + m^B)` for increasing `B`; equal values at `B` and `B+1`
    /// show `m^B ⊆ I` locally (Nakayama), so the local quotient is finite.
    /// If no stabilization happens below `bound`, reports infinite.
    pub fn local_dimension_at_origin(&self, bound: u32) -> VsDim {
        let n = self.nvars;
        let mut prev: Option<u64> = None;
        for b in 1..=bound + 1 {
            let mut gens = self.generators.clone();
            gens.extend(crate::poly::monomial_basis(n, b).into_iter().map(|m| Poly::monomial(n, m, Q::from_integer(1.into()))));
            let trunc = Ideal::new(n, gens).expect("consistent");
            let d = trunc.quotient_vs_dimension().finite().expect("m^B forces finiteness");
            if prev == Some(d) {
                return VsDim::Finite(d);
            }
            prev = Some(d);
        }
        VsDim::Infinite
    }

    /// Local quotient dimension at a rational point.
    pub fn local_dimension_at(&self, point: &[Q], bound: u32) -> Result<VsDim> {
        Ok(self.translate(point)?.local_dimension_at_origin(bound))
    }

    /// Generators rendered with canonical polynomial printing.
    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.generators.iter().map(|g| g.render(names)).collect()
    }

    /// Reduced basis rendered (canonical, deterministic).
    pub fn render_basis(&self, names: &[String]) -> Vec<String> {
        self.groebner_basis().iter().map(|g| g.render(names)).collect()
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.render(&default_names(self.nvars)).join(", "))
    }
}

/// Rational points of a zero-dimensional ideal, found by lex elimination and
/// rational roots of the univariate eliminants. Returns `None` when the
/// ideal is not zero-dimensional.
pub fn rational_points(ideal: &Ideal) -> Option<Vec<Vec<Q>>> {
    if ideal.is_unit() {
        return Some(Vec::new());
    }
    if ideal.krull_dimension() > 0 {
        return None;
    }
    let n = ideal.nvars();
    let mut out = Vec::new();
    solve_rec(ideal, n, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    Some(out)
}

/// Solves for the variables from the last one to the first; `fixed` holds
/// values for variables `n - fixed.len() ..`.
fn solve_rec(ideal: &Ideal, n: usize, fixed: &mut Vec<Q>, out: &mut Vec<Vec<Q>>) {
    if fixed.len() == n {
        let mut point: Vec<Q> = fixed.clone();
        point.reverse();
        out.push(point);
        return;
    }
    let var = n - fixed.len() - 1;
    // substitute the fixed values, then eliminate all earlier variables
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for (k, v) in fixed.iter().enumerate() {
        images[n - 1 - k] = Poly::constant(n, v.clone());
    }
    let gens: Vec<Poly> = ideal.generators().iter().map(|g| g.substitute(&images).expect("arity")).collect();
    let lex = Ideal::with_order(n, gens, MonomialOrder::Lex).expect("consistent");
    if lex.is_unit() {
        return;
    }
    // univariate polynomial in `var` from the lex basis
    let uni = lex
        .groebner_basis()
        .iter()
        .find(|g| g.terms().all(|(m, _)| m.support().all(|i| i == var)))
        .cloned();
    let Some(uni) = uni else { return };
    for root in rational_roots(&uni, var) {
        fixed.push(root);
        solve_rec(ideal, n, fixed, out);
        fixed.pop();
    }
}

/// Rational roots of a polynomial in the single variable `var`.
pub fn rational_roots(p: &Poly, var: usize) -> Vec<Q> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed};
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    if deg == 0 {
        return Vec::new();
    }
    let prim = p.primitive_integer();
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (m, c) in prim.terms() {
        coeffs[m.exponent(var) as usize] = c.numer().clone();
    }
    let mut roots = Vec::new();
    // strip zero roots
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Q::zero());
    }
    let coeffs = &coeffs[low..];
    if coeffs.len() <= 1 {
        return roots;
    }
    let a0 = coeffs[0].abs();
    let an = coeffs[coeffs.len() - 1].abs();
    let small = |v: &BigInt| v.bits() <= 40;
    if !small(&a0) || !small(&an) {
        return roots;
    }
    let divisors = |v: &BigInt| -> Vec<BigInt> {
        let v: u64 = v.try_into().unwrap_or(0);
        let mut d = Vec::new();
        let mut i = 1u64;
        while i * i <= v {
            if v.is_multiple_of(i) {
                d.push(BigInt::from(i));
                if i != v / i {
                    d.push(BigInt::from(v / i));
                }
            }
            i += 1;
        }
        d
    };
    let eval = |r: &Q| -> bool {
        let mut acc = Q::zero();
        for c in coeffs.iter().rev() {
            acc = acc * r + Q::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            if !num.gcd(&den).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Q::new(&num * BigInt::from(sign), den.clone());
                if eval(&r) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}
