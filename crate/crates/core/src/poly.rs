//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x0 > x1 > ... > x{n-1}`. Printing walks the map
//! from the largest monomial down, so `3*x0^2*x1 - 1/2*x2` is the canonical
//! rendering of that polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::Q;

/// Exponent vector of a monomial, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The monomial `x_i` in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `n` variables, in descending
/// graded-lex order (`x0^d` first).
pub fn monomial_basis(n: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(i: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = current.len();
        if i + 1 == n {
            current[i] = left;
            out.push(Monomial::from_exponents(current));
            current[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            current[i] = e;
            rec(i + 1, left - e, current, out);
        }
        current[i] = 0;
    }
    if n == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut current, &mut out);
    out
}

/// Default variable names `x0, x1, ...`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// A polynomial in a fixed number of variables over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Q::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), Q::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Q) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Q)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// `Some(d)` iff every term has total degree `d`. Zero has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(i)).max()
    }

    fn check_same(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Poly, AlgebraError> {
        if i >= self.nvars {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e > 0 {
                out.add_term(m.with_exponent(i, e - 1), c * Q::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    /// Panicking variant of [`Poly::partial_derivative`] for internal use.
    pub(crate) fn d(&self, i: usize) -> Poly {
        self.partial_derivative(i).expect("variable index in range")
    }

    /// Replaces `x_i` by `images[i]`. All images must share one ambient
    /// dimension, which becomes the ambient dimension of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(AlgebraError::DimensionMismatch { left: target, right: bad.nvars });
        }
        // powers[i][e] = images[i]^e, built on demand
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Value at a rational point.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `p(x + point)`, moving `point` to the origin.
    pub fn translate(&self, point: &[Q]) -> Result<Poly, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let n = self.nvars;
        let images: Vec<Poly> = (0..n)
            .map(|i| &Poly::var(n, i) + &Poly::constant(n, point[i].clone()))
            .collect();
        self.substitute(&images)
    }

    /// Sum of the terms of total degree exactly `degree`.
    pub fn graded_component(&self, degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same polynomial viewed in a ring with `extra` new variables appended
    /// (or prepended when `front` is set).
    pub fn embed(&self, extra: usize, front: bool) -> Poly {
        let n = self.nvars + extra;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e: SmallVec<[u32; 8]> = SmallVec::with_capacity(n);
            if front {
                e.extend(std::iter::repeat_n(0, extra));
                e.extend_from_slice(m.exponents());
            } else {
                e.extend_from_slice(m.exponents());
                e.extend(std::iter::repeat_n(0, extra));
            }
            (Monomial(e), c.clone())
        });
        Poly { nvars: n, terms: terms.collect() }
    }

    /// Drops the variables listed in `vars` (which must not occur).
    pub fn project_out(&self, vars: &[usize]) -> Option<Poly> {
        let n = self.nvars - vars.len();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if vars.iter().any(|&v| m.exponent(v) > 0) {
                return None;
            }
            let e: SmallVec<[u32; 8]> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(i, _)| !vars.contains(i))
                .map(|(_, &e)| e)
                .collect();
            terms.insert(Monomial(e), c.clone());
        }
        Some(Poly { nvars: n, terms })
    }

    /// Scales so the leading graded-lex coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&den / c.denom());
            g = g.gcd(&v);
        }
        let lead_sign = self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut factor = Q::new(den, g);
        if lead_sign {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Renders with the given variable names in canonical term order.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(names);
            if mono.is_empty() {
                out.push_str(&render_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub fn render_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// ---------------------------------------------------------------------------
// gcd: recursive univariate view in the highest active variable, primitive PRS

/// Greatest common divisor, normalized to leading coefficient one.
/// `gcd(p, 0)` is `p` made monic; `gcd(0, 0)` is zero.
pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    assert_eq!(p.nvars, q.nvars, "gcd of polynomials in different rings");
    let active = p.nvars;
    gcd_rec(p, q, active).monic()
}

/// gcd of many polynomials.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Poly>>(nvars: usize, polys: I) -> Poly {
    let polys: Vec<&Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.len() > 1 && coprime_on_a_line(&polys) {
        return Poly::one(nvars);
    }
    let mut g = Poly::zero(nvars);
    for p in polys {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            return Poly::one(nvars);
        }
    }
    g
}

/// Certifies `gcd = 1` by restricting to lines `a + t·b`. When the top
/// homogeneous part of the first polynomial does not vanish at `b`, the
/// restriction of any common factor keeps its degree, so a constant
/// univariate gcd proves the multivariate one constant.
fn coprime_on_a_line(polys: &[&Poly]) -> bool {
    let n = polys[0].nvars;
    let top_degree = polys[0].total_degree().unwrap_or(0);
    let top = polys[0].graded_component(top_degree);
    for attempt in 0..3i64 {
        let b: Vec<Q> = (0..n as i64).map(|i| Q::from_integer(BigInt::from(1 + (i * (2 + attempt)) % 7))).collect();
        let a: Vec<Q> = (0..n as i64).map(|i| Q::from_integer(BigInt::from((i * i + 3 * attempt + 2) % 11 - 5))).collect();
        if top.evaluate(&b).map(|v| v.is_zero()).unwrap_or(true) {
            continue;
        }
        let line: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::constant(1, a[i].clone());
                p.add_term(Monomial::var(1, 0), b[i].clone());
                p
            })
            .collect();
        let mut g: Vec<Q> = Vec::new();
        for p in polys {
            let r = p.substitute(&line).expect("same ring");
            let dense = univariate_dense(&r);
            g = if g.is_empty() { dense } else { univariate_gcd(g, dense) };
            if g.len() == 1 {
                return true;
            }
        }
    }
    false
}

fn univariate_dense(p: &Poly) -> Vec<Q> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![Q::zero(); deg + 1];
    for (m, c) in &p.terms {
        out[m.degree() as usize] = c.clone();
    }
    out
}

/// Euclid on dense coefficient vectors (index = exponent, no trailing zeros).
fn univariate_gcd(mut a: Vec<Q>, mut b: Vec<Q>) -> Vec<Q> {
    while !(b.is_empty() || b.len() == 1 && b[0].is_zero()) {
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = a.last().expect("nonempty") / b.last().expect("nonempty");
            for (i, c) in b.iter().enumerate() {
                let v = &a[i + shift] - &factor * c;
                a[i + shift] = v;
            }
            a.pop();
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        vec![Q::zero()]
    } else {
        a
    }
}

fn highest_var(p: &Poly, active: usize) -> Option<usize> {
    (0..active).rev().find(|&v| p.degree_in(v).unwrap_or(0) > 0)
}

/// Coefficients of `p` as a polynomial in `x_v`; entry `e` carries no `x_v`.
fn coefficients_in(p: &Poly, v: usize) -> Vec<Poly> {
    let deg = p.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![Poly::zero(p.nvars); deg + 1];
    for (m, c) in &p.terms {
        let e = m.exponent(v) as usize;
        out[e].add_term(m.with_exponent(v, 0), c.clone());
    }
    out
}

fn from_coefficients(coeffs: &[Poly], v: usize, n: usize) -> Poly {
    let mut out = Poly::zero(n);
    for (e, c) in coeffs.iter().enumerate() {
        for (m, a) in &c.terms {
            out.add_term(m.with_exponent(v, e as u32), a.clone());
        }
    }
    out
}

fn gcd_rec(a: &Poly, b: &Poly, active: usize) -> Poly {
    let n = a.nvars;
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let va = highest_var(a, active);
    let vb = highest_var(b, active);
    let v = match (va, vb) {
        (Some(x), Some(y)) => x.max(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Poly::one(n),
    };
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb, v);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while g.degree_in(v).unwrap_or(0) > 0 {
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        if r.is_zero() {
            g = Poly::zero(n);
            break;
        }
        let cr = content(&r, v);
        g = r.div_exact(&cr).expect("content divides");
    }
    let prim = if g.is_zero() {
        f.div_exact(&content(&f, v)).expect("content divides")
    } else {
        // g has degree 0 in v and is primitive: the primitive gcd is trivial
        Poly::one(n)
    };
    &c * &prim
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.nvars);
    for c in coefficients_in(p, v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c, v);
        if g.is_constant() {
            return Poly::one(p.nvars);
        }
    }
    g.monic()
}

fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = a.nvars;
    let bc = coefficients_in(b, v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = coefficients_in(a, v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        if r[dr].is_zero() {
            r.pop();
            continue;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        let shift = dr - db;
        for (i, c) in bc.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * c);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
    }
    while r.last().map(|c| c.is_zero()).unwrap_or(false) {
        r.pop();
    }
    from_coefficients(&r, v, n)
}
