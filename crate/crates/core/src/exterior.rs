//! Polynomial differential forms and vector fields.
//!
//! A p-form is stored as a map from strictly increasing index tuples to
//! nonzero polynomial coefficients, so two equal forms always have identical
//! maps. Signs are resolved when a term is inserted.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::poly::{default_names, Poly};
use crate::Q;

/// Strictly increasing list of coordinate indices `i1 < ... < ip`.
pub type Indices = SmallVec<[u8; 8]>;

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// `None` when an index repeats.
fn sort_with_sign(idx: &mut [u8]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// A polynomial p-form on affine n-space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffForm {
    nvars: usize,
    degree: usize,
    coeffs: BTreeMap<Indices, Poly>,
}

impl DiffForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        DiffForm { nvars, degree, coeffs: BTreeMap::new() }
    }

    /// The 0-form given by a function.
    pub fn function(f: Poly) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        if !f.is_zero() {
            out.coeffs.insert(Indices::new(), f);
        }
        out
    }

    /// `dx_i`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        let mut out = Self::zero(nvars, 1);
        out.coeffs.insert(SmallVec::from_slice(&[i as u8]), Poly::one(nvars));
        out
    }

    /// 1-form `Σ coeffs[i] dx_i`.
    pub fn one_form(coeffs: &[Poly]) -> Result<Self> {
        let n = coeffs.len();
        let mut out = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if c.nvars() != n {
                return Err(AlgebraError::DimensionMismatch { left: n, right: c.nvars() });
            }
            out.add_term(&[i as u8], c.clone());
        }
        Ok(out)
    }

    /// Volume form `dx_0 ∧ ... ∧ dx_{n-1}`.
    pub fn volume(nvars: usize) -> Self {
        let idx: Vec<u8> = (0..nvars as u8).collect();
        let mut out = Self::zero(nvars, nvars);
        out.coeffs.insert(SmallVec::from_slice(&idx), Poly::one(nvars));
        out
    }

    /// Builds a form from possibly unsorted index tuples; repeated indices
    /// contribute nothing.
    pub fn from_terms<I>(nvars: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        if degree > nvars {
            return Err(AlgebraError::FormDegree { degree, nvars });
        }
        let mut out = Self::zero(nvars, degree);
        for (idx, c) in terms {
            if idx.len() != degree || idx.iter().any(|&i| i >= nvars) {
                return Err(AlgebraError::Precondition(format!(
                    "index tuple {idx:?} invalid for a {degree}-form in {nvars} variables"
                )));
            }
            if c.nvars() != nvars {
                return Err(AlgebraError::DimensionMismatch { left: nvars, right: c.nvars() });
            }
            let raw: Vec<u8> = idx.iter().map(|&i| i as u8).collect();
            out.add_term(&raw, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: &[u8], c: Poly) {
        if c.is_zero() {
            return;
        }
        let mut key: Indices = SmallVec::from_slice(idx);
        let Some(sign) = sort_with_sign(&mut key) else { return };
        let c = if sign < 0 { -&c } else { c };
        match self.coeffs.entry(key) {
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

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `dx_I` for an increasing tuple `I`.
    pub fn coefficient(&self, idx: &[usize]) -> Poly {
        let key: Indices = idx.iter().map(|&i| i as u8).collect();
        self.coeffs.get(&key).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Nonzero terms in lexicographic tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&Indices, &Poly)> {
        self.coeffs.iter()
    }

    /// Nonzero coefficient polynomials.
    pub fn coefficients(&self) -> impl Iterator<Item = &Poly> {
        self.coeffs.values()
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> Option<Poly> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    /// For a 1-form, the coefficient vector `(a_0, ..., a_{n-1})`.
    pub fn one_form_coefficients(&self) -> Option<Vec<Poly>> {
        (self.degree == 1).then(|| (0..self.nvars).map(|i| self.coefficient(&[i])).collect())
    }

    /// Common degree of all coefficients if they are homogeneous of one degree.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.values().map(Poly::homogeneous_degree);
        let first = degs.next()??;
        for d in degs {
            if d? != first {
                return None;
            }
        }
        Some(first)
    }

    /// Graded degree with `deg x_i = deg dx_i = 1`: coefficient degree plus p.
    pub fn total_degree(&self) -> Option<u32> {
        self.coefficient_degree().map(|c| c + self.degree as u32)
    }

    /// Lowest coefficient degree present, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.values().filter_map(Poly::order).min()
    }

    fn check_same(&self, other: &DiffForm) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_same(other)?;
        if self.degree != other.degree {
            if self.is_zero() {
                return Ok(other.clone());
            }
            if other.is_zero() {
                return Ok(self.clone());
            }
            return Err(AlgebraError::Precondition(format!(
                "cannot add a {}-form and a {}-form",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.checked_add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> DiffForm {
        self.map_coefficients(|p| p.scale(c))
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, f: &Poly) -> DiffForm {
        self.map_coefficients(|p| p * f)
    }

    /// Applies `f` to every coefficient (zero results are dropped).
    pub fn map_coefficients<F: FnMut(&Poly) -> Poly>(&self, mut f: F) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree);
        for (k, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                out.coeffs.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_same(other)?;
        let p = self.degree + other.degree;
        let mut out = DiffForm::zero(self.nvars, p.min(self.nvars));
        if p > self.nvars {
            return Ok(out);
        }
        let mut buf: Vec<u8> = Vec::with_capacity(p);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                buf.clear();
                buf.extend_from_slice(i);
                buf.extend_from_slice(j);
                out.add_term(&buf, a * b);
            }
        }
        out.degree = p;
        Ok(out)
    }

    pub fn exterior_derivative(&self) -> DiffForm {
        let p = self.degree + 1;
        let mut out = DiffForm::zero(self.nvars, p.min(self.nvars));
        if p > self.nvars {
            return out;
        }
        out.degree = p;
        let mut buf: Vec<u8> = Vec::with_capacity(p);
        for (idx, c) in &self.coeffs {
            for j in 0..self.nvars {
                if idx.contains(&(j as u8)) {
                    continue;
                }
                let dc = c.d(j);
                if dc.is_zero() {
                    continue;
                }
                buf.clear();
                buf.push(j as u8);
                buf.extend_from_slice(idx);
                out.add_term(&buf, dc);
            }
        }
        out
    }

    /// `i_v α`; zero on functions.
    pub fn interior_product(&self, v: &VectorField) -> Result<DiffForm> {
        if v.nvars() != self.nvars {
            return Err(AlgebraError::DimensionMismatch { left: v.nvars(), right: self.nvars });
        }
        if self.degree == 0 {
            return Ok(DiffForm::zero(self.nvars, 0));
        }
        let mut out = DiffForm::zero(self.nvars, self.degree - 1);
        let mut buf: Vec<u8> = Vec::with_capacity(self.degree);
        for (idx, c) in &self.coeffs {
            for (pos, &i) in idx.iter().enumerate() {
                let vi = &v.components()[i as usize];
                if vi.is_zero() {
                    continue;
                }
                buf.clear();
                buf.extend(idx.iter().enumerate().filter(|(k, _)| *k != pos).map(|(_, &x)| x));
                let term = c * vi;
                out.add_term(&buf, if pos % 2 == 1 { -&term } else { term });
            }
        }
        Ok(out)
    }

    /// Lie derivative, defined through Cartan's formula `i_v d + d i_v`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<DiffForm> {
        let a = self.exterior_derivative().interior_product(v)?;
        let b = self.interior_product(v)?.exterior_derivative();
        let mut out = a.checked_add(&b)?;
        out.degree = self.degree;
        Ok(out)
    }

    /// Substitutes every coefficient.
    pub fn substitute_coefficients(&self, images: &[Poly]) -> Result<DiffForm> {
        let target = images.first().map(Poly::nvars).unwrap_or(0);
        let mut out = DiffForm::zero(target, self.degree);
        for (k, c) in &self.coeffs {
            out.add_term(k, c.substitute(images)?);
        }
        Ok(out)
    }

    /// Pullback along the polynomial map `x_i ↦ images[i]`.
    pub fn pullback(&self, images: &[Poly]) -> Result<DiffForm> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        let target = images.first().map(Poly::nvars).unwrap_or(0);
        if self.degree > target {
            return Ok(DiffForm::zero(target, self.degree.min(target)));
        }
        let differentials: Vec<DiffForm> =
            images.iter().map(|f| DiffForm::function(f.clone()).exterior_derivative()).collect();
        let mut out = DiffForm::zero(target, self.degree);
        for (k, c) in &self.coeffs {
            let mut term = DiffForm::function(c.substitute(images)?);
            for &i in k.iter() {
                term = term.wedge(&differentials[i as usize])?;
            }
            out = out.checked_add(&term)?;
        }
        out.degree = self.degree;
        Ok(out)
    }

    /// The form with coefficients evaluated at `point` (constant coefficients).
    pub fn evaluate(&self, point: &[Q]) -> Result<DiffForm> {
        let mut out = DiffForm::zero(self.nvars, self.degree);
        for (k, c) in &self.coeffs {
            out.add_term(k, Poly::constant(self.nvars, c.evaluate(point)?));
        }
        Ok(out)
    }

    /// Translates so that `point` becomes the origin (coefficients only;
    /// `dx_i` is translation invariant).
    pub fn translate(&self, point: &[Q]) -> Result<DiffForm> {
        let mut out = DiffForm::zero(self.nvars, self.degree);
        for (k, c) in &self.coeffs {
            out.add_term(k, c.translate(point)?);
        }
        Ok(out)
    }

    /// Part whose coefficients have degree exactly `c`.
    pub fn coefficient_component(&self, c: u32) -> DiffForm {
        self.map_coefficients(|p| p.graded_component(c))
    }

    /// Report rendering: `(c)*dx0^dx1 + ...` in lexicographic tuple order.
    pub fn render(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                if k.is_empty() {
                    return c.render(names);
                }
                let dxs: Vec<String> = k.iter().map(|&i| format!("d{}", names[i as usize])).collect();
                format!("({})*{}", c.render(names), dxs.join("^"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

impl Add for &DiffForm {
    type Output = DiffForm;
    fn add(self, rhs: &DiffForm) -> DiffForm {
        self.checked_add(rhs).expect("incompatible forms")
    }
}

impl Sub for &DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &DiffForm) -> DiffForm {
        self.checked_sub(rhs).expect("incompatible forms")
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        self.scale(&-Q::one())
    }
}

/// A polynomial vector field `Σ v_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        let n = comps.len();
        if let Some(bad) = comps.iter().find(|c| c.nvars() != n) {
            return Err(AlgebraError::DimensionMismatch { left: n, right: bad.nvars() });
        }
        Ok(VectorField { comps })
    }

    pub fn zero(n: usize) -> Self {
        VectorField { comps: vec![Poly::zero(n); n] }
    }

    /// Constant field `∂/∂x_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.comps[i] = Poly::one(n);
        v
    }

    /// Euler (radial) field `Σ x_i ∂/∂x_i`.
    pub fn euler(n: usize) -> Self {
        VectorField { comps: (0..n).map(|i| Poly::var(n, i)).collect() }
    }

    /// Diagonal linear field `Σ w_i x_i ∂/∂x_i`.
    pub fn diagonal(weights: &[Q]) -> Self {
        let n = weights.len();
        VectorField { comps: (0..n).map(|i| Poly::var(n, i).scale(&weights[i])).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Derivation `v(f) = Σ v_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.nvars() {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars(), right: f.nvars() });
        }
        let mut out = Poly::zero(f.nvars());
        for (i, vi) in self.comps.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            out = &out + &(vi * &f.d(i));
        }
        Ok(out)
    }

    /// `[v, w]_i = v(w_i) − w(v_i)`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField> {
        if other.nvars() != self.nvars() {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars(), right: other.nvars() });
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(vi, wi)| Ok(&self.apply(wi)? - &other.apply(vi)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { comps })
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        if other.nvars() != self.nvars() {
            return Err(AlgebraError::DimensionMismatch { left: self.nvars(), right: other.nvars() });
        }
        Ok(VectorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, c: &Q) -> VectorField {
        VectorField { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly) -> VectorField {
        VectorField { comps: self.comps.iter().map(|p| p * f).collect() }
    }

    /// Field degree `c − 1` when all components are homogeneous of degree `c`.
    /// Zero components are ignored; the zero field has no degree.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut deg = None;
        for c in self.comps.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg.map(|d| d as i64 - 1)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.comps.iter().map(|c| c.render(names)).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars())))
    }
}
