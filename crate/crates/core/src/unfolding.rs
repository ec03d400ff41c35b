//! Graded pieces of the first-order unfolding space of a homogeneous
//! integrable 1-form, integrating factors, and the complex
//! `T(ℓ−k) → Ω¹(ℓ) → Ω³(ℓ+k)` with `d⁰(v) = L_v ω`, `d¹(η) = η∧dω + ω∧dη`.
//!
//! Grading: `𝒪(ℓ)` are degree-`ℓ` polynomials, `Ω^p(ℓ)` are `p`-forms of
//! total degree `ℓ` (coefficients of degree `ℓ − p`) and `T(j)` are vector
//! fields with components of degree `j + 1`.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exterior::{DiffForm, Indices, VectorField};
use crate::foliation::FoliationForm;
use crate::linalg::{sparse_from, Indexer, SparseVec};
use crate::modular::decompose;
use crate::poly::{monomial_basis, Monomial, Poly};
use crate::Q;

/// One graded slice of the unfolding data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedSliceReport {
    pub degree: i64,
    #[serde(rename = "dim_I")]
    pub dim_i: usize,
    #[serde(rename = "dim_J")]
    pub dim_j: usize,
    #[serde(rename = "dim_K")]
    pub dim_k: usize,
    #[serde(rename = "dim_Unf")]
    pub dim_unf: usize,
    #[serde(rename = "dim_H1")]
    pub dim_h1: usize,
    #[serde(skip)]
    pub unf_basis: Vec<Poly>,
}

/// A subspace of `𝒪(ℓ)` with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySlice {
    pub degree: i64,
    pub basis: Vec<Poly>,
}

impl PolySlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

type FormKey = (Indices, Monomial);

fn poly_coords(p: &Poly, rows: &mut Indexer<Monomial>) -> SparseVec {
    sparse_from(p.terms().map(|(m, c)| (rows.index(m.clone()), c.clone())))
}

fn form_coords(w: &DiffForm, rows: &mut Indexer<FormKey>) -> SparseVec {
    sparse_from(
        w.terms()
            .flat_map(|(idx, c)| c.terms().map(move |(m, a)| ((idx.clone(), m.clone()), a.clone())))
            .map(|(key, a)| (rows.index(key), a)),
    )
}

fn polys_of_degree(n: usize, ell: i64) -> Vec<Poly> {
    if ell < 0 {
        return Vec::new();
    }
    monomial_basis(n, ell as u32)
        .into_iter()
        .map(|m| Poly::monomial(n, m, Q::from_integer(1.into())))
        .collect()
}

/// Monomial basis of `Ω¹(ℓ)`.
fn one_forms_of_degree(n: usize, ell: i64) -> Vec<DiffForm> {
    let mut out = Vec::new();
    for i in 0..n {
        for p in polys_of_degree(n, ell - 1) {
            out.push(DiffForm::dx(n, i).mul_poly(&p));
        }
    }
    out
}

/// Monomial basis of `T(j)`.
fn fields_of_degree(n: usize, j: i64) -> Vec<VectorField> {
    let mut out = Vec::new();
    for i in 0..n {
        for p in polys_of_degree(n, j + 1) {
            let mut comps = vec![Poly::zero(n); n];
            comps[i] = p;
            out.push(VectorField::new(comps).expect("n components"));
        }
    }
    out
}

fn combine(basis: &[Poly], n: usize, coeffs: &SparseVec) -> Poly {
    let mut acc = Poly::zero(n);
    for (j, c) in coeffs {
        acc = &acc + &basis[*j].scale(c);
    }
    acc
}

/// Linear algebra on the graded pieces attached to one form.
pub struct GradedSlices<'a> {
    form: &'a FoliationForm,
    domega: DiffForm,
    n: usize,
    k: i64,
}

impl<'a> GradedSlices<'a> {
    /// Requires a homogeneous integrable form.
    pub fn new(form: &'a FoliationForm) -> Result<Self> {
        let Some(k) = form.total_degree() else {
            return Err(AlgebraError::Precondition("form is not homogeneous".into()));
        };
        if !form.is_integrable() {
            return Err(AlgebraError::Precondition("form is not integrable".into()));
        }
        Ok(GradedSlices { form, domega: form.omega().exterior_derivative(), n: form.nvars(), k: k as i64 })
    }

    pub fn total_degree(&self) -> i64 {
        self.k
    }

    fn omega(&self) -> &DiffForm {
        self.form.omega()
    }

    /// `{h ∈ 𝒪(ℓ) : h dω ∈ ω ∧ Ω¹(ℓ)}`, i.e. `h dω = ω ∧ (η − dh)` for some `η`.
    pub fn slice_i(&self, ell: i64) -> PolySlice {
        let hs = polys_of_degree(self.n, ell);
        let mut rows = Indexer::new();
        let mut columns: Vec<SparseVec> = one_forms_of_degree(self.n, ell)
            .iter()
            .map(|s| form_coords(&self.omega().wedge(s).expect("same dimension"), &mut rows))
            .collect();
        let offset = columns.len();
        columns.extend(hs.iter().map(|h| form_coords(&self.domega.mul_poly(h), &mut rows)));
        let dec = decompose(rows.len(), &columns);
        let basis = dec
            .kernel
            .iter()
            .filter(|(j, _)| *j >= offset)
            .map(|(_, v)| {
                let h_part: SparseVec =
                    v.iter().filter(|(i, _)| *i >= offset).map(|(i, c)| (i - offset, c.clone())).collect();
                combine(&hs, self.n, &h_part)
            })
            .collect();
        PolySlice { degree: ell, basis }
    }

    /// `{i_v ω : v ∈ T(ℓ − k)}`.
    pub fn slice_j(&self, ell: i64) -> PolySlice {
        let images: Vec<Poly> = fields_of_degree(self.n, ell - self.k)
            .iter()
            .map(|v| self.omega().interior_product(v).expect("same dimension").as_function().expect("0-form"))
            .collect();
        let mut rows = Indexer::new();
        let columns: Vec<SparseVec> = images.iter().map(|h| poly_coords(h, &mut rows)).collect();
        let dec = decompose(rows.len(), &columns);
        PolySlice { degree: ell, basis: dec.pivots.iter().map(|&j| images[j].clone()).collect() }
    }

    /// Integrating factors of degree `ℓ`: `h dω = dh ∧ ω`.
    pub fn slice_k(&self, ell: i64) -> PolySlice {
        let hs = polys_of_degree(self.n, ell);
        let mut rows = Indexer::new();
        let columns: Vec<SparseVec> = hs
            .iter()
            .map(|h| {
                let dh = DiffForm::function(h.clone()).exterior_derivative();
                let image = self
                    .domega
                    .mul_poly(h)
                    .checked_sub(&dh.wedge(self.omega()).expect("same dimension"))
                    .expect("2-forms");
                form_coords(&image, &mut rows)
            })
            .collect();
        let dec = decompose(rows.len(), &columns);
        let basis = dec.kernel.iter().map(|(_, v)| combine(&hs, self.n, v)).collect();
        PolySlice { degree: ell, basis }
    }

    /// Basis of a complement of `J(ℓ)` inside `I(ℓ)`.
    pub fn unfolding_basis(&self, i: &PolySlice, j: &PolySlice) -> Vec<Poly> {
        let mut rows = Indexer::new();
        let columns: Vec<SparseVec> = j.basis.iter().chain(&i.basis).map(|h| poly_coords(h, &mut rows)).collect();
        let offset = j.basis.len();
        decompose(rows.len(), &columns)
            .pivots
            .iter()
            .filter(|&&p| p >= offset)
            .map(|&p| i.basis[p - offset].clone())
            .collect()
    }

    fn d0(&self, v: &VectorField) -> DiffForm {
        self.omega().lie_derivative(v).expect("same dimension")
    }

    fn d1(&self, eta: &DiffForm) -> DiffForm {
        let a = eta.wedge(&self.domega).expect("same dimension");
        let b = self.omega().wedge(&eta.exterior_derivative()).expect("same dimension");
        a.checked_add(&b).expect("3-forms")
    }

    /// `dim ker d¹ − dim im d⁰` on the slice of degree `ℓ`. Fails if
    /// `d¹ ∘ d⁰` does not vanish, which cannot happen for integrable forms.
    pub fn cln_h1(&self, ell: i64) -> Result<usize> {
        let etas = one_forms_of_degree(self.n, ell);
        if etas.is_empty() {
            return Ok(0);
        }
        let mut rows3 = Indexer::new();
        let d1_cols: Vec<SparseVec> = etas.iter().map(|eta| form_coords(&self.d1(eta), &mut rows3)).collect();
        let rank1 = decompose(rows3.len(), &d1_cols).rank();
        let mut rows1 = Indexer::new();
        let mut d0_cols = Vec::new();
        for v in fields_of_degree(self.n, ell - self.k) {
            let image = self.d0(&v);
            if !self.d1(&image).is_zero() {
                return Err(AlgebraError::Precondition("d1 composed with d0 is not zero".into()));
            }
            d0_cols.push(form_coords(&image, &mut rows1));
        }
        let rank0 = decompose(rows1.len(), &d0_cols).rank();
        Ok(etas.len() - rank1 - rank0)
    }

    /// Dimensions of every slice in degree `ℓ`.
    pub fn report(&self, ell: i64) -> Result<GradedSliceReport> {
        self.report_inner(ell, false)
    }

    /// Like [`Self::report`], also filling in an explicit `Unf` basis.
    pub fn report_with_basis(&self, ell: i64) -> Result<GradedSliceReport> {
        self.report_inner(ell, true)
    }

    fn report_inner(&self, ell: i64, with_basis: bool) -> Result<GradedSliceReport> {
        let i = self.slice_i(ell);
        let j = self.slice_j(ell);
        let k = self.slice_k(ell);
        let unf_basis = if with_basis { self.unfolding_basis(&i, &j) } else { Vec::new() };
        debug_assert!(!with_basis || unf_basis.len() == i.dim() - j.dim());
        Ok(GradedSliceReport {
            degree: ell,
            dim_i: i.dim(),
            dim_j: j.dim(),
            dim_k: k.dim(),
            dim_unf: i.dim() - j.dim(),
            dim_h1: self.cln_h1(ell)?,
            unf_basis,
        })
    }

    /// Dimension of `L_v ω` over constant fields `v`.
    pub fn rank(&self) -> usize {
        let mut rows = Indexer::new();
        let columns: Vec<SparseVec> = (0..self.n)
            .map(|i| form_coords(&self.d0(&VectorField::coordinate(self.n, i)), &mut rows))
            .collect();
        decompose(rows.len(), &columns).rank()
    }
}

pub fn slice_i(form: &FoliationForm, ell: i64) -> Result<PolySlice> {
    Ok(GradedSlices::new(form)?.slice_i(ell))
}

pub fn slice_j(form: &FoliationForm, ell: i64) -> Result<PolySlice> {
    Ok(GradedSlices::new(form)?.slice_j(ell))
}

pub fn slice_k(form: &FoliationForm, ell: i64) -> Result<PolySlice> {
    Ok(GradedSlices::new(form)?.slice_k(ell))
}

pub fn unfolding_space(form: &FoliationForm, ell: i64) -> Result<GradedSliceReport> {
    GradedSlices::new(form)?.report(ell)
}

pub fn cln_h1(form: &FoliationForm, ell: i64) -> Result<usize> {
    GradedSlices::new(form)?.cln_h1(ell)
}

pub fn rank(form: &FoliationForm) -> Result<usize> {
    Ok(GradedSlices::new(form)?.rank())
}

/// Per-degree `H¹` over the window `1 ≤ ℓ ≤ k − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub table: Vec<DegreeDim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDim {
    pub degree: i64,
    pub dim: usize,
}

pub fn is_regular(form: &FoliationForm) -> Result<RegularityReport> {
    let g = GradedSlices::new(form)?;
    let table = (1..g.total_degree())
        .map(|ell| Ok(DegreeDim { degree: ell, dim: g.cln_h1(ell)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularityReport { regular: table.iter().all(|r| r.dim == 0), table })
}

/// Outcome of the graded checks up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedCheck {
    pub holds: bool,
    pub bound: i64,
    pub total_degree: i64,
    /// First failing degree, reported as `("K" | "Unf", ℓ)`.
    pub witness: Option<(String, i64)>,
    #[serde(rename = "dim_K")]
    pub dim_k: Vec<DegreeDim>,
    #[serde(rename = "dim_Unf")]
    pub dim_unf: Vec<DegreeDim>,
}

fn graded_check(
    g: &GradedSlices,
    bound: i64,
    k_range: std::ops::RangeInclusive<i64>,
    unf_degrees: Vec<i64>,
) -> GradedCheck {
    let mut witness = None;
    let mut dim_k = Vec::new();
    for ell in k_range {
        let dim = g.slice_k(ell).dim();
        if dim != 0 && witness.is_none() {
            witness = Some(("K".to_string(), ell));
        }
        dim_k.push(DegreeDim { degree: ell, dim });
    }
    let mut dim_unf = Vec::new();
    for ell in unf_degrees {
        let i = g.slice_i(ell);
        let dim = i.dim() - g.slice_j(ell).dim();
        if dim != 0 && witness.is_none() {
            witness = Some(("Unf".to_string(), ell));
        }
        dim_unf.push(DegreeDim { degree: ell, dim });
    }
    GradedCheck { holds: witness.is_none(), bound, total_degree: g.total_degree(), witness, dim_k, dim_unf }
}

/// No integrating factors of degree `1..=B` and `Unf(ℓ) = 0` for
/// `0 ≤ ℓ ≤ B`, `ℓ ≠ k`. The form must descend.
pub fn check_stabcones_hypotheses(form: &FoliationForm, bound: i64) -> Result<GradedCheck> {
    if !form.descends_to_projective() {
        return Err(AlgebraError::Precondition("form does not descend to projective space".into()));
    }
    let g = GradedSlices::new(form)?;
    let k = g.total_degree();
    Ok(graded_check(&g, bound, 1..=bound, (0..=bound).filter(|&l| l != k).collect()))
}

/// Graded determinacy criterion: `K(ℓ) = 0` for `ℓ ≤ k` and `Unf(ℓ) = 0`
/// for `k < ℓ ≤ B`.
pub fn infinitesimal_determinacy(form: &FoliationForm, bound: i64) -> Result<GradedCheck> {
    let g = GradedSlices::new(form)?;
    let k = g.total_degree();
    Ok(graded_check(&g, bound, 0..=k, (k + 1..=bound).collect()))
}

/// Default degree bound for the graded checks.
pub fn default_bound(total_degree: i64) -> i64 {
    2 * total_degree + 4
}
