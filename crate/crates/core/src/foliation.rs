//! Codimension-one foliations given by polynomial 1-forms.
//!
//! Degrees follow one convention throughout: the *total degree* `k` of a
//! homogeneous 1-form counts `deg x_i = deg dx_i = 1`, so a form with
//! coefficients of degree `c` has `k = c + 1`. A foliation of projective
//! degree `d` on `P^n` has coefficient degree `d + 1` and total degree
//! `d + 2`; see [`projective_to_total_degree`].

use crate::error::{AlgebraError, Result};
use crate::exterior::{DiffForm, VectorField};
use crate::ideal::Ideal;
use crate::linalg::{sparse_from, ExactLinearMap, Indexer};
use crate::poly::{gcd_all, monomial_basis, Poly};
use crate::Q;

/// Total degree of the cone form of a projective foliation of degree `d`.
pub fn projective_to_total_degree(d: u32) -> u32 {
    d + 2
}

/// Projective degree of a descending form of total degree `k` (`k ≥ 2`).
pub fn total_to_projective_degree(k: u32) -> Option<u32> {
    k.checked_sub(2)
}

/// A nonzero polynomial 1-form together with cached structural flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationForm {
    omega: DiffForm,
    total_degree: Option<u32>,
    descends: bool,
    saturated: bool,
    cone: bool,
}

impl FoliationForm {
    pub fn new(omega: DiffForm) -> Result<Self> {
        if omega.degree() != 1 {
            return Err(AlgebraError::Precondition(format!(
                "a foliation needs a 1-form, got a {}-form",
                omega.degree()
            )));
        }
        if omega.is_zero() {
            return Err(AlgebraError::Precondition("the zero form defines no foliation".into()));
        }
        let total_degree = omega.total_degree();
        let n = omega.nvars();
        let descends = total_degree.is_some()
            && omega.interior_product(&VectorField::euler(n)).expect("same dimension").is_zero();
        let saturated = gcd_all(n, omega.coefficients()).is_constant();
        Ok(FoliationForm { omega, total_degree, descends, saturated, cone: false })
    }

    /// Foliation `Σ coeffs[i] dx_i`.
    pub fn from_coefficients(coeffs: &[Poly]) -> Result<Self> {
        Self::new(DiffForm::one_form(coeffs)?)
    }

    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }

    pub fn nvars(&self) -> usize {
        self.omega.nvars()
    }

    /// Total degree `k` when the form is homogeneous.
    pub fn total_degree(&self) -> Option<u32> {
        self.total_degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree.is_some()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_cone(&self) -> bool {
        self.cone
    }

    /// `ω ∧ dω`, the obstruction to integrability.
    pub fn integrability_obstruction(&self) -> DiffForm {
        self.omega.wedge(&self.omega.exterior_derivative()).expect("same dimension")
    }

    /// Frobenius condition `ω ∧ dω = 0`.
    pub fn is_integrable(&self) -> bool {
        self.integrability_obstruction().is_zero()
    }

    /// Ideal generated by the coefficients of `ω`.
    pub fn singular_ideal(&self) -> Ideal {
        Ideal::new(self.nvars(), self.omega.coefficients().cloned().collect()).expect("consistent")
    }

    /// Splits off the gcd of the coefficients: returns `(divisor, ω / divisor)`.
    pub fn saturate(&self) -> (Poly, FoliationForm) {
        let n = self.nvars();
        let g = gcd_all(n, self.omega.coefficients());
        if g.is_constant() {
            return (Poly::one(n), self.clone());
        }
        let reduced = self.omega.map_coefficients(|c| c.div_exact(&g).expect("gcd divides"));
        let mut out = FoliationForm::new(reduced).expect("nonzero quotient");
        out.cone = self.cone;
        (g, out)
    }

    /// Homogeneous with `i_R ω = 0`, i.e. the form is the cone of a
    /// foliation on projective space.
    pub fn descends_to_projective(&self) -> bool {
        self.descends
    }

    /// The cone over the projective foliation: the same form, flagged.
    pub fn cone(&self) -> Result<FoliationForm> {
        if !self.descends {
            return Err(AlgebraError::Precondition(
                "form is not homogeneous with i_R ω = 0; it does not descend".into(),
            ));
        }
        let mut out = self.clone();
        out.cone = true;
        Ok(out)
    }

    /// Projective degree `d` of a descending form.
    pub fn projective_degree(&self) -> Option<u32> {
        if !self.descends {
            return None;
        }
        self.total_degree.and_then(total_to_projective_degree)
    }

    /// `v` is a symmetry when `L_v ω ∧ ω = 0`.
    pub fn is_symmetry(&self, v: &VectorField) -> Result<bool> {
        let l = self.omega.lie_derivative(v)?;
        Ok(l.wedge(&self.omega)?.is_zero())
    }

    /// For a symmetry `v` of an integrable form, `h = i_v ω` satisfies
    /// `h dω = dh ∧ ω`. Returns `None` when `v` is not a symmetry.
    pub fn integrating_factor_from_symmetry(&self, v: &VectorField) -> Result<Option<Poly>> {
        if !self.is_integrable() {
            return Err(AlgebraError::Precondition("integrating factors need an integrable form".into()));
        }
        if !self.is_symmetry(v)? {
            return Ok(None);
        }
        let h = self.omega.interior_product(v)?.as_function().expect("0-form");
        if !is_integrating_factor(&self.omega, &h) {
            return Err(AlgebraError::Precondition(
                "symmetry produced a function that is not an integrating factor".into(),
            ));
        }
        Ok(Some(h))
    }

    /// `P/Q` is a rational first integral iff `ω ∧ (Q dP − P dQ) = 0`.
    pub fn first_integral_check(&self, p: &Poly, q: &Poly) -> Result<bool> {
        if q.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        let dp = DiffForm::function(p.clone()).exterior_derivative();
        let dq = DiffForm::function(q.clone()).exterior_derivative();
        let eta = dp.mul_poly(q).checked_sub(&dq.mul_poly(p))?;
        Ok(self.omega.wedge(&eta)?.is_zero())
    }

    /// Vanishing order of the pullback along the exceptional divisor of the
    /// blow-up at `point`: with `ν` the order of `ω` at the point and `ω_ν` its
    /// lowest jet, this is `ν` when `i_R ω_ν ≠ 0` and `ν + 1` otherwise.
    pub fn multiplicity_at(&self, point: &[Q]) -> Result<u32> {
        let local = self.omega.translate(point)?;
        let nu = local.order().expect("nonzero form");
        let jet = local.coefficient_component(nu);
        let radial = jet.interior_product(&VectorField::euler(self.nvars()))?;
        Ok(if radial.is_zero() { nu + 1 } else { nu })
    }

    /// `V(f)` is invariant iff every coefficient of `ω ∧ df` lies in `(f)`.
    pub fn is_invariant_hypersurface(&self, f: &Poly) -> Result<bool> {
        check_hypersurface(f, self.nvars())?;
        let df = DiffForm::function(f.clone()).exterior_derivative();
        let w = self.omega.wedge(&df)?;
        let ok = w.coefficients().all(|c| f.divides(c));
        Ok(ok)
    }

    /// Pullback along `x_i ↦ sections[i]`, saturated. The target form must
    /// descend. Sections that are all homogeneous of positive degree must
    /// share that degree; other sections are read on an affine source.
    pub fn pullback(&self, sections: &[Poly]) -> Result<FoliationForm> {
        if sections.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars(), got: sections.len() });
        }
        if !self.descends {
            return Err(AlgebraError::Precondition("pullback target form must descend".into()));
        }
        if sections.iter().all(Poly::is_zero) {
            return Err(AlgebraError::Precondition("all sections are zero".into()));
        }
        if !consistent_section_degrees(sections) {
            return Err(AlgebraError::Precondition("homogeneous sections must share one degree".into()));
        }
        let pulled = self.omega.pullback(sections)?;
        if pulled.is_zero() {
            return Err(AlgebraError::Precondition("degenerate pullback: the pulled-back form is zero".into()));
        }
        Ok(FoliationForm::new(pulled)?.saturate().1)
    }
}

/// False when the nonzero sections are all homogeneous of positive degree
/// but not of one common degree.
pub fn consistent_section_degrees(sections: &[Poly]) -> bool {
    let degrees: Vec<Option<u32>> = sections.iter().filter(|s| !s.is_zero()).map(Poly::homogeneous_degree).collect();
    if degrees.iter().all(|d| d.is_some_and(|d| d > 0)) {
        return degrees.windows(2).all(|w| w[0] == w[1]);
    }
    true
}

/// `h dω = dh ∧ ω`.
pub fn is_integrating_factor(omega: &DiffForm, h: &Poly) -> bool {
    let lhs = omega.exterior_derivative().mul_poly(h);
    let rhs = DiffForm::function(h.clone()).exterior_derivative().wedge(omega).expect("same dimension");
    lhs.checked_sub(&rhs).map(|d| d.is_zero()).unwrap_or(false)
}

fn check_hypersurface(f: &Poly, n: usize) -> Result<()> {
    if f.nvars() != n {
        return Err(AlgebraError::DimensionMismatch { left: n, right: f.nvars() });
    }
    if f.is_zero() || f.is_constant() {
        return Err(AlgebraError::Precondition("hypersurface equation must be a non-constant polynomial".into()));
    }
    Ok(())
}

/// `v` is logarithmic along `V(f)` when `v(f) ∈ (f)`.
pub fn is_logarithmic(v: &VectorField, f: &Poly) -> Result<bool> {
    check_hypersurface(f, v.nvars())?;
    Ok(f.divides(&v.apply(f)?))
}

/// Basis of the logarithmic fields along `V(f)` whose components are
/// homogeneous of degree `ℓ + 1` (field degree `ℓ`).
pub fn logarithmic_fields_basis(f: &Poly, ell: i64) -> Result<Vec<VectorField>> {
    let n = f.nvars();
    check_hypersurface(f, n)?;
    if ell < -1 {
        return Ok(Vec::new());
    }
    let principal = Ideal::new(n, vec![f.clone()])?;
    let comps = monomial_basis(n, (ell + 1) as u32);
    let mut unknowns: Vec<VectorField> = Vec::new();
    for i in 0..n {
        for m in &comps {
            let mut c = vec![Poly::zero(n); n];
            c[i] = Poly::monomial(n, m.clone(), Q::from_integer(1.into()));
            unknowns.push(VectorField::new(c)?);
        }
    }
    let mut rows = Indexer::new();
    let columns: Vec<_> = unknowns
        .iter()
        .map(|v| {
            let r = principal.normal_form(&v.apply(f).expect("same dimension"));
            sparse_from(r.terms().map(|(m, c)| (rows.index(m.clone()), c.clone())))
        })
        .collect();
    let map = ExactLinearMap::new(rows.len(), columns);
    let mut out = Vec::new();
    for ker in map.kernel() {
        let mut acc = VectorField::zero(n);
        for (j, c) in ker {
            acc = acc.checked_add(&unknowns[j].scale(&c))?;
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    debug_assert!(out.iter().all(|v| is_logarithmic(v, f).unwrap_or(false)));
    Ok(out)
}
