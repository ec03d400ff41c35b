//! Pointwise singularity classification, critical loci of polynomial maps,
//! genericity of sections and tangency schemes of pullback foliations.

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::exterior::DiffForm;
use crate::foliation::FoliationForm;
use crate::ideal::{rational_points, Ideal, VsDim};
use crate::poly::{render_rational, Poly};
use crate::Q;

/// Whether the components are affine coordinates or projective sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Affine,
    Projective,
}

/// A polynomial map from `ℂ^m` to `ℂ^n` or, given by sections, to `P^n`.
///
/// Projective sections may be arbitrary polynomials (the source is read as
/// affine space). When all of them are homogeneous of positive degree they
/// must share that degree and the map is treated as a cone over
/// `P^{m−1} ⇢ P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    nvars: usize,
    components: Vec<Poly>,
    target: Target,
}

impl PolyMap {
    pub fn affine(nvars: usize, components: Vec<Poly>) -> Result<Self> {
        Self::check_ring(nvars, &components)?;
        if components.is_empty() {
            return Err(AlgebraError::Precondition("a map needs at least one component".into()));
        }
        Ok(PolyMap { nvars, components, target: Target::Affine })
    }

    pub fn projective(nvars: usize, sections: Vec<Poly>) -> Result<Self> {
        Self::check_ring(nvars, &sections)?;
        if sections.len() < 2 {
            return Err(AlgebraError::Precondition("a map to P^n needs n + 1 ≥ 2 sections".into()));
        }
        if sections.iter().all(Poly::is_zero) {
            return Err(AlgebraError::Precondition("all sections are zero".into()));
        }
        if !crate::foliation::consistent_section_degrees(&sections) {
            return Err(AlgebraError::Precondition("homogeneous sections must share one degree".into()));
        }
        Ok(PolyMap { nvars, components: sections, target: Target::Projective })
    }

    fn check_ring(nvars: usize, polys: &[Poly]) -> Result<()> {
        match polys.iter().find(|p| p.nvars() != nvars) {
            Some(p) => Err(AlgebraError::DimensionMismatch { left: nvars, right: p.nvars() }),
            None => Ok(()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn target(&self) -> Target {
        self.target
    }

    /// All sections homogeneous of one positive degree.
    pub fn is_cone(&self) -> bool {
        self.target == Target::Projective
            && self.components.iter().all(|s| s.is_zero() || s.homogeneous_degree().is_some_and(|d| d > 0))
    }

    /// Dimension `m` of the source (projective dimension for cones).
    pub fn source_dim(&self) -> usize {
        if self.is_cone() {
            self.nvars - 1
        } else {
            self.nvars
        }
    }

    /// Dimension `n` of the target.
    pub fn target_dim(&self) -> usize {
        match self.target {
            Target::Affine => self.components.len(),
            Target::Projective => self.components.len() - 1,
        }
    }

    /// Rows are components, columns are source variables.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.components
            .iter()
            .map(|s| (0..self.nvars).map(|j| s.partial_derivative(j).expect("in range")).collect())
            .collect()
    }

    /// Ideal of the base locus `B = V(s_0, …, s_n)`.
    pub fn base_ideal(&self) -> Option<Ideal> {
        (self.target == Target::Projective)
            .then(|| Ideal::new(self.nvars, self.components.clone()).expect("consistent"))
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let nv = m.first().and_then(|r| r.first()).map(Poly::nvars).unwrap_or(0);
    match n {
        0 => Poly::one(nv),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Poly::zero(nv);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// All nonzero `r × r` minors of a matrix.
pub fn minors(m: &[Vec<Poly>], r: usize) -> Vec<Poly> {
    let rows = m.len();
    let cols = m.first().map(Vec::len).unwrap_or(0);
    if r == 0 || r > rows || r > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rs in subsets(rows, r) {
        for cs in subsets(cols, r) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = determinant(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn check_rank_bound(map: &PolyMap, k: usize) -> Result<()> {
    let (m, n) = (map.source_dim(), map.target_dim());
    if k > m.min(n) {
        return Err(AlgebraError::Precondition(format!("k = {k} exceeds min(m, n) = {}", m.min(n))));
    }
    Ok(())
}

/// Minors cutting out `C_k` before the base locus is removed.
///
/// For projective targets the rank of `dπ` off the base locus is one less
/// than the rank of the matrix `[Jacobian | s]`, so `C_k` is cut out by its
/// `(k+2)`-minors away from `B`.
fn raw_critical_ideal(map: &PolyMap, k: usize) -> Result<Ideal> {
    check_rank_bound(map, k)?;
    match map.target() {
        Target::Affine => Ideal::new(map.nvars(), minors(&map.jacobian(), k + 1)),
        Target::Projective => {
            let mut aug = map.jacobian();
            for (row, s) in aug.iter_mut().zip(map.components()) {
                row.push(s.clone());
            }
            Ideal::new(map.nvars(), minors(&aug, k + 2))
        }
    }
}

/// Ideal of `C_k(π) = {p : rank d_pπ ≤ k}`, saturated by the base ideal for
/// projective targets.
pub fn critical_ideal(map: &PolyMap, k: usize) -> Result<Ideal> {
    let raw = raw_critical_ideal(map, k)?;
    match map.base_ideal() {
        Some(base) => raw.saturation(&base),
        None => Ok(raw),
    }
}

/// Dimension of `C_k(π)` in the source, −1 when empty.
pub fn critical_dimension(map: &PolyMap, k: usize) -> Result<i64> {
    let raw = raw_critical_ideal(map, k)?;
    let d = match map.base_ideal() {
        Some(base) => raw.saturation_dimension(&base)?,
        None => raw.krull_dimension(),
    };
    Ok(cone_adjusted(map, d))
}

/// Dimension in the source of the zero set of an ideal of the source ring.
pub fn source_dimension(map: &PolyMap, ideal: &Ideal) -> i64 {
    cone_adjusted(map, ideal.krull_dimension())
}

/// Affine dimension to source dimension (projective for cones).
fn cone_adjusted(map: &PolyMap, d: i64) -> i64 {
    if map.is_cone() && d >= 0 {
        d - 1
    } else {
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDimensionReport {
    pub k: usize,
    pub dim: i64,
    pub empty: bool,
    /// `[m − (m−k)(n−k), k]`.
    pub bounds: (i64, i64),
    pub holds: bool,
}

/// `m − (m−k)(n−k) ≤ dim C_k ≤ k` whenever `C_k` is nonempty.
pub fn check_expected_dimension(map: &PolyMap, k: usize) -> Result<ExpectedDimensionReport> {
    Ok(expected_dimension_report(map, k, critical_dimension(map, k)?))
}

/// Bound check for a known `dim C_k`.
pub fn expected_dimension_report(map: &PolyMap, k: usize, dim: i64) -> ExpectedDimensionReport {
    let (m, n, ki) = (map.source_dim() as i64, map.target_dim() as i64, k as i64);
    let lower = m - (m - ki) * (n - ki);
    let empty = dim < 0;
    let holds = empty || (lower <= dim && dim <= ki);
    ExpectedDimensionReport { k, dim, empty, bounds: (lower, ki), holds }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericMapReport {
    pub generic: bool,
    /// Dimension of the base locus, −1 when empty.
    pub base_dim: i64,
}

/// Sections cut the base locus transversely: `B` plus the maximal minors of
/// the Jacobian of the sections is the unit ideal (after removing the
/// origin for cones).
pub fn check_generic_map(map: &PolyMap) -> Result<GenericMapReport> {
    let Some(base) = map.base_ideal() else {
        return Err(AlgebraError::Precondition("genericity is defined for projective targets".into()));
    };
    let mut gens = map.components().to_vec();
    gens.extend(minors(&map.jacobian(), map.components().len()));
    let ideal = Ideal::new(map.nvars(), gens)?;
    let (generic, base_dim) = if map.is_cone() {
        let irrelevant = Ideal::maximal_at_origin(map.nvars());
        (ideal.saturation_dimension(&irrelevant)? < 0, base.saturation_dimension(&irrelevant)?)
    } else {
        (ideal.is_unit(), base.krull_dimension())
    };
    Ok(GenericMapReport { generic, base_dim: cone_adjusted(map, base_dim) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityClass {
    NonSingular,
    Morse,
    Kupka,
    OtherSingular,
}

impl std::fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SingularityClass::NonSingular => "NonSingular",
            SingularityClass::Morse => "Morse",
            SingularityClass::Kupka => "Kupka",
            SingularityClass::OtherSingular => "OtherSingular",
        };
        f.write_str(s)
    }
}

/// Classification of a point with its jet data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityVerdict {
    pub point: Vec<Q>,
    pub class: SingularityClass,
    /// `A_ij = ∂_j a_i(p)` for `ω = Σ a_i dx_i`.
    pub linear_jet: Vec<Vec<Q>>,
    pub jet_determinant: Q,
    pub domega_vanishes: bool,
}

fn render_row(row: &[Q]) -> Vec<String> {
    row.iter().map(render_rational).collect()
}

impl Serialize for SingularityVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SingularityVerdict", 5)?;
        st.serialize_field("point", &render_row(&self.point))?;
        st.serialize_field("class", &self.class)?;
        st.serialize_field("linear_jet", &self.linear_jet.iter().map(|r| render_row(r)).collect::<Vec<_>>())?;
        st.serialize_field("jet_determinant", &render_rational(&self.jet_determinant))?;
        st.serialize_field("domega_vanishes", &self.domega_vanishes)?;
        st.end()
    }
}

/// Exact determinant of a rational matrix.
fn rational_det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..n {
                let v = &m[c][j] * &f;
                m[r][j] -= v;
            }
        }
    }
    det
}

/// NonSingular when `ω(p) ≠ 0`; Kupka when `ω(p) = 0` and `dω(p) ≠ 0`;
/// Morse when the linear jet at `p` is symmetric and invertible.
pub fn classify_point(form: &FoliationForm, point: &[Q]) -> Result<SingularityVerdict> {
    let n = form.nvars();
    if point.len() != n {
        return Err(AlgebraError::ArityMismatch { expected: n, got: point.len() });
    }
    let coeffs: Vec<Poly> = (0..n).map(|i| form.omega().coefficient(&[i])).collect();
    let linear_jet: Vec<Vec<Q>> = coeffs
        .iter()
        .map(|a| (0..n).map(|j| a.partial_derivative(j).and_then(|d| d.evaluate(point))).collect())
        .collect::<Result<_>>()?;
    let jet_determinant = rational_det(linear_jet.clone());
    let domega_vanishes = form.omega().exterior_derivative().evaluate(point)?.is_zero();
    let vanishes = coeffs.iter().map(|a| a.evaluate(point)).collect::<Result<Vec<_>>>()?.iter().all(Zero::is_zero);
    let class = if !vanishes {
        SingularityClass::NonSingular
    } else if !domega_vanishes {
        SingularityClass::Kupka
    } else if !jet_determinant.is_zero() {
        // dω(p) = 0 is exactly the symmetry of the linear jet
        SingularityClass::Morse
    } else {
        SingularityClass::OtherSingular
    };
    Ok(SingularityVerdict { point: point.to_vec(), class, linear_jet, jet_determinant, domega_vanishes })
}

/// Local Milnor number `dim O_p / (∂f)` at a rational point, certified by
/// truncation up to `bound`; `Infinite` when no certificate is found.
pub fn milnor_number(f: &Poly, point: &[Q], bound: u32) -> Result<VsDim> {
    let n = f.nvars();
    if point.len() != n {
        return Err(AlgebraError::ArityMismatch { expected: n, got: point.len() });
    }
    let jac: Vec<Poly> = (0..n).map(|i| f.partial_derivative(i)).collect::<Result<_>>()?;
    Ideal::new(n, jac)?.local_dimension_at(point, bound)
}

/// The pullback foliation `π*G` (saturated) and its tangency ideal
/// `Sing(π*G) : (π* Sing G)^∞`.
pub fn tangency_ideal(map: &PolyMap, g: &FoliationForm) -> Result<(FoliationForm, Ideal)> {
    if map.target() != Target::Projective {
        return Err(AlgebraError::Precondition("tangency needs a map to projective space".into()));
    }
    let pulled = g.pullback(map.components())?;
    let tang = pulled.singular_ideal().saturation(&pulled_back_singular_ideal(map, g)?)?;
    Ok((pulled, tang))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangencyReport {
    pub dim_tang: i64,
    pub count_with_multiplicity: VsDim,
    pub rational_points: Vec<SingularityVerdict>,
    /// Tangency points without rational coordinates are not classified.
    pub unclassified: bool,
    pub finite_morse: bool,
}

fn pulled_back_singular_ideal(map: &PolyMap, g: &FoliationForm) -> Result<Ideal> {
    let sing_g: Vec<Poly> = g
        .singular_ideal()
        .generators()
        .iter()
        .map(|p| p.substitute(map.components()))
        .collect::<Result<_>>()?;
    Ideal::new(map.nvars(), sing_g)
}

/// Dimension, length and pointwise classification of the tangency scheme.
pub fn tangency_analysis(map: &PolyMap, g: &FoliationForm) -> Result<TangencyReport> {
    let (pulled, tang) = tangency_ideal(map, g)?;
    summarize_tangency(&pulled, &tang)
}

/// The tangency report for an already computed pullback and tangency ideal.
pub fn summarize_tangency(pulled: &FoliationForm, tang: &Ideal) -> Result<TangencyReport> {
    let dim_tang = tang.krull_dimension();
    let count = tang.quotient_vs_dimension();
    let mut verdicts = Vec::new();
    let mut unclassified = false;
    if dim_tang == 0 {
        let points = rational_points(tang).unwrap_or_default();
        unclassified = count.finite().is_some_and(|c| c > points.len() as u64);
        for p in points {
            verdicts.push(classify_point(pulled, &p)?);
        }
    }
    let finite_morse = dim_tang <= 0 && verdicts.iter().all(|v| v.class == SingularityClass::Morse);
    Ok(TangencyReport { dim_tang, count_with_multiplicity: count, rational_points: verdicts, unclassified, finite_morse })
}

/// The Morse fibration model: `s = (1, x_1² + x_2²)` on `ℂ²` and the pencil
/// of points `y_0 dy_1 − y_1 dy_0` on `P^1`.
pub fn morse_fibration_model() -> (PolyMap, FoliationForm) {
    let q = &Poly::var(2, 0).pow(2) + &Poly::var(2, 1).pow(2);
    let map = PolyMap::projective(2, vec![Poly::one(2), q]).expect("valid sections");
    let (y0, y1) = (Poly::var(2, 0), Poly::var(2, 1));
    let g = FoliationForm::new(
        DiffForm::dx(2, 1).mul_poly(&y0).checked_sub(&DiffForm::dx(2, 0).mul_poly(&y1)).expect("1-forms"),
    )
    .expect("nonzero");
    (map, g)
}
