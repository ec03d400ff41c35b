//! Example foliations used as fixtures and oracles.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exterior::{DiffForm, VectorField};
use crate::foliation::FoliationForm;
use crate::linalg::{sparse_from, ExactLinearMap, Indexer};
use crate::poly::{monomial_basis, Monomial, Poly};
use crate::{qi, Q};

/// A named example foliation.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub form: FoliationForm,
    pub nvars: usize,
    pub total_degree: u32,
    /// Whether the entry is the cone of a projective foliation.
    pub projective: bool,
    pub note: String,
}

impl CatalogEntry {
    fn new(name: String, form: FoliationForm, projective: bool, note: &str) -> Self {
        let total_degree = form.total_degree().expect("catalog forms are homogeneous");
        debug_assert!(form.is_integrable());
        debug_assert!(!projective || form.descends_to_projective());
        CatalogEntry { name, nvars: form.nvars(), form, total_degree, projective, note: note.to_string() }
    }

    pub fn summary(&self) -> EntrySummary {
        EntrySummary {
            name: self.name.clone(),
            nvars: self.nvars,
            total_degree: self.total_degree,
            projective_degree: self.form.projective_degree(),
            projective: self.projective,
            integrable: self.form.is_integrable(),
            saturated: self.form.is_saturated(),
            note: self.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntrySummary {
    pub name: String,
    pub nvars: usize,
    pub total_degree: u32,
    pub projective_degree: Option<u32>,
    pub projective: bool,
    pub integrable: bool,
    pub saturated: bool,
    pub note: String,
}

fn sum_of_squares(n: usize) -> Poly {
    (0..n).map(|i| Poly::var(n, i).pow(2)).fold(Poly::zero(n), |a, b| &a + &b)
}

/// `d(x_0² + … + x_{n−1}²)`.
pub fn morse_model(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(AlgebraError::Precondition("the Morse model needs n ≥ 1".into()));
    }
    let form = FoliationForm::new(DiffForm::function(sum_of_squares(n)).exterior_derivative())?;
    Ok(CatalogEntry::new(format!("morse:{n}"), form, false, "exact form of a nondegenerate quadric"))
}

/// `ω = q·g·df − p·f·dg` for homogeneous `f`, `g` of degrees `p`, `q`.
pub fn rational_foliation(f: &Poly, g: &Poly) -> Result<CatalogEntry> {
    let (Some(p), Some(q)) = (f.homogeneous_degree(), g.homogeneous_degree()) else {
        return Err(AlgebraError::Precondition("rational foliation needs homogeneous f and g".into()));
    };
    if f.is_zero() || g.is_zero() || p == 0 || q == 0 {
        return Err(AlgebraError::Precondition("f and g must be nonzero of positive degree".into()));
    }
    if f.nvars() != g.nvars() {
        return Err(AlgebraError::DimensionMismatch { left: f.nvars(), right: g.nvars() });
    }
    let df = DiffForm::function(f.clone()).exterior_derivative();
    let dg = DiffForm::function(g.clone()).exterior_derivative();
    let omega = df.mul_poly(&g.scale(&qi(q as i64))).checked_sub(&dg.mul_poly(&f.scale(&qi(p as i64))))?;
    let form = FoliationForm::new(omega)?;
    Ok(CatalogEntry::new(format!("rational:{p},{q}"), form, true, "pencil with first integral f^q/g^p"))
}

/// Random homogeneous polynomial with integer coefficients in `[-bound, bound]`,
/// never zero.
pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, degree: u32, bound: i64) -> Poly {
    loop {
        let terms = monomial_basis(n, degree).into_iter().map(|m| (m, qi(rng.gen_range(-bound..=bound))));
        let p = Poly::from_terms(n, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random polynomial of degree at most `degree`, never zero.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, degree: u32, bound: i64) -> Poly {
    loop {
        let terms = (0..=degree)
            .flat_map(|d| monomial_basis(n, d))
            .map(|m| (m, qi(rng.gen_range(-bound..=bound))))
            .collect::<Vec<_>>();
        let p = Poly::from_terms(n, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Deterministic `rational_foliation` with seeded random `f`, `g` in `n` variables.
pub fn seeded_rational(p: u32, q: u32, n: usize, seed: u64) -> Result<CatalogEntry> {
    if p == 0 || q == 0 || n == 0 {
        return Err(AlgebraError::Precondition("rational entries need p, q, n ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_homogeneous(&mut rng, n, p, 3);
    let g = random_homogeneous(&mut rng, n, q, 3);
    let mut entry = rational_foliation(&f, &g)?;
    entry.name = if n == 4 { format!("rational:{p},{q}") } else { format!("rational:{p},{q},{n}") };
    Ok(entry)
}

const RATIONAL_SEED: u64 = 0x5eba;

/// The fields `R`, `X`, `Y` on `ℂ⁴` spanning the exceptional distribution.
pub fn e3_fields() -> [VectorField; 3] {
    let n = 4;
    let x = |i: usize| Poly::var(n, i);
    let weights: Vec<Q> = (0..4).map(|i| qi(3 - 2 * i as i64)).collect();
    let mut y = vec![Poly::zero(n); n];
    for i in 0..3 {
        y[i] = x(i + 1);
    }
    [VectorField::euler(n), VectorField::diagonal(&weights), VectorField::new(y).expect("4 components")]
}

/// `ω = i_R i_X i_Y (dz₀∧dz₁∧dz₂∧dz₃)` on `ℂ⁴`.
pub fn exceptional_e3() -> CatalogEntry {
    let [r, x, y] = e3_fields();
    let omega = DiffForm::volume(4)
        .interior_product(&y)
        .and_then(|w| w.interior_product(&x))
        .and_then(|w| w.interior_product(&r))
        .expect("same dimension");
    let form = FoliationForm::new(omega).expect("nonzero");
    for v in [&r, &x, &y] {
        debug_assert!(form.omega().interior_product(v).unwrap().is_zero());
    }
    assert!(form.is_integrable(), "the exceptional form is integrable");
    CatalogEntry::new("e3".into(), form, true, "exceptional component, projective degree 2 on P^3")
}

/// Solutions of the linear conditions for one weight triple.
#[derive(Clone, Debug)]
pub struct TmFamily {
    pub weights: [u32; 3],
    pub n: u32,
    pub degree: u32,
    /// Basis of the space of forms satisfying the linear conditions.
    pub space: Vec<DiffForm>,
    /// Integrable members found among the basis and a deterministic sample.
    pub entries: Vec<CatalogEntry>,
}

fn gcd3(a: u32, b: u32, c: u32) -> u32 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}

/// `v = a x₀∂₀ + b x₁∂₁ + c x₂∂₂` on `ℂ⁴`.
pub fn tm_field(a: u32, b: u32, c: u32) -> VectorField {
    VectorField::diagonal(&[qi(a as i64), qi(b as i64), qi(c as i64), qi(0)])
}

/// Forms of projective degree `d` on `P³` with `i_R ω = i_v ω = 0` and
/// `L_v ω = n ω`, filtered by integrability.
pub fn tm_family(a: u32, b: u32, c: u32, n: u32, d: u32) -> Result<TmFamily> {
    if !(a < b && b < c) || gcd3(a, b, c) != 1 {
        return Err(AlgebraError::Precondition(format!(
            "weights ({a},{b},{c}) must satisfy 0 ≤ a < b < c without a common divisor"
        )));
    }
    if d == 0 {
        return Err(AlgebraError::Precondition("degree d must be at least 1".into()));
    }
    let nv = 4;
    let w = [a, b, c, 0];
    // L_v(x^α dx_i) = (⟨w,α⟩ + w_i) x^α dx_i, so the eigenvalue condition
    // selects monomial forms of weight n
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for i in 0..nv {
        for m in monomial_basis(nv, d + 1) {
            let weight: u32 = m.exponents().iter().zip(w).map(|(e, wi)| e * wi).sum::<u32>() + w[i];
            if weight == n {
                unknowns.push((i, m));
            }
        }
    }
    let v = tm_field(a, b, c);
    let r = VectorField::euler(nv);
    let basis_form = |(i, m): &(usize, Monomial)| {
        DiffForm::dx(nv, *i).mul_poly(&Poly::monomial(nv, m.clone(), qi(1)))
    };
    let mut rows = Indexer::new();
    let columns = unknowns
        .iter()
        .map(|u| {
            let f = basis_form(u);
            let hr = f.interior_product(&r).expect("dims").as_function().expect("0-form");
            let hv = f.interior_product(&v).expect("dims").as_function().expect("0-form");
            let tagged = hr
                .terms()
                .map(|(m, c)| ((0u8, m.clone()), c.clone()))
                .chain(hv.terms().map(|(m, c)| ((1u8, m.clone()), c.clone())))
                .collect::<Vec<_>>();
            sparse_from(tagged.into_iter().map(|(key, c)| (rows.index(key), c)))
        })
        .collect();
    let map = ExactLinearMap::new(rows.len(), columns);
    let space: Vec<DiffForm> = map
        .kernel()
        .into_iter()
        .map(|ker| {
            ker.iter().fold(DiffForm::zero(nv, 1), |acc, (j, c)| {
                acc.checked_add(&basis_form(&unknowns[*j]).scale(c)).expect("1-forms")
            })
        })
        .collect();
    let mut candidates = space.clone();
    if space.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(((a as u64) << 24) ^ ((b as u64) << 16) ^ ((c as u64) << 8) ^ n as u64);
        let sample = space.iter().fold(DiffForm::zero(nv, 1), |acc, f| {
            acc.checked_add(&f.scale(&qi(rng.gen_range(1..=7)))).expect("1-forms")
        });
        candidates.push(sample);
    }
    let mut entries = Vec::new();
    for (idx, omega) in candidates.into_iter().enumerate() {
        let form = FoliationForm::new(omega)?;
        if !form.is_integrable() {
            continue;
        }
        let lv = form.omega().lie_derivative(&v)?;
        if lv != form.omega().scale(&qi(n as i64)) {
            return Err(AlgebraError::Precondition("weighted Euler identity failed on a solution".into()));
        }
        let name = format!("tm:{a},{b},{c},{n},{d}#{idx}");
        entries.push(CatalogEntry::new(name, form, true, "tangent to a multiplicative action"));
    }
    Ok(TmFamily { weights: [a, b, c], n, degree: d, space, entries })
}

/// `𝔰𝔩₂` coefficient fields `E`, `F`, `H` acting on binary quartics
/// `Σ a_i x^{4−i} y^i` through the coefficients `a₀,…,a₄`.
pub fn sl2_fields() -> [VectorField; 3] {
    let n = 5;
    let a = |i: usize| Poly::var(n, i);
    let mut e = vec![Poly::zero(n); n];
    let mut f = vec![Poly::zero(n); n];
    let mut h = vec![Poly::zero(n); n];
    for j in 0..5 {
        if j < 4 {
            e[j] = a(j + 1).scale(&qi(j as i64 + 1));
        }
        if j > 0 {
            f[j] = a(j - 1).scale(&qi(5 - j as i64));
        }
        h[j] = a(j).scale(&qi(4 - 2 * j as i64));
    }
    [e, f, h].map(|c| VectorField::new(c).expect("5 components"))
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `r`-th transvectant of two binary forms in the variables `x`, `y`.
fn transvectant(f: &Poly, g: &Poly, r: u32, x: usize, y: usize) -> Poly {
    let diff = |p: &Poly, nx: u32, ny: u32| {
        let mut out = p.clone();
        for _ in 0..nx {
            out = out.partial_derivative(x).expect("in range");
        }
        for _ in 0..ny {
            out = out.partial_derivative(y).expect("in range");
        }
        out
    };
    let mut acc = Poly::zero(f.nvars());
    for i in 0..=r {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = &diff(f, r - i, i) * &diff(g, i, r - i);
        acc = &acc + &term.scale(&qi(sign * binom(r, i)));
    }
    acc
}

/// The degree-2 and degree-3 invariants of binary quartics, primitive over `ℤ`.
pub fn quartic_invariants() -> (Poly, Poly) {
    let n = 7;
    let (x, y) = (5, 6);
    let quartic = (0..5).fold(Poly::zero(n), |acc, i| {
        let m = Monomial::from_exponents(&{
            let mut e = [0u32; 7];
            e[i] = 1;
            e[x] = 4 - i as u32;
            e[y] = i as u32;
            e
        });
        &acc + &Poly::monomial(n, m, qi(1))
    });
    let f0 = transvectant(&quartic, &quartic, 4, x, y);
    let hessian = transvectant(&quartic, &quartic, 2, x, y);
    let g0 = transvectant(&quartic, &hessian, 4, x, y);
    let drop = |p: Poly| p.project_out(&[x, y]).expect("invariants are free of x, y").primitive_integer();
    (drop(f0), drop(g0))
}

/// `ω₀ = 3g₀df₀ − 2f₀dg₀` on the space of binary quartics.
pub fn sl2_quartics() -> CatalogEntry {
    let (f0, g0) = quartic_invariants();
    let mut entry = rational_foliation(&f0, &g0).expect("homogeneous invariants");
    for v in sl2_fields() {
        assert!(entry.form.omega().interior_product(&v).expect("dims").is_zero());
    }
    entry.name = "sl2q".into();
    entry.note = "binary quartics, first integral j = f0^3/g0^2".into();
    entry
}

fn parse_list(text: &str, name: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<u32>().map_err(|_| {
                AlgebraError::Precondition(format!("catalog entry `{name}`: `{s}` is not a non-negative integer"))
            })
        })
        .collect()
}

/// Looks up entries by name: `morse:N`, `rational:P,Q[,N]`, `e3`,
/// `tm:A,B,C,N,D` and `sl2q`.
pub fn lookup(name: &str) -> Result<Vec<CatalogEntry>> {
    let (head, args) = name.split_once(':').unwrap_or((name, ""));
    let bad_arity = |expected: &str| {
        AlgebraError::Precondition(format!("catalog entry `{name}` expects {expected}"))
    };
    match head {
        "e3" if args.is_empty() => Ok(vec![exceptional_e3()]),
        "sl2q" if args.is_empty() => Ok(vec![sl2_quartics()]),
        "morse" => match parse_list(args, name)?.as_slice() {
            [n] => Ok(vec![morse_model(*n as usize)?]),
            _ => Err(bad_arity("one dimension")),
        },
        "rational" => match parse_list(args, name)?.as_slice() {
            [p, q] => Ok(vec![seeded_rational(*p, *q, 4, RATIONAL_SEED)?]),
            [p, q, n] => Ok(vec![seeded_rational(*p, *q, *n as usize, RATIONAL_SEED)?]),
            _ => Err(bad_arity("p,q or p,q,n")),
        },
        "tm" => match parse_list(args, name)?.as_slice() {
            [a, b, c, n, d] => Ok(tm_family(*a, *b, *c, *n, *d)?.entries),
            _ => Err(bad_arity("a,b,c,n,d")),
        },
        _ => Err(AlgebraError::Precondition(format!("unknown catalog entry `{name}`"))),
    }
}

/// Names accepted by [`lookup`] for the fixed entries.
pub const FIXED_NAMES: [&str; 4] = ["morse:3", "rational:2,3", "e3", "sl2q"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e3_properties() {
        let e = exceptional_e3();
        assert_eq!(e.total_degree, 4);
        assert_eq!(e.form.projective_degree(), Some(2));
        assert!(e.form.is_integrable());
        assert!(e.form.is_saturated());
        for v in e3_fields() {
            assert!(e.form.omega().interior_product(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn quartic_invariants_are_invariant() {
        let (f0, g0) = quartic_invariants();
        assert_eq!(f0.homogeneous_degree(), Some(2));
        assert_eq!(g0.homogeneous_degree(), Some(3));
        for v in sl2_fields() {
            assert!(v.apply(&f0).unwrap().is_zero());
            assert!(v.apply(&g0).unwrap().is_zero());
        }
        let e = sl2_quartics();
        assert!(e.form.first_integral_check(&f0.pow(3), &g0.pow(2)).unwrap());
        assert!(e.form.is_saturated());
    }

    #[test]
    fn rational_entries() {
        let n = 2;
        let f = Poly::var(n, 0).pow(2);
        let g = Poly::var(n, 1).pow(3);
        let e = rational_foliation(&f, &g).unwrap();
        assert!(e.form.descends_to_projective());
        assert!(e.form.first_integral_check(&f.pow(3), &g.pow(2)).unwrap());
        let e = lookup("rational:2,3").unwrap().remove(0);
        assert_eq!(e.nvars, 4);
        assert_eq!(e.total_degree, 5);
        assert!(e.form.is_saturated());
        assert!(rational_foliation(&(&f + &Poly::var(n, 1)), &g).is_err());
    }

    #[test]
    fn tm_solutions_satisfy_conditions() {
        let v = tm_field(1, 2, 3);
        for n in 0..12 {
            let fam = tm_family(1, 2, 3, n, 2).unwrap();
            for w in &fam.space {
                assert!(w.interior_product(&v).unwrap().is_zero());
                assert!(w.interior_product(&VectorField::euler(4)).unwrap().is_zero());
                assert_eq!(w.lie_derivative(&v).unwrap(), w.scale(&qi(n as i64)));
            }
            for e in &fam.entries {
                assert!(e.form.is_integrable() && e.form.descends_to_projective());
            }
        }
        assert!(tm_family(2, 4, 6, 1, 2).is_err());
        assert!(tm_family(3, 2, 5, 1, 2).is_err());
    }

    #[test]
    fn lookup_names() {
        for name in FIXED_NAMES {
            assert_eq!(lookup(name).unwrap().len(), 1, "{name}");
        }
        assert!(lookup("morse:x").is_err());
        assert!(lookup("nope").is_err());
        assert!(lookup("e3:1").is_err());
    }
}
