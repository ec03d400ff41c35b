mod common;

use common::{form, poly};
use folcalc::catalog::{random_homogeneous, random_poly, rational_foliation};
use folcalc::ideal::DEFAULT_LOCAL_BOUND;
use folcalc::singmaps::{
    check_expected_dimension, check_generic_map, classify_point, critical_ideal, milnor_number, morse_fibration_model,
    tangency_analysis, tangency_ideal, PolyMap, SingularityClass,
};
use folcalc::{qi, DiffForm, FoliationForm, Ideal, Poly};
use folcalc::ideal::VsDim;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fol(vars: &str, expr: &str) -> FoliationForm {
    FoliationForm::new(form(vars, expr)).unwrap()
}

#[test]
fn classification() {
    let o3 = vec![qi(0); 3];
    assert_eq!(classify_point(&fol("x y z", "d(x^2+y^2+z^2)"), &o3).unwrap().class, SingularityClass::Morse);
    assert_eq!(classify_point(&fol("x y z", "y*d(x) - x*d(y)"), &o3).unwrap().class, SingularityClass::Kupka);
    let cusp = classify_point(&fol("x y", "d(x^3+y^3)"), &[qi(0), qi(0)]).unwrap();
    assert_eq!(cusp.class, SingularityClass::OtherSingular);
    assert_eq!(classify_point(&fol("x y", "d(x^3+y^3)"), &[qi(1), qi(0)]).unwrap().class, SingularityClass::NonSingular);
}

#[test]
fn milnor_numbers() {
    let o = [qi(0), qi(0)];
    let mu = |e: &str| milnor_number(&poly("x y", e), &o, DEFAULT_LOCAL_BOUND).unwrap();
    assert_eq!(mu("x^2+y^2"), VsDim::Finite(1));
    assert_eq!(mu("x^3+y^3"), VsDim::Finite(4));
    assert_eq!(mu("x^3+y^4"), VsDim::Finite(6));
    assert_eq!(mu("x^2"), VsDim::Infinite);
    assert_eq!(milnor_number(&poly("x y", "(x-1)^2 + y^3"), &[qi(1), qi(0)], 30).unwrap(), VsDim::Finite(2));
}

#[test]
fn critical_sets() {
    let v = "x y z";
    let map = PolyMap::affine(3, vec![poly(v, "x"), poly(v, "y^2 + x*z")]).unwrap();
    assert_eq!(critical_ideal(&map, 1).unwrap(), Ideal::new(3, vec![poly(v, "y"), poly(v, "x")]).unwrap());
    let rep = check_expected_dimension(&map, 1).unwrap();
    assert_eq!((rep.dim, rep.bounds, rep.holds), (1, (1, 1), true));
    assert!(critical_ideal(&map, 2).unwrap().is_zero());
    let linear = PolyMap::affine(2, vec![poly("x y", "x + y"), poly("x y", "x - 2*y")]).unwrap();
    assert!(critical_ideal(&linear, 1).unwrap().is_unit());
    assert!(check_expected_dimension(&linear, 1).unwrap().empty);
}

#[test]
fn genericity() {
    let v = "x y z";
    assert!(check_generic_map(&PolyMap::projective(3, vec![poly(v, "x"), poly(v, "y")]).unwrap()).unwrap().generic);
    let shared = PolyMap::projective(3, vec![poly(v, "x^2"), poly(v, "x*y")]).unwrap();
    assert!(!check_generic_map(&shared).unwrap().generic);
    let empty_base = PolyMap::projective(3, vec![Poly::one(3), poly(v, "x*y - z")]).unwrap();
    let rep = check_generic_map(&empty_base).unwrap();
    assert!(rep.generic && rep.base_dim < 0);
    assert!(check_generic_map(&PolyMap::affine(3, vec![poly(v, "x")]).unwrap()).is_err());
}

#[test]
fn morse_fibration_tangency() {
    let (map, g) = morse_fibration_model();
    let (pulled, tang) = tangency_ideal(&map, &g).unwrap();
    assert_eq!(tang, Ideal::new(2, vec![Poly::var(2, 0), Poly::var(2, 1)]).unwrap());
    assert!(tang.contains_ideal(&pulled.singular_ideal()));
    let rep = tangency_analysis(&map, &g).unwrap();
    assert_eq!((rep.dim_tang, rep.count_with_multiplicity), (0, VsDim::Finite(1)));
    assert_eq!(rep.rational_points.len(), 1);
    assert_eq!(rep.rational_points[0].class, SingularityClass::Morse);
    assert!(rep.finite_morse);
}

#[test]
fn submersions_have_no_tangencies() {
    let map = PolyMap::projective(2, vec![Poly::one(2), Poly::var(2, 0), Poly::var(2, 1)]).unwrap();
    let g = fol("a b c", "b*d(a) - a*d(b)");
    let rep = tangency_analysis(&map, &g).unwrap();
    assert_eq!(rep.dim_tang, -1);
}

fn random_quadric(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    loop {
        let q = random_homogeneous(rng, n, 2, 4);
        let w = FoliationForm::new(DiffForm::function(q.clone()).exterior_derivative()).unwrap();
        let v = classify_point(&w, &vec![qi(0); n]).unwrap();
        if !v.jet_determinant.eq(&qi(0)) || rng.gen_bool(0.2) {
            return q;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn milnor_one_iff_morse(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = random_quadric(&mut rng, n);
        if rng.gen_bool(0.3) {
            f = &f + &random_homogeneous(&mut rng, n, 3, 2);
        }
        let o = vec![qi(0); n];
        let w = FoliationForm::new(DiffForm::function(f.clone()).exterior_derivative()).unwrap();
        let verdict = classify_point(&w, &o).unwrap();
        let mu = milnor_number(&f, &o, DEFAULT_LOCAL_BOUND).unwrap();
        prop_assert_eq!(mu == VsDim::Finite(1), verdict.class == SingularityClass::Morse);
        prop_assert!(verdict.class != SingularityClass::Kupka);
    }

    #[test]
    fn critical_ideals_decrease_in_k(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = PolyMap::affine(3, (0..2).map(|_| random_poly(&mut rng, 3, 2, 3)).collect()).unwrap();
        let c0 = critical_ideal(&map, 0).unwrap();
        let c1 = critical_ideal(&map, 1).unwrap();
        prop_assert!(c0.contains_ideal(&c1));
        for k in 0..2 {
            prop_assert!(check_expected_dimension(&map, k).unwrap().holds);
        }
    }

    #[test]
    fn tangency_contains_the_singular_ideal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // proportional linear forms give the zero form
        let g = rational_foliation(&random_homogeneous(&mut rng, 3, 1, 3), &random_homogeneous(&mut rng, 3, 1, 3));
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let map = PolyMap::projective(2, (0..3).map(|_| random_poly(&mut rng, 2, 2, 3)).collect()).unwrap();
        if let Ok((pulled, tang)) = tangency_ideal(&map, &g.form) {
            prop_assert!(tang.contains_ideal(&pulled.singular_ideal()));
        }
    }
}
