#![allow(dead_code)]

pub mod corpus;

use folcalc::dsl::{parse_session, Value};
use folcalc::{qi, DiffForm, Monomial, Poly, VectorField};
use rand::Rng;

fn eval(vars: &str, expr: &str) -> Value {
    let s = parse_session(&format!("vars {vars}; let it = {expr};")).unwrap_or_else(|e| panic!("{expr}: {e}"));
    s.get("it").unwrap().clone()
}

/// Polynomial from source text, e.g. `poly("x y", "x^2 - y")`.
pub fn poly(vars: &str, expr: &str) -> Poly {
    match eval(vars, expr) {
        Value::Poly(p) => p,
        v => panic!("{expr} is a {}", v.kind()),
    }
}

pub fn form(vars: &str, expr: &str) -> DiffForm {
    match eval(vars, expr) {
        Value::Form(w) => w,
        Value::Poly(p) => DiffForm::function(p),
        v => panic!("{expr} is a {}", v.kind()),
    }
}

pub fn field(vars: &str, expr: &str) -> VectorField {
    match eval(vars, expr) {
        Value::Tuple(c) => VectorField::new(c).unwrap(),
        v => panic!("{expr} is a {}", v.kind()),
    }
}

/// A few random terms of degree at most `max_degree`, small integer coefficients.
pub fn sparse_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let d = rng.gen_range(0..=max_degree);
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-5i64..=5);
        p = &p + &Poly::monomial(n, Monomial::from_exponents(&exps), qi(c));
    }
    p
}

pub fn sparse_form<R: Rng>(rng: &mut R, n: usize, degree: usize, max_degree: u32) -> DiffForm {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..degree {
                let j = rng.gen_range(i..n);
                idx.swap(i, j);
            }
            idx.truncate(degree);
            (idx, sparse_poly(rng, n, max_degree, 2))
        })
        .collect::<Vec<_>>();
    DiffForm::from_terms(n, degree, terms).unwrap()
}

pub fn sparse_field<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> VectorField {
    VectorField::new((0..n).map(|_| sparse_poly(rng, n, max_degree, 2)).collect()).unwrap()
}

/// Random homogeneous 1-form of total degree `k` (coefficients of degree `k - 1`).
pub fn homogeneous_one_form<R: Rng>(rng: &mut R, n: usize, k: u32) -> DiffForm {
    let coeffs: Vec<Poly> = (0..n)
        .map(|_| {
            let mut p = Poly::zero(n);
            for _ in 0..3 {
                let mut exps = vec![0u32; n];
                for _ in 0..k - 1 {
                    exps[rng.gen_range(0..n)] += 1;
                }
                p = &p + &Poly::monomial(n, Monomial::from_exponents(&exps), qi(rng.gen_range(-5i64..=5)));
            }
            p
        })
        .collect();
    DiffForm::one_form(&coeffs).unwrap()
}
