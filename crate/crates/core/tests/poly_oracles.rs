mod common;

use common::poly;
use folcalc::poly::{gcd, gcd_all, monomial_basis};
use folcalc::{q, Monomial, Poly};

#[test]
fn ring_arithmetic() {
    let v = "x y";
    assert_eq!(&poly(v, "x+y") * &poly(v, "x-y"), poly(v, "x^2-y^2"));
    let p = poly(v, "3*x*y - 7/2");
    assert_eq!(&p + &Poly::zero(2), p);
    assert_eq!(&poly(v, "1/2*x") * &poly(v, "2/3*x"), poly(v, "1/3*x^2"));
    assert_eq!(poly(v, "1/2*x").scale(&q(2, 3)), poly(v, "1/3*x"));
}

#[test]
fn derivatives() {
    let v = "x y";
    assert_eq!(poly(v, "x^2*y").partial_derivative(0).unwrap(), poly(v, "2*x*y"));
    assert!(poly(v, "5").partial_derivative(0).unwrap().is_zero());
    assert_eq!(poly(v, "x^3+y^3").partial_derivative(1).unwrap(), poly(v, "3*y^2"));
    assert!(poly(v, "x").partial_derivative(2).is_err());
}

#[test]
fn substitution() {
    let v = "x y";
    let (u, w) = (poly(v, "x"), poly(v, "y"));
    assert_eq!(poly(v, "x^2+y^2").substitute(&[u.clone(), w.clone()]).unwrap(), poly(v, "x^2+y^2"));
    assert_eq!(poly(v, "x*y").substitute(&[&u + &w, &u - &w]).unwrap(), poly(v, "x^2-y^2"));
    assert!(poly(v, "x").substitute(&[Poly::zero(2), w.clone()]).unwrap().is_zero());
    assert!(poly(v, "x").substitute(&[u]).is_err());
}

#[test]
fn gcds() {
    let v = "x y";
    assert_eq!(gcd(&poly(v, "x^2*y"), &poly(v, "x*y^2")).monic(), poly(v, "x*y"));
    assert_eq!(gcd(&poly(v, "x^2-y^2"), &poly(v, "x-y")).monic(), poly(v, "x-y"));
    assert!(gcd(&poly(v, "x+1"), &poly(v, "y+1")).is_constant());
    let all = [poly(v, "x^2*y+x*y"), poly(v, "x*y^2+x*y"), poly(v, "x^3*y + x^2*y")];
    assert_eq!(gcd_all(2, all.iter()).monic(), poly(v, "x*y"));
}

#[test]
fn graded_components_and_bases() {
    let v = "x y";
    assert_eq!(poly(v, "1+x+x^2").graded_component(1), poly(v, "x"));
    assert_eq!(poly(v, "x^2+x*y").graded_component(2), poly(v, "x^2+x*y"));
    assert!(poly(v, "x").graded_component(5).is_zero());
    let b = monomial_basis(2, 2);
    assert_eq!(b.len(), 3);
    assert!(b.contains(&Monomial::from_exponents(&[1, 1])));
    assert_eq!(monomial_basis(3, 0), vec![Monomial::one(3)]);
    assert_eq!(monomial_basis(4, 3).len(), 20);
}

#[test]
fn mismatched_rings_are_errors() {
    assert!(Poly::var(2, 0).checked_add(&Poly::var(3, 0)).is_err());
    assert!(Poly::var(2, 0).checked_mul(&Poly::var(3, 0)).is_err());
}
