//! Exact computations with polynomial codimension-one foliations.
//!
//! A foliation is presented by a polynomial 1-form `ω` with `ω ∧ dω = 0`.
//! The crate provides the algebraic kernel (sparse rational polynomials,
//! differential forms, Gröbner bases, exact linear algebra) and on top of it
//! the foliation invariants: singular ideals, Morse/Kupka classification,
//! graded unfolding spaces, the Camacho–Lins Neto complex, critical sets of
//! rational maps and tangency schemes. The [`dsl`] and [`commands`] modules
//! back the `folcalc` command line tool.

pub mod catalog;
pub mod commands;
pub mod dsl;
pub mod error;
pub mod exterior;
pub mod foliation;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod report;
pub mod singmaps;
pub mod unfolding;

/// Exact rational scalars.
pub type Q = num_rational::BigRational;

pub use error::AlgebraError;
pub use exterior::{DiffForm, VectorField};
pub use foliation::FoliationForm;
pub use ideal::Ideal;
pub use poly::{Monomial, Poly};

/// Rational from a pair of machine integers.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Integer as a rational.
pub fn qi(v: i64) -> Q {
    Q::from_integer(v.into())
}
