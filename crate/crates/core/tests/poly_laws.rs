mod common;

use common::sparse_poly;
use folcalc::poly::{gcd, monomial_basis};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = std::array::from_fn(|_| sparse_poly(&mut rng, n, 4, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&a), Some(b.clone()));
        }
    }

    #[test]
    fn partial_derivatives_commute(seed in any::<u64>(), n in 1usize..=4, i in 0usize..4, j in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sparse_poly(&mut rng, n, 6, 4);
        let (i, j) = (i % n, j % n);
        let ij = p.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
        let ji = p.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn gcd_divides_and_scales(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [p, q, r] = std::array::from_fn(|_| sparse_poly(&mut rng, n, 3, 2));
        prop_assume!(!p.is_zero() && !q.is_zero() && !r.is_zero());
        let g = gcd(&p, &q);
        prop_assert!(g.divides(&p) && g.divides(&q));
        let scaled = gcd(&(&p * &r), &(&q * &r));
        prop_assert_eq!(scaled.monic(), (&g * &r).monic());
    }

    #[test]
    fn monomial_basis_size(n in 1usize..=5, l in 0u32..=6) {
        prop_assert_eq!(monomial_basis(n, l).len() as u64, binomial(n as u64 + l as u64 - 1, l as u64));
    }

    #[test]
    fn substitution_is_multiplicative(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [p, q] = std::array::from_fn(|_| sparse_poly(&mut rng, n, 3, 3));
        let images: Vec<_> = (0..n).map(|_| sparse_poly(&mut rng, m, 2, 2)).collect();
        let lhs = (&p * &q).substitute(&images).unwrap();
        let rhs = &p.substitute(&images).unwrap() * &q.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
