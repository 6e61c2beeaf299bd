use proptest::prelude::*;
use rand::Rng;

use supersplit::fields::{automorphism_from_json, automorphism_to_json, field_from_json, field_to_json};
use supersplit::random::{self, homogeneous_field, homogeneous_superfunction, rng};
use supersplit::{Automorphism, Superfunction, SuperVectorField};

const P: usize = 3;
const Q: usize = 4;

/// Homogeneous field with its parity.
fn field(seed: u64) -> (SuperVectorField, bool) {
    let mut r = rng(seed);
    let d = r.gen_range(-1isize..=2);
    (homogeneous_field(&mut r, P, Q, d, 2, false), d.rem_euclid(2) == 1)
}

fn function(seed: u64) -> (Superfunction, bool) {
    let mut r = rng(seed);
    let k = r.gen_range(0..=Q);
    (homogeneous_superfunction(&mut r, P, Q, k, 2, 3), k % 2 == 1)
}

fn sign(odd: bool) -> Superfunction {
    Superfunction::from_i64(P, Q, if odd { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graded_leibniz(s1: u64, s2: u64, s3: u64) {
        let (x, px) = field(s1);
        let (f, pf) = function(s2);
        let (g, _) = function(s3);
        let lhs = x.apply(&(&f * &g));
        let rhs = &(&x.apply(&f) * &g) + &(&sign(px && pf) * &(&f * &x.apply(&g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_antisymmetry(s1: u64, s2: u64) {
        let (x, px) = field(s1);
        let (y, py) = field(s2);
        let yx = y.bracket(&x);
        let expected = if px && py { yx } else { -&yx };
        prop_assert_eq!(x.bracket(&y), expected);
    }

    #[test]
    fn graded_jacobi(s1: u64, s2: u64, s3: u64) {
        let (x, px) = field(s1);
        let (y, py) = field(s2);
        let (z, _) = field(s3);
        let lhs = x.bracket(&y.bracket(&z));
        let second = y.bracket(&x.bracket(&z));
        let second = if px && py { -&second } else { second };
        prop_assert_eq!(lhs, &x.bracket(&y).bracket(&z) + &second);
    }

    #[test]
    fn automorphisms_are_multiplicative_and_even(s1: u64, s2: u64, s3: u64) {
        let phi: Automorphism = random::automorphism(&mut rng(s1), P, Q, 1);
        let (f, pf) = function(s2);
        let (g, _) = function(s3);
        prop_assert_eq!(phi.apply(&(&f * &g)), &phi.apply(&f) * &phi.apply(&g));
        let image = phi.apply(&f);
        prop_assert!(image.is_zero() || image.parity() == Some(pf));
        prop_assert_eq!(phi.apply_inverse(&image), f);
    }

    #[test]
    fn filtered_part_raises_degree_by_two(s1: u64, s2: u64) {
        let phi: Automorphism = random::automorphism(&mut rng(s1), P, Q, 1);
        let (f, _) = function(s2);
        let dev = &phi.apply(&f) - &phi.degree_preserving_part().apply(&f);
        if let (Some(ff), Some(fd)) = (f.floor(), dev.floor()) {
            prop_assert!(fd >= ff + 2);
        }
    }

    #[test]
    fn conjugation_is_invertible(s1: u64, s2: u64) {
        let phi: Automorphism = random::automorphism(&mut rng(s1), P, Q, 1);
        let (x, _) = field(s2);
        let there = phi.conjugate_field(&x).unwrap();
        prop_assert_eq!(phi.inverse().conjugate_field(&there).unwrap(), x);
    }

    #[test]
    fn composition_matches_sequential_application(s1: u64, s2: u64, s3: u64) {
        let phi: Automorphism = random::automorphism(&mut rng(s1), P, Q, 1);
        let psi: Automorphism = random::automorphism(&mut rng(s2), P, Q, 1);
        let (f, _) = function(s3);
        prop_assert_eq!(phi.compose(&psi).unwrap().apply(&f), phi.apply(&psi.apply(&f)));
    }

    #[test]
    fn json_round_trips(s1: u64, s2: u64) {
        let (x, _) = field(s1);
        prop_assert_eq!(field_from_json(&field_to_json(&x)).unwrap(), x);
        let phi: Automorphism = random::automorphism(&mut rng(s2), P, Q, 1);
        prop_assert_eq!(automorphism_from_json(&automorphism_to_json(&phi)).unwrap(), phi);
    }
}
