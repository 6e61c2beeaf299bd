use proptest::prelude::*;
use rand::Rng;

use supersplit::random::{self, homogeneous_superfunction, rng};
use supersplit::{Rational, Superfunction};

const P: usize = 3;
const Q: usize = 4;

fn homogeneous(seed: u64) -> (Superfunction, usize) {
    let mut r = rng(seed);
    let k = r.gen_range(0..=Q);
    (homogeneous_superfunction(&mut r, P, Q, k, 2, 3), k)
}

fn mixed(seed: u64) -> Superfunction {
    let mut r = rng(seed);
    (0..=Q).fold(Superfunction::zero(P, Q), |acc, k| &acc + &homogeneous_superfunction(&mut r, P, Q, k, 2, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity(s1: u64, s2: u64) {
        let (a, ka) = homogeneous(s1);
        let (b, kb) = homogeneous(s2);
        let ab = &a * &b;
        let ba = &b * &a;
        if ka * kb % 2 == 1 {
            prop_assert_eq!(ab, -&ba);
        } else {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn degree_is_additive(s1: u64, s2: u64) {
        let (a, b) = (mixed(s1), mixed(s2));
        let ab = &a * &b;
        if let (Some(fa), Some(fb), Some(fab)) = (a.floor(), b.floor(), ab.floor()) {
            prop_assert!(fab >= fa + fb);
        }
    }

    #[test]
    fn nilpotent_part_dies_at_power_q_plus_one(s: u64) {
        let a = mixed(s).truncate_below(1);
        prop_assert!(a.pow(Q as u32 + 1).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(s1: u64, s2: u64, s3: u64) {
        let (a, b) = (mixed(s1), mixed(s2));
        let pt: Vec<Rational> = random::point(&mut rng(s3), P);
        let ev = |f: &Superfunction| f.evaluate_at_point(&pt).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
    }

    #[test]
    fn product_is_associative(s1: u64, s2: u64, s3: u64) {
        let (a, b, c) = (mixed(s1), mixed(s2), mixed(s3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn json_round_trip(s: u64) {
        let a = mixed(s);
        let v = supersplit::algebra::superfunction_to_json(&a);
        let back: Superfunction = supersplit::algebra::superfunction_from_json(&v, P, Q).unwrap();
        prop_assert_eq!(back, a);
    }
}
