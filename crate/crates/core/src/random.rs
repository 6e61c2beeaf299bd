//! Seeded random inputs for randomized identity checks.
//!
//! All generators draw from a caller-provided RNG; [`rng`] gives the
//! reproducible ChaCha stream used by the suite.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{OddMonomial, Polynomial, Superfunction};
use crate::fields::{frame_is_odd, Automorphism, SuperVectorField};
use crate::scalar::Scalar;
use crate::splitting::exponents_up_to;
use crate::tensor::EndoTensor;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational `a/b` with `|a| <= 3`, `1 <= b <= 3`.
pub fn rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let mut a = rng.gen_range(-3i64..=3);
    if a == 0 {
        a = 1;
    }
    S::from_ratio(a, rng.gen_range(1i64..=3))
}

/// Sparse polynomial of degree `<= max_degree` with at most `terms` terms.
pub fn polynomial<S: Scalar, R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Polynomial<S> {
    let exps = exponents_up_to(nvars, max_degree);
    let mut out = Polynomial::zero(nvars);
    for _ in 0..terms {
        let e = exps[rng.gen_range(0..exps.len())].clone();
        out.add_term(e, rational(rng));
    }
    out
}

/// Superfunction homogeneous of odd degree `k`; at most `terms` odd monomials.
pub fn homogeneous_superfunction<S: Scalar, R: Rng>(
    rng: &mut R,
    p: usize,
    q: usize,
    k: usize,
    max_poly_degree: u32,
    terms: usize,
) -> Superfunction<S> {
    let monos = OddMonomial::all_of_degree(q, k);
    let mut out = Superfunction::zero(p, q);
    if monos.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())];
        out.add_term(m, polynomial(rng, p, max_poly_degree, 2));
    }
    out
}

/// Field of `Z`-degree `degree` (`∂x` coefficients of odd degree `degree`,
/// `∂ξ` coefficients of odd degree `degree + 1`). With `xi_only` the `∂x`
/// components are left zero.
pub fn homogeneous_field<S: Scalar, R: Rng>(
    rng: &mut R,
    p: usize,
    q: usize,
    degree: isize,
    max_poly_degree: u32,
    xi_only: bool,
) -> SuperVectorField<S> {
    let comps = (0..p + q)
        .map(|a| {
            let odd = frame_is_odd(p, a);
            let k = degree + odd as isize;
            if k < 0 || (xi_only && !odd) || rng.gen_bool(0.5) {
                Superfunction::zero(p, q)
            } else {
                homogeneous_superfunction(rng, p, q, k as usize, max_poly_degree, 2)
            }
        })
        .collect();
    SuperVectorField::from_components(p, q, comps).expect("signature")
}

/// Even field with floor 2: a sum of homogeneous parts of degrees
/// `2, 4, …, <= q`.
pub fn filtered_even_field<S: Scalar, R: Rng>(
    rng: &mut R,
    p: usize,
    q: usize,
    max_poly_degree: u32,
    xi_only: bool,
) -> SuperVectorField<S> {
    let mut out = SuperVectorField::zero(p, q);
    for d in (2..=q as isize).step_by(2) {
        out = &out + &homogeneous_field(rng, p, q, d, max_poly_degree, xi_only);
    }
    out
}

/// Endomorphism whose entries are homogeneous superfunctions making every
/// contribution of degree `degree`, parity even.
pub fn homogeneous_endo<S: Scalar, R: Rng>(
    rng: &mut R,
    p: usize,
    q: usize,
    degree: isize,
    max_poly_degree: u32,
) -> EndoTensor<S> {
    let d = |a: usize| -(frame_is_odd(p, a) as isize);
    let mut t = EndoTensor::zero(p, q);
    for a in 0..p + q {
        for b in 0..p + q {
            let k = degree - d(a) + d(b);
            if k >= 0 && k as usize <= q && rng.gen_bool(0.4) {
                t.set_entry(a, b, homogeneous_superfunction(rng, p, q, k as usize, max_poly_degree, 2));
            }
        }
    }
    t
}

/// Even endomorphism with floor `floor`, summing homogeneous parts up to `q`.
pub fn filtered_endo<S: Scalar, R: Rng>(
    rng: &mut R,
    p: usize,
    q: usize,
    floor: isize,
    max_poly_degree: u32,
) -> EndoTensor<S> {
    let mut out = EndoTensor::zero(p, q);
    for d in (floor..=q as isize).step_by(2) {
        out = &out + &homogeneous_endo(rng, p, q, d, max_poly_degree);
    }
    out
}

/// Even-frame endomorphism with polynomial entries, as used by `xi_embed`.
pub fn poly_matrix<S: Scalar, R: Rng>(rng: &mut R, m: usize, max_degree: u32) -> Vec<Vec<Polynomial<S>>> {
    (0..m)
        .map(|_| {
            (0..m)
                .map(|_| if rng.gen_bool(0.5) { polynomial(rng, m, max_degree, 2) } else { Polynomial::zero(m) })
                .collect()
        })
        .collect()
}

/// Degree-preserving automorphism: triangular linear part and triangular odd
/// frame change with constant nonzero diagonals, polynomial above it.
pub fn degree_preserving<S: Scalar, R: Rng>(rng: &mut R, p: usize, q: usize, max_poly_degree: u32) -> Automorphism<S> {
    let linear = (0..p)
        .map(|i| {
            (0..p)
                .map(|k| match k.cmp(&i) {
                    Ordering::Equal => rational(rng),
                    Ordering::Greater if rng.gen_bool(0.3) => rational(rng),
                    _ => S::zero(),
                })
                .collect()
        })
        .collect();
    let odd_frame = (0..q)
        .map(|j| {
            (0..q)
                .map(|k| match k.cmp(&j) {
                    Ordering::Equal => Polynomial::constant(p, rational(rng)),
                    Ordering::Greater if rng.gen_bool(0.3) => polynomial(rng, p, max_poly_degree, 2),
                    _ => Polynomial::zero(p),
                })
                .collect()
        })
        .collect();
    Automorphism::degree_preserving(linear, odd_frame).expect("triangular with nonzero diagonal")
}

/// `exp(ζ) φ₀*` with random `φ₀*` and a random filtered even `ζ`.
pub fn automorphism<S: Scalar, R: Rng>(rng: &mut R, p: usize, q: usize, max_poly_degree: u32) -> Automorphism<S> {
    let phi0 = degree_preserving(rng, p, q, max_poly_degree);
    let zeta = filtered_even_field(rng, p, q, max_poly_degree, false);
    Automorphism::new(phi0.linear().to_vec(), phi0.odd_frame().to_vec(), zeta).expect("valid parts")
}

/// Sample point with small rational coordinates.
pub fn point<S: Scalar, R: Rng>(rng: &mut R, dim: usize) -> Vec<S> {
    (0..dim).map(|_| rational(rng)).collect()
}
