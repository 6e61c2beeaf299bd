use crate::algebra::{OddMonomial, Polynomial, Substitution, Superfunction};
use crate::error::{Error, Result};
use crate::scalar::{inv_factorial, Scalar};

use super::field::SuperVectorField;

/// Supermanifold automorphism `φ* = exp(ζ) ∘ φ₀*`.
///
/// The degree-preserving part `φ₀*` sends `x_i ↦ Σ_k L_ik x_k` (constant
/// invertible `L`) and `ξ_j ↦ Σ_k A_jk(x) ξ_k` (polynomial `A` with constant
/// nonzero determinant). The filtered part `ζ` is an even field of degree
/// at least 2. Generator images of the map and of its inverse are cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism<S> {
    p: usize,
    q: usize,
    linear: Vec<Vec<S>>,
    odd_frame: Vec<Vec<Polynomial<S>>>,
    filtered: SuperVectorField<S>,
    images: Vec<Superfunction<S>>,
    inverse_images: Vec<Superfunction<S>>,
}

/// Images of all generators `x_1..x_p, ξ_1..ξ_q` under the identity.
fn generators<S: Scalar>(p: usize, q: usize) -> Vec<Superfunction<S>> {
    (0..p).map(|i| Superfunction::x(p, q, i)).chain((0..q).map(|j| Superfunction::xi(p, q, j))).collect()
}

fn substitute_all<S: Scalar>(fs: &[Superfunction<S>], images: &[Superfunction<S>], p: usize) -> Vec<Superfunction<S>> {
    fs.iter().map(|f| f.substitute(&images[..p], &images[p..])).collect()
}

/// `exp(ζ)(f) = Σ ζ^m(f) / m!`, terminating because `ζ` raises degree.
fn exp_derivation<S: Scalar>(zeta: &SuperVectorField<S>, f: &Superfunction<S>) -> Superfunction<S> {
    let bound = f.q() + f.max_poly_degree().unwrap_or(0) as usize + 1;
    let mut acc = f.clone();
    let mut term = f.clone();
    for m in 1.. {
        term = zeta.apply(&term);
        if term.is_zero() {
            break;
        }
        assert!(m <= bound, "exp series failed to terminate; field is not degree-raising");
        acc += &term.scale(&inv_factorial(m));
    }
    acc
}

/// Inverse of a square matrix over the even polynomials with constant
/// nonzero determinant (Faddeev-LeVerrier; divides only by integers).
pub(crate) fn polynomial_matrix_inverse<S: Scalar>(a: &[Vec<Polynomial<S>>], nvars: usize) -> Option<Vec<Vec<Polynomial<S>>>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mul = |x: &[Vec<Polynomial<S>>], y: &[Vec<Polynomial<S>>]| -> Vec<Vec<Polynomial<S>>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Polynomial::zero(nvars), |acc, k| &acc + &(&x[i][k] * &y[k][j])))
                    .collect()
            })
            .collect()
    };
    let ident = |c: &Polynomial<S>| -> Vec<Vec<Polynomial<S>>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { Polynomial::zero(nvars) }).collect())
            .collect()
    };
    // M_1 = I, c_{n-1} = -tr(A); M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    let mut m = ident(&Polynomial::one(nvars));
    let mut c = Polynomial::zero(nvars);
    let mut prev_m = m.clone();
    for k in 1..=n {
        let am = mul(a, &m);
        let tr = (0..n).fold(Polynomial::zero(nvars), |acc, i| &acc + &am[i][i]);
        c = (-&tr).scale(&(S::one() / S::from_i64(k as i64)));
        prev_m = m;
        let mut next = am;
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c;
        }
        m = next;
    }
    // after the loop: c = c_0 = (-1)^n det A and A^{-1} = -M_n / c_0 with M_n = prev_m
    let c0 = c.as_constant()?;
    if c0.is_zero() {
        return None;
    }
    let f = -S::one() / c0;
    Some(prev_m.iter().map(|row| row.iter().map(|x| x.scale(&f)).collect()).collect())
}

fn constant_matrix_inverse<S: Scalar>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let mut m: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = S::one() / m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..2 * n {
                    let t = m[col][k].clone() * f.clone();
                    m[r][k] = m[r][k].clone() - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl<S: Scalar> Automorphism<S> {
    pub fn identity(p: usize, q: usize) -> Self {
        let gens = generators(p, q);
        Automorphism {
            p,
            q,
            linear: (0..p).map(|i| (0..p).map(|k| if i == k { S::one() } else { S::zero() }).collect()).collect(),
            odd_frame: (0..q)
                .map(|j| (0..q).map(|k| if j == k { Polynomial::one(p) } else { Polynomial::zero(p) }).collect())
                .collect(),
            filtered: SuperVectorField::zero(p, q),
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    /// `exp(ζ)` for an even field of degree at least 2.
    pub fn exp_field(zeta: &SuperVectorField<S>) -> Result<Self> {
        let (p, q) = zeta.signature();
        Self::new(Self::identity(p, q).linear, Self::identity(p, q).odd_frame, zeta.clone())
    }

    /// Degree-preserving automorphism from its even and odd matrices.
    pub fn degree_preserving(linear: Vec<Vec<S>>, odd_frame: Vec<Vec<Polynomial<S>>>) -> Result<Self> {
        let p = linear.len();
        let q = odd_frame.len();
        Self::new(linear, odd_frame, SuperVectorField::zero(p, q))
    }

    pub fn new(linear: Vec<Vec<S>>, odd_frame: Vec<Vec<Polynomial<S>>>, zeta: SuperVectorField<S>) -> Result<Self> {
        let (p, q) = zeta.signature();
        if linear.len() != p || linear.iter().any(|r| r.len() != p) {
            return Err(Error::Dimension(format!("linear part must be {p}x{p}")));
        }
        if odd_frame.len() != q || odd_frame.iter().any(|r| r.len() != q || r.iter().any(|e| e.nvars() != p)) {
            return Err(Error::Dimension(format!("odd frame change must be {q}x{q} over {p} variables")));
        }
        if zeta.parity() != Some(false) {
            return Err(Error::InvalidInput("filtered part must be an even field".into()));
        }
        if zeta.floor().is_some_and(|f| f < 2) {
            return Err(Error::InvalidInput("filtered part must have degree at least 2".into()));
        }
        let linv = constant_matrix_inverse(&linear)
            .ok_or_else(|| Error::InvalidInput("linear part is not invertible".into()))?;
        let ainv = polynomial_matrix_inverse(&odd_frame, p)
            .ok_or_else(|| Error::InvalidInput("odd frame change needs constant nonzero determinant".into()))?;

        let gens = generators::<S>(p, q);
        let lin_images = |l: &[Vec<S>], a: &[Vec<Polynomial<S>>]| -> Vec<Superfunction<S>> {
            let xs = (0..p).map(|i| {
                let mut poly = Polynomial::zero(p);
                for k in 0..p {
                    poly.add_term(unit_exp(p, k), l[i][k].clone());
                }
                Superfunction::from_poly(q, poly)
            });
            let xis = (0..q).map(|j| {
                let mut f = Superfunction::zero(p, q);
                for k in 0..q {
                    f.add_term(OddMonomial::generator(k), a[j][k].clone());
                }
                f
            });
            xs.chain(xis).collect()
        };
        let phi0 = lin_images(&linear, &odd_frame);
        // φ₀^{-1}: x ↦ L^{-1} x, ξ ↦ A(L^{-1}x)^{-1} ξ
        let linv_x: Vec<Superfunction<S>> = lin_images(&linv, &vec![vec![Polynomial::zero(p); q]; q])[..p].to_vec();
        let ainv_shifted: Vec<Vec<Polynomial<S>>> = ainv
            .iter()
            .map(|row| row.iter().map(|e| Superfunction::from_poly(q, e.clone()).substitute(&linv_x, &gens[p..]).body()).collect())
            .collect();
        let phi0_inv = lin_images(&linv, &ainv_shifted);

        let exp_images: Vec<Superfunction<S>> = gens.iter().map(|g| exp_derivation(&zeta, g)).collect();
        let neg_zeta = -&zeta;
        let exp_inv_images: Vec<Superfunction<S>> = gens.iter().map(|g| exp_derivation(&neg_zeta, g)).collect();
        // Φ(c) = exp(ζ)(φ₀(c)); Φ^{-1}(c) = φ₀^{-1}(exp(-ζ)(c))
        let images = substitute_all(&phi0, &exp_images, p);
        let inverse_images = substitute_all(&exp_inv_images, &phi0_inv, p);
        Ok(Automorphism { p, q, linear, odd_frame, filtered: zeta, images, inverse_images })
    }

    /// Recover the normal form from generator images of an automorphism.
    pub fn from_images(images: Vec<Superfunction<S>>) -> Result<Self> {
        let (p, q) = images
            .first()
            .map(|f| f.signature())
            .ok_or_else(|| Error::InvalidInput("no generator images".into()))?;
        if images.len() != p + q {
            return Err(Error::Dimension("wrong number of generator images".into()));
        }
        let mut linear = vec![vec![S::zero(); p]; p];
        for (i, row) in linear.iter_mut().enumerate() {
            let body = images[i].project_degree(0).body();
            for (e, c) in body.terms() {
                let k = e.iter().position(|&d| d == 1).filter(|_| e.iter().sum::<u32>() == 1);
                match k {
                    Some(k) => row[k] = c.clone(),
                    None => return Err(Error::InvalidInput("even part of automorphism must be linear".into())),
                }
            }
        }
        let mut odd_frame = vec![vec![Polynomial::zero(p); q]; q];
        for (j, row) in odd_frame.iter_mut().enumerate() {
            let lin = images[p + j].project_degree(1);
            for (k, e) in row.iter_mut().enumerate() {
                *e = lin.coeff(OddMonomial::generator(k));
            }
        }
        let phi0 = Self::degree_preserving(linear.clone(), odd_frame.clone())?;
        // Ψ = Φ ∘ φ₀^{-1} is unipotent; ζ = log Ψ
        let psi: Vec<Superfunction<S>> = substitute_all(&phi0.inverse_images, &images, p);
        let zeta_comps: Vec<Superfunction<S>> = generators::<S>(p, q)
            .iter()
            .map(|g| {
                let mut acc = Superfunction::zero(p, q);
                let mut term = g.clone();
                for k in 1.. {
                    term = &term.substitute(&psi[..p], &psi[p..]) - &term;
                    if term.is_zero() {
                        break;
                    }
                    assert!(k <= q + 2, "automorphism is not unipotent after removing its degree-preserving part");
                    let c = S::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64);
                    acc += &term.scale(&c);
                }
                acc
            })
            .collect();
        let zeta = SuperVectorField::from_components(p, q, zeta_comps)?;
        Self::new(linear, odd_frame, zeta)
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn linear(&self) -> &[Vec<S>] {
        &self.linear
    }

    pub fn odd_frame(&self) -> &[Vec<Polynomial<S>>] {
        &self.odd_frame
    }

    pub fn filtered(&self) -> &SuperVectorField<S> {
        &self.filtered
    }

    pub fn images(&self) -> &[Superfunction<S>] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images == generators(self.p, self.q)
    }

    /// The degree-preserving factor `φ₀*` alone.
    pub fn degree_preserving_part(&self) -> Self {
        Self::degree_preserving(self.linear.clone(), self.odd_frame.clone()).expect("validated on construction")
    }

    pub fn try_apply(&self, f: &Superfunction<S>) -> Result<Superfunction<S>> {
        if f.signature() != (self.p, self.q) {
            return Err(Error::SignatureMismatch(self.p, self.q, f.p(), f.q()));
        }
        Ok(f.substitute(&self.images[..self.p], &self.images[self.p..]))
    }

    pub fn apply(&self, f: &Superfunction<S>) -> Superfunction<S> {
        self.try_apply(f).expect("automorphism application")
    }

    pub fn apply_inverse(&self, f: &Superfunction<S>) -> Superfunction<S> {
        f.substitute(&self.inverse_images[..self.p], &self.inverse_images[self.p..])
    }

    pub fn inverse(&self) -> Self {
        Self::from_images(self.inverse_images.clone()).expect("inverse of an automorphism")
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.signature() != self.signature() {
            return Err(Error::SignatureMismatch(self.p, self.q, other.p, other.q));
        }
        Self::from_images(other.images.iter().map(|f| self.apply(f)).collect())
    }

    /// `Φ X Φ^{-1}`: the field acting as `f ↦ Φ(X(Φ^{-1} f))`.
    pub fn conjugate_field(&self, x: &SuperVectorField<S>) -> Result<SuperVectorField<S>> {
        Ok(self.conjugate_fields(std::slice::from_ref(x))?.remove(0))
    }

    /// [`Self::conjugate_field`] for several fields, sharing the Jacobian.
    pub fn conjugate_fields(&self, xs: &[SuperVectorField<S>]) -> Result<Vec<SuperVectorField<S>>> {
        self.check_fields(xs)?;
        conjugate_with(&self.images, &self.inverse_images, xs)
    }

    /// `Φ^{-1} X Φ` for each field.
    pub fn inverse_conjugate_fields(&self, xs: &[SuperVectorField<S>]) -> Result<Vec<SuperVectorField<S>>> {
        self.check_fields(xs)?;
        conjugate_with(&self.inverse_images, &self.images, xs)
    }

    fn check_fields(&self, xs: &[SuperVectorField<S>]) -> Result<()> {
        match xs.iter().find(|x| x.signature() != (self.p, self.q)) {
            Some(x) => {
                let (xp, xq) = x.signature();
                Err(Error::SignatureMismatch(self.p, self.q, xp, xq))
            }
            None => Ok(()),
        }
    }
}

/// `Ψ X Ψ^{-1}` where `fwd` / `bwd` are the generator images of `Ψ` and
/// `Ψ^{-1}`. Since `Ψ` is an even algebra map,
/// `(Ψ X Ψ^{-1})(c) = Σ_a Ψ(X_a) Ψ(∂_a Ψ^{-1}(c))`, and the second factor
/// does not depend on `X`.
fn conjugate_with<S: Scalar>(
    fwd: &[Superfunction<S>],
    bwd: &[Superfunction<S>],
    xs: &[SuperVectorField<S>],
) -> Result<Vec<SuperVectorField<S>>> {
    let Some(first) = xs.first() else { return Ok(Vec::new()) };
    let (p, q) = first.signature();
    let mut subst = Substitution::new(&fwd[..p], &fwd[p..]);
    let jacobian: Vec<Vec<Superfunction<S>>> = (0..p + q)
        .map(|a| {
            bwd.iter()
                .map(|c| subst.apply(&if a < p { c.deriv_x(a) } else { c.deriv_xi(a - p) }))
                .collect()
        })
        .collect();
    xs.iter()
        .map(|x| {
            let mut comps = vec![Superfunction::zero(p, q); p + q];
            for (a, xa) in x.components().iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                let image = subst.apply(xa);
                for (comp, jac) in comps.iter_mut().zip(&jacobian[a]) {
                    if !jac.is_zero() {
                        *comp += &(&image * jac);
                    }
                }
            }
            SuperVectorField::from_components(p, q, comps)
        })
        .collect()
}

fn unit_exp(p: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0; p];
    e[k] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = Superfunction<Rational>;
    type V = SuperVectorField<Rational>;
    type A = Automorphism<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn exp_of_nilpotent_field() {
        let (p, q) = (2, 2);
        let zeta = V::monomial(F::xi_product(p, q, &[0, 1]), 0);
        let phi = A::exp_field(&zeta).unwrap();
        assert_eq!(phi.apply(&F::x(p, q, 0)), &F::x(p, q, 0) + &F::xi_product(p, q, &[0, 1]));
        assert!(A::exp_field(&V::zero(p, q)).unwrap().is_identity());
        let back = phi.compose(&A::exp_field(&-&zeta).unwrap()).unwrap();
        assert!(back.is_identity());
    }

    #[test]
    fn exp_rejects_bad_fields() {
        let (p, q) = (2, 2);
        assert!(A::exp_field(&V::d_xi(p, q, 0)).is_err());
        let low = V::monomial(F::xi(p, q, 0), p);
        assert!(A::exp_field(&low).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let (p, q) = (2, 2);
        let zeta = V::monomial(F::xi_product(p, q, &[0, 1]), 0);
        let phi = A::exp_field(&zeta).unwrap();
        let c = phi.conjugate_field(&V::d_xi(p, q, 0)).unwrap();
        assert_eq!(c, &V::d_xi(p, q, 0) - &V::monomial(F::xi(p, q, 1), 0));
        assert_eq!(A::identity(p, q).conjugate_field(&V::d_xi(p, q, 1)).unwrap(), V::d_xi(p, q, 1));

        // rotation x1 ↦ x2, x2 ↦ -x1 conjugating ∂/∂x1
        let rot = A::degree_preserving(
            vec![vec![r(0), r(1)], vec![r(-1), r(0)]],
            A::identity(p, q).odd_frame().to_vec(),
        )
        .unwrap();
        let c = rot.conjugate_field(&V::d_x(p, q, 0)).unwrap();
        assert_eq!(c, V::d_x(p, q, 1));
    }

    #[test]
    fn normal_form_round_trip() {
        let (p, q) = (1, 3);
        let odd = vec![
            vec![Polynomial::one(p), Polynomial::var(p, 0), Polynomial::zero(p)],
            vec![Polynomial::zero(p), Polynomial::one(p), Polynomial::zero(p)],
            vec![Polynomial::zero(p), Polynomial::zero(p), Polynomial::constant(p, r(2))],
        ];
        let zeta = V::monomial(F::xi_product(p, q, &[0, 1]), 0);
        let phi = A::new(vec![vec![r(3)]], odd, zeta).unwrap();
        let again = A::from_images(phi.images().to_vec()).unwrap();
        assert_eq!(again, phi);
        let inv = phi.inverse();
        assert!(phi.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn polynomial_inverse_with_unit_determinant() {
        let p = 1;
        let a = vec![
            vec![Polynomial::<Rational>::one(p), Polynomial::var(p, 0)],
            vec![Polynomial::zero(p), Polynomial::one(p)],
        ];
        let inv = polynomial_matrix_inverse(&a, p).unwrap();
        assert_eq!(inv[0][1], -&Polynomial::var(p, 0));
        let singular = vec![vec![Polynomial::<Rational>::var(p, 0)]];
        assert!(polynomial_matrix_inverse(&singular, p).is_none());
    }
}
