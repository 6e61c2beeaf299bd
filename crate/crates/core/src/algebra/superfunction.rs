use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::odd::OddMonomial;
use super::polynomial::{Exponents, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Element of the graded-commutative algebra `R[x_1..x_p] ⊗ Λ[ξ_1..ξ_q]`:
/// a finite sum of odd monomials with polynomial coefficients.
///
/// The Z-degree of a term is the number of odd generators; parity is that
/// degree mod 2. Zero is the empty map.
#[derive(Clone, Debug, PartialEq)]
pub struct Superfunction<S> {
    p: usize,
    q: usize,
    terms: BTreeMap<OddMonomial, Polynomial<S>>,
}

/// Homogeneity information: `None` means mixed (or, for `floor`, zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Homogeneity {
    pub odd: Option<bool>,
    pub degree: Option<usize>,
    pub floor: Option<usize>,
}

impl<S: Scalar> Superfunction<S> {
    pub fn zero(p: usize, q: usize) -> Self {
        assert!(q <= 31, "at most 31 odd generators are supported");
        Superfunction { p, q, terms: BTreeMap::new() }
    }

    pub fn constant(p: usize, q: usize, c: S) -> Self {
        Self::from_poly(q, Polynomial::constant(p, c))
    }

    pub fn one(p: usize, q: usize) -> Self {
        Self::constant(p, q, S::one())
    }

    pub fn from_i64(p: usize, q: usize, c: i64) -> Self {
        Self::constant(p, q, S::from_i64(c))
    }

    pub fn from_poly(q: usize, poly: Polynomial<S>) -> Self {
        Self::term(q, OddMonomial::ONE, poly)
    }

    pub fn term(q: usize, odd: OddMonomial, poly: Polynomial<S>) -> Self {
        let mut f = Self::zero(poly.nvars(), q);
        f.add_term(odd, poly);
        f
    }

    /// Even coordinate `x_{i+1}`.
    pub fn x(p: usize, q: usize, i: usize) -> Self {
        Self::from_poly(q, Polynomial::var(p, i))
    }

    /// Odd coordinate `ξ_{j+1}`.
    pub fn xi(p: usize, q: usize, j: usize) -> Self {
        assert!(j < q, "odd index {j} out of range");
        Self::term(q, OddMonomial::generator(j), Polynomial::one(p))
    }

    /// Product of odd generators (0-based indices, any order, sign applied).
    pub fn xi_product(p: usize, q: usize, indices: &[usize]) -> Self {
        match OddMonomial::from_indices(indices) {
            None => Self::zero(p, q),
            Some((m, neg)) => Self::term(q, m, Polynomial::constant(p, crate::scalar::sign(neg))),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMonomial, &Polynomial<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, odd: OddMonomial) -> Polynomial<S> {
        self.terms.get(&odd).cloned().unwrap_or_else(|| Polynomial::zero(self.p))
    }

    pub fn add_term(&mut self, odd: OddMonomial, poly: Polynomial<S>) {
        assert_eq!(poly.nvars(), self.p, "polynomial has wrong number of variables");
        if poly.is_zero() {
            return;
        }
        match self.terms.get_mut(&odd) {
            Some(v) => {
                *v += &poly;
                if v.is_zero() {
                    self.terms.remove(&odd);
                }
            }
            None => {
                self.terms.insert(odd, poly);
            }
        }
    }

    fn add_term_ref(&mut self, odd: OddMonomial, poly: &Polynomial<S>) {
        match self.terms.get_mut(&odd) {
            Some(v) => {
                *v += poly;
                if v.is_zero() {
                    self.terms.remove(&odd);
                }
            }
            None if !poly.is_zero() => {
                self.terms.insert(odd, poly.clone());
            }
            None => {}
        }
    }

    fn check_signature(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.q != other.q {
            return Err(Error::SignatureMismatch(self.p, self.q, other.p, other.q));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_signature(rhs)?;
        let mut out = self.clone();
        out += rhs;
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_signature(rhs)?;
        let mut out = Self::zero(self.p, self.q);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &rhs.terms {
                if let Some((m, neg)) = ma.mul(*mb) {
                    let mut c = pa * pb;
                    if neg {
                        c = -&c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.p, self.q);
        }
        Superfunction {
            p: self.p,
            q: self.q,
            terms: self.terms.iter().map(|(m, v)| (*m, v.scale(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.p, self.q);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn filter(&self, keep: impl Fn(OddMonomial) -> bool) -> Self {
        Superfunction {
            p: self.p,
            q: self.q,
            terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Sum of the terms with exactly `k` odd generators.
    pub fn project_degree(&self, k: usize) -> Self {
        self.filter(|m| m.degree() == k)
    }

    /// Sum of the terms with at least `k` odd generators.
    pub fn truncate_below(&self, k: usize) -> Self {
        self.filter(|m| m.degree() >= k)
    }

    pub fn parity_part(&self, odd: bool) -> Self {
        self.filter(|m| m.is_odd() == odd)
    }

    pub fn even_part(&self) -> Self {
        self.parity_part(false)
    }

    pub fn odd_part(&self) -> Self {
        self.parity_part(true)
    }

    /// Minimal Z-degree present; `None` for zero.
    pub fn floor(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Highest total degree in the even variables; `None` for zero.
    pub fn max_poly_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|c| c.degree()).max()
    }

    /// Parity if homogeneous (`Some(true)` = odd); `None` for mixed. Zero is even.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| m.is_odd());
        match it.next() {
            None => Some(false),
            Some(first) => it.all(|o| o == first).then_some(first),
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let floor = self.floor();
        let degree = match (floor, self.max_degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            (None, None) => Some(0),
            _ => None,
        };
        Homogeneity { odd: self.parity(), degree, floor }
    }

    /// `∂/∂x_i`.
    pub fn deriv_x(&self, i: usize) -> Self {
        let mut out = Self::zero(self.p, self.q);
        for (m, c) in &self.terms {
            out.add_term(*m, c.derivative(i));
        }
        out
    }

    /// Left derivative `∂/∂ξ_j`.
    pub fn deriv_xi(&self, j: usize) -> Self {
        let mut out = Self::zero(self.p, self.q);
        for (m, c) in &self.terms {
            if let Some((rest, neg)) = m.left_derivative(j) {
                out.add_term(rest, if neg { -c } else { c.clone() });
            }
        }
        out
    }

    /// Substitute a point for the even variables.
    pub fn evaluate_at_point(&self, point: &[S]) -> Result<Self> {
        if point.len() != self.p {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.p
            )));
        }
        let mut out = Self::zero(self.p, self.q);
        for (m, c) in &self.terms {
            out.add_term(*m, Polynomial::constant(self.p, c.evaluate(point)));
        }
        Ok(out)
    }

    /// The degree-zero component as a polynomial.
    pub fn body(&self) -> Polynomial<S> {
        self.coeff(OddMonomial::ONE)
    }

    /// The constant value if `self` is a constant.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&OddMonomial::ONE).and_then(|c| c.as_constant()),
            _ => None,
        }
    }

    /// Inverse of an element whose body is a nonzero constant.
    pub fn inverse(&self) -> Option<Self> {
        let c = self.body().as_constant()?;
        if c.is_zero() {
            return None;
        }
        let cinv = S::one() / c;
        // self = c(1 + n) with n nilpotent
        let n = (self - &Self::constant(self.p, self.q, self.body().as_constant().unwrap())).scale(&cinv);
        let mut acc = Self::one(self.p, self.q);
        let mut power = Self::one(self.p, self.q);
        let mut negative = false;
        loop {
            power = &power * &n;
            if power.is_zero() {
                break;
            }
            negative = !negative;
            acc = if negative { &acc - &power } else { &acc + &power };
        }
        Some(acc.scale(&cinv))
    }

    /// Algebra homomorphism defined by images of the generators.
    ///
    /// Exact because coefficients are polynomial. The images of the odd
    /// generators should be odd for the result to be a superalgebra map.
    /// Use [`Substitution`] when substituting into many functions.
    pub fn substitute(&self, x_images: &[Self], xi_images: &[Self]) -> Self {
        assert_eq!(x_images.len(), self.p);
        assert_eq!(xi_images.len(), self.q);
        Substitution::new(x_images, xi_images).apply(self)
    }

    /// Reinterpret with extra even variables appended.
    pub fn extend_even(&self, p: usize) -> Self {
        Superfunction {
            p,
            q: self.q,
            terms: self.terms.iter().map(|(m, c)| (*m, c.extend_vars(p))).collect(),
        }
    }
}

impl<S: Scalar> AddAssign<&Superfunction<S>> for Superfunction<S> {
    fn add_assign(&mut self, rhs: &Superfunction<S>) {
        self.check_signature(rhs).expect("superfunction addition");
        for (m, c) in &rhs.terms {
            self.add_term_ref(*m, c);
        }
    }
}

impl<S: Scalar> Add for &Superfunction<S> {
    type Output = Superfunction<S>;
    fn add(self, rhs: &Superfunction<S>) -> Superfunction<S> {
        self.try_add(rhs).expect("superfunction addition")
    }
}

impl<S: Scalar> Sub for &Superfunction<S> {
    type Output = Superfunction<S>;
    fn sub(self, rhs: &Superfunction<S>) -> Superfunction<S> {
        self.try_add(&-rhs).expect("superfunction subtraction")
    }
}

impl<S: Scalar> Neg for &Superfunction<S> {
    type Output = Superfunction<S>;
    fn neg(self) -> Superfunction<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &Superfunction<S> {
    type Output = Superfunction<S>;
    fn mul(self, rhs: &Superfunction<S>) -> Superfunction<S> {
        self.try_mul(rhs).expect("superfunction product")
    }
}

impl<S: Scalar> Add for Superfunction<S> {
    type Output = Superfunction<S>;
    fn add(self, rhs: Superfunction<S>) -> Superfunction<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Superfunction<S> {
    type Output = Superfunction<S>;
    fn sub(self, rhs: Superfunction<S>) -> Superfunction<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Superfunction<S> {
    type Output = Superfunction<S>;
    fn mul(self, rhs: Superfunction<S>) -> Superfunction<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Superfunction<S> {
    type Output = Superfunction<S>;
    fn neg(self) -> Superfunction<S> {
        -&self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Superfunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (e, a) in c.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{a}")?;
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => write!(f, "*x{}", i + 1)?,
                        _ => write!(f, "*x{}^{}", i + 1, k)?,
                    }
                }
                if m.degree() > 0 {
                    write!(f, "*")?;
                    for j in m.indices() {
                        write!(f, "ξ{}", j + 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A substitution `x_i ↦ X_i, ξ_j ↦ Ξ_j` that caches the images of the
/// monomials it has met.
pub struct Substitution<'a, S> {
    x: &'a [Superfunction<S>],
    xi: &'a [Superfunction<S>],
    p: usize,
    q: usize,
    even: HashMap<Exponents, Superfunction<S>>,
    odd: HashMap<OddMonomial, Superfunction<S>>,
}

impl<'a, S: Scalar> Substitution<'a, S> {
    pub fn new(x_images: &'a [Superfunction<S>], xi_images: &'a [Superfunction<S>]) -> Self {
        let (p, q) = x_images.first().or(xi_images.first()).map(|f| f.signature()).unwrap_or((0, 0));
        Substitution { x: x_images, xi: xi_images, p, q, even: HashMap::new(), odd: HashMap::new() }
    }

    fn even_image(&mut self, e: &[u32]) -> Superfunction<S> {
        if let Some(f) = self.even.get(e) {
            return f.clone();
        }
        let f = match e.iter().rposition(|&k| k > 0) {
            None => Superfunction::one(self.p, self.q),
            Some(i) => {
                let mut lower = e.to_vec();
                lower[i] -= 1;
                &self.even_image(&lower) * &self.x[i]
            }
        };
        self.even.insert(e.to_vec(), f.clone());
        f
    }

    fn odd_image(&mut self, m: OddMonomial) -> Superfunction<S> {
        if let Some(f) = self.odd.get(&m) {
            return f.clone();
        }
        let f = match m.indices().last() {
            None => Superfunction::one(self.p, self.q),
            // ξ_{i_1}…ξ_{i_k} with the largest index last
            Some(&j) => &self.odd_image(OddMonomial(m.0 & !(1 << j))) * &self.xi[j],
        };
        self.odd.insert(m, f.clone());
        f
    }

    pub fn apply(&mut self, f: &Superfunction<S>) -> Superfunction<S> {
        assert_eq!((self.x.len(), self.xi.len()), (f.p, f.q), "substitution has wrong number of images");
        let mut out = Superfunction::zero(self.p, self.q);
        for (m, c) in &f.terms {
            let odd = self.odd_image(*m);
            if odd.is_zero() {
                continue;
            }
            let mut even = Superfunction::zero(self.p, self.q);
            for (e, a) in c.terms() {
                even += &self.even_image(e).scale(a);
            }
            out += &(&even * &odd);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = Superfunction<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn odd_generator_squares_to_zero() {
        let x1 = F::xi(2, 2, 0);
        assert!((&x1 * &x1).is_zero());
    }

    #[test]
    fn anticommutativity_normal_form() {
        let x1 = F::xi(2, 2, 0);
        let x2 = F::xi(2, 2, 1);
        assert_eq!(&x2 * &x1, -&(&x1 * &x2));
        assert_eq!(&x2 * &x1, F::xi_product(2, 2, &[1, 0]));
    }

    #[test]
    fn nilpotent_cross_terms_cancel() {
        let x1 = F::x(2, 2, 0);
        let n = F::xi_product(2, 2, &[0, 1]);
        assert_eq!(&(&x1 + &n) * &(&x1 - &n), &x1 * &x1);
    }

    #[test]
    fn project_degree_examples() {
        let (p, q) = (1, 4);
        let three = F::from_i64(p, q, 3);
        let mid = &F::x(p, q, 0) * &F::xi_product(p, q, &[0, 1]);
        let top = F::xi_product(p, q, &[0, 1, 2, 3]);
        let a = &(&three + &mid) + &top;
        assert_eq!(a.project_degree(2), mid);
        assert!(a.project_degree(1).is_zero());
        let sum = (0..=4).fold(F::zero(p, q), |acc, k| &acc + &a.project_degree(k));
        assert_eq!(sum, a);
        let eta = &F::xi_product(p, q, &[0, 1]) + &F::xi_product(p, q, &[2, 3]);
        assert_eq!(eta.project_degree(2), eta);
    }

    #[test]
    fn evaluation_examples() {
        let (p, q) = (2, 2);
        let x1 = F::x(p, q, 0);
        let x2 = F::x(p, q, 1);
        let e = F::xi_product(p, q, &[0, 1]);
        let a = &(&x1 * &x2) + &(&x2 * &e);
        let v = a.evaluate_at_point(&[r(1), r(2)]).unwrap();
        assert_eq!(v, &F::from_i64(p, q, 2) + &e.scale(&r(2)));
        assert_eq!(e.evaluate_at_point(&[r(7), r(-3)]).unwrap(), e);
        let z = (&x1 * &F::xi(p, q, 0)).evaluate_at_point(&[r(0), r(0)]).unwrap();
        assert!(z.is_zero());
        assert!(a.evaluate_at_point(&[r(1)]).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        let (p, q) = (1, 3);
        let e = F::xi_product(p, q, &[0, 1]);
        assert_eq!(e.homogeneity(), Homogeneity { odd: Some(false), degree: Some(2), floor: Some(2) });
        let m = &F::x(p, q, 0) + &e;
        assert_eq!(m.homogeneity(), Homogeneity { odd: Some(false), degree: None, floor: Some(0) });
        let o = &F::xi(p, q, 0) + &F::xi_product(p, q, &[0, 1, 2]);
        assert_eq!(o.homogeneity(), Homogeneity { odd: Some(true), degree: None, floor: Some(1) });
    }

    #[test]
    fn signature_mismatch_rejected() {
        let a = F::one(1, 2);
        let b = F::one(2, 2);
        assert_eq!(a.try_mul(&b), Err(Error::SignatureMismatch(1, 2, 2, 2)));
    }

    #[test]
    fn inverse_of_unit() {
        let (p, q) = (1, 2);
        let u = &F::from_i64(p, q, 2) + &F::xi_product(p, q, &[0, 1]);
        let inv = u.inverse().unwrap();
        assert_eq!(&u * &inv, F::one(p, q));
        assert!(F::x(p, q, 0).inverse().is_none());
    }

    #[test]
    fn left_derivative_on_products() {
        let (p, q) = (0, 2);
        let e = F::xi_product(p, q, &[0, 1]);
        assert_eq!(e.deriv_xi(0), F::xi(p, q, 1));
        assert_eq!(e.deriv_xi(1), -&F::xi(p, q, 0));
    }

    #[test]
    fn cached_substitution_matches_fresh() {
        let (p, q) = (2, 3);
        let x = [&F::x(p, q, 0) + &F::xi_product(p, q, &[0, 1]), F::x(p, q, 1).scale(&r(2))];
        let xi = [&F::xi(p, q, 1) + &(&F::x(p, q, 0) * &F::xi(p, q, 2)), F::xi(p, q, 0), F::xi(p, q, 2)];
        let fs = [
            &(&F::x(p, q, 0) * &F::x(p, q, 0)) * &F::xi_product(p, q, &[0, 2]),
            &F::xi_product(p, q, &[0, 1, 2]) + &(&F::x(p, q, 1) * &F::x(p, q, 0)),
            &(&F::x(p, q, 0) * &F::x(p, q, 0)) * &F::x(p, q, 1),
        ];
        let mut sub = Substitution::new(&x, &xi);
        for f in &fs {
            assert_eq!(sub.apply(f), f.substitute(&x, &xi));
        }
        // ξ_1 ξ_3 ↦ (ξ_2 + x_1 ξ_3) ξ_3 = ξ_2 ξ_3
        let m = F::xi_product(p, q, &[0, 2]);
        assert_eq!(sub.apply(&m), F::xi_product(p, q, &[1, 2]));
        assert_eq!(sub.apply(&fs[2]), &(&x[0] * &x[0]) * &x[1]);
    }
}
