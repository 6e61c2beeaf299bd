use std::ops::{Add, Neg, Sub};

use crate::algebra::Superfunction;
use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};

/// Whether frame vector `a` is odd (`∂/∂ξ`) in signature `(p, q)`.
pub fn frame_is_odd(p: usize, a: usize) -> bool {
    a >= p
}

/// Z-degree of frame vector `a`: 0 for `∂/∂x`, -1 for `∂/∂ξ`.
pub fn frame_degree(p: usize, a: usize) -> isize {
    if a >= p {
        -1
    } else {
        0
    }
}

/// Super vector field `X = Σ_a X^a e_a` in the coordinate frame, coefficients
/// written on the left. `X^a = X(c_a)` where `c_a` is the a-th coordinate
/// (`x_1..x_p`, then `ξ_1..ξ_q`), so a derivation is determined by its values
/// on the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperVectorField<S> {
    p: usize,
    q: usize,
    comps: Vec<Superfunction<S>>,
}

impl<S: Scalar> SuperVectorField<S> {
    pub fn zero(p: usize, q: usize) -> Self {
        SuperVectorField { p, q, comps: vec![Superfunction::zero(p, q); p + q] }
    }

    /// Frame vector `e_a`.
    pub fn frame(p: usize, q: usize, a: usize) -> Self {
        let mut x = Self::zero(p, q);
        x.comps[a] = Superfunction::one(p, q);
        x
    }

    /// `∂/∂x_{i+1}`.
    pub fn d_x(p: usize, q: usize, i: usize) -> Self {
        Self::frame(p, q, i)
    }

    /// `∂/∂ξ_{j+1}`.
    pub fn d_xi(p: usize, q: usize, j: usize) -> Self {
        Self::frame(p, q, p + j)
    }

    pub fn from_components(p: usize, q: usize, comps: Vec<Superfunction<S>>) -> Result<Self> {
        if comps.len() != p + q {
            return Err(Error::Dimension(format!("{} components for {} frame vectors", comps.len(), p + q)));
        }
        if let Some(c) = comps.iter().find(|c| c.signature() != (p, q)) {
            let (cp, cq) = c.signature();
            return Err(Error::SignatureMismatch(p, q, cp, cq));
        }
        Ok(SuperVectorField { p, q, comps })
    }

    /// Single-term field `f · e_a`.
    pub fn monomial(f: Superfunction<S>, a: usize) -> Self {
        let (p, q) = f.signature();
        let mut x = Self::zero(p, q);
        x.comps[a] = f;
        x
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

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn component(&self, a: usize) -> &Superfunction<S> {
        &self.comps[a]
    }

    pub fn components(&self) -> &[Superfunction<S>] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Superfunction::is_zero)
    }

    fn check_signature(&self, p: usize, q: usize) -> Result<()> {
        if (self.p, self.q) != (p, q) {
            return Err(Error::SignatureMismatch(self.p, self.q, p, q));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(usize, &Superfunction<S>) -> Superfunction<S>) -> Self {
        SuperVectorField {
            p: self.p,
            q: self.q,
            comps: self.comps.iter().enumerate().map(|(a, c)| f(a, c)).collect(),
        }
    }

    /// Parity-homogeneous part; a term `f e_a` has parity `|f| + |e_a|`.
    pub fn parity_part(&self, odd: bool) -> Self {
        let p = self.p;
        self.map(|a, c| c.parity_part(odd ^ frame_is_odd(p, a)))
    }

    /// The nonzero parity parts, as `(odd, part)`.
    pub fn parity_parts(&self) -> Vec<(bool, Self)> {
        [false, true]
            .into_iter()
            .map(|o| (o, self.parity_part(o)))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// Parity if homogeneous (`Some(true)` = odd); zero counts as even.
    pub fn parity(&self) -> Option<bool> {
        let parts = self.parity_parts();
        match parts.len() {
            0 => Some(false),
            1 => Some(parts[0].0),
            _ => None,
        }
    }

    /// Degree-homogeneous part; a term `f e_a` has degree `deg f + deg e_a`.
    pub fn project_degree(&self, k: isize) -> Self {
        let p = self.p;
        self.map(|a, c| {
            let d = k - frame_degree(p, a);
            if d < 0 {
                Superfunction::zero(c.p(), c.q())
            } else {
                c.project_degree(d as usize)
            }
        })
    }

    /// Minimal Z-degree present; `None` for zero.
    pub fn floor(&self) -> Option<isize> {
        self.comps
            .iter()
            .enumerate()
            .filter_map(|(a, c)| c.floor().map(|f| f as isize + frame_degree(self.p, a)))
            .min()
    }

    pub fn max_degree(&self) -> Option<isize> {
        self.comps
            .iter()
            .enumerate()
            .filter_map(|(a, c)| c.max_degree().map(|f| f as isize + frame_degree(self.p, a)))
            .max()
    }

    pub fn max_poly_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(Superfunction::max_poly_degree).max()
    }

    /// Apply as a derivation: `X(f) = Σ_a X^a · e_a(f)`.
    pub fn try_apply(&self, f: &Superfunction<S>) -> Result<Superfunction<S>> {
        self.check_signature(f.p(), f.q())?;
        let mut out = Superfunction::zero(self.p, self.q);
        for (a, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = if a < self.p { f.deriv_x(a) } else { f.deriv_xi(a - self.p) };
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, f: &Superfunction<S>) -> Superfunction<S> {
        self.try_apply(f).expect("field application")
    }

    /// Graded commutator `[X, Y] = XY - (-1)^{|X||Y|} YX`, bilinear over parity parts.
    pub fn try_bracket(&self, other: &Self) -> Result<Self> {
        other.check_signature(self.p, self.q)?;
        let mut out = Self::zero(self.p, self.q);
        for (ox, x) in self.parity_parts() {
            for (oy, y) in other.parity_parts() {
                let s: S = sign(ox && oy);
                let comps = (0..self.dim())
                    .map(|a| &x.apply(&y.comps[a]) - &y.apply(&x.comps[a]).scale(&s))
                    .collect();
                out = &out + &SuperVectorField { p: self.p, q: self.q, comps };
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.try_bracket(other).expect("lie bracket")
    }

    /// Left multiplication `f · X`.
    pub fn mul_left(&self, f: &Superfunction<S>) -> Self {
        self.map(|_, c| f * c)
    }

    /// Right multiplication `X · h := (-1)^{|X||h|} h · X` on homogeneous parts.
    pub fn mul_right(&self, h: &Superfunction<S>) -> Self {
        let mut out = Self::zero(self.p, self.q);
        for (ox, x) in self.parity_parts() {
            for oh in [false, true] {
                let hp = h.parity_part(oh);
                if hp.is_zero() {
                    continue;
                }
                let s: S = sign(ox && oh);
                out = &out + &x.mul_left(&hp).scale(&s);
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|_, f| f.scale(c))
    }

    pub fn evaluate_at_point(&self, point: &[S]) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.evaluate_at_point(point)).collect::<Result<_>>()?;
        Ok(SuperVectorField { p: self.p, q: self.q, comps })
    }
}

impl<S: Scalar> Add for &SuperVectorField<S> {
    type Output = SuperVectorField<S>;
    fn add(self, rhs: &SuperVectorField<S>) -> SuperVectorField<S> {
        assert_eq!(self.signature(), rhs.signature(), "field signature mismatch");
        self.map(|a, c| c + &rhs.comps[a])
    }
}

impl<S: Scalar> Sub for &SuperVectorField<S> {
    type Output = SuperVectorField<S>;
    fn sub(self, rhs: &SuperVectorField<S>) -> SuperVectorField<S> {
        assert_eq!(self.signature(), rhs.signature(), "field signature mismatch");
        self.map(|a, c| c - &rhs.comps[a])
    }
}

impl<S: Scalar> Neg for &SuperVectorField<S> {
    type Output = SuperVectorField<S>;
    fn neg(self) -> SuperVectorField<S> {
        self.scale(&-S::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = Superfunction<Rational>;
    type V = SuperVectorField<Rational>;

    #[test]
    fn apply_examples() {
        let (p, q) = (2, 2);
        let e = F::xi_product(p, q, &[0, 1]);
        assert_eq!(V::d_xi(p, q, 0).apply(&e), F::xi(p, q, 1));
        let x1 = F::x(p, q, 0);
        let x = V::monomial(F::xi(p, q, 0), 0);
        assert_eq!(x.apply(&(&x1 * &x1)), (&x1 * &F::xi(p, q, 0)).scale(&Rational::from_i64(2)));
    }

    #[test]
    fn bracket_examples() {
        let (p, q) = (2, 2);
        assert!(V::d_x(p, q, 0).bracket(&V::d_x(p, q, 1)).is_zero());
        let y = V::monomial(F::xi(p, q, 0), 0);
        assert_eq!(V::d_xi(p, q, 0).bracket(&y), V::d_x(p, q, 0));
    }

    #[test]
    fn degree_and_parity() {
        let (p, q) = (1, 3);
        let x = V::monomial(F::xi_product(p, q, &[0, 1]), 0);
        assert_eq!(x.floor(), Some(2));
        assert_eq!(x.parity(), Some(false));
        let y = V::d_xi(p, q, 2);
        assert_eq!(y.floor(), Some(-1));
        assert_eq!(y.parity(), Some(true));
        let z = &x + &y;
        assert_eq!(z.parity(), None);
        assert_eq!(z.project_degree(2), x);
        assert_eq!(z.parity_part(true), y);
    }

    #[test]
    fn signature_checks() {
        assert!(V::d_x(1, 1, 0).try_apply(&F::one(2, 1)).is_err());
        assert!(V::d_x(1, 1, 0).try_bracket(&V::d_x(2, 1, 0)).is_err());
        assert!(V::from_components(1, 1, vec![F::one(1, 1)]).is_err());
    }
}
