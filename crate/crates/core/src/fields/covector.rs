use std::ops::{Add, Neg, Sub};

use super::field::{frame_is_odd, SuperVectorField};
use crate::algebra::Superfunction;
use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};

/// Super 1-form, stored through its right pairing with the frame:
/// `comps[a] = <e_a, α>`, extended by `<f X, α> = f <X, α>`.
///
/// With this convention `<X, dF> = X(F)` for every field `X`, so the de Rham
/// differential has components `(∂F/∂x_i; ∂F/∂ξ_j)`. The Koszul-signed
/// evaluation `α(X) = (-1)^{|α||X|} <X, α>` is [`SuperCovector::eval`].
#[derive(Clone, Debug, PartialEq)]
pub struct SuperCovector<S> {
    p: usize,
    q: usize,
    comps: Vec<Superfunction<S>>,
}

impl<S: Scalar> SuperCovector<S> {
    pub fn zero(p: usize, q: usize) -> Self {
        SuperCovector { p, q, comps: vec![Superfunction::zero(p, q); p + q] }
    }

    pub fn from_components(p: usize, q: usize, comps: Vec<Superfunction<S>>) -> Result<Self> {
        if comps.len() != p + q {
            return Err(Error::Dimension(format!("{} components for {} frame vectors", comps.len(), p + q)));
        }
        Ok(SuperCovector { p, q, comps })
    }

    /// The de Rham differential of a superfunction.
    pub fn de_rham(f: &Superfunction<S>) -> Self {
        let (p, q) = f.signature();
        let comps = (0..p).map(|i| f.deriv_x(i)).chain((0..q).map(|j| f.deriv_xi(j))).collect();
        SuperCovector { p, q, comps }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn component(&self, a: usize) -> &Superfunction<S> {
        &self.comps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Superfunction::is_zero)
    }

    /// Parity-homogeneous part: component `a` has parity `|α| + |e_a|`.
    pub fn parity_part(&self, odd: bool) -> Self {
        SuperCovector {
            p: self.p,
            q: self.q,
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(a, c)| c.parity_part(odd ^ frame_is_odd(self.p, a)))
                .collect(),
        }
    }

    pub fn parity_parts(&self) -> Vec<(bool, Self)> {
        [false, true]
            .into_iter()
            .map(|o| (o, self.parity_part(o)))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// Right pairing `<X, α> = Σ_a X^a <e_a, α>`.
    pub fn pair(&self, x: &SuperVectorField<S>) -> Result<Superfunction<S>> {
        if x.signature() != (self.p, self.q) {
            let (xp, xq) = x.signature();
            return Err(Error::SignatureMismatch(self.p, self.q, xp, xq));
        }
        let mut out = Superfunction::zero(self.p, self.q);
        for (xa, ca) in x.components().iter().zip(&self.comps) {
            if !xa.is_zero() && !ca.is_zero() {
                out += &(xa * ca);
            }
        }
        Ok(out)
    }

    /// Koszul-signed evaluation `α(X) = (-1)^{|α||X|} <X, α>`.
    pub fn eval(&self, x: &SuperVectorField<S>) -> Result<Superfunction<S>> {
        let mut out = Superfunction::zero(self.p, self.q);
        for (oa, a) in self.parity_parts() {
            for (ox, xp) in x.parity_parts() {
                let v = a.pair(&xp)?;
                out = &out + &v.scale(&sign(oa && ox));
            }
        }
        Ok(out)
    }

    /// Left multiplication `(f α)(X) = f α(X)`, i.e. `<X, fα> = (-1)^{|f||X|} f <X, α>`.
    pub fn mul_left(&self, f: &Superfunction<S>) -> Self {
        let mut out = Self::zero(self.p, self.q);
        for of in [false, true] {
            let fp = f.parity_part(of);
            if fp.is_zero() {
                continue;
            }
            let comps = self
                .comps
                .iter()
                .enumerate()
                .map(|(a, c)| (&fp * c).scale(&sign(of && frame_is_odd(self.p, a))))
                .collect();
            out = &out + &SuperCovector { p: self.p, q: self.q, comps };
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        SuperCovector { p: self.p, q: self.q, comps: self.comps.iter().map(|f| f.scale(c)).collect() }
    }
}

impl<S: Scalar> Add for &SuperCovector<S> {
    type Output = SuperCovector<S>;
    fn add(self, rhs: &SuperCovector<S>) -> SuperCovector<S> {
        assert_eq!(self.signature(), rhs.signature());
        SuperCovector { p: self.p, q: self.q, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect() }
    }
}

impl<S: Scalar> Sub for &SuperCovector<S> {
    type Output = SuperCovector<S>;
    fn sub(self, rhs: &SuperCovector<S>) -> SuperCovector<S> {
        self + &-rhs
    }
}

impl<S: Scalar> Neg for &SuperCovector<S> {
    type Output = SuperCovector<S>;
    fn neg(self) -> SuperCovector<S> {
        self.scale(&-S::one())
    }
}
