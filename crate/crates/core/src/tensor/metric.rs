use std::ops::{Add, Neg, Sub};

use super::endo::EndoTensor;
use crate::algebra::{Polynomial, Superfunction};
use crate::error::{Error, Result};
use crate::fields::{frame_degree, frame_is_odd, polynomial_matrix_inverse, SuperCovector, SuperVectorField};
use crate::scalar::{sign, Scalar};

/// Even bilinear form on vector fields, stored by its frame values
/// `B[a][b] = g(e_a, e_b)` and expanded as
/// `g(X, Y) = Σ X^a (-1)^{|Y^b||e_a|} Y^b B[a][b]`.
///
/// An entry term `t` at `(a, b)` contributes Z-degree
/// `deg t - frameDeg(a) - frameDeg(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricTensor<S> {
    p: usize,
    q: usize,
    entries: Vec<Vec<Superfunction<S>>>,
}

impl<S: Scalar> MetricTensor<S> {
    pub fn zero(p: usize, q: usize) -> Self {
        let n = p + q;
        MetricTensor { p, q, entries: vec![vec![Superfunction::zero(p, q); n]; n] }
    }

    pub fn from_entries(p: usize, q: usize, entries: Vec<Vec<Superfunction<S>>>) -> Result<Self> {
        let n = p + q;
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("tensor entries must be {n}x{n}")));
        }
        if let Some(f) = entries.iter().flatten().find(|f| f.signature() != (p, q)) {
            return Err(Error::SignatureMismatch(p, q, f.p(), f.q()));
        }
        Ok(MetricTensor { p, q, entries })
    }

    /// Frame matrix of an arbitrary bilinear map given on frame pairs.
    pub fn from_frame_pairs(p: usize, q: usize, f: impl Fn(usize, usize) -> Superfunction<S>) -> Self {
        let n = p + q;
        MetricTensor { p, q, entries: (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect() }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn entry(&self, a: usize, b: usize) -> &Superfunction<S> {
        &self.entries[a][b]
    }

    pub fn entries(&self) -> &[Vec<Superfunction<S>>] {
        &self.entries
    }

    pub fn set_entry(&mut self, a: usize, b: usize, f: Superfunction<S>) {
        assert_eq!(f.signature(), (self.p, self.q), "entry signature mismatch");
        self.entries[a][b] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Superfunction::is_zero)
    }

    fn map(&self, f: impl Fn(usize, usize, &Superfunction<S>) -> Superfunction<S>) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(a, row)| row.iter().enumerate().map(|(b, e)| f(a, b, e)).collect())
            .collect();
        MetricTensor { p: self.p, q: self.q, entries }
    }

    fn odd(&self, a: usize) -> bool {
        frame_is_odd(self.p, a)
    }

    fn offset(&self, a: usize, b: usize) -> isize {
        -frame_degree(self.p, a) - frame_degree(self.p, b)
    }

    /// `g(X, Y)`.
    pub fn try_eval(&self, x: &SuperVectorField<S>, y: &SuperVectorField<S>) -> Result<Superfunction<S>> {
        for f in [x, y] {
            if f.signature() != (self.p, self.q) {
                return Err(Error::SignatureMismatch(self.p, self.q, f.p(), f.q()));
            }
        }
        let n = self.dim();
        let mut out = Superfunction::zero(self.p, self.q);
        for b in 0..n {
            let yb = y.component(b);
            if yb.is_zero() {
                continue;
            }
            for a in 0..n {
                let xa = x.component(a);
                let g = &self.entries[a][b];
                if xa.is_zero() || g.is_zero() {
                    continue;
                }
                let ybs = if self.odd(a) { &yb.even_part() - &yb.odd_part() } else { yb.clone() };
                out += &(&(xa * &ybs) * g);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: &SuperVectorField<S>, y: &SuperVectorField<S>) -> Superfunction<S> {
        self.try_eval(x, y).expect("metric evaluation")
    }

    /// Entries violating `B[a][b] = (-1)^{|a||b|} B[b][a]`, as `(a, b)` with `a <= b`.
    pub fn supersymmetry_violations(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                let s: S = sign(self.odd(a) && self.odd(b));
                if self.entries[a][b] != self.entries[b][a].scale(&s) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_supersymmetric(&self) -> bool {
        self.supersymmetry_violations().is_empty()
    }

    /// Entries whose parity is not `|a| + |b|`.
    pub fn parity_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.entries.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                let wrong = !(self.odd(a) ^ self.odd(b));
                if !e.parity_part(wrong).is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.parity_violations().is_empty()
    }

    pub fn project_degree(&self, k: isize) -> Self {
        self.map(|a, b, e| {
            let c = k - self.offset(a, b);
            if c < 0 {
                Superfunction::zero(self.p, self.q)
            } else {
                e.project_degree(c as usize)
            }
        })
    }

    pub fn truncate_below(&self, k: isize) -> Self {
        self.map(|a, b, e| e.truncate_below((k - self.offset(a, b)).max(0) as usize))
    }

    fn degrees(&self) -> impl Iterator<Item = isize> + '_ {
        self.entries.iter().enumerate().flat_map(move |(a, row)| {
            row.iter().enumerate().flat_map(move |(b, e)| {
                let off = self.offset(a, b);
                e.terms().map(move |(m, _)| m.degree() as isize + off)
            })
        })
    }

    pub fn floor(&self) -> Option<isize> {
        self.degrees().min()
    }

    pub fn max_degree(&self) -> Option<isize> {
        self.degrees().max()
    }

    pub fn max_poly_degree(&self) -> Option<u32> {
        self.entries.iter().flatten().filter_map(Superfunction::max_poly_degree).max()
    }

    /// The reduction `g_R = g₀ + g₂`: the parts of degree 0 and 2.
    pub fn reduction(&self) -> Self {
        &self.project_degree(0) + &self.project_degree(2)
    }

    /// Block-diagonal leading part: coefficient-degree-0 entries of the even-even
    /// and odd-odd blocks.
    fn leading_blocks(&self) -> (Vec<Vec<Polynomial<S>>>, Vec<Vec<Polynomial<S>>>) {
        let (p, q) = (self.p, self.q);
        let even = (0..p).map(|a| (0..p).map(|b| self.entries[a][b].project_degree(0).body()).collect()).collect();
        let odd = (p..p + q).map(|a| (p..p + q).map(|b| self.entries[a][b].project_degree(0).body()).collect()).collect();
        (even, odd)
    }

    /// Matrix inverse `C` with `B C = C B = Id`: exact inversion of the two
    /// leading blocks, then a finite Neumann series for the nilpotent rest.
    /// Fails when a leading block lacks constant nonzero determinant.
    pub fn inverse_matrix(&self) -> Result<Vec<Vec<Superfunction<S>>>> {
        let (p, q) = (self.p, self.q);
        let n = p + q;
        let (even, odd) = self.leading_blocks();
        let ie = polynomial_matrix_inverse(&even, p).ok_or(Error::ReductionDegenerate)?;
        let io = polynomial_matrix_inverse(&odd, p).ok_or(Error::ReductionDegenerate)?;
        let mut dinv = vec![vec![Superfunction::zero(p, q); n]; n];
        for a in 0..p {
            for b in 0..p {
                dinv[a][b] = Superfunction::from_poly(q, ie[a][b].clone());
            }
        }
        for a in 0..q {
            for b in 0..q {
                dinv[p + a][p + b] = Superfunction::from_poly(q, io[a][b].clone());
            }
        }
        let mut rest = self.entries.clone();
        for a in 0..n {
            for b in 0..n {
                if frame_is_odd(p, a) == frame_is_odd(p, b) {
                    rest[a][b] = rest[a][b].truncate_below(1);
                }
            }
        }
        // B = D (Id + D^{-1} N),  B^{-1} = Σ (-D^{-1} N)^k D^{-1}
        let m = matmul(&dinv, &rest, p, q);
        let neg_m: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|e| -e).collect()).collect();
        let mut acc = dinv.clone();
        let mut term = dinv;
        for _ in 0..=q {
            term = matmul(&neg_m, &term, p, q);
            if term.iter().flatten().all(Superfunction::is_zero) {
                break;
            }
            for a in 0..n {
                for b in 0..n {
                    acc[a][b] = &acc[a][b] + &term[a][b];
                }
            }
        }
        Ok(acc)
    }

    /// Non-degeneracy of the reduction: both leading blocks invertible.
    pub fn is_nondegenerate(&self) -> bool {
        let (even, odd) = self.leading_blocks();
        polynomial_matrix_inverse(&even, self.p).is_some()
            && polynomial_matrix_inverse(&odd, self.p).is_some()
    }

    /// Endomorphism `T` with `g(T X, Y) = h(X, Y)`.
    pub fn raise(&self, h: &MetricTensor<S>) -> Result<EndoTensor<S>> {
        let c = self.inverse_matrix()?;
        Ok(raise_with(&c, h))
    }

    /// The bilinear form `(X, Y) ↦ g(T X, Y)`.
    pub fn lower(&self, t: &EndoTensor<S>) -> Self {
        let (p, q) = (self.p, self.q);
        let cols: Vec<SuperVectorField<S>> = (0..self.dim()).map(|a| t.column(a)).collect();
        Self::from_frame_pairs(p, q, |a, b| self.eval(&cols[a], &SuperVectorField::frame(p, q, b)))
    }

    /// The field `Z` with `g(Z, e_c) = <e_c, α>` for every frame vector.
    pub fn raise_covector(&self, alpha: &SuperCovector<S>) -> Result<SuperVectorField<S>> {
        let (p, q) = (self.p, self.q);
        let c = self.inverse_matrix()?;
        let comps = (0..p + q)
            .map(|d| (0..p + q).fold(Superfunction::zero(p, q), |acc, b| &acc + &(alpha.component(b) * &c[b][d])))
            .collect();
        SuperVectorField::from_components(p, q, comps)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|_, _, e| e.scale(c))
    }

    pub fn evaluate_at_point(&self, point: &[S]) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate_at_point(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(MetricTensor { p: self.p, q: self.q, entries })
    }
}

pub(crate) fn matmul<S: Scalar>(
    x: &[Vec<Superfunction<S>>],
    y: &[Vec<Superfunction<S>>],
    p: usize,
    q: usize,
) -> Vec<Vec<Superfunction<S>>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Superfunction::zero(p, q), |acc, k| {
                        if x[i][k].is_zero() || y[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&x[i][k] * &y[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `T[d][b] = Σ_c h[b][c] C[c][d]` so that `g(T e_b, e_e) = h(e_b, e_e)`.
pub(crate) fn raise_with<S: Scalar>(c: &[Vec<Superfunction<S>>], h: &MetricTensor<S>) -> EndoTensor<S> {
    let (p, q) = h.signature();
    let hc = matmul(h.entries(), c, p, q);
    let n = p + q;
    let entries = (0..n).map(|d| (0..n).map(|b| hc[b][d].clone()).collect()).collect();
    EndoTensor::from_entries(p, q, entries).expect("square tensor")
}

impl<S: Scalar> Add for &MetricTensor<S> {
    type Output = MetricTensor<S>;
    fn add(self, rhs: &MetricTensor<S>) -> MetricTensor<S> {
        assert_eq!(self.signature(), rhs.signature(), "tensor signature mismatch");
        self.map(|a, b, e| e + &rhs.entries[a][b])
    }
}

impl<S: Scalar> Sub for &MetricTensor<S> {
    type Output = MetricTensor<S>;
    fn sub(self, rhs: &MetricTensor<S>) -> MetricTensor<S> {
        assert_eq!(self.signature(), rhs.signature(), "tensor signature mismatch");
        self.map(|a, b, e| e - &rhs.entries[a][b])
    }
}

impl<S: Scalar> Neg for &MetricTensor<S> {
    type Output = MetricTensor<S>;
    fn neg(self) -> MetricTensor<S> {
        self.map(|_, _, e| -e)
    }
}
