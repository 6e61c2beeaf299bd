use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::algebra::Superfunction;
use crate::error::{Error, Result};
use crate::fields::{frame_degree, frame_is_odd, SuperVectorField};
use crate::scalar::{inv_factorial, sign, Scalar};

/// Module endomorphism of the vector fields, stored as the matrix of frame
/// images: `entries[a][b]` is the `a`-th component of `T(e_b)`.
///
/// An entry term `t` in position `(a, b)` acts with parity `|t| + |e_a| + |e_b|`
/// and contributes Z-degree `deg t + frameDeg(a) - frameDeg(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoTensor<S> {
    p: usize,
    q: usize,
    entries: Vec<Vec<Superfunction<S>>>,
}

/// Per-degree summands of a tensor; recomposition is their sum.
pub type DegreeDecomposition<T> = BTreeMap<isize, T>;

impl<S: Scalar> EndoTensor<S> {
    pub fn zero(p: usize, q: usize) -> Self {
        let n = p + q;
        EndoTensor { p, q, entries: vec![vec![Superfunction::zero(p, q); n]; n] }
    }

    pub fn identity(p: usize, q: usize) -> Self {
        let mut t = Self::zero(p, q);
        for a in 0..p + q {
            t.entries[a][a] = Superfunction::one(p, q);
        }
        t
    }

    pub fn from_entries(p: usize, q: usize, entries: Vec<Vec<Superfunction<S>>>) -> Result<Self> {
        let n = p + q;
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("tensor entries must be {n}x{n}")));
        }
        if let Some(f) = entries.iter().flatten().find(|f| f.signature() != (p, q)) {
            return Err(Error::SignatureMismatch(p, q, f.p(), f.q()));
        }
        Ok(EndoTensor { p, q, entries })
    }

    /// Matrix of a module-linear operator, read off from its frame images.
    pub fn from_columns(p: usize, q: usize, columns: impl IntoIterator<Item = SuperVectorField<S>>) -> Self {
        let mut t = Self::zero(p, q);
        for (b, col) in columns.into_iter().enumerate() {
            for a in 0..p + q {
                t.entries[a][b] = col.component(a).clone();
            }
        }
        t
    }

    /// Build from a closure evaluated on each frame vector.
    pub fn from_frame_map(p: usize, q: usize, f: impl Fn(&SuperVectorField<S>) -> SuperVectorField<S>) -> Self {
        Self::from_columns(p, q, (0..p + q).map(|b| f(&SuperVectorField::frame(p, q, b))))
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

    /// Column `b`: the field `T(e_b)`.
    pub fn column(&self, b: usize) -> SuperVectorField<S> {
        let comps = (0..self.dim()).map(|a| self.entries[a][b].clone()).collect();
        SuperVectorField::from_components(self.p, self.q, comps).expect("square tensor")
    }

    fn check_signature(&self, p: usize, q: usize) -> Result<()> {
        if (self.p, self.q) != (p, q) {
            return Err(Error::SignatureMismatch(self.p, self.q, p, q));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(usize, usize, &Superfunction<S>) -> Superfunction<S>) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(a, row)| row.iter().enumerate().map(|(b, e)| f(a, b, e)).collect())
            .collect();
        EndoTensor { p: self.p, q: self.q, entries }
    }

    fn entry_parity(&self, a: usize, b: usize) -> bool {
        frame_is_odd(self.p, a) ^ frame_is_odd(self.p, b)
    }

    /// Operator-parity part.
    pub fn parity_part(&self, odd: bool) -> Self {
        self.map(|a, b, e| e.parity_part(odd ^ self.entry_parity(a, b)))
    }

    pub fn parity(&self) -> Option<bool> {
        let even = self.parity_part(false).is_zero();
        let odd = self.parity_part(true).is_zero();
        match (even, odd) {
            (true, true) => Some(false),
            (false, true) => Some(false),
            (true, false) => Some(true),
            (false, false) => None,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity_part(true).is_zero()
    }

    fn offset(&self, a: usize, b: usize) -> isize {
        frame_degree(self.p, a) - frame_degree(self.p, b)
    }

    /// Part of contribution degree exactly `k`.
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

    /// Metric grading: the degree of `g_R(T ·, ·)` minus 2 for a block-diagonal
    /// reduction, i.e. the contribution degree lowered by 2 on even rows.
    fn metric_offset(&self, a: usize, b: usize) -> isize {
        self.offset(a, b) - 2 - 2 * frame_degree(self.p, a)
    }

    pub fn project_metric_degree(&self, k: isize) -> Self {
        self.map(|a, b, e| {
            let c = k - self.metric_offset(a, b);
            if c < 0 {
                Superfunction::zero(self.p, self.q)
            } else {
                e.project_degree(c as usize)
            }
        })
    }

    pub fn metric_floor(&self) -> Option<isize> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(a, row)| {
                row.iter().enumerate().flat_map(move |(b, e)| {
                    let off = self.metric_offset(a, b);
                    e.terms().map(move |(m, _)| m.degree() as isize + off)
                })
            })
            .min()
    }

    /// Part of degree at least `k`.
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

    /// Minimal contribution degree; `None` for the zero tensor.
    pub fn floor(&self) -> Option<isize> {
        self.degrees().min()
    }

    pub fn max_degree(&self) -> Option<isize> {
        self.degrees().max()
    }

    pub fn max_poly_degree(&self) -> Option<u32> {
        self.entries.iter().flatten().filter_map(Superfunction::max_poly_degree).max()
    }

    pub fn degree_decompose(&self) -> DegreeDecomposition<Self> {
        let mut out = BTreeMap::new();
        let degs: std::collections::BTreeSet<isize> = self.degrees().collect();
        for k in degs {
            let part = self.project_degree(k);
            if !part.is_zero() {
                out.insert(k, part);
            }
        }
        out
    }

    /// `T(X)`, with `T(f X) = (-1)^{|T||f|} f T(X)` on homogeneous pieces.
    pub fn try_apply(&self, x: &SuperVectorField<S>) -> Result<SuperVectorField<S>> {
        let (xp, xq) = x.signature();
        self.check_signature(xp, xq)?;
        let n = self.dim();
        let mut comps = vec![Superfunction::zero(self.p, self.q); n];
        for b in 0..n {
            let xb = x.component(b);
            if xb.is_zero() {
                continue;
            }
            let x_parts: Vec<(bool, Superfunction<S>)> =
                [false, true].into_iter().map(|o| (o, xb.parity_part(o))).filter(|(_, f)| !f.is_zero()).collect();
            for (a, comp) in comps.iter_mut().enumerate() {
                let t = &self.entries[a][b];
                if t.is_zero() {
                    continue;
                }
                for ot in [false, true] {
                    let tp = t.parity_part(ot);
                    if tp.is_zero() {
                        continue;
                    }
                    let tau = ot ^ self.entry_parity(a, b);
                    for (ox, xpart) in &x_parts {
                        let s: S = sign(tau && *ox);
                        *comp += &(xpart * &tp).scale(&s);
                    }
                }
            }
        }
        SuperVectorField::from_components(self.p, self.q, comps)
    }

    pub fn apply(&self, x: &SuperVectorField<S>) -> SuperVectorField<S> {
        self.try_apply(x).expect("tensor application")
    }

    /// `self ∘ other`.
    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        other.check_signature(self.p, self.q)?;
        Ok(Self::from_columns(self.p, self.q, (0..self.dim()).map(|b| self.apply(&other.column(b)))))
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.try_compose(other).expect("tensor composition")
    }

    /// Graded commutator `[S, T] = ST - (-1)^{|S||T|} TS` over parity parts.
    pub fn commutator(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p, self.q);
        for os in [false, true] {
            let s = self.parity_part(os);
            if s.is_zero() {
                continue;
            }
            for ot in [false, true] {
                let t = other.parity_part(ot);
                if t.is_zero() {
                    continue;
                }
                let c: S = sign(os && ot);
                out = &out + &(&s.compose(&t) - &t.compose(&s).scale(&c));
            }
        }
        out
    }

    /// `ST + TS`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.compose(other) + &other.compose(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.p, self.q);
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `(f T)(X) = f · T(X)`.
    pub fn mul_left(&self, f: &Superfunction<S>) -> Self {
        self.map(|_, _, e| f * e)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|_, _, e| e.scale(c))
    }

    /// `exp(Y) = Σ Y^k / k!` for `Y` of positive floor (finite sum).
    pub fn exp(&self) -> Result<Self> {
        self.require_nilpotent("exp")?;
        let mut acc = Self::identity(self.p, self.q);
        let mut term = acc.clone();
        for k in 1.. {
            term = self.compose(&term);
            if term.is_zero() {
                break;
            }
            acc = &acc + &term.scale(&inv_factorial(k));
        }
        Ok(acc)
    }

    /// `log(Id + N) = Σ (-1)^{k+1} N^k / k` for `N` of positive floor.
    pub fn log_one_plus(&self) -> Result<Self> {
        self.require_nilpotent("log")?;
        let mut acc = Self::zero(self.p, self.q);
        let mut term = Self::identity(self.p, self.q);
        for k in 1i64.. {
            term = self.compose(&term);
            if term.is_zero() {
                break;
            }
            acc = &acc + &term.scale(&S::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k));
        }
        Ok(acc)
    }

    fn require_nilpotent(&self, what: &str) -> Result<()> {
        match self.floor() {
            Some(f) if f < 1 => Err(Error::Precondition(format!("{what} needs a tensor of positive degree, floor is {f}"))),
            _ => Ok(()),
        }
    }

    pub fn evaluate_at_point(&self, point: &[S]) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate_at_point(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(EndoTensor { p: self.p, q: self.q, entries })
    }

    /// Frame positions `(a, b)` whose entry is nonzero.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.entries.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for &EndoTensor<S> {
    type Output = EndoTensor<S>;
    fn add(self, rhs: &EndoTensor<S>) -> EndoTensor<S> {
        assert_eq!(self.signature(), rhs.signature(), "tensor signature mismatch");
        self.map(|a, b, e| e + &rhs.entries[a][b])
    }
}

impl<S: Scalar> Sub for &EndoTensor<S> {
    type Output = EndoTensor<S>;
    fn sub(self, rhs: &EndoTensor<S>) -> EndoTensor<S> {
        assert_eq!(self.signature(), rhs.signature(), "tensor signature mismatch");
        self.map(|a, b, e| e - &rhs.entries[a][b])
    }
}

impl<S: Scalar> Neg for &EndoTensor<S> {
    type Output = EndoTensor<S>;
    fn neg(self) -> EndoTensor<S> {
        self.map(|_, _, e| -e)
    }
}
