use serde_json::{json, Value};

use super::endo::EndoTensor;
use super::json::tensor_entries_json;
use super::metric::{raise_with, MetricTensor};
use crate::error::{Error, Result};
use crate::fields::SuperVectorField;
use crate::scalar::Scalar;

fn minus_id<S: Scalar>(p: usize, q: usize) -> EndoTensor<S> {
    EndoTensor::identity(p, q).scale(&-S::one())
}

/// `J = J_R exp(Y)` with `J_R` the degree-0 part and `Y = log(-J_R J)`.
pub fn nilpotent_split_acs<S: Scalar>(j: &EndoTensor<S>) -> Result<(EndoTensor<S>, EndoTensor<S>)> {
    if !j.is_even() {
        return Err(Error::NotEven("almost complex structure candidate".into()));
    }
    let (p, q) = j.signature();
    let j_r = j.project_degree(0);
    if j_r.compose(&j_r) != minus_id(p, q) {
        return Err(Error::ReductionNotAlmostComplex);
    }
    // J_R^{-1} = -J_R
    let j_n = &(-&j_r.compose(j)) - &EndoTensor::identity(p, q);
    let y = j_n.log_one_plus()?;
    Ok((j_r, y))
}

pub fn recompose_acs<S: Scalar>(j_r: &EndoTensor<S>, y: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    Ok(j_r.compose(&y.exp()?))
}

/// `g = g_R exp(W)`, meaning `g(X, Y) = g_R(exp(W) X, Y)`, with `g_R` the
/// parts of degree 0 and 2.
pub fn nilpotent_split_metric<S: Scalar>(g: &MetricTensor<S>) -> Result<(MetricTensor<S>, EndoTensor<S>)> {
    if let Some(&(a, b)) = g.parity_violations().first() {
        return Err(Error::NotMetricCandidate(format!("entry ({}, {}) has the wrong parity", a + 1, b + 1)));
    }
    if let Some(&(a, b)) = g.supersymmetry_violations().first() {
        return Err(Error::NotMetricCandidate(format!("supersymmetry fails at ({}, {})", a + 1, b + 1)));
    }
    let g_r = g.reduction();
    let c = g_r.inverse_matrix()?;
    let (p, q) = g.signature();
    let g_n = &raise_with(&c, g) - &EndoTensor::identity(p, q);
    let w = g_n.log_one_plus()?;
    Ok((g_r, w))
}

pub fn recompose_metric<S: Scalar>(g_r: &MetricTensor<S>, w: &EndoTensor<S>) -> Result<MetricTensor<S>> {
    Ok(g_r.lower(&w.exp()?))
}

/// Validity of an almost complex structure, by both routes:
/// `J² = -Id` directly, and `J_R² = -Id` with `Y J_R + J_R Y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AcsReport<S> {
    pub even: bool,
    pub squares_to_minus_id: bool,
    pub reduction_squares_to_minus_id: bool,
    pub anticommutes: bool,
    /// `J² + Id`, present when nonzero.
    pub square_residual: Option<EndoTensor<S>>,
    /// `Y J_R + J_R Y`, present when nonzero.
    pub anticommutator_residual: Option<EndoTensor<S>>,
}

impl<S: Scalar> AcsReport<S> {
    pub fn factored_route(&self) -> bool {
        self.reduction_squares_to_minus_id && self.anticommutes
    }

    pub fn routes_agree(&self) -> bool {
        self.squares_to_minus_id == self.factored_route()
    }

    pub fn valid(&self) -> bool {
        self.even && self.squares_to_minus_id && self.factored_route()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid(),
            "even": self.even,
            "squaresToMinusId": self.squares_to_minus_id,
            "reductionSquaresToMinusId": self.reduction_squares_to_minus_id,
            "anticommutes": self.anticommutes,
            "routesAgree": self.routes_agree(),
            "squareResidual": self.square_residual.as_ref().map(tensor_entries_json),
            "anticommutatorResidual": self.anticommutator_residual.as_ref().map(tensor_entries_json),
        })
    }
}

pub fn check_acs<S: Scalar>(j: &EndoTensor<S>) -> AcsReport<S> {
    let (p, q) = j.signature();
    let residual = &j.compose(j) + &EndoTensor::identity(p, q);
    let j_r = j.project_degree(0);
    let reduction_ok = j_r.compose(&j_r) == minus_id(p, q);
    let anti = if reduction_ok {
        let j_n = &(-&j_r.compose(j)) - &EndoTensor::identity(p, q);
        j_n.log_one_plus().ok().map(|y| y.anticommutator(&j_r))
    } else {
        None
    };
    AcsReport {
        even: j.is_even(),
        squares_to_minus_id: residual.is_zero(),
        reduction_squares_to_minus_id: reduction_ok,
        anticommutes: anti.as_ref().is_some_and(EndoTensor::is_zero),
        square_residual: (!residual.is_zero()).then_some(residual),
        anticommutator_residual: anti.filter(|a| !a.is_zero()),
    }
}

/// Validity of a metric candidate: parity, supersymmetry, non-degeneracy of
/// the reduction, and symmetry of the nilpotent part `W` up to the degree
/// where the quadratic error term of `exp(W) ≈ Id + W` enters.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub even: bool,
    pub supersymmetric: bool,
    pub nondegenerate: bool,
    pub w_symmetric: bool,
    /// Metric floor `2k` of `W`, when `W ≠ 0`.
    pub w_floor: Option<isize>,
    /// Floor of the bilinear defect `g_R(W·,·) - g_R(·,W·)`.
    pub w_defect_floor: Option<isize>,
    /// 1-based frame pairs violating parity or supersymmetry.
    pub violations: Vec<(usize, usize)>,
}

impl MetricReport {
    pub fn valid(&self) -> bool {
        self.even && self.supersymmetric && self.nondegenerate && self.w_symmetric
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid(),
            "even": self.even,
            "supersymmetric": self.supersymmetric,
            "nondegenerate": self.nondegenerate,
            "wSymmetric": self.w_symmetric,
            "wFloor": self.w_floor,
            "wDefectFloor": self.w_defect_floor,
            "violations": self.violations.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// `g_R(W X, Y) - g_R(X, W Y)` on the frame, for even `W`.
pub(crate) fn symmetry_defect<S: Scalar>(g_r: &MetricTensor<S>, w: &EndoTensor<S>) -> MetricTensor<S> {
    let (p, q) = g_r.signature();
    let cols: Vec<SuperVectorField<S>> = (0..p + q).map(|b| w.column(b)).collect();
    let right = MetricTensor::from_frame_pairs(p, q, |a, b| g_r.eval(&SuperVectorField::frame(p, q, a), &cols[b]));
    &g_r.lower(w) - &right
}

pub fn check_metric<S: Scalar>(g: &MetricTensor<S>) -> MetricReport {
    let parity = g.parity_violations();
    let sym = g.supersymmetry_violations();
    let mut violations: Vec<(usize, usize)> = parity.iter().chain(&sym).map(|&(a, b)| (a + 1, b + 1)).collect();
    violations.sort_unstable();
    violations.dedup();
    let g_r = g.reduction();
    let nondegenerate = g_r.is_nondegenerate();
    let mut report = MetricReport {
        even: parity.is_empty(),
        supersymmetric: sym.is_empty(),
        nondegenerate,
        w_symmetric: false,
        w_floor: None,
        w_defect_floor: None,
        violations,
    };
    if !(report.even && report.supersymmetric && nondegenerate) {
        return report;
    }
    if let Ok((g_r, w)) = nilpotent_split_metric(g) {
        let defect = symmetry_defect(&g_r, &w);
        report.w_floor = w.metric_floor();
        report.w_defect_floor = defect.floor();
        report.w_symmetric = match (report.w_floor, report.w_defect_floor) {
            (_, None) => true,
            (Some(k), Some(d)) => d >= 2 * k + 2,
            (None, Some(_)) => false,
        };
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Superfunction;
    use crate::Rational;

    type F = Superfunction<Rational>;
    type T = EndoTensor<Rational>;
    type M = MetricTensor<Rational>;

    fn j_std(p: usize, q: usize) -> T {
        let mut t = T::zero(p, q);
        for base in [0, p] {
            let len = if base == 0 { p } else { q };
            for i in (0..len).step_by(2) {
                t.set_entry(base + i + 1, base + i, F::one(p, q));
                t.set_entry(base + i, base + i + 1, F::from_i64(p, q, -1));
            }
        }
        t
    }

    fn g_flat(p: usize, q: usize) -> M {
        M::from_frame_pairs(p, q, |a, b| {
            if a < p && a == b {
                F::one(p, q)
            } else if a >= p && b == a + 1 && (a - p) % 2 == 0 {
                F::one(p, q)
            } else if b >= p && a == b + 1 && (b - p) % 2 == 0 {
                F::from_i64(p, q, -1)
            } else {
                F::zero(p, q)
            }
        })
    }

    #[test]
    fn split_structures() {
        let j = j_std(4, 4);
        let (j_r, y) = nilpotent_split_acs(&j).unwrap();
        assert_eq!(j_r, j);
        assert!(y.is_zero());
        assert!(check_acs(&j).valid());
        let id = T::identity(4, 4);
        let rep = check_acs(&id);
        assert!(!rep.valid() && rep.routes_agree());
        assert!(matches!(nilpotent_split_acs(&id), Err(Error::ReductionNotAlmostComplex)));
    }

    #[test]
    fn first_order_nilpotent_part() {
        let (p, q) = (2, 2);
        let j = j_std(p, q);
        let mut n = T::zero(p, q);
        n.set_entry(0, 0, F::xi_product(p, q, &[0, 1]));
        n.set_entry(1, 1, F::xi_product(p, q, &[0, 1]).scale(&Rational::from_i64(-1)));
        assert!(n.compose(&n).is_zero());
        let jj = j.compose(&(&T::identity(p, q) + &n));
        let (_, y) = nilpotent_split_acs(&jj).unwrap();
        assert_eq!(y, n);
    }

    #[test]
    fn metric_split_and_checks() {
        let g = g_flat(2, 2);
        assert!(g.is_supersymmetric());
        let (g_r, w) = nilpotent_split_metric(&g).unwrap();
        assert_eq!(g_r, g);
        assert!(w.is_zero());
        assert!(check_metric(&g).valid());
        let mut bad = g.clone();
        bad.set_entry(0, 1, F::one(2, 2));
        let rep = check_metric(&bad);
        assert!(!rep.valid());
        assert_eq!(rep.violations, vec![(1, 2)]);
        assert!(matches!(nilpotent_split_metric(&M::zero(2, 2)), Err(Error::ReductionDegenerate)));
    }

    #[test]
    fn metric_inverse_is_two_sided() {
        let (p, q) = (2, 2);
        let mut g = g_flat(p, q);
        let e = F::xi_product(p, q, &[0, 1]);
        g.set_entry(0, 0, &F::one(p, q) + &e);
        g.set_entry(0, 1, F::x(p, q, 0));
        g.set_entry(1, 0, F::x(p, q, 0));
        g.set_entry(1, 1, &F::one(p, q) + &(&F::x(p, q, 0) * &F::x(p, q, 0)));
        let c = g.inverse_matrix().unwrap();
        let id: Vec<Vec<F>> =
            (0..4).map(|a| (0..4).map(|b| if a == b { F::one(p, q) } else { F::zero(p, q) }).collect()).collect();
        assert_eq!(super::super::metric::matmul(g.entries(), &c, p, q), id);
        assert_eq!(super::super::metric::matmul(&c, g.entries(), p, q), id);
    }
}
