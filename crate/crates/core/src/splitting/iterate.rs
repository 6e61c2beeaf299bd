use serde_json::{json, Value};

use super::system::{build_system_acs, build_system_metric, solve, SolveStatus, Structure};
use crate::algebra::{superfunction_to_json, Superfunction};
use crate::error::{Error, Result};
use crate::fields::{field_to_json, Automorphism, SuperVectorField};
use crate::model::{build_model, pairing};
use crate::scalar::Scalar;
use crate::tensor::{
    check_acs, check_metric, nilpotent_split_acs, nilpotent_split_metric, pullback_acs, pullback_metric, tensor_to_json,
    AnyTensor, EndoTensor,
};

/// Caveat attached to every obstructed verdict.
pub const POLYNOMIAL_CAVEAT: &str =
    "unsolvable among polynomial fields of the stated coefficient degree; smooth non-polynomial fields are not ruled out";

#[derive(Clone, Debug, Default)]
pub struct SplitOptions<S> {
    /// Coefficient degree bound; per step default is the target's maximal
    /// polynomial degree plus one.
    pub degree_bound: Option<u32>,
    /// Sample points for obstruction certificates.
    pub points: Vec<Vec<S>>,
}

/// Obstruction certificate: the residual block and, on model signatures
/// `p = q = 2n`, its pairing `Y(π(ξ_{J_M}))(η)` evaluated at sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S> {
    pub residual: EndoTensor<S>,
    pub pairing: Option<Superfunction<S>>,
    pub point_values: Vec<(Vec<S>, Superfunction<S>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepStatus<S> {
    Split(SuperVectorField<S>),
    Obstructed(Certificate<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitStep<S> {
    pub degree: usize,
    pub bound: u32,
    pub unknowns: usize,
    pub rows: usize,
    pub status: StepStatus<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport<S> {
    pub structure: Structure,
    pub degree_bound: u32,
    pub steps: Vec<SplitStep<S>>,
    /// Composite of all applied automorphisms (last applied outermost).
    pub automorphism: Automorphism<S>,
    /// The tensor after all successful steps.
    pub final_tensor: AnyTensor<S>,
    /// Whether the nilpotent part of `final_tensor` vanishes.
    pub final_nilpotent_zero: bool,
}

impl<S: Scalar> SplitReport<S> {
    pub fn is_split(&self) -> bool {
        self.steps.iter().all(|s| matches!(s.status, StepStatus::Split(_))) && self.final_nilpotent_zero
    }

    pub fn obstructed_degree(&self) -> Option<usize> {
        self.steps.iter().find(|s| matches!(s.status, StepStatus::Obstructed(_))).map(|s| s.degree)
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let (status, witness, certificate) = match &s.status {
                    StepStatus::Split(z) => ("split", field_to_json(z), Value::Null),
                    StepStatus::Obstructed(c) => ("obstructed", Value::Null, certificate_json(c)),
                };
                json!({
                    "degree": s.degree,
                    "status": status,
                    "degreeBound": s.bound,
                    "unknowns": s.unknowns,
                    "rows": s.rows,
                    "witness": witness,
                    "certificate": certificate,
                })
            })
            .collect();
        json!({
            "structure": self.structure.as_str(),
            "degreeBound": self.degree_bound,
            "split": self.is_split(),
            "obstructedAt": self.obstructed_degree(),
            "finalNilpotentZero": self.final_nilpotent_zero,
            "steps": steps,
        })
    }
}

fn certificate_json<S: Scalar>(c: &Certificate<S>) -> Value {
    let frac = |v: &S| {
        let (n, d) = v.to_fraction();
        json!({"num": n, "den": d})
    };
    let (p, q) = c.residual.signature();
    json!({
        "residual": tensor_to_json(&AnyTensor::Endo(c.residual.clone()))["entries"].clone(),
        "residualSignature": [p, q],
        "pairing": c.pairing.as_ref().map(superfunction_to_json),
        "points": c.point_values.iter().map(|(pt, v)| json!({
            "point": pt.iter().map(frac).collect::<Vec<_>>(),
            "value": superfunction_to_json(v),
            "nonzero": !v.is_zero(),
        })).collect::<Vec<_>>(),
        "caveat": POLYNOMIAL_CAVEAT,
    })
}

fn certificate<S: Scalar>(residual: EndoTensor<S>, points: &[Vec<S>]) -> Result<Certificate<S>> {
    let (p, q) = residual.signature();
    let mut pairing_value = None;
    let mut point_values = Vec::new();
    if p == q && p % 2 == 0 && p > 0 {
        let model = build_model::<S>(p / 2)?;
        let v = pairing(&residual, &model.pi_xi_j(), &model.eta);
        for pt in points {
            point_values.push((pt.clone(), v.evaluate_at_point(pt)?));
        }
        pairing_value = Some(v);
    }
    Ok(Certificate { residual, pairing: pairing_value, point_values })
}

fn default_bound<S: Scalar>(target: &EndoTensor<S>) -> u32 {
    target.max_poly_degree().unwrap_or(0) + 1
}

/// Degree-by-degree removal of the nilpotent part of an almost complex structure.
pub fn iterative_split_acs<S: Scalar>(j: &EndoTensor<S>, opts: &SplitOptions<S>) -> Result<SplitReport<S>> {
    let report = check_acs(j);
    if !report.valid() {
        return Err(Error::InvalidInput("not an almost complex structure".into()));
    }
    let (p, q) = j.signature();
    let mut current = j.clone();
    let mut total = Automorphism::identity(p, q);
    let mut steps = Vec::new();
    let mut max_bound = opts.degree_bound.unwrap_or(0);
    for degree in (2..=q.max(2)).step_by(2) {
        let (j_r, y) = nilpotent_split_acs(&current)?;
        let target = y.project_degree(degree as isize);
        if target.is_zero() && y.floor().map_or(true, |f| f > degree as isize) {
            steps.push(SplitStep { degree, bound: 0, unknowns: 0, rows: 0, status: StepStatus::Split(SuperVectorField::zero(p, q)) });
            continue;
        }
        let bound = opts.degree_bound.unwrap_or_else(|| default_bound(&target));
        max_bound = max_bound.max(bound);
        let sys = build_system_acs(&j_r, &target, degree, bound)?;
        let (unknowns, rows) = (sys.unknown_count(), sys.row_count());
        match solve(&sys) {
            SolveStatus::Unsolvable => {
                let cert = certificate(target, &opts.points)?;
                steps.push(SplitStep { degree, bound, unknowns, rows, status: StepStatus::Obstructed(cert) });
                return Ok(SplitReport {
                    structure: Structure::Acs,
                    degree_bound: max_bound,
                    steps,
                    automorphism: total,
                    final_tensor: AnyTensor::Endo(current),
                    final_nilpotent_zero: false,
                });
            }
            SolveStatus::Witness(zeta) => {
                let phi = Automorphism::exp_field(&zeta)?;
                current = pullback_acs(&phi, &current)?;
                total = phi.compose(&total)?;
                let (_, y_new) = nilpotent_split_acs(&current)?;
                if y_new.floor().is_some_and(|f| f <= degree as isize) {
                    return Err(Error::Precondition(format!("witness at degree {degree} failed to raise the floor")));
                }
                steps.push(SplitStep { degree, bound, unknowns, rows, status: StepStatus::Split(zeta) });
            }
        }
    }
    let (_, y) = nilpotent_split_acs(&current)?;
    Ok(SplitReport {
        structure: Structure::Acs,
        degree_bound: max_bound,
        steps,
        automorphism: total,
        final_tensor: AnyTensor::Endo(current),
        final_nilpotent_zero: y.is_zero(),
    })
}

/// Metric analogue; the reduction `g_R = g₀ + g₂` is never attacked.
pub fn iterative_split_metric<S: Scalar>(
    g: &crate::tensor::MetricTensor<S>,
    opts: &SplitOptions<S>,
) -> Result<SplitReport<S>> {
    if !check_metric(g).valid() {
        return Err(Error::InvalidInput("not a valid metric".into()));
    }
    let (p, q) = g.signature();
    let mut current = g.clone();
    let mut total = Automorphism::identity(p, q);
    let mut steps = Vec::new();
    let mut max_bound = opts.degree_bound.unwrap_or(0);
    for degree in (2..=q.max(2)).step_by(2) {
        let (g_r, w) = nilpotent_split_metric(&current)?;
        let target = w.project_metric_degree(degree as isize);
        if target.is_zero() && w.metric_floor().map_or(true, |f| f > degree as isize) {
            steps.push(SplitStep { degree, bound: 0, unknowns: 0, rows: 0, status: StepStatus::Split(SuperVectorField::zero(p, q)) });
            continue;
        }
        let bound = opts.degree_bound.unwrap_or_else(|| default_bound(&target));
        max_bound = max_bound.max(bound);
        let sys = build_system_metric(&g_r, &target, degree, bound)?;
        let (unknowns, rows) = (sys.unknown_count(), sys.row_count());
        match solve(&sys) {
            SolveStatus::Unsolvable => {
                let cert = certificate(target, &opts.points)?;
                steps.push(SplitStep { degree, bound, unknowns, rows, status: StepStatus::Obstructed(cert) });
                return Ok(SplitReport {
                    structure: Structure::Metric,
                    degree_bound: max_bound,
                    steps,
                    automorphism: total,
                    final_tensor: AnyTensor::Metric(current),
                    final_nilpotent_zero: false,
                });
            }
            SolveStatus::Witness(zeta) => {
                let phi = Automorphism::exp_field(&zeta)?;
                current = pullback_metric(&phi, &current)?;
                total = phi.compose(&total)?;
                let (_, w_new) = nilpotent_split_metric(&current)?;
                if w_new.metric_floor().is_some_and(|f| f <= degree as isize) {
                    return Err(Error::Precondition(format!("witness at degree {degree} failed to raise the floor")));
                }
                steps.push(SplitStep { degree, bound, unknowns, rows, status: StepStatus::Split(zeta) });
            }
        }
    }
    let (_, w) = nilpotent_split_metric(&current)?;
    Ok(SplitReport {
        structure: Structure::Metric,
        degree_bound: max_bound,
        steps,
        automorphism: total,
        final_tensor: AnyTensor::Metric(current),
        final_nilpotent_zero: w.is_zero(),
    })
}
