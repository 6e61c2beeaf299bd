use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{Exponents, OddMonomial, Polynomial, Superfunction};
use crate::error::{Error, Result};
use crate::fields::{frame_is_odd, SuperVectorField};
use crate::linsolve::{LinearSystem, Solution};
use crate::scalar::Scalar;
use crate::tensor::{f_acs_ad_unchecked, g_metric_with, lie_derivative_metric, EndoTensor, MetricTensor};

/// Which structure a system or report concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    Acs,
    Metric,
}

impl Structure {
    pub fn as_str(self) -> &'static str {
        match self {
            Structure::Acs => "acs",
            Structure::Metric => "metric",
        }
    }
}

/// One unknown coefficient: the term `x^exp ξ^odd e_frame` of `ζ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Unknown {
    pub frame: usize,
    pub odd: OddMonomial,
    pub exp: Exponents,
}

/// Row label: equation kind, matrix position, odd and even monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct RowKey {
    membership: bool,
    a: usize,
    b: usize,
    odd: OddMonomial,
    exp: Exponents,
}

/// Linear system for `ζ_{2j}` at a fixed degree under a coefficient bound.
#[derive(Clone, Debug)]
pub struct ObstructionSystem<S> {
    pub structure: Structure,
    pub degree: usize,
    pub bound: u32,
    pub p: usize,
    pub q: usize,
    pub unknowns: Vec<Unknown>,
    pub system: LinearSystem<S>,
    target: EndoTensor<S>,
}

/// Outcome of solving an obstruction system.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveStatus<S> {
    Witness(SuperVectorField<S>),
    Unsolvable,
}

/// All exponent vectors in `nvars` variables of total degree `<= bound`,
/// by increasing total degree, then lexicographically.
pub fn exponents_up_to(nvars: usize, bound: u32) -> Vec<Exponents> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if cur.len() == nvars {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=bound {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Even fields of degree `degree`: `∂x` terms with `degree` odd generators,
/// `∂ξ` terms with `degree + 1`, polynomial part of degree `<= bound`.
fn unknown_basis(p: usize, q: usize, degree: usize, bound: u32) -> Vec<Unknown> {
    let exps = exponents_up_to(p, bound);
    let mut out = Vec::new();
    for exp in &exps {
        for frame in 0..p + q {
            let k = degree + frame_is_odd(p, frame) as usize;
            if k > q {
                continue;
            }
            for odd in OddMonomial::all_of_degree(q, k) {
                out.push(Unknown { frame, odd, exp: exp.clone() });
            }
        }
    }
    out
}

fn unknown_field<S: Scalar>(q: usize, u: &Unknown) -> SuperVectorField<S> {
    let f = Superfunction::term(q, u.odd, Polynomial::monomial(u.exp.clone(), S::one()));
    SuperVectorField::monomial(f, u.frame)
}

fn entry_rows<S: Scalar>(
    entries: &[Vec<Superfunction<S>>],
    membership: bool,
    out: &mut Vec<(RowKey, S)>,
) {
    for (a, row) in entries.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            for (odd, poly) in e.terms() {
                for (exp, c) in poly.terms() {
                    out.push((RowKey { membership, a, b, odd: *odd, exp: exp.clone() }, c.clone()));
                }
            }
        }
    }
}

fn assemble<S: Scalar>(
    unknowns: &[Unknown],
    images: Vec<Vec<(RowKey, S)>>,
    target: &EndoTensor<S>,
) -> LinearSystem<S> {
    let mut rows: BTreeMap<RowKey, (Vec<(usize, S)>, S)> = BTreeMap::new();
    for (col, image) in images.into_iter().enumerate() {
        for (key, c) in image {
            rows.entry(key).or_insert_with(|| (Vec::new(), S::zero())).0.push((col, c));
        }
    }
    let mut rhs = Vec::new();
    entry_rows(target.entries(), false, &mut rhs);
    for (key, c) in rhs {
        rows.entry(key).or_insert_with(|| (Vec::new(), S::zero())).1 = c;
    }
    let mut system = LinearSystem::new(unknowns.len());
    for (_, (coeffs, b)) in rows {
        system.push_row(coeffs, b);
    }
    system
}

fn check_homogeneous<S: Scalar>(t: &EndoTensor<S>, degree: usize, metric: bool) -> Result<()> {
    let part = if metric { t.project_metric_degree(degree as isize) } else { t.project_degree(degree as isize) };
    if &part != t {
        return Err(Error::InvalidInput(format!("target is not homogeneous of degree {degree}")));
    }
    Ok(())
}

/// System for `F_{J_R}(ad ζ) = Y_{2j}`.
pub fn build_system_acs<S: Scalar>(
    j_r: &EndoTensor<S>,
    target: &EndoTensor<S>,
    degree: usize,
    bound: u32,
) -> Result<ObstructionSystem<S>> {
    let (p, q) = j_r.signature();
    if target.signature() != (p, q) {
        return Err(Error::SignatureMismatch(p, q, target.p(), target.q()));
    }
    if j_r.compose(j_r) != EndoTensor::identity(p, q).scale(&-S::one()) {
        return Err(Error::Precondition("J_R does not square to -Id".into()));
    }
    check_homogeneous(target, degree, false)?;
    if !target.anticommutator(j_r).is_zero() {
        return Err(Error::InvalidInput("target does not anticommute with J_R".into()));
    }
    let unknowns = unknown_basis(p, q, degree, bound);
    let images: Vec<Vec<(RowKey, S)>> = unknowns
        .par_iter()
        .map(|u| {
            let img = f_acs_ad_unchecked(j_r, &unknown_field(q, u)).project_degree(degree as isize);
            let mut out = Vec::new();
            entry_rows(img.entries(), false, &mut out);
            out
        })
        .collect();
    let system = assemble(&unknowns, images, target);
    Ok(ObstructionSystem { structure: Structure::Acs, degree, bound, p, q, unknowns, system, target: target.clone() })
}

/// System for `G_{g_R}(ζ) = W_{2j}` together with the membership rows
/// asking that the degree-`2j` part of `L_ζ g₀` vanish.
pub fn build_system_metric<S: Scalar>(
    g_r: &MetricTensor<S>,
    target: &EndoTensor<S>,
    degree: usize,
    bound: u32,
) -> Result<ObstructionSystem<S>> {
    let (p, q) = g_r.signature();
    if target.signature() != (p, q) {
        return Err(Error::SignatureMismatch(p, q, target.p(), target.q()));
    }
    let c = g_r.inverse_matrix()?;
    check_homogeneous(target, degree, true)?;
    let defect = crate::tensor::symmetry_defect(g_r, target);
    if !defect.project_degree(degree as isize + 2).is_zero() {
        return Err(Error::InvalidInput("target is not g_R-symmetric in its degree".into()));
    }
    let g0 = g_r.project_degree(0);
    let unknowns = unknown_basis(p, q, degree, bound);
    let images: Vec<Vec<(RowKey, S)>> = unknowns
        .par_iter()
        .map(|u| {
            let z = unknown_field(q, u);
            let img = g_metric_with(g_r, &c, &z).expect("signature checked").project_metric_degree(degree as isize);
            let member = lie_derivative_metric(&g0, &z).expect("signature checked").project_degree(degree as isize);
            let mut out = Vec::new();
            entry_rows(img.entries(), false, &mut out);
            entry_rows(member.entries(), true, &mut out);
            out
        })
        .collect();
    let system = assemble(&unknowns, images, target);
    Ok(ObstructionSystem { structure: Structure::Metric, degree, bound, p, q, unknowns, system, target: target.clone() })
}

impl<S: Scalar> ObstructionSystem<S> {
    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn row_count(&self) -> usize {
        self.system.nrows()
    }

    pub fn target(&self) -> &EndoTensor<S> {
        &self.target
    }

    pub fn field_from_coefficients(&self, coeffs: &[S]) -> SuperVectorField<S> {
        let (p, q) = (self.p, self.q);
        let mut comps = vec![Superfunction::zero(p, q); p + q];
        for (u, c) in self.unknowns.iter().zip(coeffs) {
            if !c.is_zero() {
                let t = Superfunction::term(q, u.odd, Polynomial::monomial(u.exp.clone(), c.clone()));
                comps[u.frame] = &comps[u.frame] + &t;
            }
        }
        SuperVectorField::from_components(p, q, comps).expect("signature")
    }
}

/// Solve; a returned witness has been checked against the linear equations.
pub fn solve<S: Scalar>(system: &ObstructionSystem<S>) -> SolveStatus<S> {
    match system.system.solve() {
        Solution::Unsolvable => SolveStatus::Unsolvable,
        Solution::Solved(x) => {
            assert!(
                system.system.residual(&x).iter().all(|r| r.is_zero()),
                "elimination produced a non-solution"
            );
            SolveStatus::Witness(system.field_from_coefficients(&x))
        }
    }
}
