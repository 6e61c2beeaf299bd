//! The verification suite: every registered identity, certificate and
//! round-trip, run over one model and one seed, merged into a deterministic
//! JSON report.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::superfunction_to_json;
use crate::error::{Error, Result};
use crate::fields::{field_to_json, Automorphism, SuperVectorField};
use crate::model::{
    self, bracket_lemma_sides, build_model, build_w_eta, build_y_eta, complex_lemma_residuals,
    contraction_lemma_residual, default_points, nowhere_split_acs, nowhere_split_metric, pairing, pi_apply,
    StandardModel,
};
use crate::random;
use crate::splitting::{
    build_system_acs, build_system_metric, deformation_path_check_acs, deformation_path_check_metric,
    iterative_split_acs, iterative_split_metric, solve, SolveStatus, SplitOptions, SplitReport,
};
use crate::tensor::{
    f_acs, f_acs_ad, first_order_pullback_acs, first_order_pullback_metric, g_metric, nilpotent_split_acs,
    parse_tensor, pullback_acs, pullback_metric, recompose_acs, tensor_to_json, theta_identity_check, AnyTensor,
    EndoTensor,
};
use crate::Rational;

type Q = Rational;

/// Largest supported `n`; odd monomials are 32-bit masks.
pub const MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteKind {
    Lemma,
    Theorem,
    Solver,
    Paths,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [SuiteKind::Lemma, SuiteKind::Theorem, SuiteKind::Solver, SuiteKind::Paths];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Lemma => "lemma",
            SuiteKind::Theorem => "theorem",
            SuiteKind::Solver => "solver",
            SuiteKind::Paths => "paths",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite \"{s}\"")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub n: usize,
    /// `None`: per-step default (target polynomial degree plus one).
    pub degree_bound: Option<u32>,
    pub seed: u64,
    /// Number of sample points for pointwise certificates.
    pub points: usize,
    /// Random instances per randomized check.
    pub trials: usize,
    pub suites: Vec<SuiteKind>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: 3, degree_bound: None, seed: 1, points: 10, trials: 5, suites: SuiteKind::ALL.to_vec() }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 || self.n > MAX_N {
            return Err(Error::InvalidInput(format!("n must lie in 1..={MAX_N}, got {}", self.n)));
        }
        if self.points == 0 {
            return Err(Error::InvalidInput("at least one sample point is needed".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("at least one trial is needed".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidInput("no suite selected".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        json!({
            "n": self.n,
            "degreeBound": self.degree_bound,
            "seed": self.seed,
            "points": self.points,
            "trials": self.trials,
            "suites": suites.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypotheses of the checked statement do not hold for this config.
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub anchor: &'static str,
    pub suite: SuiteKind,
    pub status: CheckStatus,
    /// Witness on success, exact residual on failure.
    pub detail: Value,
}

impl CheckRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "anchor": self.anchor,
            "suite": self.suite.as_str(),
            "status": self.status.as_str(),
            "detail": self.detail,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    /// Ordered by check name.
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config.to_json(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
        })
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<8} {:<8} {:<40} {}\n", c.status.as_str(), c.suite.as_str(), c.name, c.anchor));
        }
        let fails = self.checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), fails));
        out
    }
}

struct Ctx {
    config: SuiteConfig,
    model: StandardModel<Q>,
    points: Vec<Vec<Q>>,
}

impl Ctx {
    fn p(&self) -> usize {
        self.model.dim()
    }

    /// Independent stream per check, so results do not depend on scheduling.
    fn rng(&self, name: &str) -> ChaCha8Rng {
        let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        random::rng(self.config.seed ^ h)
    }

    fn split_options(&self) -> SplitOptions<Q> {
        SplitOptions { degree_bound: self.config.degree_bound, points: self.points.clone() }
    }
}

type Outcome = Result<(CheckStatus, Value)>;

struct CheckDef {
    name: &'static str,
    anchor: &'static str,
    suite: SuiteKind,
    run: fn(&Ctx) -> Outcome,
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "acs.exp_squares_to_minus_id",
        anchor: "Y J_R + J_R Y = 0",
        suite: SuiteKind::Lemma,
        run: acs_exp_squares,
    },
    CheckDef {
        name: "acs.first_order_pullback",
        anchor: "phi^* = exp(zeta) phi_0^*",
        suite: SuiteKind::Lemma,
        run: acs_first_order,
    },
    CheckDef {
        name: "acs.nilpotent_part_anticommutes",
        anchor: "unique representation Id + J_N = exp(Y)",
        suite: SuiteKind::Lemma,
        run: acs_nilpotent_anticommutes,
    },
    CheckDef {
        name: "metric.first_order_pullback",
        anchor: "zeta (phi_0^*.g)",
        suite: SuiteKind::Lemma,
        run: metric_first_order,
    },
    CheckDef {
        name: "model.bracket_lemma",
        anchor: "[pi(xi_f), pi(xi_g)] = -pi(xi_[f,g])",
        suite: SuiteKind::Lemma,
        run: bracket_lemma,
    },
    CheckDef {
        name: "model.compatibility",
        anchor: "eta(xi_J, xi_J) = eta",
        suite: SuiteKind::Lemma,
        run: compatibility,
    },
    CheckDef {
        name: "model.complex_lemma",
        anchor: "J_R(xi_J) = -xi_Id and J_R(pi(xi_J)) = -pi(xi_Id)",
        suite: SuiteKind::Lemma,
        run: complex_lemma,
    },
    CheckDef {
        name: "model.contraction_lemma",
        anchor: "pi(xi_f)(omega) = 1/2 (omega(f.,.) + omega(.,f.))",
        suite: SuiteKind::Lemma,
        run: contraction_lemma,
    },
    CheckDef { name: "model.pi_involution", anchor: "pi^2 = Id", suite: SuiteKind::Lemma, run: pi_involution },
    CheckDef {
        name: "paths.acs",
        anchor: "t -> J_R exp(tY)",
        suite: SuiteKind::Paths,
        run: path_acs,
    },
    CheckDef {
        name: "paths.metric",
        anchor: "t -> (g_0 + t g_2) exp(sum t^j W_2j)",
        suite: SuiteKind::Paths,
        run: path_metric,
    },
    CheckDef {
        name: "solver.oracle_agreement_acs",
        anchor: "Y'_2j = phi_0^*.Y_2j - ad(zeta_2j)",
        suite: SuiteKind::Solver,
        run: oracle_acs,
    },
    CheckDef {
        name: "solver.oracle_agreement_metric",
        anchor: "G_g_R(zeta) = ad(zeta) + g_R^-1 (ad^*(zeta) - zeta) g_R",
        suite: SuiteKind::Solver,
        run: oracle_metric,
    },
    CheckDef {
        name: "solver.round_trip_acs",
        anchor: "starting with j = 1 iteratively",
        suite: SuiteKind::Solver,
        run: round_trip_acs,
    },
    CheckDef {
        name: "solver.round_trip_metric",
        anchor: "starting with j = 1 iteratively",
        suite: SuiteKind::Solver,
        run: round_trip_metric,
    },
    CheckDef {
        name: "theorem.certificates",
        anchor: "F_J_R(ad(eta pi(xi_J))) = eta F_J_R(ad(pi(xi_J))) - Y_eta",
        suite: SuiteKind::Theorem,
        run: certificates,
    },
    CheckDef {
        name: "theorem.explicit_split_witness",
        anchor: "are nowhere split",
        suite: SuiteKind::Theorem,
        run: explicit_witness,
    },
    CheckDef {
        name: "theorem.nowhere_vanishing_w",
        anchor: "W_eta(pi(xi_J))(eta) = eta^2 up to terms of degree 6",
        suite: SuiteKind::Theorem,
        run: nowhere_vanishing_w,
    },
    CheckDef {
        name: "theorem.nowhere_vanishing_y",
        anchor: "(Y_eta(pi(xi_J)))(eta) = eta^2",
        suite: SuiteKind::Theorem,
        run: nowhere_vanishing_y,
    },
    CheckDef {
        name: "theorem.obstruction_acs",
        anchor: "are nowhere split",
        suite: SuiteKind::Theorem,
        run: obstruction_acs,
    },
    CheckDef {
        name: "theorem.obstruction_metric",
        anchor: "are nowhere split",
        suite: SuiteKind::Theorem,
        run: obstruction_metric,
    },
    CheckDef {
        name: "theta.decomposition",
        anchor: "(f ad(chi) - ad(f chi))",
        suite: SuiteKind::Lemma,
        run: theta_decomposition,
    },
];

/// Names and anchors of all registered checks, in report order.
pub fn registered_checks() -> Vec<(&'static str, SuiteKind, &'static str)> {
    let mut v: Vec<_> = CHECKS.iter().map(|c| (c.name, c.suite, c.anchor)).collect();
    v.sort_by_key(|c| c.0);
    v
}

pub fn run_paper_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let model = build_model::<Q>(config.n)?;
    let points = default_points(model.dim(), config.points);
    let ctx = Ctx { config: config.clone(), model, points };
    let mut checks: Vec<CheckRecord> = CHECKS
        .par_iter()
        .filter(|c| config.suites.contains(&c.suite))
        .map(|c| {
            let (status, detail) = match (c.run)(&ctx) {
                Ok(r) => r,
                Err(e) => (CheckStatus::Fail, json!({"error": e.to_string()})),
            };
            CheckRecord { name: c.name, anchor: c.anchor, suite: c.suite, status, detail }
        })
        .collect();
    checks.sort_by_key(|c| c.name);
    Ok(SuiteReport { config: config.clone(), checks })
}

/// Parse a tensor file: an endomorphism or a metric.
pub fn parse_tensor_file(bytes: &[u8]) -> Result<AnyTensor<Q>> {
    parse_tensor(bytes)
}

/// Parse and split a tensor file.
pub fn run_split(bytes: &[u8], opts: &SplitOptions<Q>) -> Result<SplitReport<Q>> {
    match parse_tensor_file(bytes)? {
        AnyTensor::Endo(j) => iterative_split_acs(&j, opts),
        AnyTensor::Metric(g) => iterative_split_metric(&g, opts),
    }
}

fn endo_json(t: &EndoTensor<Q>) -> Value {
    tensor_to_json(&AnyTensor::Endo(t.clone()))
}

/// Collects the first failing trial.
fn trials(ctx: &Ctx, mut f: impl FnMut(usize) -> Result<Option<Value>>) -> Outcome {
    for k in 0..ctx.config.trials {
        if let Some(residual) = f(k)? {
            return Ok((CheckStatus::Fail, json!({"trial": k, "residual": residual})));
        }
    }
    Ok((CheckStatus::Pass, json!({"trials": ctx.config.trials})))
}

fn acs_exp_squares(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("acs.exp_squares_to_minus_id");
    let (p, j_r) = (ctx.p(), &ctx.model.j_r);
    let minus_id = EndoTensor::identity(p, p).scale(&-Q::from_integer(1.into()));
    trials(ctx, |_| {
        let gamma = random::filtered_endo(&mut r, p, p, 2, 1);
        let y = f_acs(j_r, &gamma)?;
        let j = recompose_acs(j_r, &y)?;
        let res = &j.compose(&j) - &minus_id;
        Ok((!res.is_zero() || !y.anticommutator(j_r).is_zero()).then(|| endo_json(&res)))
    })
}

fn acs_nilpotent_anticommutes(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("acs.nilpotent_part_anticommutes");
    let (p, j_r) = (ctx.p(), &ctx.model.j_r);
    trials(ctx, |_| {
        let zeta = random::filtered_even_field(&mut r, p, p, 1, false);
        let j = pullback_acs(&Automorphism::exp_field(&zeta)?, j_r)?;
        let (red, y) = nilpotent_split_acs(&j)?;
        let res = y.anticommutator(&red);
        Ok((!res.is_zero() || &red != j_r).then(|| endo_json(&res)))
    })
}

fn acs_first_order(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("acs.first_order_pullback");
    let (p, j_r) = (ctx.p(), &ctx.model.j_r);
    trials(ctx, |_| {
        let zeta = random::filtered_even_field(&mut r, p, p, 1, false);
        let full = pullback_acs(&Automorphism::exp_field(&zeta)?, j_r)?;
        let res = &full - &first_order_pullback_acs(&zeta, j_r)?;
        Ok(res.floor().is_some_and(|f| f < 4).then(|| endo_json(&res)))
    })
}

fn metric_first_order(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("metric.first_order_pullback");
    let (p, g_r) = (ctx.p(), &ctx.model.g_r);
    trials(ctx, |_| {
        let zeta = random::filtered_even_field(&mut r, p, p, 1, false);
        let full = pullback_metric(&Automorphism::exp_field(&zeta)?, g_r)?;
        let first = first_order_pullback_metric(&zeta, g_r)?;
        let res = &full - &first;
        Ok(res.floor().is_some_and(|f| f < 4).then(|| tensor_to_json(&AnyTensor::Metric(res))))
    })
}

fn theta_decomposition(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("theta.decomposition");
    let p = ctx.p();
    trials(ctx, |_| {
        let deg = r.gen_range(-1isize..=2);
        let chi = random::homogeneous_field(&mut r, p, p, deg, 2, false);
        let k = r.gen_range(0..=2usize);
        let f = random::homogeneous_superfunction(&mut r, p, p, k, 2, 2);
        let res = theta_identity_check(&chi, &f)?;
        Ok((!res.is_zero()).then(|| endo_json(&res)))
    })
}

fn pi_involution(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("model.pi_involution");
    let p = ctx.p();
    for a in 0..2 * p {
        let e = SuperVectorField::<Q>::frame(p, p, a);
        if pi_apply(&pi_apply(&e)) != e {
            return Ok((CheckStatus::Fail, json!({"frame": a})));
        }
    }
    trials(ctx, |_| {
        let x = random::homogeneous_field::<Q, _>(&mut r, p, p, 1, 2, false);
        let res = &pi_apply(&pi_apply(&x)) - &x;
        Ok((!res.is_zero()).then(|| field_to_json(&res)))
    })
}

fn compatibility(ctx: &Ctx) -> Outcome {
    let m = &ctx.model;
    let p_eta = m.pi_xi_j().apply(&m.eta);
    let g_pp = &m.g_r.eval(&m.pi_xi_j(), &m.pi_xi_j()) - &m.eta;
    Ok((
        CheckStatus::from_bool(p_eta.is_zero() && g_pp.is_zero()),
        json!({"pi_xi_J(eta)": superfunction_to_json(&p_eta), "residual": superfunction_to_json(&g_pp)}),
    ))
}

fn contraction_lemma(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("model.contraction_lemma");
    let p = ctx.p();
    trials(ctx, |_| {
        let f = random::poly_matrix::<Q, _>(&mut r, p, 2);
        let omega = random::homogeneous_superfunction(&mut r, p, p, 2, 2, 3);
        let res = contraction_lemma_residual(&f, &omega);
        Ok((!res.is_zero()).then(|| superfunction_to_json(&res)))
    })
}

fn bracket_lemma(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("model.bracket_lemma");
    let p = ctx.p();
    let half = Q::new((-1).into(), 2.into());
    trials(ctx, |_| {
        let f = random::poly_matrix::<Q, _>(&mut r, p, 2);
        let g = random::poly_matrix::<Q, _>(&mut r, p, 2);
        let (lhs, rhs) = bracket_lemma_sides(&f, &g);
        let res = &lhs + &rhs;
        Ok((!res.is_zero()).then(|| {
            json!({
                "lhs_plus_rhs": field_to_json(&res),
                "lhs_equals_minus_half_rhs": lhs == rhs.scale(&half),
            })
        }))
    })
}

fn complex_lemma(ctx: &Ctx) -> Outcome {
    let (a, b) = complex_lemma_residuals(&ctx.model);
    Ok((CheckStatus::from_bool(a.is_zero() && b.is_zero()), json!({"residuals": [field_to_json(&a), field_to_json(&b)]})))
}

fn nowhere_vanishing_y(ctx: &Ctx) -> Outcome {
    let m = &ctx.model;
    let v = pairing(&build_y_eta(m)?, &m.pi_xi_j(), &m.eta);
    let eta2 = &m.eta * &m.eta;
    let res = &v - &eta2;
    Ok((CheckStatus::from_bool(res.is_zero()), json!({"value": superfunction_to_json(&v), "residual": superfunction_to_json(&res)})))
}

fn nowhere_vanishing_w(ctx: &Ctx) -> Outcome {
    let m = &ctx.model;
    let v = pairing(&build_w_eta(m)?, &m.pi_xi_j(), &m.eta);
    let res = &v - &(&m.eta * &m.eta);
    let ok = res.floor().is_none_or(|f| f >= 6);
    Ok((CheckStatus::from_bool(ok), json!({"value": superfunction_to_json(&v), "residualFloor": res.floor()})))
}

fn certificates(ctx: &Ctx) -> Outcome {
    if ctx.config.n <= 2 {
        return Ok((CheckStatus::Skipped, json!({"reason": "needs n > 2"})));
    }
    let rep = model::nowhere_split_certificates(&ctx.model, &ctx.points)?;
    Ok((CheckStatus::from_bool(rep.passed()), rep.to_json()))
}

fn explicit_witness(ctx: &Ctx) -> Outcome {
    let m = &ctx.model;
    let zeta = m.pi_xi_j().mul_left(&(&m.eta * &m.eta)).scale(&Q::new((-1).into(), 2.into()));
    let phi = Automorphism::exp_field(&zeta)?;
    let acs = pullback_acs(&phi, &nowhere_split_acs(m)?)? == m.j_r;
    let metric = pullback_metric(&phi, &nowhere_split_metric(m)?)? == m.g_r;
    Ok((
        CheckStatus::from_bool(acs && metric),
        json!({"witness": field_to_json(&zeta), "acsSplit": acs, "metricSplit": metric}),
    ))
}

fn obstruction_outcome(rep: SplitReport<Q>) -> Outcome {
    let ok = rep.obstructed_degree() == Some(4);
    Ok((CheckStatus::from_bool(ok), json!({"expectedObstructedAt": 4, "report": rep.to_json()})))
}

fn obstruction_acs(ctx: &Ctx) -> Outcome {
    if ctx.config.n <= 2 {
        return Ok((CheckStatus::Skipped, json!({"reason": "needs n > 2"})));
    }
    let rep = iterative_split_acs(&nowhere_split_acs(&ctx.model)?, &ctx.split_options())?;
    obstruction_outcome(rep)
}

fn obstruction_metric(ctx: &Ctx) -> Outcome {
    if ctx.config.n <= 2 {
        return Ok((CheckStatus::Skipped, json!({"reason": "needs n > 2"})));
    }
    let rep = iterative_split_metric(&nowhere_split_metric(&ctx.model)?, &ctx.split_options())?;
    obstruction_outcome(rep)
}

fn bound_for(ctx: &Ctx, target: &EndoTensor<Q>) -> u32 {
    ctx.config.degree_bound.unwrap_or_else(|| target.max_poly_degree().unwrap_or(0) + 1)
}

fn oracle_acs(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("solver.oracle_agreement_acs");
    let (p, j_r) = (ctx.p(), &ctx.model.j_r);
    trials(ctx, |_| {
        let zeta = random::homogeneous_field(&mut r, p, p, 2, 1, false);
        let target = f_acs_ad(j_r, &zeta)?;
        let sys = build_system_acs(j_r, &target, 2, bound_for(ctx, &target))?;
        Ok(match solve(&sys) {
            SolveStatus::Witness(w) => {
                let res = &f_acs_ad(j_r, &w)? - &target;
                (!res.is_zero()).then(|| endo_json(&res))
            }
            SolveStatus::Unsolvable => Some(json!({"unsolvable": field_to_json(&zeta)})),
        })
    })
}

fn oracle_metric(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("solver.oracle_agreement_metric");
    let (p, g_r) = (ctx.p(), &ctx.model.g_r);
    trials(ctx, |_| {
        let zeta = random::homogeneous_field(&mut r, p, p, 2, 1, true);
        let target = g_metric(g_r, &zeta)?.project_metric_degree(2);
        let sys = build_system_metric(g_r, &target, 2, bound_for(ctx, &target))?;
        Ok(match solve(&sys) {
            SolveStatus::Witness(w) => {
                let res = &g_metric(g_r, &w)?.project_metric_degree(2) - &target;
                (!res.is_zero()).then(|| endo_json(&res))
            }
            SolveStatus::Unsolvable => Some(json!({"unsolvable": field_to_json(&zeta)})),
        })
    })
}

fn round_trip_acs(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("solver.round_trip_acs");
    let (p, j_r) = (ctx.p(), &ctx.model.j_r);
    trials(ctx, |_| {
        let zeta = random::filtered_even_field(&mut r, p, p, 1, false);
        let j = pullback_acs(&Automorphism::exp_field(&zeta)?, j_r)?;
        let rep = iterative_split_acs(&j, &ctx.split_options())?;
        Ok((!rep.is_split()).then(|| rep.to_json()))
    })
}

fn round_trip_metric(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("solver.round_trip_metric");
    let (p, g_r) = (ctx.p(), &ctx.model.g_r);
    trials(ctx, |_| {
        let zeta = random::filtered_even_field(&mut r, p, p, 1, true);
        let g = pullback_metric(&Automorphism::exp_field(&zeta)?, g_r)?;
        let rep = iterative_split_metric(&g, &ctx.split_options())?;
        Ok((!rep.is_split()).then(|| rep.to_json()))
    })
}

fn path_acs(ctx: &Ctx) -> Outcome {
    let m = &ctx.model;
    let y = build_y_eta(m)?.mul_left(&m.eta);
    let rep = deformation_path_check_acs(&m.j_r, &y)?;
    Ok((CheckStatus::from_bool(rep.valid()), rep.to_json()))
}

fn path_metric(ctx: &Ctx) -> Outcome {
    let m = &ctx.model;
    let w = build_w_eta(m)?.mul_left(&m.eta);
    let rep = deformation_path_check_metric(&m.g_r, &w)?;
    Ok((CheckStatus::from_bool(rep.valid()), rep.to_json()))
}
