//! The flat model: the form supermanifold of standard almost complex
//! `R^{2n}`, with `p = q = 2n`, `ξ_i` standing for `dx_i`.

use serde_json::{json, Value};

use crate::algebra::{superfunction_to_json, OddMonomial, Polynomial, Superfunction};
use crate::error::{Error, Result};
use crate::fields::{SuperCovector, SuperVectorField};
use crate::scalar::Scalar;
use crate::tensor::{f_acs, f_acs_ad, f_metric, g_metric, rank_one, EndoTensor, MetricTensor};

/// Constituents of the model for a given `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardModel<S> {
    pub n: usize,
    /// `J_M(∂x_{2i-1}) = ∂x_{2i}`, `J_M(∂x_{2i}) = -∂x_{2i-1}`; column convention.
    pub j_m: Vec<Vec<S>>,
    /// `η = Σ ξ_{2i-1} ξ_{2i}`.
    pub eta: Superfunction<S>,
    /// `g' = η(·, J_M ·)` on the even frame.
    pub g_prime: Vec<Vec<S>>,
    pub j_r: EndoTensor<S>,
    pub g_r: MetricTensor<S>,
}

impl<S: Scalar> StandardModel<S> {
    pub fn signature(&self) -> (usize, usize) {
        (2 * self.n, 2 * self.n)
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `J_M` as a polynomial matrix, for use with [`xi_embed`].
    pub fn j_m_poly(&self) -> Vec<Vec<Polynomial<S>>> {
        constant_poly_matrix(&self.j_m, self.dim())
    }

    pub fn identity_poly(&self) -> Vec<Vec<Polynomial<S>>> {
        let m = self.dim();
        (0..m).map(|a| (0..m).map(|b| if a == b { Polynomial::one(m) } else { Polynomial::zero(m) }).collect()).collect()
    }

    /// `ξ_{J_M}`.
    pub fn xi_j(&self) -> SuperVectorField<S> {
        xi_embed(&self.j_m_poly(), self.dim())
    }

    /// `ξ_Id`.
    pub fn xi_id(&self) -> SuperVectorField<S> {
        xi_embed(&self.identity_poly(), self.dim())
    }

    /// `π(ξ_{J_M})`.
    pub fn pi_xi_j(&self) -> SuperVectorField<S> {
        pi_apply(&self.xi_j())
    }

    /// `π(ξ_Id)`.
    pub fn pi_xi_id(&self) -> SuperVectorField<S> {
        pi_apply(&self.xi_id())
    }

    pub fn d_eta(&self) -> SuperCovector<S> {
        SuperCovector::de_rham(&self.eta)
    }
}

pub(crate) fn constant_poly_matrix<S: Scalar>(m: &[Vec<S>], nvars: usize) -> Vec<Vec<Polynomial<S>>> {
    m.iter().map(|row| row.iter().map(|c| Polynomial::constant(nvars, c.clone())).collect()).collect()
}

/// Standard `J` on `2k` frame vectors starting at `base`, as entries of `t`.
fn standard_block<S: Scalar>(t: &mut EndoTensor<S>, base: usize, k: usize) {
    let (p, q) = t.signature();
    for i in 0..k {
        t.set_entry(base + 2 * i + 1, base + 2 * i, Superfunction::one(p, q));
        t.set_entry(base + 2 * i, base + 2 * i + 1, Superfunction::from_i64(p, q, -1));
    }
}

pub fn build_model<S: Scalar>(n: usize) -> Result<StandardModel<S>> {
    if n < 1 {
        return Err(Error::InvalidInput("model needs n >= 1".into()));
    }
    let m = 2 * n;
    let (p, q) = (m, m);
    let mut j_m = vec![vec![S::zero(); m]; m];
    for i in 0..n {
        j_m[2 * i + 1][2 * i] = S::one();
        j_m[2 * i][2 * i + 1] = -S::one();
    }
    let mut eta = Superfunction::zero(p, q);
    for i in 0..n {
        eta = &eta + &Superfunction::xi_product(p, q, &[2 * i, 2 * i + 1]);
    }
    // η(u, v) = ½ Σ_i (u_{2i-1} v_{2i} - u_{2i} v_{2i-1}); g'(u, v) = η(u, J_M v) = ½ <u, v>
    let half = S::from_ratio(1, 2);
    let g_prime: Vec<Vec<S>> =
        (0..m).map(|a| (0..m).map(|b| if a == b { half.clone() } else { S::zero() }).collect()).collect();

    // J_R = J_M ⊕ π J_M π; on the odd frame π J_M π has the same matrix as J_M
    let mut j_r = EndoTensor::zero(p, q);
    standard_block(&mut j_r, 0, n);
    standard_block(&mut j_r, p, n);

    // g_R = g' + η ∘ (π ⊗ π), no mixed block. With π(∂ξ_i) = 2 ∂x_i and the
    // Koszul sign of the odd π passing an odd argument:
    // g_R(∂ξ_a, ∂ξ_b) = -4 η(∂x_a, ∂x_b).
    let g_r = MetricTensor::from_frame_pairs(p, q, |a, b| {
        if a < p && b < p {
            Superfunction::constant(p, q, g_prime[a][b].clone())
        } else if a >= p && b >= p {
            let (i, j) = (a - p, b - p);
            let c = if i / 2 == j / 2 && i % 2 == 0 && j == i + 1 {
                -2
            } else if i / 2 == j / 2 && i % 2 == 1 && i == j + 1 {
                2
            } else {
                0
            };
            Superfunction::from_i64(p, q, c)
        } else {
            Superfunction::zero(p, q)
        }
    });
    Ok(StandardModel { n, j_m, eta, g_prime, j_r, g_r })
}

/// `ξ_f = Σ_{a,b} f[a][b] ξ_b ∂/∂x_a` for an endomorphism `f` of the even frame
/// (column convention `f(∂x_b) = Σ_a f[a][b] ∂x_a`).
pub fn xi_embed<S: Scalar>(f: &[Vec<Polynomial<S>>], m: usize) -> SuperVectorField<S> {
    let (p, q) = (m, m);
    let comps = (0..p + q)
        .map(|a| {
            if a >= p {
                return Superfunction::zero(p, q);
            }
            (0..m).fold(Superfunction::zero(p, q), |acc, b| {
                &acc + &(&Superfunction::from_poly(q, f[a][b].clone()) * &Superfunction::xi(p, q, b))
            })
        })
        .collect();
    SuperVectorField::from_components(p, q, comps).expect("model signature")
}

/// `π(∂x_i) = ½ ∂ξ_i`, `π(∂ξ_i) = 2 ∂x_i`, extended by `π(g X) = g π(X)`.
pub fn pi_apply<S: Scalar>(x: &SuperVectorField<S>) -> SuperVectorField<S> {
    let (p, q) = x.signature();
    assert_eq!(p, q, "π needs p = q");
    let half = S::from_ratio(1, 2);
    let two = S::from_i64(2);
    let comps = (0..p + q)
        .map(|a| if a < p { x.component(p + a).scale(&two) } else { x.component(a - p).scale(&half) })
        .collect();
    SuperVectorField::from_components(p, q, comps).expect("same signature")
}

/// `α ∘ T` for an even tensor: `<e_a, α∘T> = <T e_a, α>`.
pub fn covector_after<S: Scalar>(alpha: &SuperCovector<S>, t: &EndoTensor<S>) -> SuperCovector<S> {
    let (p, q) = t.signature();
    let comps = (0..p + q).map(|a| alpha.pair(&t.column(a)).expect("same signature")).collect();
    SuperCovector::from_components(p, q, comps).expect("same signature")
}

/// `ω(u, v)` for a 2-form `ω = Σ_{u<v} c_uv ξ_u ξ_v` on even-frame vectors given
/// by polynomial components: `ω(e_u, e_v) = ½ c_uv`.
pub fn two_form_eval<S: Scalar>(omega: &Superfunction<S>, u: &[Polynomial<S>], v: &[Polynomial<S>]) -> Polynomial<S> {
    let m = u.len();
    let half = S::from_ratio(1, 2);
    let mut out = Polynomial::zero(omega.p());
    for a in 0..m {
        for b in 0..m {
            if a == b || u[a].is_zero() || v[b].is_zero() {
                continue;
            }
            let coeff = omega.coeff(OddMonomial((1 << a) | (1 << b)));
            let s = if a < b { half.clone() } else { -half.clone() };
            out += &(&(&u[a] * &v[b]) * &coeff.scale(&s));
        }
    }
    out
}

/// The 2-form with `ω(e_u, e_v) = B(u, v)` for an antisymmetric `B`.
pub fn two_form_from_bilinear<S: Scalar>(p: usize, q: usize, b: impl Fn(usize, usize) -> Polynomial<S>) -> Superfunction<S> {
    let two = S::from_i64(2);
    let mut out = Superfunction::zero(p, q);
    for u in 0..q {
        for v in u + 1..q {
            let c = b(u, v).scale(&two);
            out += &(&Superfunction::from_poly(q, c) * &Superfunction::xi_product(p, q, &[u, v]));
        }
    }
    out
}

/// Product of square polynomial matrices.
pub fn poly_matmul<S: Scalar>(f: &[Vec<Polynomial<S>>], g: &[Vec<Polynomial<S>>]) -> Vec<Vec<Polynomial<S>>> {
    let m = f.len();
    (0..m)
        .map(|a| {
            (0..m)
                .map(|b| (0..m).fold(Polynomial::zero(f[a][b].nvars()), |acc, c| &acc + &(&f[a][c] * &g[c][b])))
                .collect()
        })
        .collect()
}

/// `[f, g] = fg - gf`.
pub fn poly_commutator<S: Scalar>(f: &[Vec<Polynomial<S>>], g: &[Vec<Polynomial<S>>]) -> Vec<Vec<Polynomial<S>>> {
    let (fg, gf) = (poly_matmul(f, g), poly_matmul(g, f));
    fg.iter().zip(&gf).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn column<S: Scalar>(f: &[Vec<Polynomial<S>>], b: usize) -> Vec<Polynomial<S>> {
    f.iter().map(|row| row[b].clone()).collect()
}

fn unit<S: Scalar>(m: usize, b: usize) -> Vec<Polynomial<S>> {
    (0..m).map(|a| if a == b { Polynomial::one(m) } else { Polynomial::zero(m) }).collect()
}

/// `π(ξ_f)(ω) - ½(ω(f·,·) + ω(·,f·))` for a 2-form `ω`.
pub fn contraction_lemma_residual<S: Scalar>(f: &[Vec<Polynomial<S>>], omega: &Superfunction<S>) -> Superfunction<S> {
    let m = f.len();
    let lhs = pi_apply(&xi_embed(f, m)).apply(omega);
    let half = S::from_ratio(1, 2);
    let rhs = two_form_from_bilinear(m, m, |u, v| {
        let a = two_form_eval(omega, &column(f, u), &unit(m, v));
        let b = two_form_eval(omega, &unit(m, u), &column(f, v));
        (&a + &b).scale(&half)
    });
    &lhs - &rhs
}

/// `([π(ξ_f), π(ξ_g)], π(ξ_{[f,g]}))`; the bracket relation compares the two.
pub fn bracket_lemma_sides<S: Scalar>(
    f: &[Vec<Polynomial<S>>],
    g: &[Vec<Polynomial<S>>],
) -> (SuperVectorField<S>, SuperVectorField<S>) {
    let m = f.len();
    let lhs = pi_apply(&xi_embed(f, m)).bracket(&pi_apply(&xi_embed(g, m)));
    (lhs, pi_apply(&xi_embed(&poly_commutator(f, g), m)))
}

/// `J_R(ξ_{J_M}) + ξ_Id` and `J_R(π(ξ_{J_M})) + π(ξ_Id)`.
pub fn complex_lemma_residuals<S: Scalar>(model: &StandardModel<S>) -> (SuperVectorField<S>, SuperVectorField<S>) {
    (&model.j_r.apply(&model.xi_j()) + &model.xi_id(), &model.j_r.apply(&model.pi_xi_j()) + &model.pi_xi_id())
}

/// `Y_η = F_{J_R}(π(ξ_{J_M}) ⊗ dη)`.
pub fn build_y_eta<S: Scalar>(model: &StandardModel<S>) -> Result<EndoTensor<S>> {
    f_acs(&model.j_r, &rank_one(&model.pi_xi_j(), &model.d_eta())?)
}

/// Closed form `π(ξ_{J_M}) ⊗ dη - π(ξ_Id) ⊗ (dη ∘ J_R)`.
pub fn y_eta_closed_form<S: Scalar>(model: &StandardModel<S>) -> Result<EndoTensor<S>> {
    let d = model.d_eta();
    Ok(&rank_one(&model.pi_xi_j(), &d)? - &rank_one(&model.pi_xi_id(), &covector_after(&d, &model.j_r))?)
}

/// `W_η = F_{g_R}(π(ξ_{J_M}) ⊗ dη)`.
pub fn build_w_eta<S: Scalar>(model: &StandardModel<S>) -> Result<EndoTensor<S>> {
    f_metric(&model.g_r, &rank_one(&model.pi_xi_j(), &model.d_eta())?)
}

/// `J_R exp(η Y_η)`.
pub fn nowhere_split_acs<S: Scalar>(model: &StandardModel<S>) -> Result<EndoTensor<S>> {
    let y = build_y_eta(model)?.mul_left(&model.eta);
    Ok(model.j_r.compose(&y.exp()?))
}

/// `g_R exp(η W_η)`.
pub fn nowhere_split_metric<S: Scalar>(model: &StandardModel<S>) -> Result<MetricTensor<S>> {
    let w = build_w_eta(model)?.mul_left(&model.eta);
    Ok(model.g_r.lower(&w.exp()?))
}

/// `(T(X))(f)`.
pub fn pairing<S: Scalar>(t: &EndoTensor<S>, x: &SuperVectorField<S>, f: &Superfunction<S>) -> Superfunction<S> {
    t.apply(x).apply(f)
}

/// Evaluation of the certificates at one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCertificate<S> {
    pub point: Vec<S>,
    pub acs_value: Superfunction<S>,
    pub metric_value: Superfunction<S>,
}

impl<S: Scalar> PointCertificate<S> {
    pub fn nonzero(&self) -> bool {
        !self.acs_value.is_zero() && !self.metric_value.is_zero()
    }
}

/// Exact certificates that `η Y_η` and `η W_η` are not removable.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport<S> {
    pub n: usize,
    /// `F(ad(η P)) = η F(ad P) - Y_η`, `P = π(ξ_{J_M})`.
    pub acs_identity: bool,
    /// `G(η P) = η G(P) - W_η`.
    pub metric_identity: bool,
    /// `F(ad P)(P) = 0`.
    pub f_ad_p_vanishes: bool,
    /// `F(ad(η P))(P)(η)`.
    pub acs_value: Superfunction<S>,
    /// `G(η P)(P)(η)`.
    pub metric_value: Superfunction<S>,
    /// `-W_η(P)(η)`.
    pub metric_reference: Superfunction<S>,
    pub eta_squared: Superfunction<S>,
    pub points: Vec<PointCertificate<S>>,
}

impl<S: Scalar> CertificateReport<S> {
    pub fn acs_value_ok(&self) -> bool {
        self.acs_value == -&self.eta_squared
    }

    /// Degree-4 part is `-η²` and the value agrees with `-W_η(P)(η)` below degree 6.
    pub fn metric_value_ok(&self) -> bool {
        self.metric_value.project_degree(4) == -&self.eta_squared
            && (&self.metric_value - &self.metric_reference).floor().map_or(true, |f| f >= 6)
    }

    pub fn points_ok(&self) -> bool {
        self.points.iter().all(PointCertificate::nonzero)
    }

    pub fn passed(&self) -> bool {
        self.acs_identity
            && self.metric_identity
            && self.f_ad_p_vanishes
            && self.acs_value_ok()
            && self.metric_value_ok()
            && self.points_ok()
    }

    pub fn to_json(&self) -> Value {
        let frac = |c: &S| {
            let (n, d) = c.to_fraction();
            json!({"num": n, "den": d})
        };
        json!({
            "n": self.n,
            "passed": self.passed(),
            "acsIdentity": self.acs_identity,
            "metricIdentity": self.metric_identity,
            "fAdPVanishes": self.f_ad_p_vanishes,
            "acsValue": superfunction_to_json(&self.acs_value),
            "acsValueIsMinusEtaSquared": self.acs_value_ok(),
            "metricValue": superfunction_to_json(&self.metric_value),
            "metricDegree4IsMinusEtaSquared": self.metric_value_ok(),
            "points": self.points.iter().map(|pc| json!({
                "point": pc.point.iter().map(frac).collect::<Vec<_>>(),
                "acsValue": superfunction_to_json(&pc.acs_value),
                "metricValue": superfunction_to_json(&pc.metric_value),
                "nonzero": pc.nonzero(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn nowhere_split_certificates<S: Scalar>(model: &StandardModel<S>, points: &[Vec<S>]) -> Result<CertificateReport<S>> {
    if model.n <= 2 {
        return Err(Error::TheoremHypothesis(format!("certificates need n > 2, got n = {}", model.n)));
    }
    let pxj = model.pi_xi_j();
    let eta = &model.eta;
    let eta_p = pxj.mul_left(eta);
    let y_eta = build_y_eta(model)?;
    let w_eta = build_w_eta(model)?;

    let f_ad_eta_p = f_acs_ad(&model.j_r, &eta_p)?;
    let f_ad_p = f_acs_ad(&model.j_r, &pxj)?;
    let acs_identity = f_ad_eta_p == &f_ad_p.mul_left(eta) - &y_eta;

    let g_eta_p = g_metric(&model.g_r, &eta_p)?;
    let g_p = g_metric(&model.g_r, &pxj)?;
    let metric_identity = g_eta_p == &g_p.mul_left(eta) - &w_eta;

    let acs_value = pairing(&f_ad_eta_p, &pxj, eta);
    let metric_value = pairing(&g_eta_p, &pxj, eta);
    let metric_reference = -&pairing(&w_eta, &pxj, eta);
    let points = points
        .iter()
        .map(|pt| {
            Ok(PointCertificate {
                point: pt.clone(),
                acs_value: acs_value.evaluate_at_point(pt)?,
                metric_value: metric_value.project_degree(4).evaluate_at_point(pt)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CertificateReport {
        n: model.n,
        acs_identity,
        metric_identity,
        f_ad_p_vanishes: f_ad_p.apply(&pxj).is_zero(),
        acs_value,
        metric_value,
        metric_reference,
        eta_squared: eta * eta,
        points,
    })
}

/// Deterministic rational sample points `x_i = (k + i + 1) / (i + 2)`.
pub fn default_points<S: Scalar>(dim: usize, count: usize) -> Vec<Vec<S>> {
    (0..count)
        .map(|k| (0..dim).map(|i| S::from_ratio((k + i + 1) as i64, (i + 2) as i64)).collect())
        .collect()
}
