use super::endo::EndoTensor;
use super::metric::{raise_with, MetricTensor};
use crate::algebra::Superfunction;
use crate::error::{Error, Result};
use crate::fields::{frame_is_odd, Automorphism, SuperCovector, SuperVectorField};
use crate::scalar::{sign, Scalar};

fn require_acs<S: Scalar>(j_r: &EndoTensor<S>) -> Result<()> {
    let (p, q) = j_r.signature();
    if j_r.compose(j_r) != EndoTensor::identity(p, q).scale(&-S::one()) {
        return Err(Error::Precondition("J_R does not square to -Id".into()));
    }
    Ok(())
}

fn check_pair(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a != b {
        return Err(Error::SignatureMismatch(a.0, a.1, b.0, b.1));
    }
    Ok(())
}

/// `F_{J_R}(γ) = γ + J_R γ J_R`.
pub fn f_acs<S: Scalar>(j_r: &EndoTensor<S>, gamma: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    check_pair(j_r.signature(), gamma.signature())?;
    require_acs(j_r)?;
    Ok(f_acs_unchecked(j_r, gamma))
}

pub(crate) fn f_acs_unchecked<S: Scalar>(j_r: &EndoTensor<S>, gamma: &EndoTensor<S>) -> EndoTensor<S> {
    gamma + &j_r.compose(&gamma.compose(j_r))
}

/// `F_{J_R}(ad ζ)`. `ad ζ` alone is not module-linear, but the combination is
/// whenever `J_R² = -Id`, so it is read off on the frame.
pub fn f_acs_ad<S: Scalar>(j_r: &EndoTensor<S>, zeta: &SuperVectorField<S>) -> Result<EndoTensor<S>> {
    check_pair(j_r.signature(), zeta.signature())?;
    require_acs(j_r)?;
    Ok(f_acs_ad_unchecked(j_r, zeta))
}

pub(crate) fn f_acs_ad_unchecked<S: Scalar>(j_r: &EndoTensor<S>, zeta: &SuperVectorField<S>) -> EndoTensor<S> {
    let (p, q) = j_r.signature();
    EndoTensor::from_frame_map(p, q, |e| &zeta.bracket(e) + &j_r.apply(&zeta.bracket(&j_r.apply(e))))
}

/// `[ad ζ, T] = ad ζ ∘ T - (-1)^{|ζ||T|} T ∘ ad ζ` for homogeneous `ζ`, `T`.
pub fn ad_commutator<S: Scalar>(zeta: &SuperVectorField<S>, t: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    check_pair(zeta.signature(), t.signature())?;
    let oz = zeta.parity().ok_or_else(|| Error::NotHomogeneous("field".into()))?;
    let ot = t.parity().ok_or_else(|| Error::NotHomogeneous("tensor".into()))?;
    let (p, q) = t.signature();
    let s: S = sign(oz && ot);
    Ok(EndoTensor::from_frame_map(p, q, |e| &zeta.bracket(&t.apply(e)) - &t.apply(&zeta.bracket(e)).scale(&s)))
}

/// Rank-one tensor `(χ ⊗ α)(X) = χ · α(X)`, where `χ · h = (-1)^{|χ||h|} h χ`.
pub fn rank_one<S: Scalar>(chi: &SuperVectorField<S>, alpha: &SuperCovector<S>) -> Result<EndoTensor<S>> {
    check_pair(chi.signature(), alpha.signature())?;
    let (p, q) = chi.signature();
    let cols = (0..p + q)
        .map(|b| Ok(chi.mul_right(&alpha.eval(&SuperVectorField::frame(p, q, b))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoTensor::from_columns(p, q, cols))
}

/// `χ ⊗ d f - (-1)^{|f||χ|} (f · ad χ - ad(f χ))`; zero for homogeneous inputs.
pub fn theta_identity_check<S: Scalar>(chi: &SuperVectorField<S>, f: &Superfunction<S>) -> Result<EndoTensor<S>> {
    check_pair(chi.signature(), f.signature())?;
    let oc = chi.parity().ok_or_else(|| Error::NotHomogeneous("χ".into()))?;
    let of = f.parity().ok_or_else(|| Error::NotHomogeneous("f".into()))?;
    let (p, q) = chi.signature();
    let fchi = chi.mul_left(f);
    let theta = EndoTensor::from_frame_map(p, q, |e| &chi.bracket(e).mul_left(f) - &fchi.bracket(e));
    let lhs = rank_one(chi, &SuperCovector::de_rham(f))?;
    Ok(&lhs - &theta.scale(&sign(oc && of)))
}

fn require_metric<S: Scalar>(g_r: &MetricTensor<S>) -> Result<Vec<Vec<Superfunction<S>>>> {
    g_r.inverse_matrix()
}

/// Adjoint `γ†` with `g_R(γ† X, Y) = (-1)^{|γ||X|} g_R(X, γ Y)`.
pub fn metric_adjoint<S: Scalar>(g_r: &MetricTensor<S>, gamma: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    check_pair(g_r.signature(), gamma.signature())?;
    let c = require_metric(g_r)?;
    Ok(metric_adjoint_with(g_r, &c, gamma))
}

fn metric_adjoint_with<S: Scalar>(g_r: &MetricTensor<S>, c: &[Vec<Superfunction<S>>], gamma: &EndoTensor<S>) -> EndoTensor<S> {
    let (p, q) = g_r.signature();
    let mut h = MetricTensor::zero(p, q);
    for og in [false, true] {
        let gp = gamma.parity_part(og);
        if gp.is_zero() {
            continue;
        }
        let cols: Vec<SuperVectorField<S>> = (0..p + q).map(|b| gp.column(b)).collect();
        h = &h + &MetricTensor::from_frame_pairs(p, q, |a, b| {
            g_r.eval(&SuperVectorField::frame(p, q, a), &cols[b]).scale(&sign(og && frame_is_odd(p, a)))
        });
    }
    raise_with(c, &h)
}

/// `F_{g_R}(γ) = γ + γ†`.
pub fn f_metric<S: Scalar>(g_r: &MetricTensor<S>, gamma: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    Ok(gamma + &metric_adjoint(g_r, gamma)?)
}

/// Lie derivative of a bilinear form:
/// `(L_ζ g)(X, Y) = ζ(g(X, Y)) - g([ζ, X], Y) - (-1)^{|ζ||X|} g(X, [ζ, Y])`.
pub fn lie_derivative_metric<S: Scalar>(g: &MetricTensor<S>, zeta: &SuperVectorField<S>) -> Result<MetricTensor<S>> {
    check_pair(g.signature(), zeta.signature())?;
    let (p, q) = g.signature();
    let mut out = MetricTensor::zero(p, q);
    for (oz, z) in zeta.parity_parts() {
        let brackets: Vec<SuperVectorField<S>> =
            (0..p + q).map(|a| z.bracket(&SuperVectorField::frame(p, q, a))).collect();
        out = &out + &MetricTensor::from_frame_pairs(p, q, |a, b| {
            let ea = SuperVectorField::frame(p, q, a);
            let eb = SuperVectorField::frame(p, q, b);
            let s: S = sign(oz && frame_is_odd(p, a));
            &(&z.apply(g.entry(a, b)) - &g.eval(&brackets[a], &eb)) - &g.eval(&ea, &brackets[b]).scale(&s)
        });
    }
    Ok(out)
}

/// `G_{g_R}(ζ) = -g_R^{-1}(L_ζ g_R)`.
pub fn g_metric<S: Scalar>(g_r: &MetricTensor<S>, zeta: &SuperVectorField<S>) -> Result<EndoTensor<S>> {
    let c = require_metric(g_r)?;
    Ok(g_metric_with(g_r, &c, zeta)?)
}

pub(crate) fn g_metric_with<S: Scalar>(
    g_r: &MetricTensor<S>,
    c: &[Vec<Superfunction<S>>],
    zeta: &SuperVectorField<S>,
) -> Result<EndoTensor<S>> {
    let l = lie_derivative_metric(g_r, zeta)?;
    Ok(-&raise_with(c, &l))
}

/// `(Φ.J)(X) = Φ J(Φ^{-1} X Φ) Φ^{-1}`, read off on the frame.
pub fn pullback_acs<S: Scalar>(phi: &Automorphism<S>, j: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    check_pair(phi.signature(), j.signature())?;
    let (p, q) = j.signature();
    let frames: Vec<_> = (0..p + q).map(|b| SuperVectorField::frame(p, q, b)).collect();
    let images: Vec<_> = phi.inverse_conjugate_fields(&frames)?.iter().map(|e| j.apply(e)).collect();
    Ok(EndoTensor::from_columns(p, q, phi.conjugate_fields(&images)?))
}

/// `(Φ.g)(X, Y) = Φ(g(Φ^{-1} X Φ, Φ^{-1} Y Φ))`.
pub fn pullback_metric<S: Scalar>(phi: &Automorphism<S>, g: &MetricTensor<S>) -> Result<MetricTensor<S>> {
    check_pair(phi.signature(), g.signature())?;
    let (p, q) = g.signature();
    let frames: Vec<_> = (0..p + q).map(|a| SuperVectorField::frame(p, q, a)).collect();
    let frames = phi.inverse_conjugate_fields(&frames)?;
    Ok(MetricTensor::from_frame_pairs(p, q, |a, b| phi.apply(&g.eval(&frames[a], &frames[b]))))
}

/// First-order expansion of the pullback by `exp(ζ)`: `J + [ad ζ, J]`.
pub fn first_order_pullback_acs<S: Scalar>(zeta: &SuperVectorField<S>, j: &EndoTensor<S>) -> Result<EndoTensor<S>> {
    Ok(j + &ad_commutator(zeta, j)?)
}

/// First-order expansion of the pullback by `exp(ζ)`:
/// `g - g(ad ζ ⊗ Id + Id ⊗ ad ζ) + ζ g`, i.e. `g + L_ζ g`.
pub fn first_order_pullback_metric<S: Scalar>(zeta: &SuperVectorField<S>, g: &MetricTensor<S>) -> Result<MetricTensor<S>> {
    Ok(g + &lie_derivative_metric(g, zeta)?)
}
