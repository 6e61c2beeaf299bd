use serde_json::{json, Value};

use crate::error::Result;
use crate::scalar::{inv_factorial, Scalar};
use crate::tensor::{symmetry_defect, EndoTensor, MetricTensor};

/// Outcome of a check along a formal parameter `t`: which powers of `t`
/// carry a nonzero defect.
#[derive(Clone, Debug, PartialEq)]
pub struct PathReport {
    pub powers_checked: usize,
    pub offending_powers: Vec<usize>,
    /// Extra Lemma condition: powers where the truncated `W`-symmetry fails.
    pub symmetry_offending_powers: Vec<usize>,
}

impl PathReport {
    pub fn valid(&self) -> bool {
        self.offending_powers.is_empty() && self.symmetry_offending_powers.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid(),
            "powersChecked": self.powers_checked,
            "offendingPowers": self.offending_powers,
            "symmetryOffendingPowers": self.symmetry_offending_powers,
        })
    }
}

/// Product of two `t`-series of tensors.
fn series_mul<S: Scalar>(a: &[EndoTensor<S>], b: &[EndoTensor<S>]) -> Vec<EndoTensor<S>> {
    let (p, q) = a[0].signature();
    let len = a.len() + b.len() - 1;
    let mut out = vec![EndoTensor::zero(p, q); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &x.compose(y);
            }
        }
    }
    trim(out)
}

fn trim<S: Scalar>(mut v: Vec<EndoTensor<S>>) -> Vec<EndoTensor<S>> {
    while v.len() > 1 && v.last().is_some_and(EndoTensor::is_zero) {
        v.pop();
    }
    v
}

/// `exp` of a `t`-series with nilpotent coefficients and zero constant term.
fn series_exp<S: Scalar>(w: &[EndoTensor<S>]) -> Result<Vec<EndoTensor<S>>> {
    let (p, q) = w[0].signature();
    let mut acc = vec![EndoTensor::identity(p, q)];
    let mut power = acc.clone();
    for k in 1.. {
        power = series_mul(&power, w);
        if power.iter().all(EndoTensor::is_zero) {
            break;
        }
        let scaled: Vec<EndoTensor<S>> = power.iter().map(|t| t.scale(&inv_factorial(k))).collect();
        let len = acc.len().max(scaled.len());
        acc.resize(len, EndoTensor::zero(p, q));
        for (i, t) in scaled.iter().enumerate() {
            acc[i] = &acc[i] + t;
        }
    }
    Ok(trim(acc))
}

/// `t ↦ J_R exp(t Y)` squares to `-Id` identically in `t`.
pub fn deformation_path_check_acs<S: Scalar>(j_r: &EndoTensor<S>, y: &EndoTensor<S>) -> Result<PathReport> {
    let (p, q) = j_r.signature();
    let e = series_exp(&[EndoTensor::zero(p, q), y.clone()])?;
    let j_t: Vec<EndoTensor<S>> = e.iter().map(|t| j_r.compose(t)).collect();
    let sq = series_mul(&j_t, &j_t);
    let minus_id = EndoTensor::identity(p, q).scale(&-S::one());
    let offending = sq
        .iter()
        .enumerate()
        .filter(|(k, c)| if *k == 0 { **c != minus_id } else { !c.is_zero() })
        .map(|(k, _)| k)
        .collect();
    Ok(PathReport { powers_checked: sq.len(), offending_powers: offending, symmetry_offending_powers: Vec::new() })
}

/// `t ↦ (g₀ + t g₂) exp(Σ_j t^j W_{2j})` is supersymmetric identically in `t`,
/// and each `W_{2j}` coefficient is symmetric for `g_R` up to the truncation.
pub fn deformation_path_check_metric<S: Scalar>(g_r: &MetricTensor<S>, w: &EndoTensor<S>) -> Result<PathReport> {
    let (p, q) = g_r.signature();
    let g0 = g_r.project_degree(0);
    let g2 = g_r.project_degree(2);
    let top = w.max_degree().unwrap_or(0).max(0) as usize + 2;
    let mut w_t = vec![EndoTensor::zero(p, q)];
    for j in 1..=top / 2 + 1 {
        w_t.push(w.project_metric_degree(2 * j as isize));
    }
    let w_t = trim(w_t);
    let e = series_exp(&w_t)?;
    let mut coeffs: Vec<MetricTensor<S>> = vec![MetricTensor::zero(p, q); e.len() + 1];
    for (m, t) in e.iter().enumerate() {
        coeffs[m] = &coeffs[m] + &g0.lower(t);
        coeffs[m + 1] = &coeffs[m + 1] + &g2.lower(t);
    }
    let offending = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_supersymmetric() || !c.is_even())
        .map(|(k, _)| k)
        .collect();
    let k = w.metric_floor().unwrap_or(0);
    let symmetry = w_t
        .iter()
        .enumerate()
        .filter(|(_, t)| symmetry_defect(g_r, t).floor().is_some_and(|f| f < 2 * k + 2))
        .map(|(j, _)| j)
        .collect();
    Ok(PathReport { powers_checked: coeffs.len(), offending_powers: offending, symmetry_offending_powers: symmetry })
}
