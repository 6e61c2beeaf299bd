//! Endomorphism and metric tensors, their nilpotent factorizations and the
//! linearized obstruction operators.

mod endo;
mod factor;
mod json;
mod metric;
mod ops;

pub use endo::{DegreeDecomposition, EndoTensor};
pub use factor::{
    check_acs, check_metric, nilpotent_split_acs, nilpotent_split_metric, recompose_acs, recompose_metric, AcsReport,
    MetricReport,
};
pub use json::{endo_from_json, metric_from_json, parse_tensor, tensor_from_json, tensor_to_json, AnyTensor};
pub use metric::MetricTensor;
pub use ops::{
    ad_commutator, f_acs, f_acs_ad, f_metric, first_order_pullback_acs, first_order_pullback_metric, g_metric,
    lie_derivative_metric, metric_adjoint, pullback_acs, pullback_metric, rank_one, theta_identity_check,
};
pub(crate) use factor::symmetry_defect;
pub(crate) use ops::{f_acs_ad_unchecked, g_metric_with};
