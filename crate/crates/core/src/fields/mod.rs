//! Vector fields, covectors and automorphisms over a superfunction algebra.

mod automorphism;
mod covector;
mod field;
mod json;

pub use automorphism::Automorphism;
pub(crate) use automorphism::polynomial_matrix_inverse;
pub use covector::SuperCovector;
pub use field::{frame_degree, frame_is_odd, SuperVectorField};
pub use json::{automorphism_from_json, automorphism_to_json, field_from_json, field_to_json};
pub(crate) use json::signature_of;
