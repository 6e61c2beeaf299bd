//! Exact symbolic tensor calculus on split supermanifold models.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals.

pub mod algebra;
pub mod error;
pub mod fields;
pub mod linsolve;
pub mod model;
pub mod random;
pub mod scalar;
pub mod splitting;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;

pub type Polynomial = algebra::Polynomial<Rational>;
pub type Superfunction = algebra::Superfunction<Rational>;
pub type SuperVectorField = fields::SuperVectorField<Rational>;
pub type SuperCovector = fields::SuperCovector<Rational>;
pub type Automorphism = fields::Automorphism<Rational>;
pub type EndoTensor = tensor::EndoTensor<Rational>;
pub type MetricTensor = tensor::MetricTensor<Rational>;
pub type StandardModel = model::StandardModel<Rational>;
pub type SplitReport = splitting::SplitReport<Rational>;
