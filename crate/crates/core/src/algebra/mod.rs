//! Exact graded-commutative coefficient algebra.

mod json;
mod odd;
mod polynomial;
mod superfunction;

pub use json::{superfunction_from_json, superfunction_to_json};
pub use odd::OddMonomial;
pub use polynomial::{Exponents, Polynomial};
pub use superfunction::{Homogeneity, Substitution, Superfunction};
