//! Degree-by-degree splitting: obstruction systems, the iterative procedure
//! and deformation paths.

mod iterate;
mod path;
mod system;

pub use iterate::{
    iterative_split_acs, iterative_split_metric, Certificate, SplitOptions, SplitReport, SplitStep, StepStatus,
    POLYNOMIAL_CAVEAT,
};
pub use path::{deformation_path_check_acs, deformation_path_check_metric, PathReport};
pub use system::{
    build_system_acs, build_system_metric, exponents_up_to, solve, ObstructionSystem, SolveStatus, Structure, Unknown,
};
