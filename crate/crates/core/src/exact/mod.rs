//! Exact arithmetic: scalars, matrices, exterior forms, integer lattices and
//! linear feasibility.

pub mod exterior;
pub mod field;
pub mod fm;
pub mod lattice;
pub mod matrix;

pub use exterior::ExteriorForm;
pub use field::{FieldDescriptor, Scalar, ScalarDoc};
pub use matrix::{solve_linear, LinearMap, LinearSolution, Matrix, Vector};
