pub mod chambers;
pub mod cli;
pub mod cone;
pub mod error;
pub mod exact;
pub mod expsum;
pub mod fan;
pub mod polyring;
pub mod polytope;

pub use error::{Error, Result};
pub use exact::{ExteriorForm, FieldDescriptor, LinearMap, Matrix, Scalar, Vector};
