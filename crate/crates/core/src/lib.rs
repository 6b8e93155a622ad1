pub mod algebra;
pub mod bimodule;
pub mod cli;
pub mod error;
pub mod exceptional;
pub mod fixtures;
pub mod linalg;
pub mod module;
pub mod reproduce;

pub use algebra::{Algebra, AlgebraMorphism};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar, Subspace};
pub use module::{ModuleMap, RightModule};
