//! Exact computations in class algebras of wreath products `G wr S_n`.

pub mod algebra;
pub mod character;
pub mod class_algebra;
pub mod error;
pub mod fock;
pub mod group;
pub mod linalg;
pub mod partition;
pub mod report;
pub mod scalar;
pub mod series;
pub mod stable;
pub mod suites;
pub mod winf;
pub mod wreath;

pub use error::{AlgebraError, GroupError, ScalarError};
pub use scalar::Scalar;
