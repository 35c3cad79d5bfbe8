//! Exact Clifford-algebra and pure-spinor machinery in the Witt basis, and
//! spinor constructions of the split exceptional Lie algebras e6, e7, e8.

pub mod cartan_ops;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod exceptional;
pub mod field;
pub mod fock;
pub mod linalg;
pub mod norms;
pub mod parallel;
pub mod props;

pub use error::{Error, FieldError, Result};
pub use field::{Field, Scalar};
pub use fock::{Config, FockIndex, Generator, Parity, SpinorVec};
pub use parallel::Execution;
