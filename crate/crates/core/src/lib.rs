//! Exact computations with Lie algebras over towers of number fields.
pub mod catalog;
pub mod decompose;
pub mod error;
pub mod fields;
pub mod galois;
pub mod liealg;
pub mod linalg;
pub mod oracle;
pub mod pfaffian;
pub use error::{Error, Result};
