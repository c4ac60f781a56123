//! Exact reflection-length toolkit for affine Coxeter groups.

pub mod error;
pub mod length;
pub mod linalg;
pub mod affine;
pub mod roots;
pub mod expr;
pub mod oracle;
pub mod universal;
pub mod experiments;

pub use error::{Error, Result};
