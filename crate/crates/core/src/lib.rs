//! Stacky fans, toric stacks and their good moduli spaces, computed exactly.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod fgab;
pub mod polyhedral;
pub mod stacky;
pub mod zlinalg;

pub use error::{Error, Result};
