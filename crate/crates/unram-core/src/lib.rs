//! Exact computations for unramified Kottwitz sets, weight multiplicities of
//! dual-group representations, genericity conditions on unramified characters
//! and tilting tests in positive characteristic.

pub mod averaging;
pub mod characters;
pub mod error;
pub mod galois;
pub mod kottwitz;
pub mod linalg;
pub mod root_datum;
pub mod tilting;
pub mod weights;

pub use error::{default_cap, Error, Result};
