//! Exact expansion operators on tuples of multivariate polynomials.
pub mod analysis;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod io;
pub mod measure;
pub mod polyring;
pub mod verify;
pub use error::{Error, Result};
