//! Small quantum worlds: X-states and the S3-symmetric two-qubit world.
//!
//! The crate assembles density matrices from algebra coefficients, computes
//! their spectra and entanglement in closed form, and checks every closed
//! form against direct numerical linear algebra.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod permworld;
pub mod report;
pub mod s3world;
pub mod sample;
pub mod search;
pub mod twoqubit;
pub mod xworld;

pub use error::{Error, Result};
