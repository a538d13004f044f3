//! Command-line front end for `pfaffcert-core`: seeded construction runs,
//! JSON certificates and their re-verification.

pub mod artifact;
pub mod commands;
pub mod wire;

pub use artifact::{Artifact, FORMAT};
pub use commands::{construct, dims_for_family, dims_for_k, verify, ConstructOptions, DimsRow, Verdict};
