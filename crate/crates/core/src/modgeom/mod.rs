//! Graded presentations of Hartshorne–Rao modules, `h¹(I_X(j))` from
//! Hilbert data, hyperplane restriction and endomorphism counts of
//! kernel bundles.

mod bundle;
mod presentation;
mod rao;

pub use bundle::{end_dimension, BundleKernelSpec};
pub use presentation::{coker_hilbert, hyperplane_substitution, Presentation};
pub use rao::{eval_integer, hr_function, maximal_rank_check, Vanishing};
