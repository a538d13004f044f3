//! Exact finite-field algebra for constructing Pfaffian subvarieties of
//! projective space and certifying their numerical invariants.
//!
//! The crate is `no_std` (with `alloc`). It is organised bottom-up:
//!
//! * [`algebra`]: prime fields, sparse polynomials, polynomial matrices,
//!   Pfaffians, minors and dense linear algebra.
//! * [`groebner`]: reduced Gröbner bases, Hilbert series, saturation,
//!   ideal quotients and singular-locus probes.
//! * [`modgeom`]: graded presentations, Hartshorne–Rao bookkeeping and
//!   endomorphism counts of kernel bundles.
//! * [`construct`]: tensor-subspace builders, fiber counts, section spaces
//!   and Pfaffian loci.
//! * [`invariants`]: Chern-class degree formulas, dimension arithmetic and
//!   the end-to-end verification report.
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod algebra;
pub mod construct;
mod error;
pub mod groebner;
pub mod invariants;
pub mod modgeom;
pub mod rng;

pub use error::{Error, Result};
