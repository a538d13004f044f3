//! Gröbner bases for grevlex and the ideal invariants built on them:
//! normal forms, Hilbert series, saturation, quotients, slicing and
//! singular-locus probes.

mod f4;
mod hilbert;
mod ideal;
mod probe;
mod saturate;
mod slice;

pub use f4::{groebner_basis, groebner_basis_truncated, GroebnerBasis};
pub use hilbert::HilbertSeries;
pub use ideal::{hilbert_function_macaulay, HilbertData, Ideal};
pub use saturate::{ideal_quotient, minimal_generators, saturate_irrelevant};
pub use probe::{rational_points, singular_probe, ProbeMode, ProbeOptions, ProbeOutcome, ProbeReport};
pub use slice::{certify_by_slicing, Section, SliceCertificate};
