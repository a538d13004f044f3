//! Closed-form bookkeeping: Pfaffian degrees from Chern data, the
//! canonical twist, family and stratum dimensions, Hodge-number bounds,
//! and the end-to-end verification report.

mod family;
mod formulas;
mod report;

pub use family::{construct_family, dims_table, presentation_hr, restricted_hr, unknown_family, Construction, Family};
pub use formulas::{
    canonical_degree_check, fixed_family_dimension, hodge_bound, pfaffian_degree, picard_bound, stratum_dimension,
    tonoli_family_dimension, BundleSpec, FamilySpec,
};
pub use report::{verify_variety, Check, DimensionBlock, Expectation, Report, VerifyLevel, SCHEME_STRUCTURE};
