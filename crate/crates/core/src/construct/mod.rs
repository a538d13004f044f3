//! Tensor subspaces `L ⊂ W ⊗ P` and everything built from them: the
//! presentation `L ⊗ O → W ⊗ O(1)` on `P(P)`, the matrix `λ` on `P(W)`
//! whose degeneracy points are the special fibers, the space of skew
//! sections of `∧²E(1)`, and the Pfaffian loci they define.

mod builders;
mod fibers;
mod sections;
mod tensor;

pub use builders::{
    build_by_projection, build_graph_subspace, cy_to_dp, extend_dp_to_cy, generic_subspace, special_builder,
    BundleType, GraphKind, MAX_ATTEMPTS,
};
pub use fibers::{degeneracy_ideal, fiber_count, BidualLabel};
pub use sections::{
    bundle_label, fixed_bundle_section, fixed_bundle_spec, generic_rank, pfaffian_generators, pfaffian_ideal,
    pfaffian_locus, random_section, section_space, subspace_bundle, SkewSection, TableRow,
};
pub use tensor::{check_surjective, pairing, simple_tensor, Graph, Side, TensorSubspace, W_DIM};
