use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::formulas::{
    canonical_degree_check, fixed_family_dimension, hodge_bound, pfaffian_degree, picard_bound,
    tonoli_family_dimension, BundleSpec, FamilySpec,
};
use super::report::{DimensionBlock, Expectation};
use crate::algebra::Fp;
use crate::construct::{
    build_by_projection, build_graph_subspace, fiber_count, fixed_bundle_spec, generic_subspace, pfaffian_ideal,
    random_section, section_space, subspace_bundle, BidualLabel, BundleType, GraphKind, Side, SkewSection,
    TableRow, TensorSubspace,
};
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::modgeom::{end_dimension, hr_function, hyperplane_substitution, BundleKernelSpec, Presentation, Vanishing};
use crate::rng::Rng;
use crate::{Error, Result};

/// Everything the command line can construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Table(TableRow),
    /// Subspace-built families: degree 8 surfaces and degree 17 threefolds
    /// and the special strata.
    Stratum(GraphKind),
    /// A uniformly random subspace (no sections expected).
    Generic(Side),
}

impl Family {
    pub fn all() -> Vec<Family> {
        let mut out: Vec<Family> = TableRow::ALL.into_iter().map(Family::Table).collect();
        for kind in [
            GraphKind::DpVeronese2,
            GraphKind::DpLinear,
            GraphKind::CubicBasepoint,
            GraphKind::Veronese2,
            GraphKind::Linear,
            GraphKind::M7,
            GraphKind::M10,
            GraphKind::K11Type2,
            GraphKind::SkewK9,
            GraphKind::Projection(BundleType::TangentTwist),
            GraphKind::Projection(BundleType::Split23),
            GraphKind::Projection(BundleType::Split14),
        ] {
            out.push(Family::Stratum(kind));
        }
        out.push(Family::Generic(Side::CalabiYau));
        out.push(Family::Generic(Side::DelPezzo));
        out
    }

    pub fn tag(self) -> String {
        match self {
            Family::Table(row) => row.name().to_string(),
            Family::Stratum(kind) => match kind {
                GraphKind::DpVeronese2 => "dp8-k6".into(),
                GraphKind::DpLinear => "dp8-k7".into(),
                GraphKind::CubicBasepoint => "cy17-k8".into(),
                GraphKind::Veronese2 => "cy17-k9".into(),
                GraphKind::Linear => "cy17-k11".into(),
                GraphKind::Projection(b) => format!("projection-{}", b.name()),
                other => other.name().replace('_', "-"),
            },
            Family::Generic(side) => format!("generic-{}", side.name()),
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Family::all().into_iter().find(|f| f.tag() == tag)
    }

    pub fn side(self) -> Side {
        match self {
            Family::Table(row) => row.side(),
            Family::Stratum(kind) => kind.side(),
            Family::Generic(side) => side,
        }
    }

    /// Degree the construction is meant to produce.
    pub fn expected_degree(self) -> i64 {
        match self {
            Family::Table(row) => row.expected_degree(),
            _ => match self.side() {
                Side::DelPezzo => 8,
                Side::CalabiYau => 17,
            },
        }
    }

    /// The degree-17 families whose full singular-locus check is expensive.
    pub fn is_heavy(self) -> bool {
        matches!(self, Family::Stratum(_) | Family::Generic(_)) && self.side() == Side::CalabiYau
    }
}

/// Hartshorne–Rao values of surfaces in P⁵ of degree `d`, from `j = 1`:
/// the surplus of `h⁰(O_D(j)) = 1 + d·j(j+1)/2` over `dim S_j` when the
/// restriction maps have maximal rank.
fn del_pezzo_hr(d: i64, range: core::ops::RangeInclusive<i64>) -> Vec<i64> {
    range
        .map(|j| {
            let sections = 1 + d * j * (j + 1) / 2;
            let forms = crate::algebra::monomial_count(6, j) as i64;
            (sections - forms).max(0)
        })
        .collect()
}

/// A constructed variety with everything needed to verify it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub family: Family,
    pub field: Fp,
    pub seed: u64,
    pub subspace: Option<TensorSubspace>,
    pub bundle: BundleKernelSpec,
    /// Special-fiber count and its label, for subspace families.
    pub k: Option<(usize, BidualLabel)>,
    pub section_dim: usize,
    pub section: SkewSection,
    /// The Pfaffian generators, before saturation.
    pub ideal: Ideal,
    pub expectation: Expectation,
    pub dims: DimensionBlock,
    pub flags: Vec<String>,
}

/// The Hartshorne–Rao values predicted by the presentation of a subspace:
/// `h¹(I_X(j)) = dim M_{j − shift}`.
pub fn presentation_hr(s: &TensorSubspace, range: core::ops::RangeInclusive<i64>) -> Result<Vec<i64>> {
    let pr = Presentation::new(s.matrix_on_pn()?);
    let shift = s.side().rao_shift();
    range.map(|j| pr.coker_hilbert(j - shift)).collect()
}

/// `h¹(I_Y(j))` for a general hyperplane section `Y = X ∩ H` of a
/// threefold, computed twice: from the restricted presentation `M / hM`
/// and from the saturated restricted ideal. Since `H¹(O_X(j)) = 0` for all
/// `j` the two must agree.
pub fn restricted_hr(
    s: &TensorSubspace,
    saturated: &Ideal,
    range: core::ops::RangeInclusive<i64>,
    rng: &mut Rng,
) -> Result<(Vec<i64>, Vec<i64>)> {
    if s.side() != Side::CalabiYau {
        return Err(Error::InvalidSpec("hyperplane restriction is compared on threefolds".into()));
    }
    let ring = saturated.ring();
    let h = rng.linear_form(ring);
    let shift = s.side().rao_shift();
    let pr = Presentation::new(s.matrix_on_pn()?).restrict_hyperplane(&h)?;
    let from_module = range.clone().map(|j| pr.coker_hilbert(j - shift)).collect::<Result<Vec<_>>>()?;
    let (small, images) = hyperplane_substitution(ring, &h)?;
    let gens = saturated.generators().iter().map(|g| g.substitute(&images)).collect();
    let mut y = saturate_irrelevant(&Ideal::new(small, gens)?, rng)?;
    let hp = y.hilbert_poly_dim_deg()?.hp;
    let from_ideal = hr_function(&mut y, &hp, range, Vanishing::CanonicalSurface)?;
    Ok((from_module, from_ideal))
}

fn bundle_dims(dims: &mut DimensionBlock, spec: &BundleKernelSpec, h0: usize, rng: &mut Rng) -> Result<()> {
    let b = BundleSpec::from_kernel(spec);
    let end = end_dimension(spec, rng)?;
    dims.push("rank", b.rank());
    dims.push("c1", b.c1);
    dims.push("c2", b.c2);
    dims.push("c3", b.c3);
    dims.push("pfaffian_degree", pfaffian_degree(&b)?);
    dims.push("canonical_twist", canonical_degree_check(&b));
    dims.push("h0", h0 as i64);
    dims.push("end", end as i64);
    dims.push("fixed_family", fixed_family_dimension(h0, end));
    Ok(())
}

fn stratum_dims(dims: &mut DimensionBlock, k: usize) -> Result<()> {
    let f = FamilySpec::cy17(k)?;
    dims.push("stratum", f.dim_mk);
    dims.push("tonoli_family", tonoli_family_dimension(&f));
    let h12 = hodge_bound(&f);
    dims.push("h12_bound", h12);
    dims.push("h11_bound", picard_bound(17, h12)?);
    Ok(())
}

/// Builds the variety of a family from `(seed, prime)`: the bundle, a
/// random section and its Pfaffian ideal, with the expectations to verify
/// it against.
pub fn construct_family(family: Family, field: Fp, seed: u64) -> Result<Construction> {
    let prime = field.prime();
    let mut rng = Rng::for_task(seed, prime, &family.tag());
    let mut flags = Vec::new();
    let (subspace, bundle) = match family {
        Family::Table(row) => {
            let mut brng = Rng::for_task(seed, prime, row.name());
            (None, fixed_bundle_spec(row, field, &mut brng)?)
        }
        Family::Stratum(kind) => {
            let s = match kind {
                GraphKind::Projection(b) => build_by_projection(b, field, seed)?,
                _ => build_graph_subspace(kind, field, seed)?,
            };
            if kind.interpretation_dependent() {
                flags.push("interpretation-dependent construction".to_string());
            }
            let spec = subspace_bundle(&s)?;
            (Some(s), spec)
        }
        Family::Generic(side) => {
            let s = generic_subspace(side, field, seed)?;
            let spec = subspace_bundle(&s)?;
            (Some(s), spec)
        }
    };
    let k = match &subspace {
        Some(s) => Some(fiber_count(&s.lambda_on_p2()?, &mut rng)?),
        None => None,
    };
    let basis = section_space(&bundle)?;
    let section = random_section(&basis, seed)?;
    let ideal = pfaffian_ideal(&section, &mut rng)?;

    let degree = family.expected_degree();
    let mut expectation = match family.side() {
        Side::DelPezzo => Expectation::del_pezzo(degree),
        Side::CalabiYau => Expectation::calabi_yau(degree),
    };
    match (&subspace, family.side()) {
        (Some(s), _) => expectation.hr = Some(presentation_hr(s, expectation.hr_range.clone())?),
        (None, Side::DelPezzo) => expectation.hr = Some(del_pezzo_hr(degree, expectation.hr_range.clone())),
        (None, Side::CalabiYau) => {}
    }

    let mut dims = DimensionBlock::default();
    bundle_dims(&mut dims, &bundle, basis.len(), &mut rng)?;
    if let Some((k, _)) = k {
        dims.push("k", k as i64);
        if family.side() == Side::CalabiYau && [8, 9, 11].contains(&k) && !matches!(family, Family::Stratum(GraphKind::K11Type2)) {
            stratum_dims(&mut dims, k)?;
        }
    }
    Ok(Construction {
        family,
        field,
        seed,
        subspace,
        bundle,
        k,
        section_dim: basis.len(),
        section,
        ideal,
        expectation,
        dims,
        flags,
    })
}

/// Stratum dimension, family dimension, `h^{1,2}` and `h^{1,1}` bounds for
/// the degree-17 family with `k` special fibers.
pub fn dims_table(k: usize) -> Result<(i64, i64, i64, Option<i64>)> {
    let f = FamilySpec::cy17(k)?;
    let h12 = hodge_bound(&f);
    let h11 = picard_bound(17, h12)?;
    Ok((f.dim_mk, tonoli_family_dimension(&f), h12, (h11 >= 2).then_some(h11)))
}

/// Error for a family tag that does not exist.
pub fn unknown_family(tag: &str) -> Error {
    Error::InvalidSpec(format!("unknown family {tag}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIME;
    use crate::invariants::{verify_variety, VerifyLevel};
    use alloc::vec;

    fn field() -> Fp {
        Fp::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn tags_round_trip() {
        for f in Family::all() {
            assert_eq!(Family::from_tag(&f.tag()), Some(f));
        }
        assert_eq!(Family::from_tag("cy17-k11"), Some(Family::Stratum(GraphKind::Linear)));
        assert_eq!(Family::from_tag("skew-k9"), Some(Family::Stratum(GraphKind::SkewK9)));
        assert_eq!(Family::from_tag("cy18"), None);
    }

    #[test]
    fn surface_hr_matches_the_known_values() {
        assert_eq!(del_pezzo_hr(5, 1..=4), vec![0, 0, 0, 0]);
        assert_eq!(del_pezzo_hr(6, 1..=4), vec![1, 0, 0, 0]);
        assert_eq!(del_pezzo_hr(7, 1..=4), vec![2, 1, 0, 0]);
        assert_eq!(del_pezzo_hr(8, 1..=4), vec![3, 4, 0, 0]);
        assert_eq!(del_pezzo_hr(9, 1..=4), vec![4, 7, 0, 0]);
    }

    #[test]
    fn degree_eight_surface_end_to_end() {
        let c = construct_family(Family::Stratum(GraphKind::DpLinear), field(), 5).unwrap();
        assert_eq!(c.k, Some((7, BidualLabel::Split13)));
        assert_eq!(c.expectation.hr, Some(vec![3, 4, 0, 0]));
        assert_eq!(c.dims.get("pfaffian_degree"), Some(8));
        let r = verify_variety(&c.ideal, &c.expectation, VerifyLevel::Fast, &mut Rng::from_seed(5));
        assert!(r.passed, "{:?}", r.failure);
    }

    #[test]
    fn dims_of_the_three_families() {
        assert_eq!(dims_table(11).unwrap(), (70, 72, 24, Some(2)));
        assert_eq!(dims_table(9).unwrap(), (71, 71, 23, None));
        assert_eq!(dims_table(8).unwrap(), (72, 71, 23, None));
    }

    #[test]
    fn generic_subspaces_have_no_sections() {
        let err = construct_family(Family::Generic(Side::CalabiYau), field(), 1).unwrap_err();
        assert_eq!(err, Error::EmptyBasis);
    }
}
