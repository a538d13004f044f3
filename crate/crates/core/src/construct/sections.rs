use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::tensor::{Side, TensorSubspace};
use crate::algebra::{linear_basis, monomials_of_degree, principal_pfaffians, DenseSpace, Fp, Matrix, Poly, PolyMat, Ring};
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::modgeom::BundleKernelSpec;
use crate::rng::Rng;
use crate::{Error, Result};

/// A section of `∧²E(1)` lifted to a skew map on the free cover `F₀`:
/// entry `(i, j)` has degree `d_i + d_j + 1`, and `M·a = 0` when `E` is
/// the kernel of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewSection {
    pub a: PolyMat,
    pub spec: BundleKernelSpec,
    /// Coordinates in the basis it was drawn from (empty when unknown).
    pub coords: Vec<u32>,
}

impl SkewSection {
    /// Skew and killed by the constraint.
    pub fn check(&self) -> Result<()> {
        if !self.a.is_skew() {
            return Err(Error::NotSkew);
        }
        if let Some(m) = self.spec.constraint() {
            let prod = m.mul(&self.a)?;
            for i in 0..prod.rows() {
                for j in 0..prod.cols() {
                    if !prod.get(i, j).is_zero() {
                        return Err(Error::Inconsistent(format!("constraint does not kill column {j}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One unknown block: the upper-triangular entry `(i, j)` and where its
/// monomial coefficients start in the unknown vector.
struct Block {
    i: usize,
    j: usize,
    start: usize,
    degree: u32,
}

fn blocks(spec: &BundleKernelSpec) -> (Vec<Block>, usize) {
    let n = spec.ring().nvars();
    let tw = spec.twists();
    let mut out = Vec::new();
    let mut total = 0;
    for i in 0..tw.len() {
        for j in i + 1..tw.len() {
            let e = tw[i] as i64 + tw[j] as i64 + 1;
            if e < 0 {
                continue;
            }
            let count = monomials_of_degree(n, e as u32).len();
            out.push(Block { i, j, start: total, degree: e as u32 });
            total += count;
        }
    }
    (out, total)
}

fn assemble(spec: &BundleKernelSpec, blocks: &[Block], coords: &[u32]) -> Result<PolyMat> {
    let ring = spec.ring();
    let n = ring.nvars();
    let p = spec.twists().len();
    let mut entries = vec![ring.zero(); p * p];
    for b in blocks {
        let monos = monomials_of_degree(n, b.degree);
        let c = &coords[b.start..b.start + monos.len()];
        let e = Poly::from_terms(ring, monos.into_iter().zip(c.iter().copied()));
        entries[b.j * p + b.i] = -&e;
        entries[b.i * p + b.j] = e;
    }
    PolyMat::skew_with_twists(ring, spec.twists(), 1, entries)
}

/// A basis of `H⁰(∧²E(1))`, realised as graded skew maps `A` on `F₀`
/// with `M·A = 0`.
///
/// The unknowns are the monomial coefficients of the entries above the
/// diagonal; each entry `(r, j)` of `M·A` has degree `d_j + 2` and every
/// one of its coefficients gives a linear equation.
pub fn section_space(spec: &BundleKernelSpec) -> Result<Vec<SkewSection>> {
    let ring = spec.ring();
    let f = ring.field();
    let n = ring.nvars();
    let tw = spec.twists();
    let (blocks, unknowns) = blocks(spec);
    let solutions = match spec.constraint() {
        None => Matrix::identity(f, unknowns).row_vecs(),
        Some(m) => {
            let p = tw.len();
            let mut space = DenseSpace::new(n);
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for r in 0..m.rows() {
                for j in 0..p {
                    let e = tw[j] as i64 + 2;
                    if e < 0 {
                        continue;
                    }
                    let e = e as u32;
                    let mut block = vec![vec![0u32; unknowns]; space.dim(e)];
                    // Σ_i M(r, i)·A(i, j) with A(i, j) = −A(j, i) below the diagonal.
                    for b in blocks.iter().filter(|b| b.i == j || b.j == j) {
                        let (i, sign) = if b.j == j { (b.i, 1) } else { (b.j, f.neg(1)) };
                        let coeff = m.get(r, i);
                        if coeff.is_zero() {
                            continue;
                        }
                        for (k, mono) in monomials_of_degree(n, b.degree).iter().enumerate() {
                            let v = space.to_dense(&coeff.mul_term(mono, sign), e);
                            for (row, &x) in block.iter_mut().zip(&v) {
                                row[b.start + k] = x;
                            }
                        }
                    }
                    rows.extend(block.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
                }
            }
            if rows.is_empty() {
                Matrix::identity(f, unknowns).row_vecs()
            } else {
                Matrix::from_rows(f, &rows).kernel()
            }
        }
    };
    solutions
        .into_iter()
        .map(|coords| {
            let a = assemble(spec, &blocks, &coords)?;
            Ok(SkewSection { a, spec: spec.clone(), coords })
        })
        .collect()
}

/// A random combination of `basis`, drawn from the stream keyed by `seed`.
pub fn random_section(basis: &[SkewSection], seed: u64) -> Result<SkewSection> {
    let first = basis.first().ok_or(Error::EmptyBasis)?;
    let ring = first.spec.ring();
    let f = ring.field();
    let mut rng = Rng::for_task(seed, f.prime(), "section");
    let weights: Vec<u32> = (0..basis.len()).map(|_| rng.elem(f)).collect();
    let p = first.a.rows();
    let mut entries = vec![ring.zero(); p * p];
    for (s, &w) in basis.iter().zip(&weights) {
        for i in 0..p {
            for j in 0..p {
                let e = &mut entries[i * p + j];
                *e = e.add_scaled(s.a.get(i, j), w);
            }
        }
    }
    let a = PolyMat::skew_with_twists(ring, first.spec.twists(), 1, entries)?;
    Ok(SkewSection { a, spec: first.spec.clone(), coords: weights })
}

/// Points at which the generic rank is sampled.
const RANK_SAMPLES: usize = 3;

/// Rank of `a` at a general point, as the maximum over random points.
pub fn generic_rank(a: &PolyMat, rng: &mut Rng) -> usize {
    (0..RANK_SAMPLES).map(|_| a.evaluate(&rng.point(a.ring())).rank()).max().unwrap_or(0)
}

/// The principal `2r`-Pfaffians of a section of a rank `2r + 1` bundle,
/// reduced to a linear basis. The generic rank must be `2r`.
pub fn pfaffian_generators(s: &SkewSection, rng: &mut Rng) -> Result<Vec<Poly>> {
    let want = 2 * s.spec.r();
    let found = generic_rank(&s.a, rng);
    if found != want {
        return Err(Error::WrongGenericRank { expected: want, found });
    }
    let pf = principal_pfaffians(&s.a, want)?;
    linear_basis(s.a.ring(), &pf)
}

/// The ideal generated by the Pfaffians, before saturation.
pub fn pfaffian_ideal(s: &SkewSection, rng: &mut Rng) -> Result<Ideal> {
    Ideal::new(s.a.ring(), pfaffian_generators(s, rng)?)
}

/// The saturated Pfaffian ideal; its locus must have codimension three.
pub fn pfaffian_locus(s: &SkewSection, rng: &mut Rng) -> Result<Ideal> {
    let ideal = pfaffian_ideal(s, rng)?;
    let mut sat = saturate_irrelevant(&ideal, rng)?;
    let n = s.a.ring().nvars() as i64;
    let codim = n - 1 - sat.hilbert_poly_dim_deg()?.proj_dim;
    if codim != 3 {
        return Err(Error::Codimension { expected: 3, found: codim });
    }
    Ok(sat)
}

/// The bundle `ker(L ⊗ O → W ⊗ O(1))` of a tensor subspace.
pub fn subspace_bundle(s: &TensorSubspace) -> Result<BundleKernelSpec> {
    let m = s.matrix_on_pn()?;
    BundleKernelSpec::new(m.ring(), vec![0; m.cols()], Some(m))
}

/// The rows of the tables of fixed bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableRow {
    Dp3,
    Dp4,
    Dp5,
    Dp6,
    Dp7,
    Cy12,
    Cy13,
    Cy14,
    Cy15,
    Cy16,
}

/// How the bundle is cut out of its free cover.
enum Cover {
    Free,
    /// `ker(⊕O → O(1))` given by the coordinates (then zeros).
    Euler,
    /// `ker(⊕O → q O(1))` for a general linear map.
    General(usize),
}

impl TableRow {
    pub const ALL: [TableRow; 10] = [
        TableRow::Dp3,
        TableRow::Dp4,
        TableRow::Dp5,
        TableRow::Dp6,
        TableRow::Dp7,
        TableRow::Cy12,
        TableRow::Cy13,
        TableRow::Cy14,
        TableRow::Cy15,
        TableRow::Cy16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableRow::Dp3 => "dp3",
            TableRow::Dp4 => "dp4",
            TableRow::Dp5 => "dp5",
            TableRow::Dp6 => "dp6",
            TableRow::Dp7 => "dp7",
            TableRow::Cy12 => "cy12",
            TableRow::Cy13 => "cy13",
            TableRow::Cy14 => "cy14",
            TableRow::Cy15 => "cy15",
            TableRow::Cy16 => "cy16",
        }
    }

    pub fn from_name(name: &str) -> Option<TableRow> {
        TableRow::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn side(self) -> Side {
        match self {
            TableRow::Dp3 | TableRow::Dp4 | TableRow::Dp5 | TableRow::Dp6 | TableRow::Dp7 => Side::DelPezzo,
            _ => Side::CalabiYau,
        }
    }

    /// Number of variables of the ambient space.
    pub fn nvars(self) -> usize {
        self.side().p_dim()
    }

    pub fn expected_degree(self) -> i64 {
        match self {
            TableRow::Dp3 => 3,
            TableRow::Dp4 => 4,
            TableRow::Dp5 => 5,
            TableRow::Dp6 => 6,
            TableRow::Dp7 => 7,
            TableRow::Cy12 => 12,
            TableRow::Cy13 => 13,
            TableRow::Cy14 => 14,
            TableRow::Cy15 => 15,
            TableRow::Cy16 => 16,
        }
    }

    pub fn expected_dim(self) -> i64 {
        match self.side() {
            Side::DelPezzo => 2,
            Side::CalabiYau => 3,
        }
    }

    fn layout(self) -> (Vec<i32>, Cover) {
        match self {
            TableRow::Dp3 => (vec![-1, 1, 1], Cover::Free),
            TableRow::Dp4 => (vec![0, 0, 1], Cover::Free),
            TableRow::Dp5 => (vec![0; 5], Cover::Free),
            TableRow::Dp6 => (vec![0; 8], Cover::Euler),
            TableRow::Dp7 => (vec![0; 11], Cover::General(2)),
            TableRow::Cy12 => (vec![-1, 0, 0, 1, 1], Cover::Free),
            TableRow::Cy13 => (vec![0, 0, 0, 0, 1], Cover::Free),
            TableRow::Cy14 => (vec![0; 7], Cover::Free),
            TableRow::Cy15 => (vec![0; 10], Cover::Euler),
            TableRow::Cy16 => (vec![0; 13], Cover::General(2)),
        }
    }
}

/// The bundle of a table row. Only general constraint matrices use `rng`.
pub fn fixed_bundle_spec(row: TableRow, field: Fp, rng: &mut Rng) -> Result<BundleKernelSpec> {
    let ring = Ring::new(row.nvars(), field)?;
    let n = ring.nvars();
    let (twists, cover) = row.layout();
    let p = twists.len();
    let constraint = match cover {
        Cover::Free => None,
        Cover::Euler => {
            let entries = (0..p).map(|i| if i < n { ring.var(i) } else { ring.zero() }).collect();
            Some(PolyMat::new(ring, 1, p, entries, vec![-1], vec![0; p])?)
        }
        Cover::General(q) => {
            let entries = (0..p * q).map(|_| rng.linear_form(ring)).collect();
            Some(PolyMat::new(ring, q, p, entries, vec![-1; q], vec![0; p])?)
        }
    };
    BundleKernelSpec::new(ring, twists, constraint)
}

/// A random section of the bundle of a table row.
pub fn fixed_bundle_section(row: TableRow, field: Fp, seed: u64) -> Result<SkewSection> {
    let mut rng = Rng::for_task(seed, field.prime(), row.name());
    let spec = fixed_bundle_spec(row, field, &mut rng)?;
    let basis = section_space(&spec)?;
    random_section(&basis, seed)
}

/// A label for a subspace bundle, used in reports.
pub fn bundle_label(spec: &BundleKernelSpec) -> String {
    let q = spec.constraint().map_or(0, |m| m.rows());
    if q == 0 {
        format!("free cover of rank {}", spec.rank())
    } else {
        format!("ker({}O -> {}O(1))", spec.cover_rank(), q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PfaffianEngine, DEFAULT_PRIME};
    use crate::construct::builders::{build_graph_subspace, generic_subspace, GraphKind};
    use crate::construct::fibers::fiber_count;

    fn field() -> Fp {
        Fp::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn free_cover_counts_skew_linear_maps() {
        let ring = Ring::new(7, field()).unwrap();
        let spec = BundleKernelSpec::direct_sum(ring, vec![0; 7]).unwrap();
        assert_eq!(section_space(&spec).unwrap().len(), 147);
        let ring = Ring::new(6, field()).unwrap();
        let spec = BundleKernelSpec::direct_sum(ring, vec![0; 5]).unwrap();
        // Ten entries, each a linear form in six variables.
        assert_eq!(section_space(&spec).unwrap().len(), 60);
    }

    #[test]
    fn sections_count_special_fibers() {
        for kind in [GraphKind::Linear, GraphKind::Veronese2, GraphKind::CubicBasepoint, GraphKind::DpLinear, GraphKind::DpVeronese2] {
            let s = build_graph_subspace(kind, field(), 11).unwrap();
            let spec = subspace_bundle(&s).unwrap();
            let basis = section_space(&spec).unwrap();
            let (k, _) = fiber_count(&s.lambda_on_p2().unwrap(), &mut Rng::from_seed(1)).unwrap();
            assert_eq!(basis.len(), k, "{}", kind.name());
            for sec in &basis {
                sec.check().unwrap();
            }
        }
        let s = generic_subspace(Side::CalabiYau, field(), 11).unwrap();
        assert!(section_space(&subspace_bundle(&s).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn random_sections_are_deterministic_and_valid() {
        let s = fixed_bundle_section(TableRow::Dp6, field(), 3).unwrap();
        s.check().unwrap();
        assert_eq!(s, fixed_bundle_section(TableRow::Dp6, field(), 3).unwrap());
        assert_ne!(s, fixed_bundle_section(TableRow::Dp6, field(), 4).unwrap());
        assert!(matches!(random_section(&[], 1), Err(Error::EmptyBasis)));
        // A single element comes back up to a scalar.
        let one = fixed_bundle_section(TableRow::Dp5, field(), 1).unwrap();
        let again = random_section(core::slice::from_ref(&one), 9).unwrap();
        let c = again.coords[0];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(again.a.get(i, j), &one.a.get(i, j).scale(c));
            }
        }
    }

    #[test]
    fn pfaffian_degrees_follow_the_twists() {
        for row in TableRow::ALL {
            let s = fixed_bundle_section(row, field(), 1).unwrap();
            let size = 2 * s.spec.r();
            let mut engine = PfaffianEngine::new(&s.a).unwrap();
            for support in crate::algebra::subsets(s.a.rows(), size) {
                let want = size as i64 / 2 + support.iter().map(|&i| s.spec.twists()[i] as i64).sum::<i64>();
                let pf = engine.pfaffian(&support).unwrap();
                if !pf.is_zero() {
                    assert_eq!(pf.homogeneous_degree(), Some(want as u32), "{}", row.name());
                }
            }
        }
        // The (2,2,3) complete intersection appears with redundancy.
        let s = fixed_bundle_section(TableRow::Cy12, field(), 1).unwrap();
        let mut degs: Vec<u32> = principal_pfaffians(&s.a, 4).unwrap().iter().filter_map(Poly::homogeneous_degree).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2, 3, 3, 4]);
    }

    #[test]
    fn cheap_rows_have_their_degrees() {
        let mut rng = Rng::from_seed(6);
        for row in [TableRow::Dp3, TableRow::Dp4, TableRow::Dp5, TableRow::Dp6, TableRow::Cy12, TableRow::Cy13, TableRow::Cy14] {
            let s = fixed_bundle_section(row, field(), 2).unwrap();
            let mut i = pfaffian_locus(&s, &mut rng).unwrap();
            let data = i.hilbert_poly_dim_deg().unwrap();
            assert_eq!((data.proj_dim, data.degree), (row.expected_dim(), row.expected_degree()), "{}", row.name());
        }
    }

    #[test]
    fn wrong_rank_is_detected() {
        // A zero section of 5O has generic rank 0.
        let ring = Ring::new(6, field()).unwrap();
        let spec = BundleKernelSpec::direct_sum(ring, vec![0; 5]).unwrap();
        let a = PolyMat::skew_with_twists(ring, &[0; 5], 1, vec![ring.zero(); 25]).unwrap();
        let s = SkewSection { a, spec, coords: vec![] };
        assert!(matches!(
            pfaffian_generators(&s, &mut Rng::from_seed(1)),
            Err(Error::WrongGenericRank { expected: 4, found: 0 })
        ));
    }
}
