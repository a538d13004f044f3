use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::tensor::{Graph, Side, TensorSubspace, W_DIM};
use crate::algebra::{monomials_of_degree, DenseSpace, Fp, Matrix, Mono, Poly, PolyMat, Ring};
use crate::rng::Rng;
use crate::{Error, Result};

/// Default number of resampling attempts for degenerate draws.
pub const MAX_ATTEMPTS: u32 = 32;

/// Rank-two bundles on P² whose projectivisation is projected in
/// [`build_by_projection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundleType {
    /// `T(1)`, with 15 sections.
    TangentTwist,
    /// `O(2) ⊕ O(3)`, with 16 sections.
    Split23,
    /// `O(1) ⊕ O(4)`, with 18 sections.
    Split14,
}

impl BundleType {
    pub fn fiber_count(self) -> usize {
        match self {
            BundleType::TangentTwist => 8,
            BundleType::Split23 => 9,
            BundleType::Split14 => 11,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BundleType::TangentTwist => "t1",
            BundleType::Split23 => "o2o3",
            BundleType::Split14 => "o1o4",
        }
    }

    /// The bundle as a subbundle of a split bundle `⊕O(e_m)`: the twists
    /// `e_m` and the linear relations cutting out its sections.
    fn ambient_twists(self) -> Vec<u32> {
        match self {
            // T(1) ≅ Ω(4) = ker(3O(3) → O(4)) given by the coordinates.
            BundleType::TangentTwist => vec![3, 3, 3],
            BundleType::Split23 => vec![2, 3],
            BundleType::Split14 => vec![1, 4],
        }
    }
}

/// The builders of subspaces with a prescribed special-fiber count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Contains the graph of a linear embedding `P² → P⁶` (k = 11).
    Linear,
    /// Contains the graph of a Veronese embedding (k = 9).
    Veronese2,
    /// Contains the graph of cubics through a point (k = 8).
    CubicBasepoint,
    /// Surface side, linear graph in `P² × P⁵` (k = 7).
    DpLinear,
    /// Surface side, Veronese graph (k = 6).
    DpVeronese2,
    /// Projection of a projectivised bundle from `k` of its points.
    Projection(BundleType),
    /// Cubics through a length-two scheme (k = 7).
    M7,
    /// Block form with a zero `2 × 4` corner (k = 10, no threefold).
    M10,
    /// `λ = λ₁ ⊕ λ₂` (k = 11 of the second type, no threefold).
    K11Type2,
    /// Syzygies of the Pfaffians of a skew `7 × 7` matrix, composed with a
    /// general map (k = 9, a special subfamily).
    SkewK9,
}

impl GraphKind {
    pub fn side(self) -> Side {
        match self {
            GraphKind::DpLinear | GraphKind::DpVeronese2 => Side::DelPezzo,
            _ => Side::CalabiYau,
        }
    }

    /// The special-fiber count the construction is meant to produce.
    pub fn expected_k(self) -> usize {
        match self {
            GraphKind::Linear => 11,
            GraphKind::Veronese2 => 9,
            GraphKind::CubicBasepoint => 8,
            GraphKind::DpLinear => 7,
            GraphKind::DpVeronese2 => 6,
            GraphKind::Projection(b) => b.fiber_count(),
            GraphKind::M7 => 7,
            GraphKind::M10 => 10,
            GraphKind::K11Type2 => 11,
            GraphKind::SkewK9 => 9,
        }
    }

    pub fn name(self) -> String {
        match self {
            GraphKind::Linear => "linear".into(),
            GraphKind::Veronese2 => "veronese2".into(),
            GraphKind::CubicBasepoint => "cubic_basepoint".into(),
            GraphKind::DpLinear => "dp_linear".into(),
            GraphKind::DpVeronese2 => "dp_veronese2".into(),
            GraphKind::Projection(b) => format!("projection_{}", b.name()),
            GraphKind::M7 => "m7".into(),
            GraphKind::M10 => "m10".into(),
            GraphKind::K11Type2 => "k11_type2".into(),
            GraphKind::SkewK9 => "skew_k9".into(),
        }
    }

    /// The construction rests on a reading of a construction whose grading
    /// is not fully specified.
    pub fn interpretation_dependent(self) -> bool {
        matches!(self, GraphKind::SkewK9)
    }
}

fn plane(field: Fp) -> Result<Ring> {
    Ring::new(W_DIM, field)
}

/// Basis of the forms of degree `d` on P² vanishing at `points`.
fn forms_through(ring: Ring, d: u32, points: &[Vec<u32>]) -> Vec<Poly> {
    let monos = monomials_of_degree(W_DIM, d);
    let f = ring.field();
    if points.is_empty() {
        return monos.iter().map(|&m| Poly::monomial(ring, m, 1)).collect();
    }
    let rows: Vec<Vec<u32>> = points
        .iter()
        .map(|pt| monos.iter().map(|m| Poly::monomial(ring, *m, 1).evaluate(pt)).collect())
        .collect();
    Matrix::from_rows(f, &rows)
        .kernel()
        .into_iter()
        .map(|v| Poly::from_terms(ring, monos.iter().copied().zip(v)))
        .collect()
}

/// `count` random combinations of `space`.
fn random_forms(ring: Ring, space: &[Poly], count: usize, rng: &mut Rng) -> Vec<Poly> {
    (0..count).map(|_| rng.combination(ring, space)).collect()
}

/// A random point of P² with nonzero first coordinate is not needed; any
/// nonzero vector represents a point.
fn random_plane_point(f: Fp, rng: &mut Rng) -> Vec<u32> {
    loop {
        let v = rng.vector(f, W_DIM);
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Expected dimension of the graph span for a graph builder.
fn expected_span(kind: GraphKind) -> usize {
    match kind {
        GraphKind::Linear | GraphKind::DpLinear => 6,
        GraphKind::Veronese2 | GraphKind::DpVeronese2 => 10,
        GraphKind::CubicBasepoint => 14,
        GraphKind::M7 => 13,
        _ => 0,
    }
}

fn sample_graph(kind: GraphKind, ring: Ring, rng: &mut Rng) -> Graph {
    let f = ring.field();
    let p = kind.side().p_dim();
    let (degree, base_points) = match kind {
        GraphKind::Linear | GraphKind::DpLinear => (1, vec![]),
        GraphKind::Veronese2 | GraphKind::DpVeronese2 => (2, vec![]),
        GraphKind::CubicBasepoint => (3, vec![random_plane_point(f, rng)]),
        GraphKind::M7 => (3, vec![random_plane_point(f, rng), random_plane_point(f, rng)]),
        _ => unreachable!("not a graph builder"),
    };
    let space = forms_through(ring, degree, &base_points);
    Graph { forms: random_forms(ring, &space, p, rng), base_points }
}

/// A random subspace containing `span`: its annihilator is spanned by
/// random elements of the annihilator of `span`.
fn subspace_containing(field: Fp, side: Side, span: &[Vec<u32>], rng: &mut Rng) -> Result<TensorSubspace> {
    let perp = Matrix::from_rows(field, span).kernel();
    if perp.len() < side.annihilator_dim() {
        return Err(Error::Dimension("span too large for the subspace".into()));
    }
    let coeffs = rng.matrix(field, side.annihilator_dim(), perp.len());
    let ann = coeffs.mul(&Matrix::from_rows(field, &perp)).row_vecs();
    TensorSubspace::from_annihilator(field, side, &ann)
}

/// One draw of a graph builder; `Ok(None)` asks for a resample.
fn try_graph(kind: GraphKind, field: Fp, rng: &mut Rng) -> Result<Option<TensorSubspace>> {
    let side = kind.side();
    let ring = plane(field)?;
    let graph = sample_graph(kind, ring, rng);
    let span = graph.span();
    if span.len() != expected_span(kind) {
        return Ok(None);
    }
    let forms_rank = {
        let mut space = DenseSpace::new(W_DIM);
        let d = graph.degree();
        let rows: Vec<Vec<u32>> = graph.forms.iter().map(|g| space.to_dense(g, d)).collect();
        Matrix::from_rows(field, &rows).rank()
    };
    if forms_rank != side.p_dim().min(monomials_of_degree(W_DIM, graph.degree()).len()) {
        return Ok(None);
    }
    let Ok(mut s) = subspace_containing(field, side, &span, rng) else { return Ok(None) };
    if kind == GraphKind::CubicBasepoint {
        // The construction needs λ non-degenerate at the base point.
        let lam = s.lambda_on_p2()?;
        if lam.evaluate(&graph.base_points[0]).rank() < side.annihilator_dim() {
            return Ok(None);
        }
    }
    s.graph = Some(graph);
    Ok(Some(s))
}

/// `λ` for the block constructions: `[[A, b], [0, c]]` with `A` of size
/// `5 × 4`, and `b = 0` for the split second type.
fn try_block(kind: GraphKind, field: Fp, rng: &mut Rng) -> Result<Option<TensorSubspace>> {
    let ring = plane(field)?;
    let (p, m) = (7, 5);
    let mut entries = vec![ring.zero(); p * m];
    for i in 0..5 {
        for j in 0..4 {
            entries[i * m + j] = rng.linear_form(ring);
        }
        if kind == GraphKind::M10 {
            entries[i * m + 4] = rng.linear_form(ring);
        }
    }
    for i in 5..7 {
        entries[i * m + 4] = rng.linear_form(ring);
    }
    let lam = PolyMat::new(ring, p, m, entries, vec![0; p], vec![1; m])?;
    Ok(TensorSubspace::from_lambda(Side::CalabiYau, &lam).ok())
}

/// `λ = θ·C`: `θ` a random skew `7 × 7` matrix of linear forms on P²
/// (whose kernel is spanned by its `6 × 6` Pfaffians) and `C` a random
/// constant `7 × 5` matrix. A general map into `O(−2) ⊕ 7O(−1)` has no
/// component into `O(−2)` in these degrees, which leaves `C`.
fn try_skew(field: Fp, rng: &mut Rng) -> Result<Option<TensorSubspace>> {
    let ring = plane(field)?;
    let mut e = vec![ring.zero(); 49];
    for i in 0..7 {
        for j in i + 1..7 {
            let l = rng.linear_form(ring);
            e[j * 7 + i] = -&l;
            e[i * 7 + j] = l;
        }
    }
    let theta = PolyMat::new(ring, 7, 7, e, vec![0; 7], vec![1; 7])?;
    let c = rng.matrix(field, 7, 5);
    let lam = theta.right_mul_const(&c)?;
    Ok(TensorSubspace::from_lambda(Side::CalabiYau, &lam).ok())
}

/// Evaluation functional of the fiber at `w` on the ambient split bundle:
/// the section `(s_m)` goes to `Σ α_m s_m(w)`.
fn try_projection(b: BundleType, field: Fp, rng: &mut Rng) -> Result<Option<TensorSubspace>> {
    let ring = plane(field)?;
    let twists = b.ambient_twists();
    let k = b.fiber_count();
    // Sections as coordinate vectors over the concatenated monomial bases.
    let monos: Vec<Vec<Mono>> = twists.iter().map(|&e| monomials_of_degree(W_DIM, e)).collect();
    let total: usize = monos.iter().map(Vec::len).sum();
    let mut sections = Matrix::identity(field, total).row_vecs();
    if b == BundleType::TangentTwist {
        // Cubic triples with Σ y_a c_a = 0.
        let mut space = DenseSpace::new(W_DIM);
        let quartics = space.dim(4);
        let mut rel = Matrix::zeros(field, quartics, total);
        let mut col = 0;
        for (a, ms) in monos.iter().enumerate() {
            for m in ms {
                let idx = space.index_of(&m.mul_var(a));
                rel.set(idx, col, 1);
                col += 1;
            }
        }
        sections = rel.kernel();
    }
    let eval = |sec: &[u32], w: &[u32], alpha: &[u32]| -> u32 {
        let mut acc = 0u32;
        let mut col = 0;
        for (m_idx, ms) in monos.iter().enumerate() {
            for m in ms {
                if sec[col] != 0 {
                    let v = Poly::monomial(ring, *m, sec[col]).evaluate(w);
                    acc = field.add(acc, field.mul(alpha[m_idx], v));
                }
                col += 1;
            }
        }
        acc
    };
    // Sections whose value at each chosen point lies in the kernel of the
    // chosen fiber functional: a 7-dimensional space for general choices.
    let points: Vec<(Vec<u32>, Vec<u32>)> = (0..k)
        .map(|_| (random_plane_point(field, rng), rng.vector(field, twists.len())))
        .collect();
    let conditions = Matrix::from_fn(field, k, sections.len(), |i, j| eval(&sections[j], &points[i].0, &points[i].1));
    let kernel = conditions.kernel();
    if kernel.len() != 7 {
        return Ok(None);
    }
    let chosen: Vec<Vec<u32>> = Matrix::from_rows(field, &kernel).mul(&Matrix::from_rows(field, &sections)).row_vecs();
    // Linear syzygies Σ_{a,i} n[a][i] y_a s_i = 0 among the seven sections,
    // computed in the ambient split bundle twisted by one.
    let up: Vec<Vec<Mono>> = twists.iter().map(|&e| monomials_of_degree(W_DIM, e + 1)).collect();
    let up_offsets: Vec<usize> = up.iter().scan(0, |acc, v| {
        let o = *acc;
        *acc += v.len();
        Some(o)
    }).collect();
    let up_total: usize = up.iter().map(Vec::len).sum();
    let index: Vec<crate::algebra::Map<Mono, usize>> =
        up.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (*m, i)).collect()).collect();
    let p = 7;
    let mut mult = Matrix::zeros(field, up_total, W_DIM * p);
    for a in 0..W_DIM {
        for (i, sec) in chosen.iter().enumerate() {
            let mut col = 0;
            for (m_idx, ms) in monos.iter().enumerate() {
                for m in ms {
                    let c = sec[col];
                    col += 1;
                    if c == 0 {
                        continue;
                    }
                    let row = up_offsets[m_idx] + index[m_idx][&m.mul_var(a)];
                    let cur = mult.get(row, a * p + i);
                    mult.set(row, a * p + i, field.add(cur, c));
                }
            }
        }
    }
    let ann = mult.kernel();
    if ann.len() != Side::CalabiYau.annihilator_dim() {
        return Ok(None);
    }
    Ok(TensorSubspace::from_annihilator(field, Side::CalabiYau, &ann).ok())
}

fn attempt(kind: GraphKind, field: Fp, rng: &mut Rng) -> Result<Option<TensorSubspace>> {
    match kind {
        GraphKind::Linear
        | GraphKind::Veronese2
        | GraphKind::CubicBasepoint
        | GraphKind::DpLinear
        | GraphKind::DpVeronese2
        | GraphKind::M7 => try_graph(kind, field, rng),
        GraphKind::M10 | GraphKind::K11Type2 => try_block(kind, field, rng),
        GraphKind::SkewK9 => try_skew(field, rng),
        GraphKind::Projection(b) => try_projection(b, field, rng),
    }
}

/// Builds a subspace of the given kind from the stream keyed by
/// `(seed, prime, kind)`, resampling degenerate draws.
pub fn build_graph_subspace(kind: GraphKind, field: Fp, seed: u64) -> Result<TensorSubspace> {
    let mut rng = Rng::for_task(seed, field.prime(), &kind.name());
    for _ in 0..MAX_ATTEMPTS {
        let mut draw = rng.fork("attempt");
        if let Some(mut s) = attempt(kind, field, &mut draw)? {
            s.kind = kind.name();
            s.seed = seed;
            return Ok(s);
        }
    }
    Err(Error::ResamplingExhausted { what: kind.name(), attempts: MAX_ATTEMPTS })
}

/// The special builders (`m7`, `m10`, `k11_type2`, `skew_k9`).
pub fn special_builder(kind: GraphKind, field: Fp, seed: u64) -> Result<TensorSubspace> {
    match kind {
        GraphKind::M7 | GraphKind::M10 | GraphKind::K11Type2 | GraphKind::SkewK9 => {
            build_graph_subspace(kind, field, seed)
        }
        _ => Err(Error::InvalidSpec(format!("{} is not a special builder", kind.name()))),
    }
}

/// Projects the projectivised bundle from `k` general points of it.
pub fn build_by_projection(bundle: BundleType, field: Fp, seed: u64) -> Result<TensorSubspace> {
    build_graph_subspace(GraphKind::Projection(bundle), field, seed)
}

/// A uniformly random subspace (the negative control).
pub fn generic_subspace(side: Side, field: Fp, seed: u64) -> Result<TensorSubspace> {
    let mut rng = Rng::for_task(seed, field.prime(), "generic");
    let mut s = TensorSubspace::random(field, side, &mut rng)?;
    s.kind = "generic".to_string();
    s.seed = seed;
    Ok(s)
}

/// Lifts a surface-side subspace containing a graph to the threefold side.
///
/// The graph `v: P² → P⁵` is extended to `(v, g)` with `g` a random form
/// of the same kind; the remaining basis tensors get a random last column,
/// and two random tensors are added. The result contains the lifted graph
/// and projects onto the original subspace along the new coordinate.
pub fn extend_dp_to_cy(s: &TensorSubspace, seed: u64) -> Result<TensorSubspace> {
    if s.side() != Side::DelPezzo {
        return Err(Error::InvalidSpec("extension starts from a surface-side subspace".into()));
    }
    let graph = s.graph.as_ref().ok_or_else(|| Error::InvalidSpec("extension needs a contained graph".into()))?;
    let field = s.field();
    let ring = graph.forms[0].ring();
    let mut rng = Rng::for_task(seed, field.prime(), "extend");
    for _ in 0..MAX_ATTEMPTS {
        let mut draw = rng.fork("attempt");
        let space = forms_through(ring, graph.degree(), &graph.base_points);
        let mut forms = graph.forms.clone();
        forms.push(draw.combination(ring, &space));
        let lifted = Graph { forms, base_points: graph.base_points.clone() };
        let span = lifted.span();
        // Basis tensors of s completing the graph span.
        let old_span = graph.span();
        let mut chosen: Vec<Vec<u32>> = old_span.clone();
        let mut extra = Vec::new();
        for t in s.basis() {
            let mut trial = chosen.clone();
            trial.push(t.clone());
            if Matrix::from_rows(field, &trial).rank() == trial.len() {
                chosen = trial;
                extra.push(t.clone());
            }
        }
        let mut basis = span;
        for t in &extra {
            let mut wide = vec![0u32; W_DIM * 7];
            for a in 0..W_DIM {
                wide[a * 7..a * 7 + 6].copy_from_slice(&t[a * 6..(a + 1) * 6]);
                wide[a * 7 + 6] = draw.elem(field);
            }
            basis.push(wide);
        }
        for _ in 0..2 {
            basis.push(draw.vector(field, W_DIM * 7));
        }
        if let Ok(mut out) = TensorSubspace::from_basis(field, Side::CalabiYau, &basis) {
            out.kind = format!("extend({})", s.kind);
            out.seed = seed;
            out.graph = Some(lifted);
            return Ok(out);
        }
    }
    Err(Error::ResamplingExhausted { what: "extension".into(), attempts: MAX_ATTEMPTS })
}

/// Restricts a threefold-side subspace containing a graph to the surface
/// side: a random 14-dimensional subspace containing the graph span is
/// pushed forward along a random projection `P → P'` with `dim P' = 6`.
pub fn cy_to_dp(s: &TensorSubspace, seed: u64) -> Result<TensorSubspace> {
    if s.side() != Side::CalabiYau {
        return Err(Error::InvalidSpec("restriction starts from a threefold-side subspace".into()));
    }
    let graph = s.graph.as_ref().ok_or_else(|| Error::InvalidSpec("restriction needs a contained graph".into()))?;
    let field = s.field();
    let ring = graph.forms[0].ring();
    let mut rng = Rng::for_task(seed, field.prime(), "restrict");
    let span = graph.span();
    let target = Side::DelPezzo.subspace_dim();
    for _ in 0..MAX_ATTEMPTS {
        let mut draw = rng.fork("attempt");
        let mut vecs = span.clone();
        let basis = Matrix::from_rows(field, s.basis());
        while vecs.len() < target {
            let c = draw.matrix(field, 1, s.basis().len());
            vecs.push(c.mul(&basis).row_vecs().remove(0));
        }
        let proj = draw.matrix(field, 6, 7);
        if proj.rank() < 6 {
            continue;
        }
        let image: Vec<Vec<u32>> = vecs
            .iter()
            .map(|t| {
                let t = Matrix::from_rows(field, &t.chunks(7).map(<[u32]>::to_vec).collect::<Vec<_>>());
                t.mul(&proj.transpose()).row_vecs().concat()
            })
            .collect();
        let forms: Vec<Poly> = (0..6)
            .map(|r| (0..7).fold(ring.zero(), |acc, i| acc.add_scaled(&graph.forms[i], proj.get(r, i))))
            .collect();
        let projected = Graph { forms, base_points: graph.base_points.clone() };
        if projected.span().len() != span.len() {
            continue;
        }
        if let Ok(mut out) = TensorSubspace::from_basis(field, Side::DelPezzo, &image) {
            out.kind = format!("restrict({})", s.kind);
            out.seed = seed;
            out.graph = Some(projected);
            return Ok(out);
        }
    }
    Err(Error::ResamplingExhausted { what: "restriction".into(), attempts: MAX_ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIME;

    fn field() -> Fp {
        Fp::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn graph_spans_have_the_expected_dimensions() {
        for (kind, dim) in [
            (GraphKind::Linear, 6),
            (GraphKind::Veronese2, 10),
            (GraphKind::CubicBasepoint, 14),
            (GraphKind::DpLinear, 6),
            (GraphKind::DpVeronese2, 10),
            (GraphKind::M7, 13),
        ] {
            let s = build_graph_subspace(kind, field(), 1).unwrap();
            let g = s.graph.as_ref().unwrap();
            assert_eq!(g.span().len(), dim, "{}", kind.name());
            for t in g.span() {
                assert!(s.contains(&t));
            }
            // Containment seen through parameter points.
            let mut rng = Rng::from_seed(9);
            for _ in 0..10 {
                let w = rng.point(g.forms[0].ring());
                assert!(s.contains(&g.tensor_at(&w)));
            }
            for pt in &g.base_points {
                assert!(g.forms.iter().all(|f| f.evaluate(pt) == 0));
            }
        }
    }

    #[test]
    fn builders_are_deterministic() {
        for kind in [GraphKind::Linear, GraphKind::M10, GraphKind::SkewK9, GraphKind::Projection(BundleType::Split23)] {
            let a = build_graph_subspace(kind, field(), 7).unwrap();
            let b = build_graph_subspace(kind, field(), 7).unwrap();
            assert_eq!(a, b);
            let c = build_graph_subspace(kind, field(), 8).unwrap();
            assert_ne!(a.annihilator(), c.annihilator());
        }
    }

    #[test]
    fn projection_builders_have_sixteen_dimensions() {
        for b in [BundleType::TangentTwist, BundleType::Split23, BundleType::Split14] {
            let s = build_by_projection(b, field(), 3).unwrap();
            assert_eq!(s.basis().len(), 16);
            assert_eq!(s.annihilator().len(), 5);
        }
    }

    #[test]
    fn extension_and_restriction_keep_the_graph() {
        let dp = build_graph_subspace(GraphKind::DpLinear, field(), 2).unwrap();
        let cy = extend_dp_to_cy(&dp, 5).unwrap();
        let g = cy.graph.as_ref().unwrap();
        assert_eq!(g.span().len(), 6);
        for t in g.span() {
            assert!(cy.contains(&t));
        }
        // Dropping the new coordinate maps the lifted graph onto the old.
        let old = dp.graph.as_ref().unwrap();
        assert_eq!(&g.forms[..6], &old.forms[..]);
        let back = cy_to_dp(&cy, 6).unwrap();
        for t in back.graph.as_ref().unwrap().span() {
            assert!(back.contains(&t));
        }
    }
}
