use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{monomials_of_degree, Fp, Matrix, Poly, PolyMat, Ring};
use crate::rng::Rng;
use crate::{Error, Result};

/// Dimension of the three-dimensional factor `W`.
pub const W_DIM: usize = 3;

/// Which of the two tensor spaces a subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `W ⊗ P` with `dim P = 7`: 16-dimensional subspaces, threefolds in P⁶.
    CalabiYau,
    /// `W ⊗ P` with `dim P = 6`: 14-dimensional subspaces, surfaces in P⁵.
    DelPezzo,
}

impl Side {
    pub fn p_dim(self) -> usize {
        match self {
            Side::CalabiYau => 7,
            Side::DelPezzo => 6,
        }
    }

    /// Dimension of the subspace (the number of columns of the
    /// presentation).
    pub fn subspace_dim(self) -> usize {
        match self {
            Side::CalabiYau => 16,
            Side::DelPezzo => 14,
        }
    }

    pub fn annihilator_dim(self) -> usize {
        W_DIM * self.p_dim() - self.subspace_dim()
    }

    /// The shift taking the Hartshorne–Rao module to the presented one.
    pub fn rao_shift(self) -> i64 {
        match self {
            Side::CalabiYau => 3,
            Side::DelPezzo => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::CalabiYau => "cy",
            Side::DelPezzo => "dp",
        }
    }
}

/// A rational map `P(W) ⇢ P(P)` given by `dim P` forms of one degree in
/// three variables, together with the base points imposed on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub forms: Vec<Poly>,
    pub base_points: Vec<Vec<u32>>,
}

impl Graph {
    pub fn degree(&self) -> u32 {
        self.forms.iter().find_map(|f| f.homogeneous_degree()).unwrap_or(0)
    }

    /// Basis of the span of `{w ⊗ v(w)}`: one tensor per monomial `μ` of
    /// degree `deg + 1`, holding the coefficients of `μ` in `w_a·v_i(w)`.
    pub fn span(&self) -> Vec<Vec<u32>> {
        let p = self.forms.len();
        let ring = self.forms[0].ring();
        let f = ring.field();
        let monos = monomials_of_degree(W_DIM, self.degree() + 1);
        let rows: Vec<Vec<u32>> = monos
            .iter()
            .map(|mu| {
                let mut t = vec![0u32; W_DIM * p];
                for a in 0..W_DIM {
                    for (i, v) in self.forms.iter().enumerate() {
                        let prod = v.mul_term(&crate::algebra::Mono::var(a), 1);
                        t[a * p + i] = prod.coeff(mu);
                    }
                }
                t
            })
            .collect();
        Matrix::from_rows(f, &rows).row_space_basis()
    }

    /// `w ⊗ v(w)` at a parameter point.
    pub fn tensor_at(&self, w: &[u32]) -> Vec<u32> {
        let f = self.forms[0].ring().field();
        let v: Vec<u32> = self.forms.iter().map(|g| g.evaluate(w)).collect();
        simple_tensor(f, w, &v)
    }
}

/// Row-major `3 × p` coordinates of `w ⊗ v`.
pub fn simple_tensor(f: Fp, w: &[u32], v: &[u32]) -> Vec<u32> {
    w.iter().flat_map(|&wa| v.iter().map(move |&vi| f.mul(wa, vi))).collect()
}

/// The pairing of `W* ⊗ P*` with `W ⊗ P`.
pub fn pairing(f: Fp, n: &[u32], t: &[u32]) -> u32 {
    n.iter().zip(t).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// A linear subspace `L ⊂ W ⊗ P`, with `W` three-dimensional, stored both
/// through a basis and through its annihilator in `W* ⊗ P*`. Tensors are
/// row-major `3 × dim P` coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSubspace {
    field: Fp,
    side: Side,
    basis: Vec<Vec<u32>>,
    annihilator: Vec<Vec<u32>>,
    /// Builder and seed that produced the subspace.
    pub kind: String,
    pub seed: u64,
    /// A graph contained in the subspace, when the builder put one there.
    pub graph: Option<Graph>,
}

impl TensorSubspace {
    fn check_len(side: Side, vecs: &[Vec<u32>]) -> Result<()> {
        let len = W_DIM * side.p_dim();
        if vecs.iter().any(|v| v.len() != len) {
            return Err(Error::Dimension(format!("tensors must have {len} coordinates")));
        }
        Ok(())
    }

    fn assemble(field: Fp, side: Side, basis: Vec<Vec<u32>>, annihilator: Vec<Vec<u32>>) -> Result<TensorSubspace> {
        if basis.len() != side.subspace_dim() || annihilator.len() != side.annihilator_dim() {
            return Err(Error::Dimension(format!(
                "subspace of dimension {} (annihilator {}) on the {} side",
                basis.len(),
                annihilator.len(),
                side.name()
            )));
        }
        Ok(TensorSubspace { field, side, basis, annihilator, kind: String::new(), seed: 0, graph: None })
    }

    /// The span of `vecs`, kept as the basis; they must be independent and
    /// as many as the side's subspace dimension.
    pub fn from_basis(field: Fp, side: Side, vecs: &[Vec<u32>]) -> Result<TensorSubspace> {
        Self::check_len(side, vecs)?;
        if vecs.is_empty() {
            return Self::assemble(field, side, Vec::new(), Matrix::identity(field, W_DIM * side.p_dim()).row_vecs());
        }
        let (rank, annihilator) = Matrix::from_rows(field, vecs).rref_kernel();
        if rank != vecs.len() {
            return Err(Error::Dimension(format!("{} tensors span only {rank} dimensions", vecs.len())));
        }
        let annihilator = if annihilator.is_empty() { annihilator } else { Matrix::from_rows(field, &annihilator).row_space_basis() };
        Self::assemble(field, side, vecs.to_vec(), annihilator)
    }

    /// The subspace annihilated by `vecs`.
    pub fn from_annihilator(field: Fp, side: Side, vecs: &[Vec<u32>]) -> Result<TensorSubspace> {
        Self::check_len(side, vecs)?;
        let ann = Matrix::from_rows(field, vecs).row_space_basis();
        let basis = if ann.is_empty() {
            Matrix::identity(field, W_DIM * side.p_dim()).row_vecs()
        } else {
            Matrix::from_rows(field, &ann).kernel()
        };
        Self::assemble(field, side, basis, ann)
    }

    /// A uniformly random subspace.
    pub fn random(field: Fp, side: Side, rng: &mut Rng) -> Result<TensorSubspace> {
        let len = W_DIM * side.p_dim();
        loop {
            let vecs: Vec<Vec<u32>> = (0..side.annihilator_dim()).map(|_| rng.vector(field, len)).collect();
            if let Ok(s) = Self::from_annihilator(field, side, &vecs) {
                return Ok(s);
            }
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn p_dim(&self) -> usize {
        self.side.p_dim()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn annihilator(&self) -> &[Vec<u32>] {
        &self.annihilator
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.annihilator.iter().all(|n| pairing(self.field, n, t) == 0)
    }

    /// The same subspace with basis `g · basis` for an invertible `g`.
    pub fn recombined(&self, g: &Matrix) -> Result<TensorSubspace> {
        if g.rows() != self.basis.len() || g.rank() != self.basis.len() {
            return Err(Error::Dimension("recombination must be invertible".into()));
        }
        let basis = g.mul(&Matrix::from_rows(self.field, &self.basis)).row_vecs();
        Ok(TensorSubspace { basis, ..self.clone() })
    }

    /// Coordinate ring of `P(P)`.
    pub fn ambient_ring(&self) -> Result<Ring> {
        Ring::new(self.p_dim(), self.field)
    }

    /// Coordinate ring of `P(W)`.
    pub fn plane_ring(&self) -> Result<Ring> {
        Ring::new(W_DIM, self.field)
    }

    /// The `3 × dim L` matrix of linear forms on `P(P)` whose column `j` is
    /// basis tensor `j` contracted against the coordinates: entry `(a, j)`
    /// is `Σ_i t_j[a][i] x_i`. Graded as a map `⊕O → 3O(1)`.
    pub fn matrix_on_pn(&self) -> Result<PolyMat> {
        let ring = self.ambient_ring()?;
        let p = self.p_dim();
        let cols = self.basis.len();
        let mut entries = vec![ring.zero(); W_DIM * cols];
        for (j, t) in self.basis.iter().enumerate() {
            for a in 0..W_DIM {
                entries[a * cols + j] = ring.linear_form(&t[a * p..(a + 1) * p]);
            }
        }
        PolyMat::new(ring, W_DIM, cols, entries, vec![-1; W_DIM], vec![0; cols])
    }

    /// The `dim P × dim L^⊥` matrix of linear forms on `P(W)` whose column
    /// `j` at `w` is annihilator element `j` contracted with `w`: entry
    /// `(i, j)` is `Σ_a n_j[a][i] y_a`. The fiber of `L ∩ Seg` over `w` is
    /// the projectivised kernel of its transpose at `w`. Graded as a map
    /// `⊕O(−1) → ⊕O`.
    pub fn lambda_on_p2(&self) -> Result<PolyMat> {
        let ring = self.plane_ring()?;
        let p = self.p_dim();
        let cols = self.annihilator.len();
        let mut entries = vec![ring.zero(); p * cols];
        for (j, n) in self.annihilator.iter().enumerate() {
            for i in 0..p {
                let coeffs: Vec<u32> = (0..W_DIM).map(|a| n[a * p + i]).collect();
                entries[i * cols + j] = ring.linear_form(&coeffs);
            }
        }
        PolyMat::new(ring, p, cols, entries, vec![0; p], vec![1; cols])
    }

    /// The subspace whose annihilator is spanned by the columns of a
    /// `dim P × m` matrix of linear forms on `P(W)` (the inverse of
    /// [`TensorSubspace::lambda_on_p2`]).
    pub fn from_lambda(side: Side, lambda: &PolyMat) -> Result<TensorSubspace> {
        let p = side.p_dim();
        if lambda.rows() != p || lambda.ring().nvars() != W_DIM {
            return Err(Error::Dimension(format!("λ must be {p} × m in {W_DIM} variables")));
        }
        let ann: Vec<Vec<u32>> = (0..lambda.cols())
            .map(|j| {
                let mut n = vec![0u32; W_DIM * p];
                for i in 0..p {
                    let e = lambda.get(i, j);
                    for a in 0..W_DIM {
                        n[a * p + i] = e.coeff(&crate::algebra::Mono::var(a));
                    }
                }
                n
            })
            .collect();
        TensorSubspace::from_annihilator(lambda.ring().field(), side, &ann)
    }
}

/// Checks that a `q × p` matrix of forms is pointwise surjective at
/// `samples` random points, as the presentation of a bundle kernel must be.
pub fn check_surjective(m: &PolyMat, samples: usize, rng: &mut Rng) -> Result<()> {
    for _ in 0..samples {
        let x = rng.point(m.ring());
        let r = m.evaluate(&x).rank();
        if r < m.rows() {
            return Err(Error::NotVectorBundleKernel { expected: m.rows(), found: r });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIME;

    fn field() -> Fp {
        Fp::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn basis_and_annihilator_are_dual() {
        let mut rng = Rng::from_seed(1);
        for side in [Side::CalabiYau, Side::DelPezzo] {
            let s = TensorSubspace::random(field(), side, &mut rng).unwrap();
            assert_eq!(s.basis().len() + s.annihilator().len(), 3 * side.p_dim());
            for t in s.basis() {
                assert!(s.contains(t));
            }
            let back = TensorSubspace::from_basis(field(), side, s.basis()).unwrap();
            assert_eq!(back.annihilator(), s.annihilator());
        }
    }

    #[test]
    fn rank_one_column_contracts_to_a_multiple() {
        // Basis tensor w ⊗ p gives the column w · (Σ p_i x_i).
        let f = field();
        let mut rng = Rng::from_seed(2);
        let s = TensorSubspace::random(f, Side::CalabiYau, &mut rng).unwrap();
        let (w, p) = (vec![1, 2, 3], vec![5, 0, 0, 7, 0, 1, 0]);
        let mut basis = s.basis().to_vec();
        basis[0] = simple_tensor(f, &w, &p);
        let s = TensorSubspace::from_basis(f, Side::CalabiYau, &basis).unwrap();
        let m = s.matrix_on_pn().unwrap();
        let l = m.ring().linear_form(&p);
        for a in 0..3 {
            assert_eq!(m.get(a, 0), &l.scale(w[a]));
        }
    }

    #[test]
    fn lambda_fibers_pair_to_zero() {
        let f = field();
        let mut rng = Rng::from_seed(3);
        let s = TensorSubspace::random(f, Side::CalabiYau, &mut rng).unwrap();
        let lam = s.lambda_on_p2().unwrap();
        for _ in 0..30 {
            let w = rng.point(lam.ring());
            let fiber = lam.evaluate(&w).transpose().kernel();
            assert_eq!(fiber.len(), 2);
            for v in &fiber {
                assert!(s.contains(&simple_tensor(f, &w, v)));
            }
            assert_eq!(lam.evaluate(&w).rank(), 5);
        }
        assert_eq!(TensorSubspace::from_lambda(Side::CalabiYau, &lam).unwrap(), s);
    }

    #[test]
    fn generic_presentation_is_surjective() {
        let mut rng = Rng::from_seed(4);
        let s = TensorSubspace::random(field(), Side::CalabiYau, &mut rng).unwrap();
        let m = s.matrix_on_pn().unwrap();
        check_surjective(&m, 50, &mut rng).unwrap();
    }
}
