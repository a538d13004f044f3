use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{monomial_count, monomials_of_degree, DenseSpace, Matrix, PolyMat, Ring};
use crate::rng::Rng;
use crate::{Error, Result};

/// A bundle `E = ker(F₀ → ⊕O(1))` with `F₀ = ⊕O(d_i)`, or `F₀` itself
/// when there is no constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleKernelSpec {
    ring: Ring,
    twists: Vec<i32>,
    constraint: Option<PolyMat>,
}

impl BundleKernelSpec {
    /// The constraint has one row per `O(1)` summand (row twist `−1`) and
    /// column twists `−d_i`, so entry `(r, i)` has degree `1 − d_i`. The
    /// rank `|F₀| − rows` must be odd.
    pub fn new(ring: Ring, twists: Vec<i32>, constraint: Option<PolyMat>) -> Result<BundleKernelSpec> {
        if let Some(m) = &constraint {
            ring.check_same(&m.ring())?;
            let want: Vec<i32> = twists.iter().map(|&d| -d).collect();
            if m.cols() != twists.len() || m.col_twists() != want.as_slice() || m.row_twists().iter().any(|&t| t != -1) {
                return Err(Error::InvalidSpec(format!(
                    "constraint {}x{} does not map the free cover onto twists of O(1)",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rows = constraint.as_ref().map_or(0, |m| m.rows());
        if rows >= twists.len() || (twists.len() - rows).is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!("rank {} is not odd and positive", twists.len() as i64 - rows as i64)));
        }
        Ok(BundleKernelSpec { ring, twists, constraint })
    }

    pub fn direct_sum(ring: Ring, twists: Vec<i32>) -> Result<BundleKernelSpec> {
        BundleKernelSpec::new(ring, twists, None)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn constraint(&self) -> Option<&PolyMat> {
        self.constraint.as_ref()
    }

    pub fn cover_rank(&self) -> usize {
        self.twists.len()
    }

    pub fn rank(&self) -> usize {
        self.twists.len() - self.constraint.as_ref().map_or(0, |m| m.rows())
    }

    /// `r` with `rank = 2r + 1`.
    pub fn r(&self) -> usize {
        (self.rank() - 1) / 2
    }

    /// Total Chern class truncated after `c₃`: `Π(1 + d_i h) / (1 + h)^q`.
    pub fn chern_classes(&self) -> [i64; 4] {
        let mut c = [1i64, 0, 0, 0];
        for &d in &self.twists {
            for k in (1..4).rev() {
                c[k] += d as i64 * c[k - 1];
            }
        }
        let q = self.constraint.as_ref().map_or(0, |m| m.rows());
        for _ in 0..q {
            // Divide by (1 + h).
            for k in 1..4 {
                c[k] -= c[k - 1];
            }
        }
        c
    }
}

/// `dim Hom(E, E)`, counted as graded endomorphisms of the defining
/// sequence modulo those that vanish on `E`.
///
/// For a direct sum this is `Σ dim S_{d_i − d_j}`. For a kernel, pairs
/// `(B, C)` of graded maps `B: F₀ → F₀`, `C: ⊕O(1) → ⊕O(1)` with
/// `M·B = C·M` are solved for by linear algebra, and the pairs whose `B`
/// kills the kernel at a few random points are subtracted.
pub fn end_dimension(spec: &BundleKernelSpec, rng: &mut Rng) -> Result<usize> {
    let ring = spec.ring;
    let n = ring.nvars();
    let tw = &spec.twists;
    let Some(m) = &spec.constraint else {
        let mut total = 0;
        for &di in tw {
            for &dj in tw {
                total += monomial_count(n, (di - dj) as i64) as usize;
            }
        }
        return Ok(total);
    };
    let f = ring.field();
    let (p, q) = (tw.len(), m.rows());
    // Unknowns: B(i, j) in S_{d_i − d_j} monomial by monomial, then the
    // q² constants of C.
    let mut b_index = vec![vec![(0usize, 0usize); p]; p];
    let mut nb = 0;
    for i in 0..p {
        for j in 0..p {
            let len = monomial_count(n, (tw[i] - tw[j]) as i64) as usize;
            b_index[i][j] = (nb, len);
            nb += len;
        }
    }
    let unknowns = nb + q * q;
    let c_at = |r: usize, s: usize| nb + r * q + s;
    let mut space = DenseSpace::new(n);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in 0..q {
        for j in 0..p {
            let e = 1 - tw[j] as i64;
            if e < 0 {
                continue;
            }
            let e = e as u32;
            let len = space.dim(e);
            // Columns of this block of equations, one per unknown.
            let mut block = vec![vec![0u32; unknowns]; len];
            for i in 0..p {
                let a = m.get(r, i);
                let (start, count) = b_index[i][j];
                if a.is_zero() || count == 0 {
                    continue;
                }
                let monos = monomials_of_degree(n, (tw[i] - tw[j]) as u32);
                for (k, mono) in monos.iter().enumerate() {
                    let v = space.to_dense(&a.mul_term(mono, 1), e);
                    for (row, &x) in block.iter_mut().zip(&v) {
                        row[start + k] = x;
                    }
                }
            }
            for s in 0..q {
                let v = space.to_dense(m.get(s, j), e);
                for (row, &x) in block.iter_mut().zip(&v) {
                    row[c_at(r, s)] = f.neg(x);
                }
            }
            rows.extend(block);
        }
    }
    let solutions = Matrix::from_rows(f, &rows).kernel();
    let total = solutions.len();
    if total == 0 {
        return Ok(0);
    }
    // Restrict to the solution space and impose B(x)·K(x) = 0 at points.
    let mut conditions: Vec<Vec<u32>> = Vec::new();
    let kernel_dim = p - q;
    for _ in 0..3 {
        let x = rng.point(ring);
        let kx = m.evaluate(&x).kernel();
        if kx.len() != kernel_dim {
            return Err(Error::NotVectorBundleKernel { expected: q, found: p - kx.len() });
        }
        // For each solution, B(x) as a dense p×p matrix.
        let bx: Vec<Matrix> = solutions
            .iter()
            .map(|sol| {
                Matrix::from_fn(f, p, p, |i, j| {
                    let (start, count) = b_index[i][j];
                    if count == 0 {
                        return 0;
                    }
                    let monos = monomials_of_degree(n, (tw[i] - tw[j]) as u32);
                    let mut acc = 0u32;
                    for (k, mono) in monos.iter().enumerate() {
                        let c = sol[start + k];
                        if c != 0 {
                            let val = crate::algebra::Poly::monomial(ring, *mono, c).evaluate(&x);
                            acc = f.add(acc, val);
                        }
                    }
                    acc
                })
            })
            .collect();
        for v in &kx {
            for i in 0..p {
                conditions.push(bx.iter().map(|b| b.mul_vec(v)[i]).collect());
            }
        }
    }
    let zero = Matrix::from_rows(f, &conditions).kernel().len();
    Ok(total - zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Poly, DEFAULT_PRIME};

    fn ring(n: usize) -> Ring {
        Ring::new(n, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    fn linear_constraint(r: Ring, q: usize, p: usize, rng: &mut Rng) -> PolyMat {
        let entries = (0..p * q).map(|_| rng.linear_form(r)).collect();
        PolyMat::new(r, q, p, entries, vec![-1; q], vec![0; p]).unwrap()
    }

    #[test]
    fn direct_sums_count_graded_maps() {
        let mut rng = Rng::from_seed(1);
        let s = BundleKernelSpec::direct_sum(ring(7), vec![0; 7]).unwrap();
        assert_eq!(end_dimension(&s, &mut rng).unwrap(), 49);
        let s = BundleKernelSpec::direct_sum(ring(6), vec![0; 5]).unwrap();
        assert_eq!(end_dimension(&s, &mut rng).unwrap(), 25);
        // O(−1) ⊕ 2O(1) on P⁵: 5 constants plus two copies of S₂.
        let s = BundleKernelSpec::direct_sum(ring(6), vec![-1, 1, 1]).unwrap();
        assert_eq!(end_dimension(&s, &mut rng).unwrap(), 5 + 2 * 21);
    }

    #[test]
    fn generic_kernel_is_simple() {
        let r = ring(7);
        let mut rng = Rng::from_seed(2);
        let m = linear_constraint(r, 2, 13, &mut rng);
        let s = BundleKernelSpec::new(r, vec![0; 13], Some(m)).unwrap();
        assert_eq!(s.rank(), 11);
        assert_eq!(end_dimension(&s, &mut rng).unwrap(), 1);
    }

    #[test]
    fn euler_kernel_with_trivial_summands() {
        // ker(8O → O(1)) with constraint (x0 … x5, 0, 0) is Ω(1) ⊕ 2O on P⁵.
        // Hom(Ω(1), O) = H⁰(T(−1)) = 6 dimensions, Hom(O, Ω(1)) = 0.
        let r = ring(6);
        let mut rng = Rng::from_seed(3);
        let mut entries: Vec<Poly> = (0..6).map(|i| r.var(i)).collect();
        entries.extend([r.zero(), r.zero()]);
        let m = PolyMat::new(r, 1, 8, entries, vec![-1], vec![0; 8]).unwrap();
        let s = BundleKernelSpec::new(r, vec![0; 8], Some(m)).unwrap();
        assert_eq!(s.rank(), 7);
        assert_eq!(end_dimension(&s, &mut rng).unwrap(), 1 + 4 + 2 * 6);
    }

    #[test]
    fn chern_classes_from_the_sequence() {
        let r = ring(7);
        let mut rng = Rng::from_seed(4);
        let m = linear_constraint(r, 3, 16, &mut rng);
        let s = BundleKernelSpec::new(r, vec![0; 16], Some(m)).unwrap();
        // (1 + h)^(−3) = 1 − 3h + 6h² − 10h³.
        assert_eq!(s.chern_classes(), [1, -3, 6, -10]);
        assert_eq!(s.r(), 6);
        let s = BundleKernelSpec::direct_sum(r, vec![-1, 0, 0, 1, 1]).unwrap();
        // (1 − h)(1 + h)² = 1 + h − h² − h³.
        assert_eq!(s.chern_classes(), [1, 1, -1, -1]);
    }

    #[test]
    fn rejects_even_rank_and_bad_twists() {
        let r = ring(7);
        assert!(BundleKernelSpec::direct_sum(r, vec![0; 6]).is_err());
        let mut rng = Rng::from_seed(5);
        let m = linear_constraint(r, 2, 13, &mut rng);
        assert!(BundleKernelSpec::new(r, vec![1; 13], Some(m)).is_err());
    }
}
