use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{DenseSpace, Matrix, Poly, PolyMat, Ring};
use crate::{Error, Result};

/// A graded free presentation `⊕ S(−c_j) → ⊕ S(−r_i) → M → 0`, held as
/// the matrix of the map (rows index target generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    map: PolyMat,
}

impl Presentation {
    pub fn new(map: PolyMat) -> Presentation {
        Presentation { map }
    }

    pub fn ring(&self) -> Ring {
        self.map.ring()
    }

    pub fn map(&self) -> &PolyMat {
        &self.map
    }

    pub fn source_rank(&self) -> usize {
        self.map.cols()
    }

    pub fn target_rank(&self) -> usize {
        self.map.rows()
    }

    /// The presentation of `M / hM` over the coordinate ring of `{h = 0}`.
    pub fn restrict_hyperplane(&self, h: &Poly) -> Result<Presentation> {
        let (_, images) = hyperplane_substitution(self.ring(), h)?;
        Ok(Presentation { map: self.map.substitute(&images)? })
    }

    /// `dim M_d`, where `M` is the cokernel.
    pub fn coker_hilbert(&self, d: i64) -> Result<i64> {
        coker_hilbert(self, d)
    }
}

/// `dim M_d` for the cokernel `M` of a presentation: the dimension of the
/// target in degree `d` minus the rank of the degree-`d` Macaulay matrix.
pub fn coker_hilbert(pr: &Presentation, d: i64) -> Result<i64> {
    let m = &pr.map;
    let ring = m.ring();
    let n = ring.nvars();
    let mut space = DenseSpace::new(n);
    // Target coordinates are concatenated generator by generator.
    let mut offsets = Vec::with_capacity(m.rows());
    let mut total = 0usize;
    for &rt in m.row_twists() {
        offsets.push(total);
        let e = d - rt as i64;
        if e >= 0 {
            total += space.dim(e as u32);
        }
    }
    if total == 0 {
        return Ok(0);
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for j in 0..m.cols() {
        let e = d - m.col_twists()[j] as i64;
        if e < 0 {
            continue;
        }
        let monos = crate::algebra::monomials_of_degree(n, e as u32);
        for mono in &monos {
            let mut row = alloc::vec![0u32; total];
            let mut any = false;
            for i in 0..m.rows() {
                let a = m.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let te = d - m.row_twists()[i] as i64;
                if te < 0 {
                    return Err(Error::Grading(format!("entry ({i},{j}) lands in a negative degree")));
                }
                let img = space.to_dense(&a.mul_term(mono, 1), te as u32);
                row[offsets[i]..offsets[i] + img.len()].copy_from_slice(&img);
                any = true;
            }
            if any {
                rows.push(row);
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(ring.field(), &rows).rank() };
    Ok((total - rank) as i64)
}

/// Coordinates on the hyperplane `h = 0`.
///
/// With `k` the last variable occurring in `h`, the hyperplane is
/// parametrised by the remaining variables (kept in order) and `x_k` is
/// solved for. Returns the smaller ring and the images of the ambient
/// variables, suitable for [`Poly::substitute`]. For `h = x_{n−1}` this is
/// simply `x_{n−1} ↦ 0`.
pub fn hyperplane_substitution(ring: Ring, h: &Poly) -> Result<(Ring, Vec<Poly>)> {
    ring.check_same(&h.ring())?;
    if h.is_zero() {
        return Err(Error::ZeroHyperplane);
    }
    if h.homogeneous_degree() != Some(1) {
        return Err(Error::Grading("a hyperplane needs a linear form".into()));
    }
    let n = ring.nvars();
    let f = ring.field();
    let coeffs: Vec<u32> = (0..n).map(|i| h.coeff(&crate::algebra::Mono::var(i))).collect();
    let k = (0..n).rev().find(|&i| coeffs[i] != 0).unwrap();
    let sub = ring.with_nvars(n - 1)?;
    let inv = f.inv(coeffs[k])?;
    let images = (0..n)
        .map(|i| {
            if i < k {
                sub.var(i)
            } else if i > k {
                sub.var(i - 1)
            } else {
                let solved: Vec<u32> = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| f.neg(f.mul(coeffs[j], inv)))
                    .collect();
                sub.linear_form(&solved)
            }
        })
        .collect();
    Ok((sub, images))
}
