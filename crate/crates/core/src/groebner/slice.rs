//! Restriction to random linear subspaces.

use alloc::vec::Vec;

use super::ideal::Ideal;
use super::saturate::saturate_irrelevant;
use crate::algebra::{linear_basis, LinearChange, Matrix, Poly, Ring};
use crate::rng::Rng;
use crate::{Error, Result};

/// A random linear subspace of codimension `codim`, parametrised as the
/// image of `x = A·y` with `A` an `n × (n − codim)` matrix of full rank.
pub struct Section {
    ambient: Ring,
    sub: Ring,
    matrix: Matrix,
    change: LinearChange,
}

impl Section {
    pub fn random(ambient: Ring, codim: usize, rng: &mut Rng) -> Result<Section> {
        let n = ambient.nvars();
        if codim >= n {
            return Err(Error::Dimension(alloc::format!("cannot cut P^{} by {codim} hyperplanes", n as i64 - 1)));
        }
        let m = n - codim;
        let sub = ambient.with_nvars(m)?;
        let matrix = loop {
            let a = rng.matrix(ambient.field(), n, m);
            if a.rank() == m {
                break a;
            }
        };
        let change = LinearChange::from_matrix(ambient, sub, &matrix);
        Ok(Section { ambient, sub, matrix, change })
    }

    pub fn ambient(&self) -> Ring {
        self.ambient
    }

    /// Coordinate ring of the subspace.
    pub fn ring(&self) -> Ring {
        self.sub
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Restrictions of `polys`, reduced to a linear basis.
    pub fn restrict(&mut self, polys: &[Poly]) -> Result<Vec<Poly>> {
        let images = self.change.apply_all(polys);
        linear_basis(self.sub, &images)
    }

    /// Saturated ideal of the intersection with the subspace.
    pub fn restrict_ideal(&mut self, ideal: &Ideal, rng: &mut Rng) -> Result<Ideal> {
        let gens = self.restrict(ideal.generators())?;
        saturate_irrelevant(&Ideal::new(self.sub, gens)?, rng)
    }

    /// A point of the subspace in ambient coordinates.
    pub fn to_ambient(&self, y: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(y)
    }
}

/// Dimension and degree read off generic linear sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCertificate {
    pub proj_dim: i64,
    pub degree: i64,
    /// Hyperplanes in the section whose length gave the degree.
    pub hyperplanes: usize,
    /// Cutting by one more hyperplane left nothing.
    pub extra_slice_empty: bool,
    /// Hilbert function of the section in degrees `0..=regularity`.
    pub section_hilbert: Vec<i64>,
}

/// Certifies dimension and degree of `V(ideal)` by slicing.
///
/// Cutting by `k ≤ dim` generic hyperplanes lowers the dimension by `k` and
/// keeps the degree, so the section by `expected_dim` hyperplanes is finite
/// of length `deg` when the expectation holds; an empty section means the
/// dimension is smaller and fewer hyperplanes are tried. One more
/// hyperplane must then leave the empty scheme.
pub fn certify_by_slicing(ideal: &Ideal, expected_dim: i64, rng: &mut Rng) -> Result<SliceCertificate> {
    let ring = ideal.ring();
    let n = ring.nvars() as i64;
    let mut k = expected_dim.clamp(0, n - 1) as usize;
    let (proj_dim, degree, section_hilbert) = loop {
        let mut sec = Section::random(ring, k, rng)?;
        let mut cut = sec.restrict_ideal(ideal, rng)?;
        let hs = cut.hilbert_series()?.clone();
        if hs.proj_dim() >= 0 {
            let reg = hs.regularity_bound().max(1);
            let values = (0..=reg).map(|d| hs.hilbert_function(d)).collect();
            break (k as i64 + hs.proj_dim(), hs.degree(), values);
        }
        if k == 0 {
            break (-1, 0, Vec::new());
        }
        k -= 1;
    };
    let extra_slice_empty = if proj_dim < 0 {
        true
    } else if proj_dim + 1 >= n {
        false
    } else {
        let mut sec = Section::random(ring, proj_dim as usize + 1, rng)?;
        let mut cut = sec.restrict_ideal(ideal, rng)?;
        let empty = cut.hilbert_series()?.proj_dim() < 0;
        empty
    };
    Ok(SliceCertificate { proj_dim, degree, hyperplanes: k, extra_slice_empty, section_hilbert })
}
