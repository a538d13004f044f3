use alloc::vec::Vec;

use num_rational::Ratio;

use super::f4::{groebner_basis, groebner_basis_truncated, GroebnerBasis};
use super::hilbert::HilbertSeries;
use crate::algebra::{monomials_of_degree, DenseSpace, Matrix, Poly, Ring};
use crate::{Error, Result};

/// A homogeneous ideal with lazily computed basis and Hilbert series.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    basis: Option<GroebnerBasis>,
    series: Option<HilbertSeries>,
    saturated: bool,
}

/// Dimension, degree and Hilbert polynomial of a projective scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// `-1` for the empty scheme.
    pub proj_dim: i64,
    pub degree: i64,
    /// Hilbert polynomial coefficients in `d`, constant term first.
    pub hp: Vec<Ratio<i64>>,
    pub regularity_bound: i64,
}

impl Ideal {
    /// Zero generators are dropped; all others must be homogeneous.
    pub fn new(ring: Ring, gens: Vec<Poly>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            ring.check_same(&g.ring())?;
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            kept.push(g);
        }
        Ok(Ideal { ring, gens: kept, basis: None, series: None, saturated: false })
    }

    pub fn from_basis(basis: GroebnerBasis) -> Ideal {
        assert!(basis.truncated_at().is_none(), "a truncated basis does not determine the ideal");
        Ideal {
            ring: basis.ring(),
            gens: basis.elements().to_vec(),
            basis: Some(basis),
            series: None,
            saturated: false,
        }
    }

    /// An ideal whose Hilbert series is already known (for instance from
    /// a basis computed in other coordinates).
    pub(crate) fn with_series(ring: Ring, gens: Vec<Poly>, series: HilbertSeries, saturated: bool) -> Ideal {
        Ideal { ring, gens, basis: None, series: Some(series), saturated }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Poly> {
        self.gens
    }

    /// True when the ideal is known to be saturated.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub(crate) fn mark_saturated(&mut self) {
        self.saturated = true;
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.basis.as_ref()
    }

    pub fn groebner_basis(&mut self) -> Result<&GroebnerBasis> {
        if self.basis.is_none() {
            self.basis = Some(groebner_basis(self.ring, &self.gens)?);
        }
        Ok(self.basis.as_ref().unwrap())
    }

    pub fn hilbert_series(&mut self) -> Result<&HilbertSeries> {
        if self.series.is_none() {
            let n = self.ring.nvars();
            let lms = self.groebner_basis()?.leading_monomials();
            self.series = Some(HilbertSeries::from_monomials(n, &lms));
        }
        Ok(self.series.as_ref().unwrap())
    }

    /// `dim (S/I)_d` from the leading-term ideal. Without a cached full
    /// basis or series this only computes the basis up to degree `d`.
    pub fn hilbert_function(&mut self, d: i64) -> Result<i64> {
        if let Some(hs) = &self.series {
            return Ok(hs.hilbert_function(d));
        }
        if self.basis.is_some() || d < 0 {
            return Ok(self.hilbert_series()?.hilbert_function(d));
        }
        let gb = groebner_basis_truncated(self.ring, &self.gens, d as u32)?;
        if gb.truncated_at().is_none() {
            self.basis = Some(gb);
            return Ok(self.hilbert_series()?.hilbert_function(d));
        }
        let hs = HilbertSeries::from_monomials(self.ring.nvars(), &gb.leading_monomials());
        Ok(hs.hilbert_function(d))
    }

    pub fn hilbert_poly_dim_deg(&mut self) -> Result<HilbertData> {
        let hs = self.hilbert_series()?;
        Ok(HilbertData {
            proj_dim: hs.proj_dim(),
            degree: hs.degree(),
            hp: hs.hilbert_polynomial_coeffs(),
            regularity_bound: hs.regularity_bound(),
        })
    }

    pub fn contains(&mut self, f: &Poly) -> Result<bool> {
        Ok(self.groebner_basis()?.contains(f))
    }

    /// True when every generator of `other` lies in this ideal.
    pub fn contains_ideal(&mut self, other: &Ideal) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(gb.normal_forms(other.generators()).iter().all(Poly::is_zero))
    }

    pub fn is_unit(&mut self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_unit())
    }

    /// Spot check that the cached basis and the generators define the same
    /// ideal, by reducing each side modulo the other.
    pub fn check_basis(&mut self) -> Result<bool> {
        let ring = self.ring;
        let gens = self.gens.clone();
        let gb = self.groebner_basis()?.clone();
        if !gb.normal_forms(&gens).iter().all(Poly::is_zero) {
            return Ok(false);
        }
        let from_gens = groebner_basis(ring, &gens)?;
        Ok(from_gens.normal_forms(gb.elements()).iter().all(Poly::is_zero))
    }
}

/// `dim (S/I)_d` from the rank of the degree-`d` Macaulay matrix, without a
/// Gröbner basis.
pub fn hilbert_function_macaulay(ring: Ring, gens: &[Poly], d: i64) -> Result<i64> {
    if d < 0 {
        return Ok(0);
    }
    let d = d as u32;
    let n = ring.nvars();
    let mut space = DenseSpace::new(n);
    let total = space.dim(d);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        ring.check_same(&g.ring())?;
        if g.is_zero() {
            continue;
        }
        let e = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if e > d {
            continue;
        }
        for m in monomials_of_degree(n, d - e) {
            rows.push(space.to_dense(&g.mul_term(&m, 1), d));
        }
    }
    if rows.is_empty() {
        return Ok(total as i64);
    }
    let rank = Matrix::from_rows(ring.field(), &rows).rank();
    Ok((total - rank) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{minors_ideal, Fp, PolyMat, DEFAULT_PRIME};
    use crate::rng::Rng;

    fn ring(n: usize) -> Ring {
        Ring::new(n, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    #[test]
    fn trivial_hilbert_values() {
        let r = ring(7);
        let mut zero = Ideal::new(r, vec![]).unwrap();
        assert_eq!(zero.hilbert_function(1).unwrap(), 7);
        let mut max = Ideal::new(r, (0..7).map(|i| r.var(i)).collect()).unwrap();
        for d in 1..4 {
            assert_eq!(max.hilbert_function(d).unwrap(), 0);
        }
        assert_eq!(max.hilbert_poly_dim_deg().unwrap().proj_dim, -1);
    }

    #[test]
    fn twisted_cubic_by_both_routes() {
        let r = ring(4);
        let x = |i| r.var(i);
        let m = PolyMat::infer(r, 2, 3, vec![x(0), x(1), x(2), x(1), x(2), x(3)]).unwrap();
        let gens = minors_ideal(&m, 2);
        let mut i = Ideal::new(r, gens.clone()).unwrap();
        assert_eq!(i.hilbert_function(2).unwrap(), 7);
        for d in 0..8 {
            assert_eq!(i.hilbert_function(d).unwrap(), hilbert_function_macaulay(r, &gens, d).unwrap());
        }
        let data = i.hilbert_poly_dim_deg().unwrap();
        assert_eq!((data.proj_dim, data.degree), (1, 3));
        assert_eq!(data.hp, vec![Ratio::from_integer(1), Ratio::from_integer(3)]);
        assert!(i.check_basis().unwrap());
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        let r = ring(4);
        let mut rng = Rng::from_seed(2);
        let gens = vec![rng.form(r, 2), rng.form(r, 2)];
        let mut i = Ideal::new(r, gens).unwrap();
        let data = i.hilbert_poly_dim_deg().unwrap();
        assert_eq!((data.proj_dim, data.degree), (1, 4));
    }

    #[test]
    fn truncated_and_full_hilbert_values_agree() {
        let r = ring(5);
        let mut rng = Rng::from_seed(21);
        let mut gens: Vec<Poly> = (0..3).map(|_| rng.form(r, 2)).collect();
        gens.push(rng.form(r, 3));
        let mut lazy = Ideal::new(r, gens.clone()).unwrap();
        let mut full = Ideal::new(r, gens).unwrap();
        full.groebner_basis().unwrap();
        for d in 0..7 {
            assert_eq!(lazy.hilbert_function(d).unwrap(), full.hilbert_function(d).unwrap());
        }
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring(3);
        let f = &r.var(0) + &r.one();
        assert!(matches!(Ideal::new(r, vec![f]), Err(Error::NotHomogeneous)));
    }
}
