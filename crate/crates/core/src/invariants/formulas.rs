use alloc::format;

use crate::modgeom::BundleKernelSpec;
use crate::{Error, Result};

/// Numerical data of a bundle `E` of rank `2r + 1` on `P^n` and of the
/// twist `t` of its Pfaffian section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub n: i64,
    pub r: i64,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
    pub t: i64,
}

impl BundleSpec {
    pub fn new(n: i64, r: i64, c: [i64; 3]) -> BundleSpec {
        BundleSpec { n, r, c1: c[0], c2: c[1], c3: c[2], t: 1 }
    }

    /// Chern data from the defining sequence of a kernel bundle.
    pub fn from_kernel(spec: &BundleKernelSpec) -> BundleSpec {
        let c = spec.chern_classes();
        BundleSpec::new(spec.ring().nvars() as i64 - 1, spec.r() as i64, [c[1], c[2], c[3]])
    }

    pub fn rank(&self) -> i64 {
        2 * self.r + 1
    }

    /// The twist `s = c₁ + r·t` of the resolution.
    pub fn s(&self) -> i64 {
        self.c1 + self.r * self.t
    }
}

/// Degree of the Pfaffian locus of a general section of `∧²E(1)`:
/// `r c₁² + c₁c₂ + (r² + r) c₁ + c₂ − c₃ + r(2r+1)(2r+2)/12`.
pub fn pfaffian_degree(b: &BundleSpec) -> Result<i64> {
    if b.t != 1 {
        return Err(Error::InvalidSpec(format!("twist {} (only t = 1 is supported)", b.t)));
    }
    let r = b.r;
    let tail = r * (2 * r + 1) * (2 * r + 2);
    if tail % 12 != 0 {
        return Err(Error::InvalidSpec(format!("r = {r} gives a non-integral degree")));
    }
    Ok(r * b.c1 * b.c1 + b.c1 * b.c2 + (r * r + r) * b.c1 + b.c2 - b.c3 + tail / 12)
}

/// The twist `t + 2s − n − 1` with `ω_X = O_X(t + 2s − n − 1)`.
pub fn canonical_degree_check(b: &BundleSpec) -> i64 {
    b.t + 2 * b.s() - b.n - 1
}

/// `h⁰(∧²E(1)) − dim End(E)`; negative means there is no family.
pub fn fixed_family_dimension(h0: usize, end_dim: usize) -> i64 {
    h0 as i64 - end_dim as i64
}

/// Bookkeeping for a family obtained from a stratum of subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub k: usize,
    /// Subspace dimension (16, or 14 on the surface side).
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub dim_mk: i64,
    pub h0: usize,
    pub end_dim: usize,
}

impl FamilySpec {
    /// The threefold family of the stratum with `k` special fibers.
    pub fn cy17(k: usize) -> Result<FamilySpec> {
        Ok(FamilySpec { k, p: 16, q: 3, n: 6, dim_mk: stratum_dimension(k)?, h0: k, end_dim: 1 })
    }
}

/// The graph family dimension and the span dimension for each stratum.
fn stratum_data(k: usize) -> Result<(i64, i64)> {
    // Graphs: 7 forms from a space of dimension m, up to scalar.
    let graphs = |m: i64| 7 * m - 1;
    match k {
        11 => Ok((graphs(3), 6)),
        9 => Ok((graphs(6), 10)),
        // Cubics through a fixed point; the point itself is not counted.
        8 => Ok((graphs(9), 14)),
        _ => Err(Error::InvalidSpec(format!("no stratum dimension for k = {k}"))),
    }
}

/// Dimension of the stratum of 16-dimensional subspaces of `W ⊗ P`
/// containing one graph: the graphs plus the subspaces through the span,
/// a Grassmannian of dimension `(16 − span)(21 − 16)`.
pub fn stratum_dimension(k: usize) -> Result<i64> {
    let (graphs, span) = stratum_data(k)?;
    Ok(graphs + (16 - span) * 5)
}

/// `dim B_k + k − p² − q²` with `dim B_k = dim M_k + p²`.
pub fn tonoli_family_dimension(f: &FamilySpec) -> i64 {
    let q = f.q as i64;
    f.dim_mk + f.k as i64 - q * q
}

/// Lower bound `dim M_k − 57 + k` for `h^{1,2}`.
pub fn hodge_bound(f: &FamilySpec) -> i64 {
    f.dim_mk - 57 + f.k as i64
}

/// Lower bound for `h^{1,1}` from a lower bound on `h^{1,2}` through the
/// Euler number `2(h^{1,1} − h^{1,2}) = −44` of a degree-17 threefold.
pub fn picard_bound(degree: u64, h12_bound: i64) -> Result<i64> {
    match degree {
        17 => Ok(h12_bound - 22),
        d => Err(Error::UnsupportedDegree(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, PolyMat, Ring, DEFAULT_PRIME};
    use crate::rng::Rng;
    use alloc::vec;

    /// Direct expansion of `Π(1 + d_i h)(1 + h)^{−q}` as rational series,
    /// independent of the library's version.
    fn chern_oracle(twists: &[i64], q: i64) -> [i64; 3] {
        let mut c = vec![1i64, 0, 0, 0];
        for &d in twists {
            c = vec![c[0], c[1] + d * c[0], c[2] + d * c[1], c[3] + d * c[2]];
        }
        // (1 + h)^{−q} = Σ (−1)^k C(q + k − 1, k) h^k.
        let inv = [1, -q, q * (q + 1) / 2, -q * (q + 1) * (q + 2) / 6];
        let mut out = [0i64; 3];
        for k in 1..4 {
            out[k - 1] = (0..=k).map(|i| c[i] * inv[k - i]).sum();
        }
        out
    }

    #[test]
    fn degrees_of_the_tables() {
        assert_eq!(pfaffian_degree(&BundleSpec::new(5, 2, [0, 0, 0])).unwrap(), 5);
        assert_eq!(pfaffian_degree(&BundleSpec::new(6, 3, [0, 0, 0])).unwrap(), 14);
        assert_eq!(pfaffian_degree(&BundleSpec::new(6, 6, [-3, 6, -10])).unwrap(), 17);
        assert_eq!(pfaffian_degree(&BundleSpec::new(6, 4, [-1, 1, -1])).unwrap(), 15);
        // dp8 on the same sequence with rank 11.
        assert_eq!(pfaffian_degree(&BundleSpec::new(5, 5, chern_oracle(&[0; 14], 3))).unwrap(), 8);
        let cases: [(&[i64], i64, i64, i64, i64); 6] = [
            (&[-1, 1, 1], 0, 5, 1, 3),
            (&[0, 0, 1], 0, 5, 1, 4),
            (&[0; 8], 1, 5, 3, 6),
            (&[0; 11], 2, 5, 4, 7),
            (&[-1, 0, 0, 1, 1], 0, 6, 2, 12),
            (&[0; 13], 2, 6, 5, 16),
        ];
        for (tw, q, n, r, deg) in cases {
            let b = BundleSpec::new(n, r, chern_oracle(tw, q));
            assert_eq!(pfaffian_degree(&b).unwrap(), deg, "{tw:?}");
        }
        let mut b = BundleSpec::new(6, 3, [0, 0, 0]);
        b.t = 2;
        assert!(pfaffian_degree(&b).is_err());
    }

    #[test]
    fn chern_data_agrees_with_the_sequence() {
        let ring = Ring::new(7, Fp::new(DEFAULT_PRIME).unwrap()).unwrap();
        let mut rng = Rng::from_seed(1);
        let entries = (0..2 * 13).map(|_| rng.linear_form(ring)).collect();
        let m = PolyMat::new(ring, 2, 13, entries, vec![-1; 2], vec![0; 13]).unwrap();
        let spec = BundleKernelSpec::new(ring, vec![0; 13], Some(m)).unwrap();
        let b = BundleSpec::from_kernel(&spec);
        assert_eq!([b.c1, b.c2, b.c3], chern_oracle(&[0; 13], 2));
        assert_eq!((b.n, b.r), (6, 5));
    }

    #[test]
    fn canonical_twists() {
        // Threefolds: s = 3 on P⁶.
        for (r, c1) in [(3, 0), (6, -3), (4, -1), (2, 1)] {
            assert_eq!(canonical_degree_check(&BundleSpec::new(6, r, [c1, 0, 0])), 0);
        }
        // Surfaces: s = 2 on P⁵.
        for (r, c1) in [(2, 0), (1, 1), (3, -1), (5, -3)] {
            assert_eq!(canonical_degree_check(&BundleSpec::new(5, r, [c1, 0, 0])), -1);
        }
        let b = BundleSpec::new(6, 3, [1, 0, 0]);
        assert_eq!(b.s(), 4);
        assert_eq!(canonical_degree_check(&b), 1 + 2 * b.s() - 7);
    }

    #[test]
    fn family_arithmetic() {
        assert_eq!(fixed_family_dimension(147, 49), 98);
        assert_eq!(fixed_family_dimension(60, 25), 35);
        assert!(fixed_family_dimension(0, 1) < 0);
        let dims: [i64; 3] = [8, 9, 11].map(|k| stratum_dimension(k).unwrap());
        assert_eq!(dims, [72, 71, 70]);
        let fams = [8, 9, 11].map(|k| FamilySpec::cy17(k).unwrap());
        assert_eq!(fams.map(|f| tonoli_family_dimension(&f)), [71, 71, 72]);
        assert_eq!(fams.map(|f| hodge_bound(&f)), [23, 23, 24]);
        assert_eq!(picard_bound(17, 24).unwrap(), 2);
        assert_eq!(picard_bound(17, 23).unwrap(), 1);
        assert_eq!(picard_bound(17, 22).unwrap(), 0);
        assert_eq!(picard_bound(14, 24), Err(Error::UnsupportedDegree(14)));
        assert!(stratum_dimension(10).is_err());
    }
}
