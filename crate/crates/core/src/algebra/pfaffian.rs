use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::Map as HashMap;

use super::dense::{reduce_all, DenseSpace};
use super::poly::Poly;
use super::polymat::PolyMat;
use super::subsets;
use crate::{Error, Result};

/// Pfaffians of principal submatrices of one graded skew matrix.
///
/// Expansion is along the smallest index of the support,
/// `Pf(S) = Σ_k (−1)^(k+1) a_{s0 sk} Pf(S ∖ {s0, sk})`, and every
/// sub-Pfaffian is memoized by its support bitmask, so supports sharing
/// sub-supports share work. Sub-Pfaffians are held as dense coordinate
/// vectors in the monomial basis of their (twist-determined) degree.
pub struct PfaffianEngine<'a> {
    a: &'a PolyMat,
    dense: DenseSpace,
    memo: HashMap<u64, Rc<Vec<u32>>>,
    /// Degree of `a_ij` is `shift − row_twist_i − row_twist_j`.
    shift: i64,
}

impl<'a> PfaffianEngine<'a> {
    pub fn new(a: &'a PolyMat) -> Result<PfaffianEngine<'a>> {
        if !a.is_skew() {
            return Err(Error::NotSkew);
        }
        if a.rows() > 64 {
            return Err(Error::Dimension("Pfaffians need at most 64 rows".into()));
        }
        let sums: Vec<i64> = (0..a.rows())
            .map(|i| a.col_twists()[i] as i64 + a.row_twists()[i] as i64)
            .collect();
        if sums.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Grading("skew matrix twists must satisfy col_i + row_i = const".into()));
        }
        let shift = sums.first().copied().unwrap_or(0);
        Ok(PfaffianEngine { a, dense: DenseSpace::new(a.ring().nvars()), memo: HashMap::default(), shift })
    }

    /// Degree of the Pfaffian on `support`; negative means it vanishes.
    pub fn degree(&self, support: &[usize]) -> i64 {
        let tw: i64 = support.iter().map(|&i| self.a.row_twists()[i] as i64).sum();
        (support.len() as i64 / 2) * self.shift - tw
    }

    fn mask(support: &[usize]) -> u64 {
        support.iter().fold(0u64, |m, &i| m | (1u64 << i))
    }

    fn compute(&mut self, mask: u64) -> Option<Rc<Vec<u32>>> {
        let support: Vec<usize> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        let deg = self.degree(&support);
        if deg < 0 {
            return None;
        }
        if let Some(v) = self.memo.get(&mask) {
            return Some(v.clone());
        }
        let deg = deg as u32;
        let f = self.a.ring().field();
        if support.is_empty() {
            let v = Rc::new(vec![1u32]);
            self.memo.insert(mask, v.clone());
            return Some(v);
        }
        let len = self.dense.dim(deg);
        let mut acc = vec![0u64; len];
        let budget = f.lazy_budget();
        let mut used = 0u64;
        let s0 = support[0];
        for (k, &sk) in support.iter().enumerate().skip(1) {
            let entry = self.a.get(s0, sk);
            if entry.is_zero() {
                continue;
            }
            let rest = mask & !(1u64 << s0) & !(1u64 << sk);
            let Some(sub) = self.compute(rest) else { continue };
            let sub_deg = deg - entry.total_degree().unwrap();
            let negate = k % 2 == 0;
            for &(m, c) in entry.terms() {
                if used == budget {
                    acc.iter_mut().for_each(|x| *x %= f.prime() as u64);
                    used = 0;
                }
                used += 1;
                let c = if negate { f.neg(c) } else { c };
                self.dense.accumulate_term(&mut acc, &sub, sub_deg, &m, c);
            }
        }
        let v = Rc::new(reduce_all(f, &acc));
        self.memo.insert(mask, v.clone());
        Some(v)
    }

    pub fn pfaffian(&mut self, support: &[usize]) -> Result<Poly> {
        if support.len() % 2 == 1 {
            return Err(Error::OddSupport(support.len()));
        }
        let mut s = support.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != support.len() || s.last().is_some_and(|&i| i >= self.a.rows()) {
            return Err(Error::Dimension("support must be distinct in-range indices".into()));
        }
        let ring = self.a.ring();
        match self.compute(Self::mask(&s)) {
            None => Ok(ring.zero()),
            Some(v) => {
                let d = self.degree(&s) as u32;
                Ok(self.dense.to_poly(ring, d, &v))
            }
        }
    }

    /// Drops memoized sub-Pfaffians (their memory can be large).
    pub fn clear(&mut self) {
        self.memo.clear();
    }
}

/// Pfaffian of the principal submatrix of the skew matrix `a` on `support`.
pub fn pfaffian(a: &PolyMat, support: &[usize]) -> Result<Poly> {
    PfaffianEngine::new(a)?.pfaffian(support)
}

/// All principal Pfaffians of the given even size, supports in
/// lexicographic order.
pub fn principal_pfaffians(a: &PolyMat, size: usize) -> Result<Vec<Poly>> {
    if size % 2 == 1 {
        return Err(Error::OddSupport(size));
    }
    if size > a.rows() {
        return Err(Error::Dimension("Pfaffian size exceeds the matrix".into()));
    }
    let mut engine = PfaffianEngine::new(a)?;
    subsets(a.rows(), size).iter().map(|s| engine.pfaffian(s)).collect()
}
