use alloc::format;
use alloc::vec::Vec;

use super::Map as HashMap;

use super::dense::LinearChange;
use super::matrix::Matrix;
use super::poly::{Poly, Ring};
use super::subsets;
use crate::{Error, Result};

/// A matrix of polynomials with graded shifts.
///
/// Follows the usual convention for maps of graded free modules: rows index
/// target generators, columns index source generators, and a nonzero entry
/// `(i, j)` is homogeneous of degree `col_twists[j] − row_twists[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    row_twists: Vec<i32>,
    col_twists: Vec<i32>,
}

impl PolyMat {
    pub fn new(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Poly>,
        row_twists: Vec<i32>,
        col_twists: Vec<i32>,
    ) -> Result<PolyMat> {
        if entries.len() != rows * cols || row_twists.len() != rows || col_twists.len() != cols {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix with {} entries", entries.len())));
        }
        for (k, e) in entries.iter().enumerate() {
            ring.check_same(&e.ring())?;
            if e.is_zero() {
                continue;
            }
            let (i, j) = (k / cols, k % cols);
            let want = col_twists[j] as i64 - row_twists[i] as i64;
            match e.homogeneous_degree() {
                Some(d) if d as i64 == want => {}
                _ => {
                    return Err(Error::Grading(format!("entry ({i},{j}) should be homogeneous of degree {want}")));
                }
            }
        }
        Ok(PolyMat { ring, rows, cols, entries, row_twists, col_twists })
    }

    /// Builds a matrix and infers twists from its nonzero entries
    /// (row twists are chosen as small as possible given column twists 0
    /// where a row is empty).
    pub fn infer(ring: Ring, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<PolyMat> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix with {} entries", entries.len())));
        }
        // Solve col_j − row_i = deg(e_ij) on the bipartite graph of nonzero
        // entries, component by component.
        let mut row_tw: Vec<Option<i64>> = alloc::vec![None; rows];
        let mut col_tw: Vec<Option<i64>> = alloc::vec![None; cols];
        for start in 0..rows {
            if row_tw[start].is_some() {
                continue;
            }
            row_tw[start] = Some(0);
            let mut stack = alloc::vec![(true, start)];
            while let Some((is_row, idx)) = stack.pop() {
                if is_row {
                    let r = row_tw[idx].unwrap();
                    for j in 0..cols {
                        let e = &entries[idx * cols + j];
                        if e.is_zero() {
                            continue;
                        }
                        let d = e.homogeneous_degree().ok_or(Error::NotHomogeneous)? as i64;
                        match col_tw[j] {
                            None => {
                                col_tw[j] = Some(r + d);
                                stack.push((false, j));
                            }
                            Some(c) if c == r + d => {}
                            Some(_) => return Err(Error::Grading("entries admit no consistent twists".into())),
                        }
                    }
                } else {
                    let c = col_tw[idx].unwrap();
                    for i in 0..rows {
                        let e = &entries[i * cols + idx];
                        if e.is_zero() {
                            continue;
                        }
                        let d = e.homogeneous_degree().ok_or(Error::NotHomogeneous)? as i64;
                        match row_tw[i] {
                            None => {
                                row_tw[i] = Some(c - d);
                                stack.push((true, i));
                            }
                            Some(r) if r == c - d => {}
                            Some(_) => return Err(Error::Grading("entries admit no consistent twists".into())),
                        }
                    }
                }
            }
        }
        let row_twists = row_tw.into_iter().map(|x| x.unwrap_or(0) as i32).collect();
        let col_twists = col_tw.into_iter().map(|x| x.unwrap_or(0) as i32).collect();
        PolyMat::new(ring, rows, cols, entries, row_twists, col_twists)
    }

    /// A graded skew matrix on `⊕ O(d_i)`: entry `(i, j)` has degree
    /// `shift + d_i + d_j` (`shift = 1` for sections of `∧²E(1)`).
    pub fn skew_with_twists(ring: Ring, twists: &[i32], shift: i32, entries: Vec<Poly>) -> Result<PolyMat> {
        let n = twists.len();
        let row_twists = twists.iter().map(|&d| -d).collect();
        let col_twists = twists.iter().map(|&d| d + shift).collect();
        let m = PolyMat::new(ring, n, n, entries, row_twists, col_twists)?;
        if !m.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(m)
    }

    pub fn zeros(ring: Ring, row_twists: Vec<i32>, col_twists: Vec<i32>) -> PolyMat {
        let (rows, cols) = (row_twists.len(), col_twists.len());
        PolyMat {
            ring,
            rows,
            cols,
            entries: alloc::vec![ring.zero(); rows * cols],
            row_twists,
            col_twists,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_twists(&self) -> &[i32] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i32] {
        &self.col_twists
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// Expected degree of entry `(i, j)`.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.col_twists[j] as i64 - self.row_twists[i] as i64
    }

    pub fn set(&mut self, i: usize, j: usize, e: Poly) -> Result<()> {
        if !e.is_zero() && e.homogeneous_degree().map(|d| d as i64) != Some(self.entry_degree(i, j)) {
            return Err(Error::Grading(format!("entry ({i},{j}) has the wrong degree")));
        }
        self.entries[i * self.cols + j] = e;
        Ok(())
    }

    pub fn is_skew(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return false;
            }
            for j in i + 1..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> PolyMat {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMat {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
            row_twists: self.col_twists.iter().map(|t| -t).collect(),
            col_twists: self.row_twists.iter().map(|t| -t).collect(),
        }
    }

    /// Matrix product; twists compose when the inner twists agree, and are
    /// inferred from the entries otherwise.
    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        self.ring.check_same(&other.ring)?;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        if self.col_twists == other.row_twists {
            let shift: Vec<i32> = other.col_twists.clone();
            PolyMat::new(self.ring, self.rows, other.cols, entries, self.row_twists.clone(), shift)
        } else {
            PolyMat::infer(self.ring, self.rows, other.cols, entries)
        }
    }

    /// Multiplies by a constant matrix on the left (`c · self`).
    pub fn left_mul_const(&self, c: &Matrix) -> Result<PolyMat> {
        if c.cols() != self.rows {
            return Err(Error::Dimension("constant factor has the wrong shape".into()));
        }
        let mut entries = Vec::with_capacity(c.rows() * self.cols);
        for i in 0..c.rows() {
            for j in 0..self.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.rows {
                    acc = acc.add_scaled(self.get(k, j), c.get(i, k));
                }
                entries.push(acc);
            }
        }
        PolyMat::infer(self.ring, c.rows(), self.cols, entries)
    }

    /// Multiplies by a constant matrix on the right (`self · c`).
    pub fn right_mul_const(&self, c: &Matrix) -> Result<PolyMat> {
        self.transpose().left_mul_const(&c.transpose()).map(|m| m.transpose())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMat {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMat {
            ring: self.ring,
            rows: rows.len(),
            cols: cols.len(),
            entries,
            row_twists: rows.iter().map(|&i| self.row_twists[i]).collect(),
            col_twists: cols.iter().map(|&j| self.col_twists[j]).collect(),
        }
    }

    pub fn evaluate(&self, point: &[u32]) -> Matrix {
        Matrix::from_fn(self.ring.field(), self.rows, self.cols, |i, j| self.get(i, j).evaluate(point))
    }

    /// Applies a linear change of variables to every entry.
    pub fn change_vars(&self, change: &mut LinearChange) -> PolyMat {
        PolyMat {
            ring: change.target(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| change.apply(e)).collect(),
            row_twists: self.row_twists.clone(),
            col_twists: self.col_twists.clone(),
        }
    }

    /// Substitutes `x_i ↦ images[i]` in every entry; images must be
    /// homogeneous of degree one (or zero) so grading is preserved.
    pub fn substitute(&self, images: &[Poly]) -> Result<PolyMat> {
        for g in images {
            if !g.is_zero() && g.homogeneous_degree() != Some(1) {
                return Err(Error::Grading("substitution images must be linear forms".into()));
            }
        }
        let target = images.first().map(|g| g.ring()).unwrap_or(self.ring);
        Ok(PolyMat {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.substitute(images)).collect(),
            row_twists: self.row_twists.clone(),
            col_twists: self.col_twists.clone(),
        })
    }

    /// Determinant of a square matrix by Laplace expansion along the first
    /// column with memoization over row subsets.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        let mut memo = HashMap::default();
        Ok(self.minor(&rows, &cols, &mut memo))
    }

    /// Minor on the given rows and columns; `memo` is keyed by the row mask
    /// and is only valid for one fixed column list.
    fn minor(&self, rows: &[usize], cols: &[usize], memo: &mut HashMap<u64, Poly>) -> Poly {
        let k = rows.len();
        if k == 0 {
            return self.ring.one();
        }
        let mask = rows.iter().fold(0u64, |m, &i| m | (1 << i));
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let c = cols[cols.len() - k];
        let mut acc = self.ring.zero();
        for (pos, &r) in rows.iter().enumerate() {
            let e = self.get(r, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let sub = self.minor(&rest, cols, memo);
            if sub.is_zero() {
                continue;
            }
            let term = e * &sub;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `size × size` minors, ordered by (column subset, row subset)
    /// lexicographically.
    pub fn minors(&self, size: usize) -> Vec<Poly> {
        assert!(self.rows <= 64, "minors need at most 64 rows");
        let mut out = Vec::new();
        if size > self.rows.min(self.cols) {
            return out;
        }
        let row_sets = subsets(self.rows, size);
        for cols in subsets(self.cols, size) {
            let mut memo = HashMap::default();
            for rows in &row_sets {
                out.push(self.minor(rows, &cols, &mut memo));
            }
        }
        out
    }
}

/// All `size × size` minors of `m`.
pub fn minors_ideal(m: &PolyMat, size: usize) -> Vec<Poly> {
    m.minors(size)
}

/// The Jacobian matrix `∂f_i/∂x_j`, graded so that row `i` has twist
/// `1 − deg f_i` (zero rows get twist 0).
pub fn jacobian(polys: &[Poly], ring: Ring) -> Result<PolyMat> {
    let n = ring.nvars();
    let mut entries = Vec::with_capacity(polys.len() * n);
    let mut row_twists = Vec::with_capacity(polys.len());
    for f in polys {
        ring.check_same(&f.ring())?;
        let d = if f.is_zero() { 1 } else { f.homogeneous_degree().ok_or(Error::NotHomogeneous)? as i32 };
        row_twists.push(1 - d);
        for j in 0..n {
            entries.push(f.derivative(j));
        }
    }
    PolyMat::new(ring, polys.len(), n, entries, row_twists, alloc::vec![0; n])
}
