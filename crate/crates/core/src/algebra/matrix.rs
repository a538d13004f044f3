use alloc::vec;
use alloc::vec::Vec;

use super::field::Fp;

/// A dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Fp, rows: &[Vec<u32>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x % field.prime()));
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % field.prime());
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.prime());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        let budget = f.lazy_budget();
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut used = 0;
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                if used == budget {
                    acc.iter_mut().for_each(|x| *x %= f.prime() as u64);
                    used = 0;
                }
                used += 1;
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b as u64;
                }
            }
            for j in 0..other.cols {
                out.set(i, j, f.reduce(acc[j]));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Gauss–Jordan elimination. Entries are kept in `u64` and reduced
    /// lazily: a row is reduced only when it becomes the pivot row or when
    /// the accumulation budget of the prime is exhausted.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let p = f.prime() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<u64> = self.data.iter().map(|&x| x as u64).collect();
        let budget = f.lazy_budget();
        let mut used = 0u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let mut found = None;
            for i in r..rows {
                let v = a[i * cols + c] % p;
                a[i * cols + c] = v;
                if v != 0 && found.is_none() {
                    found = Some(i);
                }
            }
            let Some(piv) = found else { continue };
            if piv != r {
                for j in 0..cols {
                    a.swap(piv * cols + j, r * cols + j);
                }
            }
            if used == budget {
                a.iter_mut().for_each(|x| *x %= p);
                used = 0;
            }
            used += 1;
            let inv = f.inv((a[r * cols + c] % p) as u32).unwrap() as u64;
            let mut pivot_row: Vec<u64> = a[r * cols..(r + 1) * cols].to_vec();
            for (j, x) in pivot_row.iter_mut().enumerate() {
                *x = if j < c { 0 } else { (*x % p) * inv % p };
            }
            let nz: Vec<usize> = (c..cols).filter(|&j| pivot_row[j] != 0).collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let v = a[i * cols + c] % p;
                if v == 0 {
                    a[i * cols + c] = 0;
                    continue;
                }
                let m = p - v;
                let row = &mut a[i * cols..(i + 1) * cols];
                if nz.len() * 4 < cols - c {
                    for &j in &nz {
                        row[j] += m * pivot_row[j];
                    }
                } else {
                    for j in c..cols {
                        row[j] += m * pivot_row[j];
                    }
                }
                row[c] = 0;
            }
            a[r * cols..(r + 1) * cols].copy_from_slice(&pivot_row);
            pivots.push(c);
            r += 1;
        }
        let data = a.iter().map(|&x| (x % p) as u32).collect();
        Rref {
            matrix: Matrix { field: f, rows, cols, data },
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rank and a canonical basis of the right kernel `{v : self·v = 0}`.
    ///
    /// One basis vector per free column `j`: it has a 1 in position `j`,
    /// zeros in the other free positions, and minus the reduced column
    /// entries in the pivot positions.
    pub fn rref_kernel(&self) -> (usize, Vec<Vec<u32>>) {
        let rref = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for j in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![0u32; self.cols];
            v[j] = 1;
            for (r, &c) in rref.pivots.iter().enumerate() {
                v[c] = f.neg(rref.matrix.get(r, j));
            }
            kernel.push(v);
        }
        (rref.rank, kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<u32>> {
        self.rref_kernel().1
    }

    /// Left kernel `{v : v·self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<u32>> {
        self.transpose().kernel()
    }

    pub fn determinant(&self) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a.get(i, c) != 0) else { return 0 };
            if piv != c {
                for j in 0..n {
                    let t = a.get(piv, j);
                    a.set(piv, j, a.get(c, j));
                    a.set(c, j, t);
                }
                det = f.neg(det);
            }
            let d = a.get(c, c);
            det = f.mul(det, d);
            let inv = f.inv(d).unwrap();
            for i in c + 1..n {
                let m = f.mul(a.get(i, c), inv);
                if m == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(a.get(i, j), f.mul(m, a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| rref.matrix.get(i, n + j)))
    }

    /// Characteristic polynomial `det(t·I − self)`, lowest degree first,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h.get(i, c) != 0) else { continue };
            if piv != c + 1 {
                // Similarity by a transposition: swap rows and columns.
                for j in 0..n {
                    let t = h.get(piv, j);
                    h.set(piv, j, h.get(c + 1, j));
                    h.set(c + 1, j, t);
                }
                for i in 0..n {
                    let t = h.get(i, piv);
                    h.set(i, piv, h.get(i, c + 1));
                    h.set(i, c + 1, t);
                }
            }
            let inv = f.inv(h.get(c + 1, c)).unwrap();
            for i in c + 2..n {
                let m = f.mul(h.get(i, c), inv);
                if m == 0 {
                    continue;
                }
                // row_i −= m·row_{c+1}, then col_{c+1} += m·col_i.
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(m, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, c + 1), f.mul(m, h.get(k, i)));
                    h.set(k, c + 1, v);
                }
            }
        }
        // p_k = charpoly of the leading k×k block.
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for k in 0..n {
            let mut next = vec![0u32; k + 2];
            let prev = &polys[k];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(h.get(k, k), c));
            }
            let mut prod = 1u32;
            for i in (0..k).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(prod, h.get(i, k));
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[i].iter().enumerate() {
                    next[j] = f.sub(next[j], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Row basis of the span of `rows`, in reduced echelon form.
    pub fn row_space_basis(&self) -> Vec<Vec<u32>> {
        let rref = self.rref();
        (0..rref.rank).map(|i| rref.matrix.row(i).to_vec()).collect()
    }
}
