use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Map as HashMap;

use super::field::Fp;
use super::matrix::Matrix;
use super::mono::{monomials_of_degree, Mono};
use super::poly::{Poly, Ring};

struct DegreeTable {
    monos: Vec<Mono>,
    index: HashMap<Mono, u32>,
    /// `up[j * n + v]` is the index of `x_v · monos[j]` one degree higher.
    up: Vec<u32>,
}

/// Dense coordinates for homogeneous forms: for each degree, the monomial
/// basis (largest first), a lookup table and multiply-by-variable tables.
pub struct DenseSpace {
    nvars: usize,
    tables: Vec<DegreeTable>,
}

impl DenseSpace {
    pub fn new(nvars: usize) -> DenseSpace {
        DenseSpace { nvars, tables: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn table(&self, d: u32) -> &DegreeTable {
        &self.tables[d as usize]
    }

    /// Makes the tables for degrees `0..=d` available, including the
    /// multiplication tables into degree `d + 1`.
    pub fn ensure(&mut self, d: u32) {
        let n = self.nvars;
        while self.tables.len() <= d as usize + 1 {
            let deg = self.tables.len() as u32;
            let monos = monomials_of_degree(n, deg);
            let index = monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
            self.tables.push(DegreeTable { monos, index, up: Vec::new() });
        }
        for deg in 0..=d as usize {
            if !self.tables[deg].up.is_empty() || self.tables[deg].monos.is_empty() || n == 0 {
                continue;
            }
            let mut up = Vec::with_capacity(self.tables[deg].monos.len() * n);
            for m in &self.tables[deg].monos {
                for v in 0..n {
                    up.push(self.tables[deg + 1].index[&m.mul_var(v)]);
                }
            }
            self.tables[deg].up = up;
        }
    }

    pub fn dim(&mut self, d: u32) -> usize {
        self.ensure(d);
        self.table(d).monos.len()
    }

    pub fn monos(&mut self, d: u32) -> &[Mono] {
        self.ensure(d);
        &self.table(d).monos
    }

    pub fn index_of(&mut self, m: &Mono) -> usize {
        self.ensure(m.degree());
        self.table(m.degree()).index[m] as usize
    }

    /// Coordinates of a form of degree `d` (zero is allowed).
    pub fn to_dense(&mut self, f: &Poly, d: u32) -> Vec<u32> {
        self.ensure(d);
        let t = self.table(d);
        let mut v = vec![0u32; t.monos.len()];
        for &(m, c) in f.terms() {
            assert_eq!(m.degree(), d, "form is not of degree {d}");
            v[t.index[&m] as usize] = c;
        }
        v
    }

    pub fn to_poly(&mut self, ring: Ring, d: u32, v: &[u32]) -> Poly {
        self.ensure(d);
        let t = self.table(d);
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (t.monos[i], c))
            .collect();
        Poly::from_sorted_terms(ring, terms)
    }

    /// Index map `j ↦ index(mono · monos_d[j])` in degree `d + deg(mono)`.
    pub fn shift_map(&mut self, d: u32, mono: &Mono) -> Vec<u32> {
        let e = mono.degree();
        self.ensure(d + e);
        let n = self.nvars;
        let mut map: Vec<u32> = (0..self.table(d).monos.len() as u32).collect();
        let mut deg = d;
        for v in 0..n {
            for _ in 0..mono.exponent(v) {
                let up = &self.table(deg).up;
                for x in map.iter_mut() {
                    *x = up[*x as usize * n + v];
                }
                deg += 1;
            }
        }
        map
    }

    /// `acc += c · mono · src` where `src` has degree `d`.
    ///
    /// The caller owns lazy reduction: each call adds at most one product
    /// `< p²` to every accumulator entry.
    pub fn accumulate_term(&mut self, acc: &mut [u64], src: &[u32], d: u32, mono: &Mono, c: u32) {
        if mono.degree() == 1 {
            self.ensure(d);
            let v = mono.first_var().unwrap();
            let n = self.nvars;
            let up = &self.table(d).up;
            for (j, &s) in src.iter().enumerate() {
                if s != 0 {
                    acc[up[j * n + v] as usize] += c as u64 * s as u64;
                }
            }
            return;
        }
        let map = self.shift_map(d, mono);
        for (j, &s) in src.iter().enumerate() {
            if s != 0 {
                acc[map[j] as usize] += c as u64 * s as u64;
            }
        }
    }
}

/// Reduces a lazily accumulated vector.
pub(crate) fn reduce_all(f: Fp, acc: &[u64]) -> Vec<u32> {
    acc.iter().map(|&x| f.reduce(x)).collect()
}

/// A linear change of variables `x_i ↦ Σ_j b_ij y_j` from `src` to `tgt`,
/// applied to homogeneous forms through cached dense images of monomials.
pub struct LinearChange {
    src: Ring,
    tgt: Ring,
    rows: Vec<Vec<u32>>,
    dense: DenseSpace,
    images: BTreeMap<u32, Vec<Vec<u32>>>,
}

impl LinearChange {
    /// `rows[i]` holds the coefficients of the image of `x_i`.
    pub fn new(src: Ring, tgt: Ring, rows: Vec<Vec<u32>>) -> LinearChange {
        assert_eq!(rows.len(), src.nvars());
        assert!(rows.iter().all(|r| r.len() == tgt.nvars()));
        assert_eq!(src.field(), tgt.field());
        LinearChange { src, tgt, rows, dense: DenseSpace::new(tgt.nvars()), images: BTreeMap::new() }
    }

    /// The change given by a matrix whose row `i` is the image of `x_i`.
    pub fn from_matrix(src: Ring, tgt: Ring, m: &Matrix) -> LinearChange {
        LinearChange::new(src, tgt, m.row_vecs())
    }

    pub fn source(&self) -> Ring {
        self.src
    }

    pub fn target(&self) -> Ring {
        self.tgt
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(self.src.field(), &self.rows)
    }

    pub fn image_of_var(&self, i: usize) -> Poly {
        self.tgt.linear_form(&self.rows[i])
    }

    fn build(&mut self, d: u32) {
        if self.images.contains_key(&d) {
            return;
        }
        let f = self.src.field();
        let n = self.src.nvars();
        let src_space = monomials_of_degree(n, d);
        if d == 0 {
            let mut one = vec![0u32; 1];
            one[0] = 1;
            self.images.insert(0, vec![one]);
            return;
        }
        self.build(d - 1);
        self.dense.ensure(d);
        let prev_index: HashMap<Mono, usize> =
            monomials_of_degree(n, d - 1).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let tn = self.tgt.nvars();
        let out_len = self.dense.dim(d);
        let mut table = Vec::with_capacity(src_space.len());
        for m in &src_space {
            let v = m.first_var().unwrap();
            let rest = m.div(&Mono::var(v)).unwrap();
            let prev = &self.images[&(d - 1)][prev_index[&rest]];
            let mut acc = vec![0u64; out_len];
            for j in 0..tn {
                let c = self.rows[v][j];
                if c != 0 {
                    self.dense.accumulate_term(&mut acc, prev, d - 1, &Mono::var(j), c);
                }
            }
            table.push(reduce_all(f, &acc));
        }
        self.images.insert(d, table);
    }

    pub fn apply(&mut self, g: &Poly) -> Poly {
        assert_eq!(g.ring(), self.src, "polynomial from the wrong ring");
        let f = self.src.field();
        let budget = f.lazy_budget();
        let mut out = self.tgt.zero();
        for comp in g.homogeneous_components() {
            let d = comp.total_degree().unwrap();
            self.build(d);
            let src_index: HashMap<Mono, usize> = monomials_of_degree(self.src.nvars(), d)
                .into_iter()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let len = self.dense.dim(d);
            let mut acc = vec![0u64; len];
            let table = &self.images[&d];
            let mut used = 0;
            for &(m, c) in comp.terms() {
                if used == budget {
                    acc.iter_mut().for_each(|x| *x %= f.prime() as u64);
                    used = 0;
                }
                used += 1;
                let img = &table[src_index[&m]];
                for (a, &x) in acc.iter_mut().zip(img) {
                    *a += c as u64 * x as u64;
                }
            }
            let v = reduce_all(f, &acc);
            let p = self.dense.to_poly(self.tgt, d, &v);
            out = &out + &p;
        }
        out
    }

    pub fn apply_all(&mut self, polys: &[Poly]) -> Vec<Poly> {
        polys.iter().map(|p| self.apply(p)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn dense_round_trip_and_shift() {
        let f = Fp::new(32003).unwrap();
        let r = Ring::new(4, f).unwrap();
        let mut rng = Rng::from_seed(9);
        let g = rng.form(r, 3);
        let mut space = DenseSpace::new(4);
        let v = space.to_dense(&g, 3);
        assert_eq!(space.to_poly(r, 3, &v), g);
        let m = Mono::from_exponents(&[1, 0, 2, 0]);
        let mut acc = vec![0u64; space.dim(6)];
        space.accumulate_term(&mut acc, &v, 3, &m, 7);
        let got = space.to_poly(r, 6, &reduce_all(f, &acc));
        assert_eq!(got, g.mul_term(&m, 7));
    }

    #[test]
    fn linear_change_matches_substitution() {
        let f = Fp::new(32003).unwrap();
        let src = Ring::new(5, f).unwrap();
        let tgt = Ring::new(3, f).unwrap();
        let mut rng = Rng::from_seed(4);
        let b = rng.matrix(f, 5, 3);
        let mut ch = LinearChange::from_matrix(src, tgt, &b);
        let images: Vec<Poly> = (0..5).map(|i| ch.image_of_var(i)).collect();
        for d in [0u32, 1, 2, 4] {
            let g = rng.form(src, d);
            assert_eq!(ch.apply(&g), g.substitute(&images));
        }
        let mixed = &rng.form(src, 2) + &rng.form(src, 3);
        assert_eq!(ch.apply(&mixed), mixed.substitute(&images));
    }
}
