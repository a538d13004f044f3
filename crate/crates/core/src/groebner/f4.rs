//! Homogeneous Gröbner bases by degree-by-degree matrix reduction.
//!
//! Each step takes every critical pair of the lowest pending degree (plus
//! the input generators of that degree), collects the needed monomial
//! multiples of basis elements by symbolic preprocessing, and reduces the
//! resulting Macaulay-type matrix. Pair bookkeeping uses the product and
//! chain criteria in the Gebauer–Möller form. For homogeneous input the
//! sugar of a pair is its degree, so degree order is sugar order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Fp, Map, Mono, Poly, Ring, Set};
use crate::{Error, Result};

/// A reduced Gröbner basis for grevlex: monic elements, no leading monomial
/// divides another, tails fully reduced. Elements are sorted by leading
/// monomial, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Poly>,
    /// `Some(d)` when only pairs up to degree `d` were processed.
    truncated_at: Option<u32>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Poly> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order_tag(&self) -> &'static str {
        "grevlex"
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.elements.iter().map(|g| g.leading_mono().unwrap()).collect()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }

    /// Remainder of `f` on division by the basis: no term of the result is
    /// divisible by a leading monomial, and `f − result` lies in the ideal
    /// (up to the truncation degree for truncated bases).
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert_eq!(f.ring(), self.ring, "ring mismatch");
        let engine = Reducer::new(self.ring, &self.elements);
        let mut out = self.ring.zero();
        for comp in f.homogeneous_components() {
            let r = engine.reduce_batch(&[comp], false).pop().unwrap();
            out = &out + &r;
        }
        out
    }

    pub fn normal_forms(&self, fs: &[Poly]) -> Vec<Poly> {
        let engine = Reducer::new(self.ring, &self.elements);
        let mut by_deg: BTreeMap<u32, Vec<(usize, Poly)>> = BTreeMap::new();
        let mut out = vec![self.ring.zero(); fs.len()];
        for (i, f) in fs.iter().enumerate() {
            for c in f.homogeneous_components() {
                by_deg.entry(c.total_degree().unwrap()).or_default().push((i, c));
            }
        }
        for (_, items) in by_deg {
            let polys: Vec<Poly> = items.iter().map(|(_, p)| p.clone()).collect();
            let red = engine.reduce_batch(&polys, false);
            for ((i, _), r) in items.iter().zip(red) {
                out[*i] = &out[*i] + &r;
            }
        }
        out
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal generated by homogeneous `gens`.
pub fn groebner_basis(ring: Ring, gens: &[Poly]) -> Result<GroebnerBasis> {
    Engine::new(ring, gens, None)?.run()
}

/// Basis computed only through degree `max_degree`: it agrees with the full
/// reduced basis in all degrees `≤ max_degree`.
pub fn groebner_basis_truncated(ring: Ring, gens: &[Poly], max_degree: u32) -> Result<GroebnerBasis> {
    Engine::new(ring, gens, Some(max_degree))?.run()
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

struct Engine {
    ring: Ring,
    basis: Vec<Poly>,
    lms: Vec<Mono>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    gens: BTreeMap<u32, Vec<Poly>>,
    truncate: Option<u32>,
}

impl Engine {
    fn new(ring: Ring, gens: &[Poly], truncate: Option<u32>) -> Result<Engine> {
        let mut by_deg: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
        for g in gens {
            ring.check_same(&g.ring())?;
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            by_deg.entry(d).or_default().push(g.clone());
        }
        Ok(Engine {
            ring,
            basis: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            gens: by_deg,
            truncate,
        })
    }

    fn run(mut self) -> Result<GroebnerBasis> {
        loop {
            let pair_deg = self.pairs.iter().map(|p| p.lcm.degree()).min();
            let gen_deg = self.gens.keys().next().copied();
            let d = match (pair_deg, gen_deg) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            if self.truncate.is_some_and(|t| d > t) {
                break;
            }
            let (selected, rest): (Vec<Pair>, Vec<Pair>) =
                self.pairs.iter().partition(|p| p.lcm.degree() == d);
            self.pairs = rest;
            let gens = self.gens.remove(&d).unwrap_or_default();
            let new = self.step(&selected, gens);
            for h in new {
                self.update(h);
            }
            if self.basis.iter().zip(&self.active).any(|(g, &a)| a && g.is_constant()) {
                // The unit ideal: nothing else matters.
                let one = self.ring.one();
                return Ok(GroebnerBasis { ring: self.ring, elements: vec![one], truncated_at: None });
            }
        }
        let minimal: Vec<Poly> = self
            .basis
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g.clone())
            .collect();
        let mut elements = interreduce(self.ring, minimal);
        elements.sort_by_key(|a| a.leading_mono());
        // A truncated run that stopped with nothing pending is complete.
        let complete = self.pairs.is_empty() && self.gens.is_empty();
        Ok(GroebnerBasis {
            ring: self.ring,
            elements,
            truncated_at: if complete { None } else { self.truncate },
        })
    }

    fn step(&mut self, pairs: &[Pair], gens: Vec<Poly>) -> Vec<Poly> {
        let mut seeds: Map<Mono, (usize, Mono)> = Map::default();
        let mut used: Set<(usize, Mono)> = Set::default();
        let mut rows: Vec<Poly> = Vec::new();
        for pair in pairs {
            for k in [pair.i, pair.j] {
                let u = pair.lcm.div(&self.lms[k]).unwrap();
                if !used.insert((k, u)) {
                    continue;
                }
                if let hashbrown::hash_map::Entry::Vacant(e) = seeds.entry(pair.lcm) {
                    e.insert((k, u));
                } else {
                    rows.push(self.basis[k].mul_term(&u, 1));
                }
            }
        }
        rows.extend(gens);
        if rows.is_empty() {
            return Vec::new();
        }
        let active: Vec<usize> = (0..self.basis.len()).filter(|&i| self.active[i]).collect();
        let reducer = Reducer::with_active(self.ring, &self.basis, active);
        reducer.new_pivots(&rows, seeds)
    }

    /// Adds `h` to the basis and updates the pair set (Gebauer–Möller).
    fn update(&mut self, h: Poly) {
        let lm_h = h.leading_mono().unwrap();
        let t = self.basis.len();
        // Old pairs killed by the new leading monomial (criterion B).
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(&self.lms[p.i]) != p.lcm
                && lm_h.lcm(&self.lms[p.j]) != p.lcm)
        });
        let mut cands: Vec<(usize, Mono, bool)> = (0..t)
            .filter(|&i| self.active[i])
            .map(|i| (i, self.lms[i].lcm(&lm_h), self.lms[i].is_coprime(&lm_h)))
            .collect();
        // Chain criterion: drop pairs whose lcm is properly divisible by
        // another new pair's lcm.
        let lcms: Vec<Mono> = cands.iter().map(|c| c.1).collect();
        cands.retain(|c| !lcms.iter().any(|l| *l != c.1 && l.divides(&c.1)));
        // Equal lcms: keep one, unless one of them is coprime (product
        // criterion), in which case all are redundant.
        cands.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut survivors = Vec::new();
        let mut k = 0;
        while k < cands.len() {
            let mut e = k;
            while e < cands.len() && cands[e].1 == cands[k].1 {
                e += 1;
            }
            if !cands[k..e].iter().any(|c| c.2) {
                survivors.push(Pair { i: cands[k].0, j: t, lcm: cands[k].1 });
            }
            k = e;
        }
        for i in 0..t {
            if self.active[i] && lm_h.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.pairs.extend(survivors);
        self.basis.push(h);
        self.lms.push(lm_h);
        self.active.push(true);
    }
}

/// Makes a minimal basis reduced: every tail is reduced by the others.
fn interreduce(ring: Ring, minimal: Vec<Poly>) -> Vec<Poly> {
    let mut by_deg: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
    for g in &minimal {
        by_deg.entry(g.total_degree().unwrap()).or_default().push(g.clone());
    }
    let reducer = Reducer::new(ring, &minimal);
    let mut out = Vec::with_capacity(minimal.len());
    for (_, group) in by_deg {
        out.extend(reducer.reduce_batch(&group, true));
    }
    out
}

#[derive(Clone, Debug, Default)]
struct SparseRow {
    cols: Vec<u32>,
    vals: Vec<u32>,
}

/// Row reduction of homogeneous polynomials modulo a fixed list of monic
/// polynomials, by symbolic preprocessing and dense accumulation.
struct Reducer<'a> {
    ring: Ring,
    basis: &'a [Poly],
    active: Vec<usize>,
}

struct Prepared {
    cols: Vec<Mono>,
    col_of: Map<Mono, u32>,
    pivot_rows: Vec<SparseRow>,
    pivot_of: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<'a> Reducer<'a> {
    fn new(ring: Ring, basis: &'a [Poly]) -> Reducer<'a> {
        Reducer { ring, basis, active: (0..basis.len()).collect() }
    }

    fn with_active(ring: Ring, basis: &'a [Poly], active: Vec<usize>) -> Reducer<'a> {
        Reducer { ring, basis, active }
    }

    /// Picks the basis element used to eliminate `m`: among those whose
    /// leading monomial divides `m`, the one with the fewest terms.
    fn find_divisor(&self, m: &Mono) -> Option<(usize, Mono)> {
        let mut best: Option<(usize, Mono)> = None;
        for &k in &self.active {
            let g = &self.basis[k];
            let lm = g.leading_mono().unwrap();
            if let Some(u) = m.div(&lm) {
                if best.is_none_or(|(b, _)| g.len() < self.basis[b].len()) {
                    best = Some((k, u));
                }
            }
        }
        best
    }

    /// Symbolic preprocessing: one pivot row for every reducible monomial
    /// reachable from `rows`. `seeds` fixes the pivot row of some leading
    /// monomials in advance.
    fn prepare(&self, rows: &[Poly], seeds: Map<Mono, (usize, Mono)>) -> Prepared {
        let mut chosen: Map<Mono, (usize, Mono)> = seeds;
        let mut seen: Set<Mono> = Set::default();
        let mut work: Vec<Mono> = Vec::new();
        for r in rows {
            for &(m, _) in r.terms() {
                if seen.insert(m) {
                    work.push(m);
                }
            }
        }
        let mut seed_keys: Vec<Mono> = chosen.keys().copied().collect();
        seed_keys.sort_unstable();
        for lm in seed_keys {
            let (k, u) = chosen[&lm];
            seen.insert(lm);
            for &(m, _) in self.basis[k].terms() {
                let mu = m.mul(&u);
                if seen.insert(mu) {
                    work.push(mu);
                }
            }
        }
        while let Some(m) = work.pop() {
            if chosen.contains_key(&m) {
                continue;
            }
            if let Some((k, u)) = self.find_divisor(&m) {
                chosen.insert(m, (k, u));
                for &(t, _) in self.basis[k].terms().iter().skip(1) {
                    let tu = t.mul(&u);
                    if seen.insert(tu) {
                        work.push(tu);
                    }
                }
            }
        }
        let mut cols: Vec<Mono> = seen.into_iter().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let col_of: Map<Mono, u32> = cols.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let mut pivot_of = vec![NONE; cols.len()];
        let mut leads: Vec<Mono> = chosen.keys().copied().collect();
        leads.sort_unstable_by(|a, b| b.cmp(a));
        let mut pivot_rows = Vec::with_capacity(leads.len());
        for lm in leads {
            let (k, u) = chosen[&lm];
            let g = &self.basis[k];
            let mut row = SparseRow { cols: Vec::with_capacity(g.len()), vals: Vec::with_capacity(g.len()) };
            for &(m, c) in g.terms() {
                row.cols.push(col_of[&m.mul(&u)]);
                row.vals.push(c);
            }
            pivot_of[col_of[&lm] as usize] = pivot_rows.len() as u32;
            pivot_rows.push(row);
        }
        Prepared { cols, col_of, pivot_rows, pivot_of }
    }

    fn to_row(prep: &Prepared, p: &Poly) -> SparseRow {
        SparseRow {
            cols: p.terms().iter().map(|t| prep.col_of[&t.0]).collect(),
            vals: p.terms().iter().map(|t| t.1).collect(),
        }
    }

    /// Reduces `rows` against the pivots and echelonizes the remainders;
    /// returns the new monic polynomials (their leading monomials are not
    /// divisible by any basis leading monomial).
    fn new_pivots(&self, rows: &[Poly], seeds: Map<Mono, (usize, Mono)>) -> Vec<Poly> {
        let f = self.ring.field();
        let prep = self.prepare(rows, seeds);
        let ncols = prep.cols.len();
        let sparse: Vec<SparseRow> = rows.iter().map(|r| Self::to_row(&prep, r)).collect();
        let reduced = reduce_rows(f, ncols, &sparse, &prep.pivot_rows, &prep.pivot_of, 0);
        // Echelonize the survivors among themselves.
        let mut new_rows: Vec<SparseRow> = Vec::new();
        let mut new_pivot_of = vec![NONE; ncols];
        let mut acc = vec![0u64; ncols];
        let budget = f.lazy_budget();
        for row in reduced.into_iter().flatten() {
            let lead = reduce_dense(f, budget, &mut acc, &row, &new_rows, &new_pivot_of, 0);
            if let Some(lead) = lead {
                let r = extract_monic(f, &mut acc, lead);
                new_pivot_of[lead] = new_rows.len() as u32;
                new_rows.push(r);
            }
        }
        // Back-substitute so the new elements are mutually tail-reduced.
        for i in (0..new_rows.len()).rev() {
            let row = new_rows[i].clone();
            let lead = row.cols[0] as usize;
            let mut saved = NONE;
            core::mem::swap(&mut saved, &mut new_pivot_of[lead]);
            let l = reduce_dense(f, budget, &mut acc, &row, &new_rows, &new_pivot_of, lead + 1);
            debug_assert_eq!(l, Some(lead));
            new_rows[i] = extract_monic(f, &mut acc, lead);
            new_pivot_of[lead] = saved;
        }
        new_rows
            .into_iter()
            .map(|r| {
                let terms = r.cols.iter().zip(&r.vals).map(|(&c, &v)| (prep.cols[c as usize], v)).collect();
                Poly::from_sorted_terms(self.ring, terms)
            })
            .collect()
    }

    /// Fully reduces each row modulo the basis. With `keep_lead`, the
    /// leading term is left alone and the result is made monic.
    fn reduce_batch(&self, rows: &[Poly], keep_lead: bool) -> Vec<Poly> {
        let f = self.ring.field();
        let prep = self.prepare(rows, Map::default());
        let ncols = prep.cols.len();
        let budget = f.lazy_budget();
        let mut acc = vec![0u64; ncols];
        rows.iter()
            .map(|r| {
                if r.is_zero() {
                    return r.clone();
                }
                let row = Self::to_row(&prep, r);
                let start = if keep_lead { row.cols[0] as usize + 1 } else { 0 };
                let lead = reduce_dense(f, budget, &mut acc, &row, &prep.pivot_rows, &prep.pivot_of, start);
                let out = match lead {
                    None => SparseRow::default(),
                    Some(l) if keep_lead => extract_monic(f, &mut acc, l),
                    Some(_) => extract(f, &mut acc),
                };
                let terms = out.cols.iter().zip(&out.vals).map(|(&c, &v)| (prep.cols[c as usize], v)).collect();
                Poly::from_sorted_terms(self.ring, terms)
            })
            .collect()
    }
}

/// Loads `row` into `acc` and eliminates every pivot column `≥ start`.
/// Returns the first nonzero column without a pivot (the new leading
/// column), or `None` if the row reduced to zero. `acc` is left holding the
/// reduced row (entries not yet reduced mod p).
fn reduce_dense(
    f: Fp,
    budget: u64,
    acc: &mut [u64],
    row: &SparseRow,
    pivots: &[SparseRow],
    pivot_of: &[u32],
    start: usize,
) -> Option<usize> {
    let p = f.prime() as u64;
    acc.iter_mut().for_each(|x| *x = 0);
    for (&c, &v) in row.cols.iter().zip(&row.vals) {
        acc[c as usize] = v as u64;
    }
    let first = row.cols.first().map_or(acc.len(), |&c| c as usize);
    let mut lead = None;
    let mut used = 0u64;
    for c in first..acc.len() {
        if acc[c] == 0 {
            continue;
        }
        let v = acc[c] % p;
        acc[c] = v;
        if v == 0 {
            continue;
        }
        let piv = pivot_of[c];
        if c < start || piv == NONE {
            if lead.is_none() {
                lead = Some(c);
            }
            continue;
        }
        if used == budget {
            acc[c..].iter_mut().for_each(|x| *x %= p);
            used = 0;
        }
        used += 1;
        let m = p - v;
        let prow = &pivots[piv as usize];
        for (&pc, &pv) in prow.cols.iter().zip(&prow.vals) {
            acc[pc as usize] += m * pv as u64;
        }
        acc[c] = 0;
    }
    lead
}

fn extract(f: Fp, acc: &mut [u64]) -> SparseRow {
    let mut row = SparseRow::default();
    for (c, x) in acc.iter_mut().enumerate() {
        let v = f.reduce(*x);
        *x = 0;
        if v != 0 {
            row.cols.push(c as u32);
            row.vals.push(v);
        }
    }
    row
}

fn extract_monic(f: Fp, acc: &mut [u64], lead: usize) -> SparseRow {
    let inv = f.inv(f.reduce(acc[lead])).unwrap();
    let mut row = extract(f, acc);
    for v in row.vals.iter_mut() {
        *v = f.mul(*v, inv);
    }
    debug_assert_eq!(row.cols[0] as usize, lead);
    row
}

/// Reduces each row against fixed pivot rows (possibly in parallel; each
/// row is independent so the result does not depend on scheduling).
fn reduce_rows(
    f: Fp,
    ncols: usize,
    rows: &[SparseRow],
    pivots: &[SparseRow],
    pivot_of: &[u32],
    start: usize,
) -> Vec<Option<SparseRow>> {
    let budget = f.lazy_budget();
    let work = |acc: &mut Vec<u64>, row: &SparseRow| -> Option<SparseRow> {
        reduce_dense(f, budget, acc, row, pivots, pivot_of, start)?;
        let r = extract(f, acc);
        Some(r)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if rows.len() >= 16 {
            return rows
                .par_iter()
                .map_init(|| vec![0u64; ncols], |acc, row| work(acc, row))
                .collect();
        }
    }
    let mut acc = vec![0u64; ncols];
    rows.iter().map(|row| work(&mut acc, row)).collect()
}
