use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::Fp;
use super::matrix::Matrix;
use super::mono::{Mono, MAX_VARS};
use crate::{Error, Result};

/// A polynomial ring `F_p[x0, …, x_{n-1}]` with the grevlex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    field: Fp,
}

impl Ring {
    pub fn new(nvars: usize, field: Fp) -> Result<Ring> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        Ok(Ring { nvars, field })
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.prime()
    }

    /// The same field with a different number of variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Ring> {
        Ring::new(nvars, self.field)
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index out of range");
        Poly { ring: *self, terms: vec![(Mono::var(i), 1)] }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(*self)
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> Poly {
        Poly::monomial(*self, Mono::ONE, c)
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear_form(&self, coeffs: &[u32]) -> Poly {
        assert_eq!(coeffs.len(), self.nvars);
        Poly::from_terms(
            *self,
            coeffs.iter().enumerate().map(|(i, &c)| (Mono::var(i), c)),
        )
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(format!(
                "{} variables mod {} vs {} variables mod {}",
                self.nvars,
                self.prime(),
                other.nvars,
                other.prime()
            )));
        }
        Ok(())
    }
}

/// A sparse polynomial in canonical form: terms strictly decreasing in the
/// monomial order and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Mono, u32)>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Poly {
        Poly { ring, terms: Vec::new() }
    }

    pub fn monomial(ring: Ring, m: Mono, c: u32) -> Poly {
        let c = c % ring.prime();
        if c == 0 {
            return Poly::zero(ring);
        }
        debug_assert!(m.last_var().is_none_or(|v| v < ring.nvars));
        Poly { ring, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Mono, u32)>) -> Poly {
        let f = ring.field;
        let mut v: Vec<(Mono, u32)> = terms.into_iter().map(|(m, c)| (m, c % f.prime())).collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, u32)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1 == 0 {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1 == 0 {
                out.pop();
            }
        }
        Poly { ring, terms: out }
    }

    /// Wraps terms that are already sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<(Mono, u32)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0 && t.1 < ring.prime()));
        Poly { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, u32)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.degree() == 0)
    }

    pub fn leading_term(&self) -> Option<(Mono, u32)> {
        self.terms.first().copied()
    }

    pub fn leading_mono(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Mono) -> u32 {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    /// The common degree of all terms; `None` for the zero polynomial and
    /// for non-homogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().filter(|t| t.0.degree() == d).copied().collect(),
        }
    }

    /// Splits into nonzero homogeneous components, highest degree first.
    pub fn homogeneous_components(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for &(m, c) in &self.terms {
            match out.last_mut() {
                Some(p) if p.terms[0].0.degree() == m.degree() => p.terms.push((m, c)),
                _ => out.push(Poly { ring: self.ring, terms: vec![(m, c)] }),
            }
        }
        out
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.mul_poly(other))
    }

    /// `self + c·other`, merging the sorted term lists.
    pub fn add_scaled(&self, other: &Poly, c: u32) -> Poly {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let f = self.ring.field;
        let c = c % f.prime();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    out.push((b[j].0, f.mul(c, b[j].1)));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(c, b[j].1));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, v)| (m, f.mul(c, v))));
        Poly { ring: self.ring, terms: out }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field;
        let c = c % f.prime();
        if c == 0 {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, v)| (m, f.mul(v, c))).collect(),
        }
    }

    /// Multiplies by the term `c·m`; the order is preserved, so no sort.
    pub fn mul_term(&self, m: &Mono, c: u32) -> Poly {
        let f = self.ring.field;
        let c = c % f.prime();
        if c == 0 {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|&(t, v)| (t.mul(m), f.mul(v, c))).collect(),
        }
    }

    fn mul_poly(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let f = self.ring.field;
        let mut acc: super::Map<Mono, u64> = super::Map::with_capacity_and_hasher(big.len() * small.len(), Default::default());
        let budget = f.lazy_budget();
        let mut rounds = 0u64;
        for &(m1, c1) in &small.terms {
            rounds += 1;
            if rounds >= budget {
                for v in acc.values_mut() {
                    *v %= f.prime() as u64;
                }
                rounds = 1;
            }
            for &(m2, c2) in &big.terms {
                *acc.entry(m1.mul(&m2)).or_insert(0) += c1 as u64 * c2 as u64;
            }
        }
        let mut terms: Vec<(Mono, u32)> = acc
            .into_iter()
            .map(|(m, v)| (m, f.reduce(v)))
            .filter(|t| t.1 != 0)
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { ring: self.ring, terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.ring.nvars, "point has the wrong length");
        let f = self.ring.field;
        let mut powers: Vec<Vec<u32>> = point.iter().map(|&x| vec![1, x % f.prime()]).collect();
        let mut acc = 0u32;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = f.mul(*pw.last().unwrap(), pw[1]);
                    pw.push(next);
                }
                v = f.mul(v, pw[e]);
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Ring homomorphism `x_i ↦ images[i]`; the images share a target ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars, "one image per variable");
        let target = match images.first() {
            Some(p) => p.ring,
            None => return self.clone(),
        };
        assert!(images.iter().all(|p| p.ring == target), "images live in different rings");
        assert_eq!(target.field, self.ring.field, "substitution across fields");
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|g| vec![target.one(), g.clone()]).collect();
        let mut acc = Poly::zero(target);
        for &(m, c) in &self.terms {
            let mut v = target.constant(c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul_poly(&pw[1]);
                    pw.push(next);
                }
                v = v.mul_poly(&pw[e]);
            }
            acc = acc.add_scaled(&v, 1);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let f = self.ring.field;
        let terms = self.terms.iter().filter_map(|&(m, c)| {
            let e = m.exponent(var);
            if e == 0 {
                return None;
            }
            let c = f.mul(c, e % f.prime());
            (c != 0).then(|| (m.with_exponent(var, e - 1), c))
        });
        // Lowering one exponent can reorder terms, so canonicalize.
        Poly::from_terms(self.ring, terms.collect::<Vec<_>>())
    }

    /// Reinterprets the polynomial in a ring with at least as many
    /// variables as it uses.
    pub fn in_ring(&self, ring: Ring) -> Result<Poly> {
        if ring.field != self.ring.field {
            return Err(Error::RingMismatch(format!("prime {} vs {}", self.ring.prime(), ring.prime())));
        }
        if let Some(v) = self.terms.iter().filter_map(|t| t.0.last_var()).max() {
            if v >= ring.nvars {
                return Err(Error::RingMismatch(format!("uses x{v} but target has {} variables", ring.nvars)));
            }
        }
        Ok(Poly { ring, terms: self.terms.clone() })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (i, &(m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(c);
            let (sign, abs) = if s < 0 { ("-", -s) } else { ("+", s) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_scaled(rhs, self.ring.field.prime() - 1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.mul_poly(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.ring.field.prime() - 1)
    }
}

/// Replaces a list of homogeneous polynomials by a reduced row-echelon basis
/// of their span, degree by degree (lowest degree first).
///
/// The output is canonical: it depends only on the span of each degree
/// component's generators.
pub fn linear_basis(ring: Ring, polys: &[Poly]) -> Result<Vec<Poly>> {
    let mut by_degree: alloc::collections::BTreeMap<u32, Vec<&Poly>> = Default::default();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        ring.check_same(&p.ring)?;
        let d = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        by_degree.entry(d).or_default().push(p);
    }
    let mut out = Vec::new();
    for (_, group) in by_degree {
        let mut cols: Vec<Mono> = group.iter().flat_map(|p| p.terms.iter().map(|t| t.0)).collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        cols.dedup();
        let index: super::Map<Mono, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut mat = Matrix::zeros(ring.field, group.len(), cols.len());
        for (r, p) in group.iter().enumerate() {
            for &(m, c) in &p.terms {
                mat.set(r, index[&m], c);
            }
        }
        let rref = mat.rref();
        for r in 0..rref.rank {
            let row = rref.matrix.row(r);
            let terms = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| (cols[j], c))
                .collect();
            out.push(Poly::from_sorted_terms(ring, terms));
        }
    }
    Ok(out)
}
