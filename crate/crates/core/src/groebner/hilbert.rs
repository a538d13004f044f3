//! Hilbert series of monomial ideals and the data read off them.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::algebra::{binomial, Mono};

/// Hilbert series of `S/I` for `S` in `nvars` variables, stored as the
/// numerator `K(t)` of `K(t) / (1 − t)^nvars` and as the reduced form
/// `Q(t) / (1 − t)^δ` with `Q(1) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<i64>,
    reduced: Vec<i64>,
    delta: usize,
}

impl HilbertSeries {
    /// Series of `S/(lms)` for a list of monomials (not necessarily minimal).
    pub fn from_monomials(nvars: usize, lms: &[Mono]) -> HilbertSeries {
        let gens = minimalize(lms.to_vec());
        let numerator = trim(numerator(&gens));
        HilbertSeries::from_numerator(nvars, numerator)
    }

    pub fn from_numerator(nvars: usize, numerator: Vec<i64>) -> HilbertSeries {
        let numerator = trim(numerator);
        let mut reduced = numerator.clone();
        let mut delta = nvars;
        while delta > 0 && !reduced.is_empty() && reduced.iter().sum::<i64>() == 0 {
            // Divide by (1 − t): Q_i = Σ_{j ≤ i} K_j.
            let mut q = Vec::with_capacity(reduced.len() - 1);
            let mut run = 0;
            for &c in &reduced[..reduced.len() - 1] {
                run += c;
                q.push(run);
            }
            reduced = trim(q);
            delta -= 1;
        }
        if reduced.is_empty() {
            delta = 0;
        }
        HilbertSeries { nvars, numerator, reduced, delta }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Numerator over `(1 − t)^nvars`, lowest degree first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// Numerator over `(1 − t)^δ` after cancelling all factors of `1 − t`.
    pub fn reduced_numerator(&self) -> &[i64] {
        &self.reduced
    }

    /// Krull dimension of `S/I`.
    pub fn krull_dim(&self) -> usize {
        self.delta
    }

    /// Dimension of the projective scheme; `-1` when it is empty.
    pub fn proj_dim(&self) -> i64 {
        if self.reduced.is_empty() {
            -1
        } else {
            self.delta as i64 - 1
        }
    }

    pub fn degree(&self) -> i64 {
        self.reduced.iter().sum()
    }

    /// `dim (S/I)_d`.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        if d < 0 {
            return 0;
        }
        let n = self.nvars as u64;
        if n == 0 {
            return self.numerator.get(d as usize).copied().unwrap_or(0);
        }
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as i64) <= d)
            .map(|(i, &k)| k * binomial((d - i as i64) as u64 + n - 1, n - 1) as i64)
            .sum()
    }

    /// Value of the Hilbert polynomial at `d` (any integer).
    pub fn hilbert_polynomial(&self, d: i64) -> i64 {
        if self.delta == 0 {
            return 0;
        }
        let k = self.delta as i64 - 1;
        self.reduced
            .iter()
            .enumerate()
            .map(|(i, &q)| q * poly_binomial(d - i as i64 + k, k))
            .sum()
    }

    /// Coefficients of the Hilbert polynomial in `d`, constant term first;
    /// its length is `proj_dim + 1` (empty for the empty scheme).
    pub fn hilbert_polynomial_coeffs(&self) -> Vec<Ratio<i64>> {
        if self.delta == 0 {
            return Vec::new();
        }
        // Interpolate through proj_dim + 1 values via Newton forward
        // differences, then expand the falling-factorial basis.
        let k = self.delta - 1;
        let vals: Vec<i64> = (0..=k as i64).map(|d| self.hilbert_polynomial(d)).collect();
        let mut diffs = vec![vals.clone()];
        for _ in 0..k {
            let last = diffs.last().unwrap();
            diffs.push(last.windows(2).map(|w| w[1] - w[0]).collect());
        }
        let mut out = vec![Ratio::from_integer(0); k + 1];
        // falling(d, j) / j! as a polynomial in d.
        let mut basis: Vec<Ratio<i64>> = vec![Ratio::from_integer(1)];
        let mut fact = 1i64;
        for (j, row) in diffs.iter().enumerate() {
            if j > 0 {
                fact *= j as i64;
                let mut next = vec![Ratio::from_integer(0); basis.len() + 1];
                for (e, c) in basis.iter().enumerate() {
                    next[e + 1] += *c;
                    next[e] -= *c * (j as i64 - 1);
                }
                basis = next;
            }
            for (e, c) in basis.iter().enumerate() {
                out[e] += *c * row[0] / fact;
            }
        }
        out
    }

    /// First degree from which the Hilbert function equals the Hilbert
    /// polynomial: `deg Q − δ + 1`, clamped at zero.
    pub fn regularity_bound(&self) -> i64 {
        let dq = self.reduced.len() as i64 - 1;
        (dq - self.delta as i64 + 1).max(0)
    }

    /// The series of the ideal shifted by `t^e` (multiplied).
    pub fn shifted(&self, e: usize) -> HilbertSeries {
        let mut num = vec![0; e];
        num.extend_from_slice(&self.numerator);
        HilbertSeries::from_numerator(self.nvars, num)
    }
}

/// Generalized binomial `C(m, k)` for any integer `m`, as a polynomial in `m`.
pub(crate) fn poly_binomial(m: i64, k: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k {
        num *= (m - j) as i128;
        den *= (j + 1) as i128;
    }
    (num / den) as i64
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_unstable_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Mono> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn add_into(acc: &mut Vec<i64>, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

/// Numerator of the series of `S/(gens)` for minimal monomial generators,
/// by the pivot recursion `N(I) = N(I + (p)) + t^e N(I : p)`.
fn numerator(gens: &[Mono]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    // Pairwise coprime generators give a product of (1 − t^deg).
    let mut support = Mono::ONE;
    let mut coprime = true;
    for g in gens {
        if !support.is_coprime(g) {
            coprime = false;
            break;
        }
        support = support.mul(g);
    }
    if coprime {
        let mut out = vec![1i64];
        for g in gens {
            let d = g.degree() as usize;
            let mut next = vec![0; out.len() + d];
            for (i, &c) in out.iter().enumerate() {
                next[i] += c;
                next[i + d] -= c;
            }
            out = next;
        }
        return out;
    }
    // Pivot: the variable in the most mixed generators, at the median
    // exponent, lowered if needed so the pivot is not already in the ideal.
    // Then both I + (p) and I : p strictly contain I, so the recursion ends.
    let mut counts = [0usize; crate::algebra::MAX_VARS];
    for g in gens.iter().filter(|g| !g.is_pure_power()) {
        for (v, c) in counts.iter_mut().enumerate() {
            if g.exponent(v) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..counts.len()).max_by_key(|&v| (counts[v], core::cmp::Reverse(v))).unwrap();
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|g| !g.is_pure_power())
        .map(|g| g.exponent(v))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let mut e = exps[exps.len() / 2];
    for g in gens {
        if g.is_pure_power() && g.exponent(v) > 0 {
            e = e.min(g.exponent(v) - 1);
        }
    }
    let pivot = Mono::var_pow(v, e);

    let mut plus: Vec<Mono> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
    plus.push(pivot);
    let colon: Vec<Mono> = gens
        .iter()
        .map(|g| g.with_exponent(v, g.exponent(v).saturating_sub(e)))
        .collect();
    let mut out = numerator(&minimalize(plus));
    add_into(&mut out, &numerator(&minimalize(colon)), e as usize);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{monomial_count, monomials_of_degree};

    fn m(e: &[u32]) -> Mono {
        Mono::from_exponents(e)
    }

    /// Counts standard monomials directly.
    fn brute_force(nvars: usize, gens: &[Mono], d: u32) -> i64 {
        monomials_of_degree(nvars, d).iter().filter(|x| !gens.iter().any(|g| g.divides(x))).count() as i64
    }

    #[test]
    fn empty_ideal_is_projective_space() {
        let hs = HilbertSeries::from_monomials(7, &[]);
        assert_eq!(hs.hilbert_function(1), 7);
        assert_eq!(hs.proj_dim(), 6);
        assert_eq!(hs.degree(), 1);
        assert_eq!(hs.hilbert_polynomial(3), monomial_count(7, 3) as i64);
    }

    #[test]
    fn irrelevant_ideal_is_empty() {
        let vars: Vec<Mono> = (0..4).map(Mono::var).collect();
        let hs = HilbertSeries::from_monomials(4, &vars);
        assert_eq!(hs.proj_dim(), -1);
        assert_eq!(hs.hilbert_function(0), 1);
        assert_eq!(hs.hilbert_function(1), 0);
        assert!(hs.hilbert_polynomial_coeffs().is_empty());
    }

    #[test]
    fn matches_standard_monomial_count() {
        let cases: Vec<(usize, Vec<Mono>)> = vec![
            (3, vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 1, 3])]),
            (4, vec![m(&[1, 1, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 1, 1]), m(&[2, 0, 0, 1])]),
            (4, vec![m(&[3, 0, 0, 0]), m(&[0, 2, 1, 0]), m(&[1, 1, 1, 1])]),
            (5, vec![m(&[1, 2, 0, 0, 0]), m(&[0, 0, 2, 2, 0]), m(&[1, 0, 0, 1, 1]), m(&[0, 1, 1, 0, 1])]),
        ];
        for (n, gens) in cases {
            let hs = HilbertSeries::from_monomials(n, &gens);
            for d in 0..12 {
                assert_eq!(hs.hilbert_function(d as i64), brute_force(n, &gens, d), "n={n} d={d}");
            }
            for d in hs.regularity_bound()..12 {
                assert_eq!(hs.hilbert_function(d), hs.hilbert_polynomial(d));
            }
        }
    }

    #[test]
    fn plane_curve_polynomial() {
        // A plane cubic: HP(d) = 3d.
        let hs = HilbertSeries::from_monomials(3, &[m(&[3, 0, 0])]);
        assert_eq!(hs.proj_dim(), 1);
        assert_eq!(hs.degree(), 3);
        let c = hs.hilbert_polynomial_coeffs();
        assert_eq!(c, vec![Ratio::from_integer(0), Ratio::from_integer(3)]);
        assert_eq!(hs.regularity_bound(), 1);
    }

    #[test]
    fn quadric_surface_polynomial() {
        // (d + 1)² for a quadric in P³.
        let hs = HilbertSeries::from_monomials(4, &[m(&[2, 0, 0, 0])]);
        let c = hs.hilbert_polynomial_coeffs();
        let one = Ratio::from_integer(1);
        assert_eq!(c, vec![one, Ratio::from_integer(2), one]);
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(poly_binomial(5, 2), 10);
        assert_eq!(poly_binomial(-1, 2), 1);
        assert_eq!(poly_binomial(1, 3), 0);
        assert_eq!(poly_binomial(-2, 3), -4);
    }
}
