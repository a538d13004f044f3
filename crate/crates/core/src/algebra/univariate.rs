//! Dense univariate polynomials over a prime field, lowest degree first.
//! Only what root finding needs.

use alloc::vec;
use alloc::vec::Vec;

use super::field::Fp;
use crate::rng::Rng;

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn eval(f: Fp, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn mul(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo nonzero `b`.
fn rem(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = f.inv(b[db]).unwrap();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let q = f.mul(r[r.len() - 1], inv);
        for (j, &c) in b.iter().enumerate() {
            r[k + j] = f.sub(r[k + j], f.mul(q, c));
        }
        r = trim(r);
    }
    r
}

fn monic(f: Fp, a: Vec<u32>) -> Vec<u32> {
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead).unwrap();
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

fn gcd(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

/// `base^e mod m`.
fn pow_mod(f: Fp, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

fn sub(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

fn exact_div(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = f.inv(b[db]).unwrap();
    let mut q = vec![0u32; r.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = f.mul(r[r.len() - 1], inv);
        q[k] = c;
        for (j, &bc) in b.iter().enumerate() {
            r[k + j] = f.sub(r[k + j], f.mul(c, bc));
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty());
    trim(q)
}

/// Distinct roots of `a` in the field, sorted ascending.
pub fn roots(f: Fp, a: &[u32], rng: &mut Rng) -> Vec<u32> {
    let a = monic(f, trim(a.to_vec()));
    if a.len() <= 1 {
        return Vec::new();
    }
    // The product of the distinct linear factors: gcd(x^p − x, a).
    let xp = pow_mod(f, &[0, 1], f.prime() as u64, &a);
    let g = gcd(f, &a, &sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split(f, g, rng, &mut out);
    out.sort_unstable();
    out
}

fn split(f: Fp, g: Vec<u32>, rng: &mut Rng, out: &mut Vec<u32>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.neg(g[0])),
        _ => loop {
            // Equal-degree splitting: gcd((x + s)^((p−1)/2) − 1, g).
            let s = rng.elem(f);
            let h = pow_mod(f, &[s, 1], (f.prime() as u64 - 1) / 2, &g);
            let d = gcd(f, &g, &sub(f, &h, &[1]));
            if d.len() > 1 && d.len() < g.len() {
                let other = monic(f, exact_div(f, &g, &d));
                split(f, d, rng, out);
                split(f, other, rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_products_of_linear_factors() {
        let f = Fp::new(32003).unwrap();
        let mut rng = Rng::from_seed(1);
        let want = [3u32, 17, 999, 31000];
        let mut a = vec![1u32];
        for &r in &want {
            a = mul(f, &a, &[f.neg(r), 1]);
        }
        // An irreducible quadratic factor x² − 2·… contributes no roots.
        let nonresidue = (2..f.prime()).find(|&c| f.pow(c, (f.prime() as u64 - 1) / 2) != 1).unwrap();
        a = mul(f, &a, &[f.neg(nonresidue), 0, 1]);
        a = mul(f, &a, &[f.neg(3), 1]);
        assert_eq!(roots(f, &a, &mut rng), want.to_vec());
        for &r in &want {
            assert_eq!(eval(f, &a, r), 0);
        }
    }

    #[test]
    fn constants_have_no_roots() {
        let f = Fp::new(7).unwrap();
        let mut rng = Rng::from_seed(1);
        assert!(roots(f, &[5], &mut rng).is_empty());
        assert!(roots(f, &[], &mut rng).is_empty());
        assert_eq!(roots(f, &[0, 1], &mut rng), vec![0]);
    }
}
