//! Seeded randomness.
//!
//! Every random choice in the library flows through [`Rng`], a ChaCha20
//! stream. A task stream is keyed by `(seed, prime, tag)`: the three values
//! are folded with SplitMix64 (the tag first hashed with 64-bit FNV-1a) into
//! the 64-bit ChaCha seed. ChaCha20 output is specified bit-for-bit, and all
//! derived samplers below use only integer rejection sampling, so identical
//! keys reproduce identical objects on every platform.

use alloc::vec::Vec;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{monomials_of_degree, Fp, Matrix, Mono, Poly, Ring};

pub struct Rng {
    inner: ChaCha20Rng,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The 64-bit key of the stream for `(seed, prime, tag)`.
pub fn task_key(seed: u64, prime: u32, tag: &str) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ prime as u64) ^ fnv1a(tag))
}

impl Rng {
    pub fn from_seed(seed: u64) -> Rng {
        Rng { inner: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn for_task(seed: u64, prime: u32, tag: &str) -> Rng {
        Rng::from_seed(task_key(seed, prime, tag))
    }

    /// An independent child stream, keyed by the next output and a tag.
    pub fn fork(&mut self, tag: &str) -> Rng {
        let k = self.next_u64();
        Rng::from_seed(splitmix(k ^ fnv1a(tag)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    /// Uniform in `[0, n)` by rejection sampling.
    pub fn below(&mut self, n: u32) -> u32 {
        assert!(n > 0);
        let zone = u32::MAX - (u32::MAX - n + 1) % n;
        loop {
            let x = self.next_u32();
            if x <= zone {
                return x % n;
            }
        }
    }

    pub fn elem(&mut self, f: Fp) -> u32 {
        self.below(f.prime())
    }

    pub fn nonzero_elem(&mut self, f: Fp) -> u32 {
        1 + self.below(f.prime() - 1)
    }

    pub fn vector(&mut self, f: Fp, len: usize) -> Vec<u32> {
        (0..len).map(|_| self.elem(f)).collect()
    }

    pub fn point(&mut self, ring: Ring) -> Vec<u32> {
        self.vector(ring.field(), ring.nvars())
    }

    pub fn matrix(&mut self, f: Fp, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = self.elem(f);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn invertible_matrix(&mut self, f: Fp, n: usize) -> Matrix {
        loop {
            let m = self.matrix(f, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn linear_form(&mut self, ring: Ring) -> Poly {
        self.form(ring, 1)
    }

    /// A random homogeneous form of degree `d` (every coefficient uniform).
    pub fn form(&mut self, ring: Ring, d: u32) -> Poly {
        let f = ring.field();
        let terms: Vec<(Mono, u32)> = monomials_of_degree(ring.nvars(), d)
            .into_iter()
            .map(|m| (m, self.elem(f)))
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// A random element of the span of `basis`.
    pub fn combination(&mut self, ring: Ring, basis: &[Poly]) -> Poly {
        let f = ring.field();
        basis.iter().fold(ring.zero(), |acc, b| acc.add_scaled(b, self.elem(f)))
    }
}
