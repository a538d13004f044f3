use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Largest supported number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `x0^e0 ⋯ x15^e15` with exponents below 256.
///
/// Unused trailing slots are zero, so comparisons and hashing never need the
/// ring's variable count. The total order is graded reverse lexicographic
/// with `x0 > x1 > … `: higher degree wins, and within a degree the monomial
/// with the smaller exponent in the last differing variable is larger.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Mono {
    pub const ONE: Mono = Mono { exps: [0; MAX_VARS], deg: 0 };

    pub fn from_exponents(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Mono::ONE;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent {e} out of range");
            m.exps[i] = e as u8;
            m.deg += e as u16;
        }
        m
    }

    pub fn var(i: usize) -> Mono {
        Mono::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Mono {
        assert!(i < MAX_VARS && e < 256);
        let mut m = Mono::ONE;
        m.exps[i] = e as u8;
        m.deg = e as u16;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    /// Index of the largest variable occurring, or `None` for `1`.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e != 0)
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m
    }

    #[inline]
    pub fn mul_var(&self, v: usize) -> Mono {
        let mut m = *self;
        m.exps[v] = m.exps[v].checked_add(1).expect("monomial exponent overflow");
        m.deg += 1;
        m
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / d`, if `d` divides `self`.
    #[inline]
    pub fn div(&self, d: &Mono) -> Option<Mono> {
        if !d.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= d.exps[i];
        }
        m.deg -= d.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut m = Mono::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut m = Mono::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Divides out the full power of variable `v`, returning the new
    /// monomial and the removed exponent.
    pub fn strip_var(&self, v: usize) -> (Mono, u32) {
        let e = self.exps[v];
        let mut m = *self;
        m.exps[v] = 0;
        m.deg -= e as u16;
        (m, e as u32)
    }

    /// Sets the exponent of `v` (used by monomial-ideal recursions).
    pub fn with_exponent(&self, v: usize, e: u32) -> Mono {
        assert!(e < 256);
        let mut m = *self;
        m.deg = m.deg - m.exps[v] as u16 + e as u16;
        m.exps[v] = e as u8;
        m
    }

    /// True when at most one variable occurs.
    pub fn is_pure_power(&self) -> bool {
        self.exps.iter().filter(|&&e| e != 0).count() <= 1
    }
}

impl Ord for Mono {
    #[inline]
    fn cmp(&self, other: &Mono) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    #[inline]
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::with_capacity(binomial(d as u64 + n as u64 - 1, n as u64 - 1) as usize);
    if n == 0 {
        if d == 0 {
            out.push(Mono::ONE);
        }
        return out;
    }
    let mut exps = [0u32; MAX_VARS];
    fill(n, 0, d, &mut exps, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(n: usize, i: usize, left: u32, exps: &mut [u32; MAX_VARS], out: &mut Vec<Mono>) {
    if i == n - 1 {
        exps[i] = left;
        out.push(Mono::from_exponents(&exps[..n]));
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        fill(n, i + 1, left - e, exps, out);
    }
}

/// Binomial coefficient with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `dim S_d` for the polynomial ring in `n` variables (zero for `d < 0`).
pub fn monomial_count(n: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if n == 0 {
        return (d == 0) as u64;
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}
