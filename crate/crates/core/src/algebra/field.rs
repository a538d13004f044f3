use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Default modulus for every certification run.
pub const DEFAULT_PRIME: u32 = 32003;

/// The prime field F_p. Residues are plain `u32` values in `[0, p)`.
///
/// Products are formed in `u64`, so any prime below 2^31 is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p <= 3 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub const fn prime(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::NotInvertible(a));
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Representative in `(-p/2, p/2]`, handy for printing small integers.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn elem(self, value: u64) -> FieldElem {
        FieldElem { value: self.reduce(value), field: self }
    }

    /// Number of `c·x` accumulations (with `c, x < p`) a `u64` can absorb
    /// on top of an already reduced value before it must be reduced again.
    pub fn lazy_budget(self) -> u64 {
        let m = (self.p as u64 - 1) * (self.p as u64 - 1);
        (u64::MAX - self.p as u64) / m
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A residue bundled with its field, for callers that prefer operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    field: Fp,
}

impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<FieldElem> {
        Ok(FieldElem {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }

    fn check(self, other: FieldElem) {
        assert_eq!(self.field, other.field, "field elements from different fields");
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self.check(rhs);
        FieldElem { value: self.field.add(self.value, rhs.value), field: self.field }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self.check(rhs);
        FieldElem { value: self.field.sub(self.value, rhs.value), field: self.field }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self.check(rhs);
        FieldElem { value: self.field.mul(self.value, rhs.value), field: self.field }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { value: self.field.neg(self.value), field: self.field }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_seven() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.inv(3).unwrap(), 5);
    }

    #[test]
    fn zero_absorbs() {
        let f = Fp::new(DEFAULT_PRIME).unwrap();
        assert_eq!(f.mul(0, 12345), 0);
    }

    #[test]
    fn zero_is_not_invertible() {
        let f = Fp::new(DEFAULT_PRIME).unwrap();
        assert_eq!(f.inv(0), Err(Error::NotInvertible(0)));
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 2, 3, 9, 32001, 1 << 31] {
            assert!(Fp::new(p).is_err(), "{p}");
        }
        assert!(Fp::new(5).is_ok());
        assert!(Fp::new(2147483647).is_ok());
        assert!(Fp::new(2147483629).is_ok());
    }

    #[test]
    fn operator_wrapper_matches_raw_ops() {
        let f = Fp::new(101).unwrap();
        let a = f.elem(57);
        let b = f.elem(88);
        assert_eq!((a + b).value(), 44);
        assert_eq!((a - b).value(), 70);
        assert_eq!((a * b).value(), (57 * 88) % 101);
        assert_eq!((-a).value(), 44);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
    }

    #[test]
    fn lazy_budget_is_safe() {
        for p in [5u32, 32003, 2147483629] {
            let f = Fp::new(p).unwrap();
            let m = (p as u128 - 1) * (p as u128 - 1);
            assert!(m * f.lazy_budget() as u128 + p as u128 <= u64::MAX as u128);
        }
    }
}
