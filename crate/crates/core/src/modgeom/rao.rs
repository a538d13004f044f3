use alloc::format;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_rational::Ratio;

use crate::algebra::monomial_count;
use crate::groebner::Ideal;
use crate::{Error, Result};

/// What is known about `h^i(O_X(j))`, `i > 0`, in positive twists. This is
/// all that turns Hilbert data into `h¹(I_X(j))`, since then
/// `h⁰(O_X(j)) = χ(O_X(j)) − correction(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// Everything vanishes for `j ≥ 1` (Kodaira on del Pezzo surfaces and
    /// Calabi–Yau threefolds).
    Positive,
    /// A regular surface with `ω = O(1)`, such as a hyperplane section of
    /// a Calabi–Yau threefold: only `h²(O(1)) = h⁰(O) = 1` survives.
    CanonicalSurface,
}

impl Vanishing {
    fn correction(self, j: i64) -> i64 {
        match self {
            Vanishing::Positive => 0,
            Vanishing::CanonicalSurface => i64::from(j == 1),
        }
    }
}

/// Value of a polynomial with rational coefficients (constant term first)
/// that must be an integer.
pub fn eval_integer(hp: &[Ratio<i64>], j: i64) -> Result<i64> {
    let v = hp.iter().rev().fold(Ratio::from_integer(0), |acc, c| acc * j + c);
    if !v.is_integer() {
        return Err(Error::Inconsistent(format!("Hilbert polynomial is not integral at {j}")));
    }
    Ok(v.to_integer())
}

/// `h¹(I_X(j)) = h⁰(O_X(j)) − dim (S/I)_j` over `range`, with `h⁰(O_X(j))`
/// obtained from the Hilbert polynomial under the given vanishing.
pub fn hr_function(ideal: &mut Ideal, hp: &[Ratio<i64>], range: RangeInclusive<i64>, v: Vanishing) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for j in range {
        let value = eval_integer(hp, j)? - v.correction(j) - ideal.hilbert_function(j)?;
        if value < 0 {
            return Err(Error::Inconsistent(format!("h¹(I(j)) would be {value} at j = {j}")));
        }
        out.push(value);
    }
    Ok(out)
}

/// True when `S_j → H⁰(O_X(j))` has maximal rank for every `j` in range,
/// i.e. `dim I_j = max(0, dim S_j − h⁰(O_X(j)))`.
pub fn maximal_rank_check(ideal: &mut Ideal, hp: &[Ratio<i64>], range: RangeInclusive<i64>, v: Vanishing) -> Result<bool> {
    let n = ideal.ring().nvars();
    for j in range {
        let sj = monomial_count(n, j) as i64;
        let in_ideal = sj - ideal.hilbert_function(j)?;
        let sections = eval_integer(hp, j)? - v.correction(j);
        if in_ideal != (sj - sections).max(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{principal_pfaffians, Fp, PolyMat, Ring, DEFAULT_PRIME};
    use crate::groebner::saturate_irrelevant;
    use crate::rng::Rng;
    use alloc::vec;

    fn ring(n: usize) -> Ring {
        Ring::new(n, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    fn int(v: &[i64]) -> Vec<Ratio<i64>> {
        v.iter().map(|&x| Ratio::from_integer(x)).collect()
    }

    #[test]
    fn quintic_del_pezzo_has_no_rao_module() {
        let r = ring(6);
        let mut rng = Rng::from_seed(40);
        let mut e = vec![r.zero(); 25];
        for i in 0..5 {
            for j in i + 1..5 {
                let l = rng.linear_form(r);
                e[j * 5 + i] = -&l;
                e[i * 5 + j] = l;
            }
        }
        let a = PolyMat::skew_with_twists(r, &[0; 5], 1, e).unwrap();
        let i = Ideal::new(r, principal_pfaffians(&a, 4).unwrap()).unwrap();
        let mut i = saturate_irrelevant(&i, &mut rng).unwrap();
        let hp = i.hilbert_poly_dim_deg().unwrap().hp;
        // χ(O(j)) = 1 + 5j(j+1)/2 for an anticanonical degree-5 surface.
        for j in 0..6 {
            assert_eq!(eval_integer(&hp, j).unwrap(), 1 + 5 * j * (j + 1) / 2);
        }
        assert_eq!(hr_function(&mut i, &hp, 1..=5, Vanishing::Positive).unwrap(), vec![0; 5]);
        assert!(maximal_rank_check(&mut i, &hp, 1..=5, Vanishing::Positive).unwrap());
    }

    #[test]
    fn linear_plane_has_maximal_rank() {
        let r = ring(6);
        let mut i = Ideal::new(r, (0..3).map(|k| r.var(k)).collect()).unwrap();
        let hp = i.hilbert_poly_dim_deg().unwrap().hp;
        assert_eq!(hp, vec![Ratio::from_integer(1), Ratio::new(3, 2), Ratio::new(1, 2)]);
        assert!(maximal_rank_check(&mut i, &hp, 1..=6, Vanishing::Positive).unwrap());
        assert_eq!(hr_function(&mut i, &hp, 1..=4, Vanishing::Positive).unwrap(), vec![0; 4]);
    }

    #[test]
    fn rao_module_of_two_skew_lines() {
        // Two skew lines in P³: h¹(I(j)) is 1 at j = 0 and zero afterwards.
        let r = ring(4);
        let x = |k| r.var(k);
        let gens = vec![&x(0) * &x(2), &x(0) * &x(3), &x(1) * &x(2), &x(1) * &x(3)];
        let mut i = Ideal::new(r, gens).unwrap();
        let hp = int(&[2, 2]);
        assert_eq!(hr_function(&mut i, &hp, 0..=3, Vanishing::Positive).unwrap(), vec![1, 0, 0, 0]);
        // Quadrics: 4 in the ideal, 10 − 6 = 4 expected: maximal rank.
        assert!(maximal_rank_check(&mut i, &hp, 1..=3, Vanishing::Positive).unwrap());
    }

    #[test]
    fn wrong_polynomial_is_reported() {
        let r = ring(4);
        let mut i = Ideal::new(r, vec![r.var(0)]).unwrap();
        let err = hr_function(&mut i, &int(&[0, 1]), 1..=2, Vanishing::Positive).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
        assert!(eval_integer(&[Ratio::new(1, 2)], 0).is_err());
    }
}
