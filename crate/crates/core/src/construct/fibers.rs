use core::fmt;

use super::tensor::Side;
use crate::algebra::{minors_ideal, PolyMat};
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::rng::Rng;
use crate::{Error, Result};

/// The rank-two bundle the special fibers determine, read off from `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BidualLabel {
    TangentTwist,
    Split23,
    Split14,
    Split22,
    Split13,
    Other,
}

impl BidualLabel {
    pub fn from_count(side: Side, k: usize) -> BidualLabel {
        match (side, k) {
            (Side::CalabiYau, 8) => BidualLabel::TangentTwist,
            (Side::CalabiYau, 9) => BidualLabel::Split23,
            (Side::CalabiYau, 11) => BidualLabel::Split14,
            (Side::DelPezzo, 6) => BidualLabel::Split22,
            (Side::DelPezzo, 7) => BidualLabel::Split13,
            _ => BidualLabel::Other,
        }
    }
}

impl fmt::Display for BidualLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BidualLabel::TangentTwist => "T(1)",
            BidualLabel::Split23 => "O(2)+O(3)",
            BidualLabel::Split14 => "O(1)+O(4)",
            BidualLabel::Split22 => "O(2)+O(2)",
            BidualLabel::Split13 => "O(1)+O(3)",
            BidualLabel::Other => "other",
        })
    }
}

/// The saturated ideal of the points of P² where `λ` drops rank.
pub fn degeneracy_ideal(lam: &PolyMat, rng: &mut Rng) -> Result<Ideal> {
    let size = lam.rows().min(lam.cols());
    let minors = minors_ideal(lam, size);
    let ideal = Ideal::new(lam.ring(), minors)?;
    saturate_irrelevant(&ideal, rng)
}

/// Number of special fibers of a `dim P × m` matrix `λ` of linear forms
/// on P²: the length of its degeneracy scheme. The side is inferred from
/// the number of rows.
pub fn fiber_count(lam: &PolyMat, rng: &mut Rng) -> Result<(usize, BidualLabel)> {
    let side = match lam.rows() {
        7 => Side::CalabiYau,
        6 => Side::DelPezzo,
        r => return Err(Error::Dimension(alloc::format!("λ with {r} rows"))),
    };
    let mut ideal = degeneracy_ideal(lam, rng)?;
    let data = ideal.hilbert_poly_dim_deg()?;
    let k = match data.proj_dim {
        -1 => 0,
        0 => data.degree as usize,
        d => return Err(Error::PositiveDimensionalDegeneracy(d)),
    };
    Ok((k, BidualLabel::from_count(side, k)))
}
