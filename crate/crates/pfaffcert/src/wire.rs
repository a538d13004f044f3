//! JSON shapes for polynomials and polynomial matrices.
//!
//! A polynomial list is `{"prime": p, "vars": ["x0", …], "polys": […]}`
//! where each polynomial is a list of `[coeff, [e0, …, en]]` terms in
//! decreasing canonical monomial order. Writers always emit that order and
//! readers reject anything else, so files diff cleanly.

use pfaffcert_core::algebra::{Fp, Mono, Poly, PolyMat, Ring};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unsupported artifact format {0} (expected 1)")]
    Version(u32),
    #[error("malformed polynomial data: {0}")]
    Poly(String),
    #[error("malformed field: {0}")]
    Field(String),
    #[error(transparent)]
    Core(#[from] pfaffcert_core::Error),
}

pub type Term = (u32, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolysWire {
    pub prime: u32,
    pub vars: Vec<String>,
    pub polys: Vec<Vec<Term>>,
}

fn var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn poly_terms(p: &Poly) -> Vec<Term> {
    let n = p.ring().nvars();
    p.terms().iter().map(|(m, c)| (*c, m.exponents(n))).collect()
}

impl PolysWire {
    pub fn new(ring: Ring, polys: &[Poly]) -> PolysWire {
        PolysWire { prime: ring.prime(), vars: var_names(ring.nvars()), polys: polys.iter().map(poly_terms).collect() }
    }

    pub fn ring(&self) -> Result<Ring, FormatError> {
        if self.vars != var_names(self.vars.len()) {
            return Err(FormatError::Poly(format!("variables must be x0..x{}", self.vars.len().saturating_sub(1))));
        }
        Ok(Ring::new(self.vars.len(), Fp::new(self.prime)?)?)
    }

    pub fn decode(&self) -> Result<(Ring, Vec<Poly>), FormatError> {
        let ring = self.ring()?;
        let n = ring.nvars();
        let mut out = Vec::with_capacity(self.polys.len());
        for (i, terms) in self.polys.iter().enumerate() {
            let mut monos = Vec::with_capacity(terms.len());
            for (c, e) in terms {
                if e.len() != n {
                    return Err(FormatError::Poly(format!("polynomial {i}: exponent vector of length {}", e.len())));
                }
                if *c == 0 || *c >= self.prime {
                    return Err(FormatError::Poly(format!("polynomial {i}: coefficient {c} out of range")));
                }
                monos.push((Mono::from_exponents(e), *c));
            }
            let p = Poly::from_terms(ring, monos.iter().copied());
            if p.terms() != monos.as_slice() {
                return Err(FormatError::Poly(format!("polynomial {i}: terms not in canonical order")));
            }
            out.push(p);
        }
        Ok((ring, out))
    }
}

/// A matrix of polynomials with its grading; entries are row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatWire {
    pub rows: usize,
    pub cols: usize,
    pub row_twists: Vec<i32>,
    pub col_twists: Vec<i32>,
    pub entries: PolysWire,
}

impl PolyMatWire {
    pub fn new(m: &PolyMat) -> PolyMatWire {
        PolyMatWire {
            rows: m.rows(),
            cols: m.cols(),
            row_twists: m.row_twists().to_vec(),
            col_twists: m.col_twists().to_vec(),
            entries: PolysWire::new(m.ring(), m.entries()),
        }
    }

    pub fn decode(&self) -> Result<PolyMat, FormatError> {
        let (ring, entries) = self.entries.decode()?;
        Ok(PolyMat::new(ring, self.rows, self.cols, entries, self.row_twists.clone(), self.col_twists.clone())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfaffcert_core::algebra::DEFAULT_PRIME;

    fn ring() -> Ring {
        Ring::new(3, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let r = ring();
        let f = &(&r.var(0) * &r.var(2)) + &r.constant(5).checked_mul(&r.var(1).pow(2)).unwrap();
        let w = PolysWire::new(r, &[f.clone(), r.zero()]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"prime":32003,"vars":["x0","x1","x2"],"polys":[[[5,[0,2,0]],[1,[1,0,1]]],[]]}"#);
        let back: PolysWire = serde_json::from_str(&json).unwrap();
        assert_eq!(back.decode().unwrap().1, vec![f, r.zero()]);
    }

    #[test]
    fn non_canonical_input_is_rejected() {
        let mut w = PolysWire::new(ring(), &[&ring().var(0) + &ring().var(1)]);
        w.polys[0].reverse();
        assert!(matches!(w.decode(), Err(FormatError::Poly(_))));
        let mut w = PolysWire::new(ring(), &[ring().var(0)]);
        w.polys[0][0].0 = DEFAULT_PRIME;
        assert!(w.decode().is_err());
        let mut w = PolysWire::new(ring(), &[ring().var(0)]);
        w.polys[0][0].1.pop();
        assert!(w.decode().is_err());
        let mut w = PolysWire::new(ring(), &[]);
        w.prime = 32004;
        assert!(w.decode().is_err());
    }

    #[test]
    fn matrices_keep_their_grading() {
        let r = ring();
        let m = PolyMat::new(r, 1, 2, vec![r.var(0), r.var(1).pow(2)], vec![0], vec![1, 2]).unwrap();
        let back = PolyMatWire::new(&m).decode().unwrap();
        assert_eq!(back, m);
    }
}
