//! Smoothness probes: Jacobian rank at sampled points, on a generic
//! linear section, or along the whole scheme.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::f4::groebner_basis;
use super::hilbert::HilbertSeries;
use super::ideal::Ideal;
use super::slice::Section;
use crate::algebra::{jacobian, linear_basis, monomials_of_degree, univariate, Map, Matrix, Mono, Poly, Ring};
use crate::rng::Rng;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeMode {
    /// Jacobian rank at rational points found on random linear sections.
    Points,
    /// Reducedness of one generic section of complementary dimension.
    Slice,
    /// Emptiness of the whole singular locus.
    Full,
}

impl ProbeMode {
    pub fn name(self) -> &'static str {
        match self {
            ProbeMode::Points => "points",
            ProbeMode::Slice => "slice",
            ProbeMode::Full => "full",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeOutcome {
    Smooth,
    Singular,
    /// Not enough evidence within the budget; not a failure.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub mode: ProbeMode,
    /// Points wanted in points mode.
    pub samples: usize,
    /// Sections tried in points mode before giving up.
    pub budget: usize,
    /// Length the section must have in slice mode, if known.
    pub expected_degree: Option<i64>,
}

impl ProbeOptions {
    pub fn new(mode: ProbeMode) -> ProbeOptions {
        ProbeOptions { mode, samples: 4, budget: 32, expected_degree: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub mode: ProbeMode,
    pub outcome: ProbeOutcome,
    /// Points checked (points mode), section length (slice mode) or
    /// generators of the singular ideal (full mode).
    pub samples: usize,
    /// Dimension of the singular scheme found, `-1` when empty.
    pub singular_dim: Option<i64>,
    pub detail: String,
}

/// Checks that `V(ideal)` is smooth of codimension `expected_codim`.
/// `ideal` should be saturated.
pub fn singular_probe(ideal: &Ideal, expected_codim: usize, opts: &ProbeOptions, rng: &mut Rng) -> Result<ProbeReport> {
    let n = ideal.ring().nvars();
    if expected_codim == 0 || expected_codim >= n {
        return Err(Error::Dimension(format!("codimension {expected_codim} in {n} variables")));
    }
    match opts.mode {
        ProbeMode::Full => probe_full(ideal, expected_codim),
        ProbeMode::Slice => probe_slice(ideal, expected_codim, opts, rng),
        ProbeMode::Points => probe_points(ideal, expected_codim, opts, rng),
    }
}

/// Dimension of `V(I + c-minors of the Jacobian)`. The minors are reduced
/// modulo `I` and to a linear basis before the basis computation.
fn singular_locus_dim(ring: Ring, gens: &[Poly], codim: usize) -> Result<(i64, usize)> {
    let gb = groebner_basis(ring, gens)?;
    let jac = jacobian(gens, ring)?;
    let minors = if codim <= jac.rows().min(jac.cols()) { jac.minors(codim) } else { Vec::new() };
    let reduced = linear_basis(ring, &gb.normal_forms(&minors))?;
    let mut all = gb.elements().to_vec();
    all.extend(reduced.iter().cloned());
    let sing = groebner_basis(ring, &all)?;
    let hs = HilbertSeries::from_monomials(ring.nvars(), &sing.leading_monomials());
    Ok((hs.proj_dim(), reduced.len()))
}

fn probe_full(ideal: &Ideal, codim: usize) -> Result<ProbeReport> {
    let (dim, count) = singular_locus_dim(ideal.ring(), ideal.generators(), codim)?;
    let outcome = if dim < 0 { ProbeOutcome::Smooth } else { ProbeOutcome::Singular };
    Ok(ProbeReport {
        mode: ProbeMode::Full,
        outcome,
        samples: count,
        singular_dim: Some(dim),
        detail: if dim < 0 {
            String::from("singular locus is empty")
        } else {
            format!("singular locus has dimension {dim}")
        },
    })
}

/// Jacobian ideal of a finite scheme from `codim` random combinations of
/// its generators (each padded to a common degree by random forms). At a
/// point of the scheme the combined Jacobian has rank at most that of the
/// full one, so an empty locus here proves the full locus empty.
fn combined_jacobian_minors(ring: Ring, gens: &[Poly], codim: usize, rng: &mut Rng) -> Result<Vec<Poly>> {
    let top = gens.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    let mut combos = Vec::with_capacity(codim);
    for _ in 0..codim {
        let mut acc = ring.zero();
        for g in gens {
            let pad = rng.form(ring, top - g.total_degree().unwrap());
            acc = &acc + &(g * &pad);
        }
        combos.push(acc);
    }
    let jac = jacobian(&combos, ring)?;
    Ok(jac.minors(codim))
}

fn probe_slice(ideal: &Ideal, codim: usize, opts: &ProbeOptions, rng: &mut Rng) -> Result<ProbeReport> {
    let ring = ideal.ring();
    let dim = ring.nvars() - 1 - codim;
    let mut sec = Section::random(ring, dim, rng)?;
    let mut cut = sec.restrict_ideal(ideal, rng)?;
    let sub = sec.ring();
    let hs = cut.hilbert_series()?.clone();
    if hs.proj_dim() != 0 {
        let found = ring.nvars() as i64 - 1 - (dim as i64 + hs.proj_dim());
        return Err(Error::Codimension { expected: codim as i64, found });
    }
    let length = hs.degree();
    if let Some(deg) = opts.expected_degree {
        if deg != length {
            return Ok(ProbeReport {
                mode: ProbeMode::Slice,
                outcome: ProbeOutcome::Singular,
                samples: length as usize,
                singular_dim: None,
                detail: format!("section has length {length}, expected {deg}"),
            });
        }
    }
    let gens = cut.generators().to_vec();
    let mut gb_gens = cut.groebner_basis()?.elements().to_vec();
    let minors = combined_jacobian_minors(sub, &gens, codim, rng)?;
    gb_gens.extend(minors);
    let combined = groebner_basis(sub, &gb_gens)?;
    let hs_sing = HilbertSeries::from_monomials(sub.nvars(), &combined.leading_monomials());
    let (sing_dim, how) = if hs_sing.proj_dim() < 0 {
        (-1, "combined Jacobian")
    } else {
        // The shortcut can only err towards "singular"; settle it exactly.
        (singular_locus_dim(sub, &gens, codim)?.0, "all Jacobian minors")
    };
    let outcome = if sing_dim < 0 { ProbeOutcome::Smooth } else { ProbeOutcome::Singular };
    Ok(ProbeReport {
        mode: ProbeMode::Slice,
        outcome,
        samples: length as usize,
        singular_dim: Some(sing_dim),
        detail: if sing_dim < 0 {
            format!("generic section of length {length} is reduced ({how})")
        } else {
            format!("generic section of length {length} is not reduced")
        },
    })
}

fn probe_points(ideal: &Ideal, codim: usize, opts: &ProbeOptions, rng: &mut Rng) -> Result<ProbeReport> {
    let ring = ideal.ring();
    let dim = ring.nvars() - 1 - codim;
    let gens = ideal.generators().to_vec();
    let jac = jacobian(&gens, ring)?;
    let mut checked = 0usize;
    for _ in 0..opts.budget {
        if checked >= opts.samples {
            break;
        }
        let mut sec = Section::random(ring, dim, rng)?;
        let mut cut = sec.restrict_ideal(ideal, rng)?;
        let p = cut.hilbert_series()?.proj_dim();
        if p != 0 {
            let found = ring.nvars() as i64 - 1 - (dim as i64 + p);
            return Err(Error::Codimension { expected: codim as i64, found });
        }
        for y in rational_points(&mut cut, rng)? {
            let x = sec.to_ambient(&y);
            if gens.iter().any(|g| g.evaluate(&x) != 0) {
                return Err(Error::Inconsistent(String::from("sampled point is not on the scheme")));
            }
            let rank = jac.evaluate(&x).rank();
            if rank != codim {
                return Ok(ProbeReport {
                    mode: ProbeMode::Points,
                    outcome: ProbeOutcome::Singular,
                    samples: checked + 1,
                    singular_dim: None,
                    detail: format!("Jacobian rank {rank} at a sampled point"),
                });
            }
            checked += 1;
            if checked >= opts.samples {
                break;
            }
        }
    }
    let outcome = if checked >= opts.samples { ProbeOutcome::Smooth } else { ProbeOutcome::Inconclusive };
    Ok(ProbeReport {
        mode: ProbeMode::Points,
        outcome,
        samples: checked,
        singular_dim: None,
        detail: format!("Jacobian rank {codim} at {checked} sampled points"),
    })
}

/// Rational points of a saturated zero-dimensional ideal, as representatives
/// with first nonzero coordinate 1.
///
/// In a degree `D` past the regularity bound, the quotient has dimension
/// equal to the length in degrees `D` and `D + 1`. With `M_ℓ` the
/// multiplication by a linear form from degree `D` to `D + 1`, the
/// evaluation functional at a point is a common left eigenvector of the
/// operators `M_ℓ0⁻¹·M_xi` with eigenvalues `x_i(p) / ℓ0(p)`.
pub fn rational_points(z: &mut Ideal, rng: &mut Rng) -> Result<Vec<Vec<u32>>> {
    let ring = z.ring();
    let f = ring.field();
    let n = ring.nvars();
    let hs = z.hilbert_series()?.clone();
    if hs.proj_dim() != 0 {
        return Err(Error::Dimension(format!("expected a finite scheme, got dimension {}", hs.proj_dim())));
    }
    let length = hs.degree() as usize;
    let gb = z.groebner_basis()?.clone();
    let lms = gb.leading_monomials();
    let deg = hs.regularity_bound().max(gb.max_degree() as i64) as u32;
    let standard = |d: u32| -> Vec<Mono> {
        monomials_of_degree(n, d).into_iter().filter(|m| !lms.iter().any(|l| l.divides(m))).collect()
    };
    let low = standard(deg);
    let high = standard(deg + 1);
    if low.len() != length || high.len() != length {
        return Err(Error::Inconsistent(String::from("quotient dimension differs from the length")));
    }
    let high_index: Map<Mono, usize> = high.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let basis_polys: Vec<Poly> = low.iter().map(|m| Poly::monomial(ring, *m, 1)).collect();
    let mult = |l: &Poly| -> Matrix {
        let images = gb.normal_forms(&basis_polys.iter().map(|b| b * l).collect::<Vec<_>>());
        let mut m = Matrix::zeros(f, length, length);
        for (j, img) in images.iter().enumerate() {
            for &(mono, c) in img.terms() {
                m.set(high_index[&mono], j, c);
            }
        }
        m
    };
    let vars: Vec<Matrix> = (0..n).map(|i| mult(&ring.var(i))).collect();
    for _ in 0..8 {
        let l0 = rng.linear_form(ring);
        let Some(inv) = mult(&l0).inverse() else { continue };
        let ops: Vec<Matrix> = vars.iter().map(|m| inv.mul(m)).collect();
        let weights = rng.vector(f, n);
        let mut t = Matrix::zeros(f, length, length);
        for (op, &w) in ops.iter().zip(&weights) {
            for i in 0..length {
                for j in 0..length {
                    t.set(i, j, f.add(t.get(i, j), f.mul(w, op.get(i, j))));
                }
            }
        }
        let mut points = Vec::new();
        for lambda in univariate::roots(f, &t.charpoly(), rng) {
            let shifted = Matrix::from_fn(f, length, length, |i, j| {
                let d = if i == j { lambda } else { 0 };
                f.sub(t.get(i, j), d)
            });
            let left = shifted.left_kernel();
            if left.len() != 1 {
                continue;
            }
            let w = &left[0];
            let k = w.iter().position(|&c| c != 0).unwrap();
            let winv = f.inv(w[k]).unwrap();
            let mut point = Vec::with_capacity(n);
            let mut consistent = true;
            for op in &ops {
                let u = op.transpose().mul_vec(w);
                let mu = f.mul(u[k], winv);
                consistent &= u.iter().zip(w).all(|(&a, &b)| a == f.mul(mu, b));
                point.push(mu);
            }
            if !consistent {
                continue;
            }
            let Some(first) = point.iter().position(|&c| c != 0) else { continue };
            let s = f.inv(point[first]).unwrap();
            let point: Vec<u32> = point.iter().map(|&c| f.mul(c, s)).collect();
            if z.generators().iter().all(|g| g.evaluate(&point) == 0) {
                points.push(point);
            }
        }
        return Ok(points);
    }
    Err(Error::ResamplingExhausted { what: String::from("nonzerodivisor linear form"), attempts: 8 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, DEFAULT_PRIME};

    fn ring(n: usize) -> Ring {
        Ring::new(n, Fp::new(DEFAULT_PRIME).unwrap()).unwrap()
    }

    #[test]
    fn smooth_quadric_surface() {
        let r = ring(4);
        let x = |i| r.var(i);
        let q = &(&x(0) * &x(1)) - &(&x(2) * &x(3));
        let i = Ideal::new(r, alloc::vec![q]).unwrap();
        let mut rng = Rng::from_seed(1);
        let rep = singular_probe(&i, 1, &ProbeOptions::new(ProbeMode::Full), &mut rng).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Smooth);
        assert_eq!(rep.singular_dim, Some(-1));
    }

    #[test]
    fn cone_has_a_singular_vertex() {
        let r = ring(4);
        let x = |i| r.var(i);
        let q = &(&x(0) * &x(1)) - &(&x(2) * &x(2));
        let i = Ideal::new(r, alloc::vec![q]).unwrap();
        let mut rng = Rng::from_seed(2);
        let rep = singular_probe(&i, 1, &ProbeOptions::new(ProbeMode::Full), &mut rng).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Singular);
        assert_eq!(rep.singular_dim, Some(0));
    }

    #[test]
    fn slice_mode_sees_reduced_and_nonreduced_sections() {
        let r = ring(4);
        let mut rng = Rng::from_seed(3);
        // A smooth plane cubic curve in P³ (codim 2).
        let x = |i| r.var(i);
        let cube = |a: usize, b: usize, c: usize| &(&x(a) * &x(b)) * &x(c);
        let cubic = &(&(&cube(0, 0, 1) - &cube(1, 1, 1)) + &cube(2, 2, 2)) + &cube(0, 1, 2);
        let smooth = Ideal::new(r, alloc::vec![x(3), cubic.clone()]).unwrap();
        let mut opts = ProbeOptions::new(ProbeMode::Slice);
        opts.expected_degree = Some(3);
        let rep = singular_probe(&smooth, 2, &opts, &mut rng).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Smooth, "{}", rep.detail);
        // A double line: every section is a double point.
        let double = Ideal::new(r, alloc::vec![x(3), &x(2) * &x(2)]).unwrap();
        opts.expected_degree = None;
        let rep = singular_probe(&double, 2, &opts, &mut rng).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Singular);
    }

    #[test]
    fn points_of_a_split_finite_scheme() {
        // Five rational points of P², cut out by their ideal.
        let r = ring(3);
        let f = r.field();
        let pts: Vec<Vec<u32>> = alloc::vec![
            alloc::vec![1, 0, 0],
            alloc::vec![1, 1, 1],
            alloc::vec![1, 2, 5],
            alloc::vec![1, 7, 3],
            alloc::vec![1, 11, 13],
        ];
        // Quadrics and cubics vanishing on the points, from a kernel.
        let mut gens = Vec::new();
        for d in [2u32, 3] {
            let monos = monomials_of_degree(3, d);
            let m = Matrix::from_fn(f, pts.len(), monos.len(), |i, j| Poly::monomial(r, monos[j], 1).evaluate(&pts[i]));
            for v in m.kernel() {
                gens.push(Poly::from_terms(r, monos.iter().zip(&v).map(|(a, &c)| (*a, c))));
            }
        }
        let mut rng = Rng::from_seed(4);
        let mut z = crate::groebner::saturate_irrelevant(&Ideal::new(r, gens).unwrap(), &mut rng).unwrap();
        let mut got = rational_points(&mut z, &mut rng).unwrap();
        got.sort();
        let mut want = pts.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn points_mode_on_a_smooth_surface() {
        // Quadric surface: points mode finds rational points and checks them.
        let r = ring(4);
        let x = |i| r.var(i);
        let q = &(&x(0) * &x(1)) - &(&x(2) * &x(3));
        let i = Ideal::new(r, alloc::vec![q]).unwrap();
        let mut rng = Rng::from_seed(5);
        let mut opts = ProbeOptions::new(ProbeMode::Points);
        opts.samples = 3;
        let rep = singular_probe(&i, 1, &opts, &mut rng).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Smooth);
        assert_eq!(rep.samples, 3);
    }

    #[test]
    fn points_mode_reports_inconclusive_on_tiny_budget() {
        let r = ring(4);
        let x = |i| r.var(i);
        let q = &(&x(0) * &x(1)) - &(&x(2) * &x(3));
        let i = Ideal::new(r, alloc::vec![q]).unwrap();
        let mut rng = Rng::from_seed(6);
        let mut opts = ProbeOptions::new(ProbeMode::Points);
        opts.samples = 100;
        opts.budget = 1;
        let rep = singular_probe(&i, 1, &opts, &mut rng).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Inconclusive);
    }
}
