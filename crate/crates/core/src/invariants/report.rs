use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_rational::Ratio;

use crate::groebner::{certify_by_slicing, saturate_irrelevant, singular_probe, Ideal, ProbeMode, ProbeOptions, ProbeOutcome, ProbeReport};
use crate::modgeom::{eval_integer, hr_function, maximal_rank_check, Vanishing};
use crate::rng::Rng;
use crate::Result;

/// The scheme structure every report certifies.
pub const SCHEME_STRUCTURE: &str = "saturated principal Pfaffians";

/// How much smoothness checking a verification does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerifyLevel {
    /// Dimension and degree by slicing, Hartshorne–Rao values.
    Fast,
    /// Also reducedness of a generic section of complementary dimension.
    Slice,
    /// Also emptiness of the whole singular locus.
    Full,
}

impl VerifyLevel {
    pub fn name(self) -> &'static str {
        match self {
            VerifyLevel::Fast => "fast",
            VerifyLevel::Slice => "slice",
            VerifyLevel::Full => "full",
        }
    }

    pub fn from_name(s: &str) -> Option<VerifyLevel> {
        [VerifyLevel::Fast, VerifyLevel::Slice, VerifyLevel::Full].into_iter().find(|l| l.name() == s)
    }

    fn probe_mode(self) -> Option<ProbeMode> {
        match self {
            VerifyLevel::Fast => None,
            VerifyLevel::Slice => Some(ProbeMode::Slice),
            VerifyLevel::Full => Some(ProbeMode::Full),
        }
    }
}

/// What the variety is expected to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub dim: i64,
    pub degree: Option<i64>,
    /// `ω_X = O_X(canonical)`, checked through Serre duality on the
    /// Hilbert polynomial.
    pub canonical: Option<i64>,
    /// Twists at which `h¹(I_X(j))` is computed.
    pub hr_range: RangeInclusive<i64>,
    /// Expected values over `hr_range`, if known.
    pub hr: Option<Vec<i64>>,
    pub vanishing: Vanishing,
    pub require_max_rank: bool,
}

impl Expectation {
    /// A threefold with trivial canonical class.
    pub fn calabi_yau(degree: i64) -> Expectation {
        Expectation {
            dim: 3,
            degree: Some(degree),
            canonical: Some(0),
            hr_range: 1..=4,
            hr: None,
            vanishing: Vanishing::Positive,
            require_max_rank: true,
        }
    }

    /// An anticanonically embedded surface.
    pub fn del_pezzo(degree: i64) -> Expectation {
        Expectation {
            dim: 2,
            degree: Some(degree),
            canonical: Some(-1),
            hr_range: 1..=4,
            hr: None,
            vanishing: Vanishing::Positive,
            require_max_rank: true,
        }
    }

    pub fn with_hr(mut self, hr: Vec<i64>) -> Expectation {
        self.hr = Some(hr);
        self
    }
}

/// One named check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Named integers describing the family the variety belongs to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimensionBlock {
    pub entries: Vec<(String, i64)>,
}

impl DimensionBlock {
    pub fn push(&mut self, name: &str, value: i64) {
        self.entries.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Outcome of [`verify_variety`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub family: String,
    pub prime: u32,
    pub seeds: Vec<u64>,
    pub k: Option<usize>,
    pub level: VerifyLevel,
    pub proj_dim: i64,
    pub degree: i64,
    /// Degree seen on a generic linear section.
    pub slice_degree: i64,
    /// Hilbert polynomial, constant term first.
    pub hilbert_polynomial: Vec<Ratio<i64>>,
    pub hr_range: (i64, i64),
    pub hr: Vec<i64>,
    pub max_rank: bool,
    pub probe: Option<ProbeReport>,
    pub dims: DimensionBlock,
    pub scheme: String,
    pub flags: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub failure: Option<String>,
}

impl Report {
    fn empty(level: VerifyLevel, exp: &Expectation) -> Report {
        Report {
            family: String::new(),
            prime: 0,
            seeds: Vec::new(),
            k: None,
            level,
            proj_dim: -1,
            degree: 0,
            slice_degree: 0,
            hilbert_polynomial: Vec::new(),
            hr_range: (*exp.hr_range.start(), *exp.hr_range.end()),
            hr: Vec::new(),
            max_rank: false,
            probe: None,
            dims: DimensionBlock::default(),
            scheme: SCHEME_STRUCTURE.to_string(),
            flags: Vec::new(),
            checks: Vec::new(),
            passed: false,
            failure: None,
        }
    }

    fn record(&mut self, name: &str, passed: bool, detail: String) {
        if !passed && self.failure.is_none() {
            self.failure = Some(format!("{name}: {detail}"));
        }
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }

    /// A failing report that names the first violated invariant.
    pub fn failed(family: &str, level: VerifyLevel, exp: &Expectation, reason: String) -> Report {
        let mut r = Report::empty(level, exp);
        r.family = family.to_string();
        r.record("construction", false, reason);
        r
    }

    /// The internal consistency every stored report must have: the degree
    /// is the normalised leading coefficient of the Hilbert polynomial and
    /// the section count, and a passing report has codimension three.
    pub fn consistency(&self, nvars: usize) -> core::result::Result<(), String> {
        if self.failure.is_some() && self.passed {
            return Err("report passes with a recorded failure".into());
        }
        if self.passed != self.checks.iter().all(|c| c.passed) {
            return Err("pass flag disagrees with the checks".into());
        }
        if !self.passed {
            return Ok(());
        }
        let d = self.proj_dim;
        if d < 0 || self.hilbert_polynomial.len() != d as usize + 1 {
            return Err(format!("Hilbert polynomial of length {} for dimension {d}", self.hilbert_polynomial.len()));
        }
        let fact: i64 = (1..=d).product();
        let lead = self.hilbert_polynomial[d as usize] * Ratio::from_integer(fact);
        if lead != Ratio::from_integer(self.degree) {
            return Err(format!("degree {} but Hilbert polynomial leading term gives {lead}", self.degree));
        }
        if self.slice_degree != self.degree {
            return Err(format!("degree {} but the section has length {}", self.degree, self.slice_degree));
        }
        if nvars as i64 - 1 - d != 3 {
            return Err(format!("codimension {}", nvars as i64 - 1 - d));
        }
        Ok(())
    }
}

/// Checks `h(c − j) = (−1)^dim h(j)`, Serre duality for `ω = O(c)` when
/// the intermediate cohomology of `O_X` cancels in the Euler characteristic.
fn serre_symmetric(hp: &[Ratio<i64>], dim: i64, c: i64) -> Result<bool> {
    let sign = if dim % 2 == 0 { 1 } else { -1 };
    for j in -2..=dim + 2 {
        if eval_integer(hp, c - j)? != sign * eval_integer(hp, j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Saturates, reads off Hilbert data, computes Hartshorne–Rao values and
/// probes smoothness at the given level. Never fails: sub-check errors end
/// up as a failing report.
pub fn verify_variety(ideal: &Ideal, exp: &Expectation, level: VerifyLevel, rng: &mut Rng) -> Report {
    let mut report = Report::empty(level, exp);
    if let Err(e) = run_checks(&mut report, ideal, exp, level, rng) {
        report.record("computation", false, e.to_string());
    }
    report.passed = report.checks.iter().all(|c| c.passed);
    report
}

fn run_checks(report: &mut Report, ideal: &Ideal, exp: &Expectation, level: VerifyLevel, rng: &mut Rng) -> Result<()> {
    let n = ideal.ring().nvars() as i64;
    let mut sat = saturate_irrelevant(ideal, rng)?;
    let data = sat.hilbert_poly_dim_deg()?;
    report.proj_dim = data.proj_dim;
    report.degree = data.degree;
    report.hilbert_polynomial = data.hp.clone();
    let codim = n - 1 - data.proj_dim;
    report.record("codimension", codim == 3, format!("codimension {codim}"));
    if codim != 3 {
        return Ok(());
    }
    report.record(
        "dimension",
        data.proj_dim == exp.dim,
        format!("dimension {} (expected {})", data.proj_dim, exp.dim),
    );
    if let Some(d) = exp.degree {
        report.record("degree", data.degree == d, format!("degree {} (expected {d})", data.degree));
    }
    let cert = certify_by_slicing(ideal, exp.dim, rng)?;
    report.slice_degree = cert.degree;
    report.record(
        "slice degree",
        cert.degree == data.degree && cert.proj_dim == data.proj_dim && cert.extra_slice_empty,
        format!("section by {} hyperplanes has length {}", cert.hyperplanes, cert.degree),
    );
    if let Some(c) = exp.canonical {
        let ok = serre_symmetric(&data.hp, data.proj_dim, c)?;
        report.record("canonical", ok, format!("Hilbert polynomial symmetric about ω = O({c})"));
    }
    let hr = hr_function(&mut sat, &data.hp, exp.hr_range.clone(), exp.vanishing)?;
    report.hr = hr.clone();
    if let Some(want) = &exp.hr {
        report.record("hartshorne-rao", &hr == want, format!("h1(I(j)) = {hr:?} (expected {want:?})"));
    }
    let tail_zero = exp.hr_range.clone().zip(&hr).all(|(j, &v)| j < 4 || v == 0);
    report.record("hr vanishing", tail_zero, format!("h1(I(j)) = 0 for j >= 4 in {hr:?}"));
    report.max_rank = maximal_rank_check(&mut sat, &data.hp, exp.hr_range.clone(), exp.vanishing)?;
    if exp.require_max_rank {
        report.record("maximal rank", report.max_rank, "restriction maps have maximal rank".into());
    }
    if let Some(mode) = level.probe_mode() {
        let mut opts = ProbeOptions::new(mode);
        opts.expected_degree = Some(data.degree);
        let probe = singular_probe(&sat, 3, &opts, rng)?;
        report.record("smoothness", probe.outcome != ProbeOutcome::Singular, probe.detail.clone());
        report.flags.push(format!("probe mode: {}", mode.name()));
        report.probe = Some(probe);
    }
    report.flags.push(format!("ideal: {SCHEME_STRUCTURE}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, DEFAULT_PRIME};
    use crate::construct::{fixed_bundle_section, pfaffian_ideal, TableRow};
    use alloc::vec;

    fn field() -> Fp {
        Fp::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn quintic_del_pezzo_passes_in_full() {
        let s = fixed_bundle_section(TableRow::Dp5, field(), 1).unwrap();
        let mut rng = Rng::from_seed(1);
        let i = pfaffian_ideal(&s, &mut rng).unwrap();
        let exp = Expectation::del_pezzo(5).with_hr(vec![0; 4]);
        let r = verify_variety(&i, &exp, VerifyLevel::Full, &mut rng);
        assert!(r.passed, "{:?}", r.failure);
        assert_eq!((r.proj_dim, r.degree, r.slice_degree), (2, 5, 5));
        assert_eq!(r.probe.as_ref().unwrap().outcome, ProbeOutcome::Smooth);
        r.consistency(6).unwrap();
    }

    #[test]
    fn wrong_expectations_name_the_check() {
        let s = fixed_bundle_section(TableRow::Cy14, field(), 1).unwrap();
        let mut rng = Rng::from_seed(2);
        let i = pfaffian_ideal(&s, &mut rng).unwrap();
        let r = verify_variety(&i, &Expectation::calabi_yau(15), VerifyLevel::Fast, &mut rng);
        assert!(!r.passed);
        assert!(r.failure.as_ref().unwrap().starts_with("degree"));
        let r = verify_variety(&i, &Expectation::calabi_yau(14), VerifyLevel::Fast, &mut rng);
        assert!(r.passed, "{:?}", r.failure);
        // A surface expectation fails on the canonical class too.
        let mut exp = Expectation::calabi_yau(14);
        exp.canonical = Some(-1);
        let r = verify_variety(&i, &exp, VerifyLevel::Fast, &mut rng);
        assert_eq!(r.checks.iter().find(|c| c.name == "canonical").map(|c| c.passed), Some(false));
    }

    #[test]
    fn tampered_reports_are_inconsistent() {
        let s = fixed_bundle_section(TableRow::Dp4, field(), 1).unwrap();
        let mut rng = Rng::from_seed(3);
        let i = pfaffian_ideal(&s, &mut rng).unwrap();
        let mut r = verify_variety(&i, &Expectation::del_pezzo(4), VerifyLevel::Fast, &mut rng);
        r.consistency(6).unwrap();
        r.degree += 1;
        assert!(r.consistency(6).is_err());
    }

    #[test]
    fn a_dropped_generator_changes_the_variety() {
        let s = fixed_bundle_section(TableRow::Dp5, field(), 2).unwrap();
        let mut rng = Rng::from_seed(4);
        let i = pfaffian_ideal(&s, &mut rng).unwrap();
        let fewer = Ideal::new(i.ring(), i.generators()[1..].to_vec()).unwrap();
        let r = verify_variety(&fewer, &Expectation::del_pezzo(5), VerifyLevel::Fast, &mut rng);
        assert!(!r.passed);
    }
}
