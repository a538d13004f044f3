//! The versioned JSON certificate written by `construct` and read back by
//! `verify`.

use num_rational::Ratio;
use pfaffcert_core::construct::{Side, TensorSubspace};
use pfaffcert_core::groebner::{ProbeMode, ProbeOutcome, ProbeReport};
use pfaffcert_core::invariants::{Check, DimensionBlock, Expectation, Report, VerifyLevel};
use pfaffcert_core::modgeom::{BundleKernelSpec, Vanishing};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::wire::{FormatError, PolyMatWire, PolysWire};

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub format: u32,
    pub command: String,
    pub family: String,
    pub prime: u32,
    pub seed: u64,
    pub level: String,
    pub subspace: Option<SubspaceWire>,
    pub bundle: BundleWire,
    pub fiber_count: Option<FiberCountWire>,
    pub section: SectionWire,
    /// Generators of the saturated ideal of the variety.
    pub ideal: PolysWire,
    pub expectation: ExpectationWire,
    pub report: ReportWire,
    /// Wall-clock seconds; the only part of an artifact that is not
    /// reproducible.
    pub timings: Timings,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub construct: f64,
    pub saturate: f64,
    pub verify: f64,
}

impl Eq for Timings {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceWire {
    pub side: String,
    pub kind: String,
    pub seed: u64,
    /// Row-major `3 × dim P` coordinate vectors spanning the subspace.
    pub basis: Vec<Vec<u32>>,
    pub annihilator: Vec<Vec<u32>>,
    pub graph: Option<GraphWire>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphWire {
    pub forms: PolysWire,
    pub base_points: Vec<Vec<u32>>,
}

impl SubspaceWire {
    pub fn new(s: &TensorSubspace) -> SubspaceWire {
        SubspaceWire {
            side: s.side().name().to_string(),
            kind: s.kind.clone(),
            seed: s.seed,
            basis: s.basis().to_vec(),
            annihilator: s.annihilator().to_vec(),
            graph: s.graph.as_ref().map(|g| GraphWire {
                forms: PolysWire::new(g.forms[0].ring(), &g.forms),
                base_points: g.base_points.clone(),
            }),
        }
    }

    pub fn side(&self) -> Result<Side, FormatError> {
        [Side::CalabiYau, Side::DelPezzo]
            .into_iter()
            .find(|s| s.name() == self.side)
            .ok_or_else(|| FormatError::Field(format!("side {:?}", self.side)))
    }
}

/// The bundle as the kernel of its constraint matrix on a sum of line
/// bundles; a missing constraint means the sum itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleWire {
    pub nvars: usize,
    pub twists: Vec<i32>,
    pub constraint: Option<PolyMatWire>,
}

impl BundleWire {
    pub fn new(spec: &BundleKernelSpec) -> BundleWire {
        BundleWire {
            nvars: spec.ring().nvars(),
            twists: spec.twists().to_vec(),
            constraint: spec.constraint().map(PolyMatWire::new),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCountWire {
    pub k: usize,
    pub bidual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionWire {
    /// Dimension of the space the section was drawn from.
    pub space_dim: usize,
    pub coords: Vec<u32>,
    pub matrix: PolyMatWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationWire {
    pub dim: i64,
    pub degree: Option<i64>,
    pub canonical: Option<i64>,
    pub hr_range: (i64, i64),
    pub hr: Option<Vec<i64>>,
    pub vanishing: String,
    pub require_max_rank: bool,
}

fn vanishing_name(v: Vanishing) -> &'static str {
    match v {
        Vanishing::Positive => "positive",
        Vanishing::CanonicalSurface => "canonical-surface",
    }
}

impl ExpectationWire {
    pub fn new(e: &Expectation) -> ExpectationWire {
        ExpectationWire {
            dim: e.dim,
            degree: e.degree,
            canonical: e.canonical,
            hr_range: (*e.hr_range.start(), *e.hr_range.end()),
            hr: e.hr.clone(),
            vanishing: vanishing_name(e.vanishing).to_string(),
            require_max_rank: e.require_max_rank,
        }
    }

    pub fn decode(&self) -> Result<Expectation, FormatError> {
        let vanishing = [Vanishing::Positive, Vanishing::CanonicalSurface]
            .into_iter()
            .find(|v| vanishing_name(*v) == self.vanishing)
            .ok_or_else(|| FormatError::Field(format!("vanishing {:?}", self.vanishing)))?;
        Ok(Expectation {
            dim: self.dim,
            degree: self.degree,
            canonical: self.canonical,
            hr_range: self.hr_range.0..=self.hr_range.1,
            hr: self.hr.clone(),
            vanishing,
            require_max_rank: self.require_max_rank,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeWire {
    pub mode: String,
    pub outcome: String,
    pub samples: usize,
    pub singular_dim: Option<i64>,
    pub detail: String,
}

fn outcome_name(o: ProbeOutcome) -> &'static str {
    match o {
        ProbeOutcome::Smooth => "smooth",
        ProbeOutcome::Singular => "singular",
        ProbeOutcome::Inconclusive => "inconclusive",
    }
}

impl ProbeWire {
    fn new(p: &ProbeReport) -> ProbeWire {
        ProbeWire {
            mode: p.mode.name().to_string(),
            outcome: outcome_name(p.outcome).to_string(),
            samples: p.samples,
            singular_dim: p.singular_dim,
            detail: p.detail.clone(),
        }
    }

    fn decode(&self) -> Result<ProbeReport, FormatError> {
        let mode = [ProbeMode::Points, ProbeMode::Slice, ProbeMode::Full]
            .into_iter()
            .find(|m| m.name() == self.mode)
            .ok_or_else(|| FormatError::Field(format!("probe mode {:?}", self.mode)))?;
        let outcome = [ProbeOutcome::Smooth, ProbeOutcome::Singular, ProbeOutcome::Inconclusive]
            .into_iter()
            .find(|o| outcome_name(*o) == self.outcome)
            .ok_or_else(|| FormatError::Field(format!("probe outcome {:?}", self.outcome)))?;
        Ok(ProbeReport { mode, outcome, samples: self.samples, singular_dim: self.singular_dim, detail: self.detail.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckWire {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Serialized [`Report`]; the Hilbert polynomial is a list of
/// `[numerator, denominator]` pairs, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportWire {
    pub family: String,
    pub prime: u32,
    pub seeds: Vec<u64>,
    pub k: Option<usize>,
    pub level: String,
    pub dimension: i64,
    pub degree: i64,
    pub slice_degree: i64,
    pub hilbert_polynomial: Vec<(i64, i64)>,
    pub hr_range: (i64, i64),
    pub hr: Vec<i64>,
    pub max_rank: bool,
    pub probe: Option<ProbeWire>,
    pub dims: Vec<(String, i64)>,
    pub scheme: String,
    pub flags: Vec<String>,
    pub checks: Vec<CheckWire>,
    pub passed: bool,
    pub failure: Option<String>,
}

impl ReportWire {
    pub fn new(r: &Report) -> ReportWire {
        ReportWire {
            family: r.family.clone(),
            prime: r.prime,
            seeds: r.seeds.clone(),
            k: r.k,
            level: r.level.name().to_string(),
            dimension: r.proj_dim,
            degree: r.degree,
            slice_degree: r.slice_degree,
            hilbert_polynomial: r.hilbert_polynomial.iter().map(|c| (*c.numer(), *c.denom())).collect(),
            hr_range: r.hr_range,
            hr: r.hr.clone(),
            max_rank: r.max_rank,
            probe: r.probe.as_ref().map(ProbeWire::new),
            dims: r.dims.entries.clone(),
            scheme: r.scheme.clone(),
            flags: r.flags.clone(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckWire { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
                .collect(),
            passed: r.passed,
            failure: r.failure.clone(),
        }
    }

    pub fn decode(&self) -> Result<Report, FormatError> {
        let level =
            VerifyLevel::from_name(&self.level).ok_or_else(|| FormatError::Field(format!("level {:?}", self.level)))?;
        let mut hp = Vec::with_capacity(self.hilbert_polynomial.len());
        for &(n, d) in &self.hilbert_polynomial {
            if d <= 0 {
                return Err(FormatError::Field(format!("Hilbert polynomial denominator {d}")));
            }
            hp.push(Ratio::new(n, d));
        }
        Ok(Report {
            family: self.family.clone(),
            prime: self.prime,
            seeds: self.seeds.clone(),
            k: self.k,
            level,
            proj_dim: self.dimension,
            degree: self.degree,
            slice_degree: self.slice_degree,
            hilbert_polynomial: hp,
            hr_range: self.hr_range,
            hr: self.hr.clone(),
            max_rank: self.max_rank,
            probe: self.probe.as_ref().map(ProbeWire::decode).transpose()?,
            dims: DimensionBlock { entries: self.dims.clone() },
            scheme: self.scheme.clone(),
            flags: self.flags.clone(),
            checks: self
                .checks
                .iter()
                .map(|c| Check { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
                .collect(),
            passed: self.passed,
            failure: self.failure.clone(),
        })
    }
}

impl Artifact {
    pub fn from_json(s: &str) -> Result<Artifact, FormatError> {
        #[derive(Deserialize)]
        struct Version {
            format: u32,
        }
        let v: Version = serde_json::from_str(s).map_err(|e| FormatError::Field(e.to_string()))?;
        if v.format != FORMAT {
            return Err(FormatError::Version(v.format));
        }
        serde_json::from_str(s).map_err(|e| FormatError::Field(e.to_string()))
    }

    /// Indented JSON in field order, with shallow arrays (vectors,
    /// polynomial terms) kept on one line.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("artifacts always serialize");
        let mut s = String::new();
        layout(&v, 0, &mut s);
        s.push('\n');
        s
    }

    /// The JSON with the timings zeroed, for reproducibility comparisons.
    pub fn canonical_json(&self) -> String {
        let mut a = self.clone();
        a.timings = Timings::default();
        a.to_json()
    }
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(a) => 1 + a.iter().map(depth).max().unwrap_or(0),
        Value::Object(_) => usize::MAX / 2,
        _ => 0,
    }
}

fn layout(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                layout(val, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if depth(v) > 2 && !a.is_empty() => {
            out.push_str("[\n");
            for (i, val) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                layout(val, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}
