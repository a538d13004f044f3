//! The three subcommands as plain functions, so tests can drive them
//! without spawning the binary.

use std::time::Instant;

use anyhow::{bail, Context};
use pfaffcert_core::algebra::Fp;
use pfaffcert_core::construct::Side;
use pfaffcert_core::groebner::{saturate_irrelevant, Ideal};
use pfaffcert_core::invariants::{construct_family, dims_table, unknown_family, Construction, Family, Report, VerifyLevel};
use pfaffcert_core::rng::Rng;

use crate::artifact::{
    Artifact, BundleWire, ExpectationWire, FiberCountWire, ReportWire, SectionWire, SubspaceWire, Timings, FORMAT,
};
use crate::wire::{PolyMatWire, PolysWire};

#[derive(Clone, Debug)]
pub struct ConstructOptions {
    pub family: Family,
    pub prime: u32,
    pub seed: u64,
    pub level: VerifyLevel,
    /// Allow the full singular-locus computation on degree-17 families.
    pub force: bool,
}

impl ConstructOptions {
    pub fn new(tag: &str, prime: u32, seed: u64, level: VerifyLevel) -> anyhow::Result<ConstructOptions> {
        let family = Family::from_tag(tag).ok_or_else(|| unknown_family(tag))?;
        Ok(ConstructOptions { family, prime, seed, level, force: false })
    }

    /// Surfaces are always checked in full: it is cheap and their
    /// certificates are meant to be complete.
    pub fn effective_level(&self) -> VerifyLevel {
        match self.family.side() {
            Side::DelPezzo => VerifyLevel::Full,
            Side::CalabiYau => self.level,
        }
    }
}

fn verify_rng(seed: u64, prime: u32) -> Rng {
    Rng::for_task(seed, prime, "verify")
}

/// Runs every check on a saturated ideal and fills in the metadata the
/// artifact carries alongside it.
fn certify(ideal: &Ideal, artifact: &Artifact, level: VerifyLevel) -> anyhow::Result<Report> {
    let exp = artifact.expectation.decode()?;
    let mut report = pfaffcert_core::invariants::verify_variety(ideal, &exp, level, &mut verify_rng(artifact.seed, artifact.prime));
    report.family = artifact.family.clone();
    report.prime = artifact.prime;
    report.seeds = vec![artifact.seed];
    report.k = artifact.fiber_count.as_ref().map(|f| f.k);
    report.dims.entries = artifact.report.dims.clone();
    report.flags = artifact.report.flags.clone();
    Ok(report)
}

fn skeleton(c: &Construction, level: VerifyLevel, saturated: &Ideal) -> Artifact {
    Artifact {
        format: FORMAT,
        command: "construct".into(),
        family: c.family.tag(),
        prime: c.field.prime(),
        seed: c.seed,
        level: level.name().into(),
        subspace: c.subspace.as_ref().map(SubspaceWire::new),
        bundle: BundleWire::new(&c.bundle),
        fiber_count: c.k.map(|(k, label)| FiberCountWire { k, bidual: label.to_string() }),
        section: SectionWire {
            space_dim: c.section_dim,
            coords: c.section.coords.clone(),
            matrix: PolyMatWire::new(&c.section.a),
        },
        ideal: PolysWire::new(saturated.ring(), saturated.generators()),
        expectation: ExpectationWire::new(&c.expectation),
        report: ReportWire {
            family: String::new(),
            prime: 0,
            seeds: vec![],
            k: None,
            level: level.name().into(),
            dimension: -1,
            degree: 0,
            slice_degree: 0,
            hilbert_polynomial: vec![],
            hr_range: (0, 0),
            hr: vec![],
            max_rank: false,
            probe: None,
            dims: c.dims.entries.clone(),
            scheme: String::new(),
            flags: c.flags.clone(),
            checks: vec![],
            passed: false,
            failure: None,
        },
        timings: Timings::default(),
    }
}

/// Builds, saturates and certifies one member of a family.
pub fn construct(opts: &ConstructOptions) -> anyhow::Result<Artifact> {
    let level = opts.effective_level();
    if level == VerifyLevel::Full && opts.family.is_heavy() && !opts.force {
        bail!(
            "the full singular-locus check on {} is very expensive; use --verify slice or pass --force",
            opts.family.tag()
        );
    }
    let field = Fp::new(opts.prime)?;
    let t = Instant::now();
    let c = construct_family(opts.family, field, opts.seed)
        .with_context(|| format!("constructing {} (prime {}, seed {})", opts.family.tag(), opts.prime, opts.seed))?;
    let t_construct = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let saturated = saturate_irrelevant(&c.ideal, &mut Rng::for_task(opts.seed, opts.prime, "saturate"))?;
    let t_saturate = t.elapsed().as_secs_f64();
    let mut artifact = skeleton(&c, level, &saturated);
    let t = Instant::now();
    let report = certify(&saturated, &artifact, level)?;
    artifact.report = ReportWire::new(&report);
    artifact.timings = Timings { construct: t_construct, saturate: t_saturate, verify: t.elapsed().as_secs_f64() };
    Ok(artifact)
}

/// Outcome of re-verifying an artifact.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub report: Report,
    /// First reason the artifact does not verify.
    pub failure: Option<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Re-runs every check from the stored ideal alone and compares with the
/// stored report.
pub fn verify(artifact: &Artifact, prime: Option<u32>) -> anyhow::Result<Verdict> {
    if let Some(p) = prime {
        if p != artifact.prime {
            bail!("artifact was computed modulo {} but {p} was requested", artifact.prime);
        }
    }
    if artifact.ideal.prime != artifact.prime {
        bail!("ideal is over {} but the artifact says {}", artifact.ideal.prime, artifact.prime);
    }
    let stored = artifact.report.decode()?;
    let level = stored.level;
    let (ring, gens) = artifact.ideal.decode()?;
    let ideal = Ideal::new(ring, gens)?;
    let report = certify(&ideal, artifact, level)?;
    let failure = if let Err(e) = stored.consistency(ring.nvars()) {
        Some(format!("report inconsistency: {e}"))
    } else if let Some(f) = &report.failure {
        Some(f.clone())
    } else if ReportWire::new(&report) != artifact.report {
        Some(format!("report inconsistency: {}", first_difference(&ReportWire::new(&report), &artifact.report)))
    } else {
        None
    };
    Ok(Verdict { report, failure })
}

fn first_difference(fresh: &ReportWire, stored: &ReportWire) -> String {
    let a = serde_json::to_value(fresh).expect("reports serialize");
    let b = serde_json::to_value(stored).expect("reports serialize");
    if let (Some(a), Some(b)) = (a.as_object(), b.as_object()) {
        for (key, value) in a {
            if b.get(key) != Some(value) {
                return format!("stored {key} differs from the recomputed value {value}");
            }
        }
    }
    "stored report differs from the recomputed one".into()
}

/// One line of the `dims` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsRow {
    pub k: usize,
    pub stratum: i64,
    pub family: i64,
    pub h12_bound: i64,
    pub picard_bound: Option<i64>,
}

pub fn dims_for_k(k: usize) -> anyhow::Result<DimsRow> {
    let (stratum, family, h12_bound, picard_bound) = dims_table(k)?;
    Ok(DimsRow { k, stratum, family, h12_bound, picard_bound })
}

/// Named bundle and family numbers of a fixed-bundle row or family tag.
pub fn dims_for_family(tag: &str, prime: u32, seed: u64) -> anyhow::Result<Vec<(String, i64)>> {
    let family = Family::from_tag(tag).ok_or_else(|| unknown_family(tag))?;
    let c = construct_family(family, Fp::new(prime)?, seed)?;
    Ok(c.dims.entries)
}

pub fn human_summary(a: &Artifact, failure: Option<&str>) -> String {
    let r = &a.report;
    let mut s = format!("{} (prime {}, seed {}, level {})\n", a.family, a.prime, a.seed, r.level);
    if let Some(f) = &a.fiber_count {
        s += &format!("  special fibers  {} ({})\n", f.k, f.bidual);
    }
    s += &format!("  sections        {}\n", a.section.space_dim);
    if r.dimension >= 0 {
        s += &format!("  dimension       {}\n  degree          {}\n", r.dimension, r.degree);
    }
    if !r.hr.is_empty() {
        s += &format!("  h1(I(j)), j={}..{}  {:?}\n", r.hr_range.0, r.hr_range.1, r.hr);
    }
    if let Some(p) = &r.probe {
        s += &format!("  smoothness      {} ({})\n", p.outcome, p.detail);
    }
    for flag in &r.flags {
        s += &format!("  note            {flag}\n");
    }
    match failure {
        None => s += "PASS\n",
        Some(f) => s += &format!("FAIL {f}\n"),
    }
    s
}
