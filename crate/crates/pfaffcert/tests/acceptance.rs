//! The acceptance suite: one line per criterion, then a single verdict.
//!
//! Everything runs from fixed seeds over the default prime, through the
//! same entry points as the command line.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use pfaffcert::{construct, dims_for_k, Artifact, ConstructOptions};
use pfaffcert_core::algebra::{pfaffian, principal_pfaffians, Fp, PolyMat, Ring, DEFAULT_PRIME};
use pfaffcert_core::construct::{
    build_graph_subspace, cy_to_dp, extend_dp_to_cy, fiber_count, generic_subspace, pfaffian_ideal, random_section,
    section_space, subspace_bundle, GraphKind, Side, TensorSubspace,
};
use pfaffcert_core::groebner::{groebner_basis, hilbert_function_macaulay, saturate_irrelevant, Ideal};
use pfaffcert_core::invariants::{construct_family, restricted_hr, verify_variety, Expectation, Family, VerifyLevel};
use pfaffcert_core::rng::Rng;

type Outcome = Result<String, String>;

fn field() -> Fp {
    Fp::new(DEFAULT_PRIME).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Certificates built so far, keyed by family tag.
#[derive(Default)]
struct Runs(BTreeMap<String, (Artifact, Duration)>);

impl Runs {
    fn get(&mut self, tag: &str, level: VerifyLevel) -> Result<&Artifact, String> {
        if !self.0.contains_key(tag) {
            let t = Instant::now();
            let opts = ConstructOptions::new(tag, DEFAULT_PRIME, 1, level).map_err(|e| e.to_string())?;
            let a = construct(&opts).map_err(|e| format!("{tag}: {e:#}"))?;
            self.0.insert(tag.to_string(), (a, t.elapsed()));
        }
        Ok(&self.0[tag].0)
    }

    fn elapsed(&self, tag: &str) -> Duration {
        self.0[tag].1
    }
}

fn dims_entry(a: &Artifact, name: &str) -> Option<i64> {
    a.report.dims.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
}

/// Passes, certifies `(dim, deg)` and ran under `limit`.
fn certified(runs: &mut Runs, tag: &str, level: VerifyLevel, dim: i64, deg: i64, limit: Duration) -> Outcome {
    let a = runs.get(tag, level)?;
    let r = &a.report;
    ensure(r.passed, || format!("{tag}: {}", r.failure.clone().unwrap_or_default()))?;
    ensure((r.dimension, r.degree) == (dim, deg), || format!("{tag}: got ({}, {})", r.dimension, r.degree))?;
    let probe = r.probe.as_ref().ok_or_else(|| format!("{tag}: no smoothness probe"))?;
    ensure(probe.outcome == "smooth", || format!("{tag}: probe {}", probe.outcome))?;
    let mode = probe.mode.clone();
    let t = runs.elapsed(tag);
    ensure(t < limit, || format!("{tag}: took {t:?}"))?;
    Ok(format!("{tag} ({dim},{deg}) {mode} {:.1}s", t.as_secs_f64()))
}

fn criterion_1(runs: &mut Runs) -> Outcome {
    let rows = [("dp3", 2, 3), ("dp4", 2, 4), ("dp5", 2, 5), ("cy12", 3, 12), ("cy13", 3, 13), ("cy14", 3, 14)];
    let mut out = Vec::new();
    for (tag, dim, deg) in rows {
        out.push(certified(runs, tag, VerifyLevel::Slice, dim, deg, Duration::from_secs(60))?);
        if dim == 2 {
            let mode = &runs.get(tag, VerifyLevel::Slice)?.report.probe.as_ref().unwrap().mode;
            ensure(mode == "full", || format!("{tag}: surfaces need the full check, got {mode}"))?;
        }
    }
    Ok(out.join("; "))
}

fn criterion_2(runs: &mut Runs) -> Outcome {
    let rows = [("dp6", 2, 6), ("dp7", 2, 7), ("cy15", 3, 15), ("cy16", 3, 16)];
    let mut out = Vec::new();
    for (tag, dim, deg) in rows {
        out.push(certified(runs, tag, VerifyLevel::Slice, dim, deg, Duration::from_secs(15 * 60))?);
    }
    Ok(out.join("; "))
}

fn criterion_3(runs: &mut Runs) -> Outcome {
    let mut out = Vec::new();
    for k in [8usize, 9, 11] {
        let tag = format!("cy17-k{k}");
        let line = certified(runs, &tag, VerifyLevel::Slice, 3, 17, Duration::from_secs(2 * 3600))?;
        let a = runs.get(&tag, VerifyLevel::Slice)?;
        let fibers = a.fiber_count.as_ref().map(|f| f.k);
        ensure(fibers == Some(k), || format!("{tag}: fiber count {fibers:?}"))?;
        ensure(a.section.space_dim == k, || format!("{tag}: {} sections", a.section.space_dim))?;
        ensure(a.report.slice_degree == 17, || format!("{tag}: slice degree {}", a.report.slice_degree))?;
        out.push(line);
    }
    Ok(out.join("; "))
}

fn criterion_4(runs: &mut Runs) -> Outcome {
    let mut out = Vec::new();
    for tag in ["dp8-k6", "dp8-k7"] {
        out.push(certified(runs, tag, VerifyLevel::Full, 2, 8, Duration::from_secs(15 * 60))?);
        let r = &runs.get(tag, VerifyLevel::Full)?.report;
        ensure(r.probe.as_ref().unwrap().mode == "full", || format!("{tag}: not checked in full"))?;
        let start = r.hr_range.0;
        let at = |j: i64| r.hr.get((j - start) as usize).copied();
        ensure((at(1), at(2)) == (Some(3), Some(4)), || format!("{tag}: h1(I(j)) = {:?}", r.hr))?;
    }
    Ok(format!("{}; h1(I(1..2)) = (3,4)", out.join("; ")))
}

fn criterion_5(runs: &mut Runs) -> Outcome {
    let tags =
        ["dp3", "dp4", "dp5", "dp6", "dp7", "cy12", "cy13", "cy14", "cy15", "cy16", "cy17-k8", "cy17-k9", "cy17-k11"];
    let mut equal = 0;
    for tag in tags {
        let a = runs.get(tag, VerifyLevel::Slice)?;
        let formula = dims_entry(a, "pfaffian_degree");
        ensure(formula == Some(a.report.degree), || format!("{tag}: formula {formula:?}, certified {}", a.report.degree))?;
        equal += 1;
    }
    Ok(format!("{equal} equalities"))
}

fn criterion_6() -> Outcome {
    let expected = [(8, 72, 23), (9, 71, 23), (11, 70, 24)];
    for (k, stratum, h12) in expected {
        let row = dims_for_k(k).map_err(|e| e.to_string())?;
        ensure((row.stratum, row.h12_bound) == (stratum, h12), || format!("k={k}: {row:?}"))?;
    }
    let picard = dims_for_k(11).map_err(|e| e.to_string())?.picard_bound;
    ensure(picard.is_some_and(|p| p >= 2), || format!("k=11: picard bound {picard:?}"))?;
    let o = Command::new(env!("CARGO_BIN_EXE_pfaffcert")).arg("dims").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&o.stdout);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    let want = [["8", "72", "71", "23", "-"], ["9", "71", "71", "23", "-"], ["11", "70", "72", "24", "2"]];
    ensure(o.status.success() && rows == want, || format!("`pfaffcert dims` printed {text:?}"))?;
    Ok("strata (72,71,70), h12 >= (23,23,24), h11 >= 2 at k=11".into())
}

fn criterion_7(runs: &mut Runs) -> Outcome {
    for tag in ["m10", "k11-type2"] {
        let r = &runs.get(tag, VerifyLevel::Slice)?.report;
        let why = r.failure.clone().unwrap_or_default();
        ensure(!r.passed && why.contains("codimension"), || format!("{tag}: expected a codimension failure, got {why:?}"))?;
    }
    for side in [Side::CalabiYau, Side::DelPezzo] {
        let s = generic_subspace(side, field(), 1).map_err(|e| e.to_string())?;
        let (k, _) = fiber_count(&s.lambda_on_p2().unwrap(), &mut Rng::from_seed(1)).map_err(|e| e.to_string())?;
        let sections = section_space(&subspace_bundle(&s).unwrap()).map_err(|e| e.to_string())?.len();
        ensure(k == 0 && sections == 0, || format!("generic {}: k={k}, {sections} sections", side.name()))?;
    }
    Ok("m10 and k11-type2 fail on codimension; generic subspaces have k=0 and no sections".into())
}

/// The checks of criterion 3 on an arbitrary threefold-side subspace.
fn degree_17_checks(s: &TensorSubspace, k: usize, seed: u64) -> Result<(), String> {
    let mut rng = Rng::for_task(seed, DEFAULT_PRIME, "acceptance");
    let got = fiber_count(&s.lambda_on_p2().unwrap(), &mut rng).map_err(|e| e.to_string())?.0;
    ensure(got == k, || format!("extended subspace has k={got}, expected {k}"))?;
    let basis = section_space(&subspace_bundle(s).unwrap()).map_err(|e| e.to_string())?;
    ensure(basis.len() == k, || format!("extended subspace has {} sections", basis.len()))?;
    let sec = random_section(&basis, seed).map_err(|e| e.to_string())?;
    let ideal = pfaffian_ideal(&sec, &mut rng).map_err(|e| e.to_string())?;
    let sat = saturate_irrelevant(&ideal, &mut rng).map_err(|e| e.to_string())?;
    let r = verify_variety(&sat, &Expectation::calabi_yau(17), VerifyLevel::Slice, &mut rng);
    ensure(r.passed, || format!("extended subspace: {}", r.failure.clone().unwrap_or_default()))?;
    ensure((r.proj_dim, r.degree) == (3, 17), || format!("extended subspace: ({}, {})", r.proj_dim, r.degree))
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    for (kind, dp_k, cy_k) in [(GraphKind::DpLinear, 7, 11), (GraphKind::DpVeronese2, 6, 9)] {
        let s = build_graph_subspace(kind, field(), 1).map_err(|e| e.to_string())?;
        let k0 = fiber_count(&s.lambda_on_p2().unwrap(), &mut Rng::from_seed(1)).map_err(|e| e.to_string())?.0;
        ensure(k0 == dp_k, || format!("{}: k={k0}", kind.name()))?;
        let up = extend_dp_to_cy(&s, 1).map_err(|e| e.to_string())?;
        degree_17_checks(&up, cy_k, 1)?;
        let down = cy_to_dp(&up, 1).map_err(|e| e.to_string())?;
        let back = fiber_count(&down.lambda_on_p2().unwrap(), &mut Rng::from_seed(2)).map_err(|e| e.to_string())?.0;
        ensure(back == dp_k, || format!("{}: came back with k={back}", kind.name()))?;
        out.push(format!("{dp_k}->{cy_k}->{back}"));
    }
    let s = build_graph_subspace(GraphKind::CubicBasepoint, field(), 1).map_err(|e| e.to_string())?;
    let down = cy_to_dp(&s, 1).map_err(|e| e.to_string())?;
    let k = fiber_count(&down.lambda_on_p2().unwrap(), &mut Rng::from_seed(3)).map_err(|e| e.to_string())?.0;
    ensure(k == 6, || format!("cubic base point: projected k={k}"))?;
    out.push(format!("8->{k}"));
    Ok(out.join(", "))
}

fn criterion_9() -> Outcome {
    let mut out = Vec::new();
    for (kind, k) in [(GraphKind::CubicBasepoint, 8), (GraphKind::Veronese2, 9), (GraphKind::Linear, 11)] {
        let c = construct_family(Family::Stratum(kind), field(), 1).map_err(|e| e.to_string())?;
        let mut rng = Rng::for_task(1, DEFAULT_PRIME, "restriction");
        let sat = saturate_irrelevant(&c.ideal, &mut rng).map_err(|e| e.to_string())?;
        let s = c.subspace.as_ref().unwrap();
        let (module, ideal) = restricted_hr(s, &sat, 1..=3, &mut rng).map_err(|e| e.to_string())?;
        ensure(module == ideal, || format!("k={k}: presentation {module:?}, ideal {ideal:?}"))?;
        out.push(format!("k={k} {module:?}"));
    }
    Ok(out.join("; "))
}

fn skew_linear(r: Ring, n: usize, rng: &mut Rng) -> PolyMat {
    let mut e = vec![r.zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let l = rng.linear_form(r);
            e[j * n + i] = -&l;
            e[i * n + j] = l;
        }
    }
    PolyMat::skew_with_twists(r, &vec![0; n], 1, e).unwrap()
}

fn criterion_10(runs: &mut Runs) -> Outcome {
    let t = Instant::now();
    let mut rng = Rng::from_seed(10);
    let r3 = Ring::new(3, field()).unwrap();
    for n in (2..=8).step_by(2) {
        let a = skew_linear(r3, n, &mut rng);
        let pf = pfaffian(&a, &(0..n).collect::<Vec<_>>()).unwrap();
        ensure(&pf * &pf == a.determinant().unwrap(), || format!("pf^2 != det at size {n}"))?;
    }
    for n in [3, 4, 5] {
        let r = Ring::new(n, field()).unwrap();
        let mut gens: Vec<_> = (0..3).map(|_| rng.form(r, 2)).collect();
        gens.push(rng.form(r, 3));
        let gb = groebner_basis(r, &gens).unwrap();
        ensure(groebner_basis(r, gb.elements()).unwrap() == gb, || "GB not idempotent".into())?;
        let mut rotated = gens.clone();
        rotated.rotate_left(2);
        ensure(groebner_basis(r, &rotated).unwrap() == gb, || "GB depends on generator order".into())?;
        let mut ideal = Ideal::new(r, gens.clone()).unwrap();
        for d in 0..=7 {
            let (a, b) = (ideal.hilbert_function(d).unwrap(), hilbert_function_macaulay(r, &gens, d).unwrap());
            ensure(a == b, || format!("Hilbert function at {d}: {a} vs {b}"))?;
        }
    }
    let r6 = Ring::new(6, field()).unwrap();
    let pf = Ideal::new(r6, principal_pfaffians(&skew_linear(r6, 5, &mut rng), 4).unwrap()).unwrap();
    let mut once = saturate_irrelevant(&pf, &mut rng).unwrap();
    let mut twice = saturate_irrelevant(&once, &mut rng).unwrap();
    ensure(once.groebner_basis().unwrap() == twice.groebner_basis().unwrap(), || "saturation not idempotent".into())?;
    for tag in ["dp3", "dp4", "dp5", "dp6", "dp7", "cy12", "cy13", "cy14", "cy15", "cy16"] {
        let a = runs.get(tag, VerifyLevel::Slice)?;
        let deg: i64 = tag.trim_start_matches(char::is_alphabetic).parse().unwrap();
        let formula = dims_entry(a, "pfaffian_degree");
        ensure(formula == Some(deg), || format!("{tag}: degree formula gives {formula:?}"))?;
    }
    Ok(format!("kernel checks in {:.1}s", t.elapsed().as_secs_f64()))
}

fn main() {
    let mut runs = Runs::default();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1(&mut runs)),
        (2, criterion_2(&mut runs)),
        (3, criterion_3(&mut runs)),
        (4, criterion_4(&mut runs)),
        (5, criterion_5(&mut runs)),
        (6, criterion_6()),
        (7, criterion_7(&mut runs)),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10(&mut runs)),
    ];
    let mut failed = Vec::new();
    for (n, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS {detail}"),
            Err(why) => {
                println!("criterion {n}: FAIL {why}");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
