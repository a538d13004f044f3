//! The shipped certificates re-verify, and rebuilding them from their
//! parameters reproduces them byte for byte (timings aside).
//!
//! `PFAFFCERT_BLESS=1 cargo test -p pfaffcert --test golden` rewrites them.

use std::path::PathBuf;

use pfaffcert::{construct, verify, Artifact, ConstructOptions};
use pfaffcert_core::algebra::DEFAULT_PRIME;
use pfaffcert_core::invariants::VerifyLevel;

const CORPUS: &[(&str, u64)] = &[
    ("dp3", 1),
    ("dp5", 1),
    ("dp8-k7", 5),
    ("cy12", 1),
    ("cy14", 1),
    ("cy17-k8", 1),
    ("cy17-k9", 1),
    ("cy17-k11", 1),
];

fn path(tag: &str, seed: u64) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(format!("{tag}-s{seed}.json"))
}

fn rebuild(tag: &str, seed: u64) -> Artifact {
    construct(&ConstructOptions::new(tag, DEFAULT_PRIME, seed, VerifyLevel::Slice).unwrap()).unwrap()
}

#[test]
fn golden_certificates_reverify_and_reproduce() {
    let bless = std::env::var_os("PFAFFCERT_BLESS").is_some();
    for &(tag, seed) in CORPUS {
        let p = path(tag, seed);
        let fresh = rebuild(tag, seed);
        if bless {
            std::fs::write(&p, fresh.to_json()).unwrap();
        }
        let text = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        let stored = Artifact::from_json(&text).unwrap();
        assert_eq!(stored.to_json(), text, "{tag}: file is not in canonical layout");
        let verdict = verify(&stored, Some(DEFAULT_PRIME)).unwrap();
        assert!(verdict.passed(), "{tag}: {:?}", verdict.failure);
        assert_eq!(fresh.canonical_json(), stored.canonical_json(), "{tag}: rebuilt certificate differs");
    }
}
