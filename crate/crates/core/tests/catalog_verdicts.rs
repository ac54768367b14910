use rayon::prelude::*;

use postrip::catalog::{catalog, catalog_list, find, run_check, Expected, Filter, RunConfig};
use postrip::report::{verify_report, CheckReport, Stage, Verdict};

fn expected_stage(id: &str) -> (Verdict, Stage, bool) {
    match id {
        "B11" => (Verdict::Refuted, Stage::SampledRefuter, true),
        id if id.starts_with("B16") => (Verdict::Refuted, Stage::SampledRefuter, true),
        "B12" | "split-ideal" => (Verdict::Refuted, Stage::UniversalRefuter, false),
        "BT4" | "BT13" => (Verdict::Refuted, Stage::DimFilters, false),
        "BT2" | "BT3" | "BT14" | "BT15" => (Verdict::Refuted, Stage::TrivialFactor, false),
        _ => (Verdict::CertifiedPositive, Stage::Certificate, false),
    }
}

#[test]
fn every_entry_reaches_its_verdict_and_reverifies() {
    let cfg = RunConfig::default();
    let bad: Vec<String> = catalog(cfg.max_n)
        .par_iter()
        .filter_map(|e| {
            let r = match run_check(e, &cfg) {
                Ok(o) => o.report,
                Err(err) => return Some(format!("{}: {err}", e.id)),
            };
            let back = CheckReport::from_json(&r.to_json()).unwrap();
            if back != r {
                return Some(format!("{}: JSON round trip changed the report", e.id));
            }
            if let Err(err) = verify_report(&back) {
                return Some(format!("{}: {err}", e.id));
            }
            let got = (r.verdict, r.stage, r.sampled_family);
            (got != expected_stage(&e.id) || r.matches_expected() != Some(true)).then(|| format!("{}: {got:?}", e.id))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn catalog_floor_and_filters() {
    let all = catalog(3);
    assert!(all.len() >= 20);
    let positive: Vec<String> = catalog_list(Filter::Positive, 3).into_iter().map(|e| e.id).collect();
    for id in ["ThmE-1", "ThmE-2", "ThmE-3", "ThmE-4-n2", "ThmE-5"] {
        assert!(positive.contains(&id.to_string()), "{id}");
    }
    let negative = catalog_list(Filter::Negative, 3);
    let b11 = negative.iter().find(|e| e.id == "B11").unwrap();
    assert_eq!(b11.description, "so(2) ⊂ so(3)_max ⊂ sp(2)");
    assert!(negative.iter().all(|e| e.expected == Some(Expected::NotPositive)));
    // No T5 entry with both slope exponents zero.
    assert!(!all.iter().any(|e| e.id.starts_with("T5") && e.id.ends_with("-k0-l0")));
    for id in ["B11", "B12", "B16-n2", "BT4", "BT13"] {
        assert!(all.iter().any(|e| e.id == id), "{id}");
    }
}

#[test]
fn ids_are_unique_and_findable() {
    let all = catalog(4);
    let mut ids: Vec<&str> = all.iter().map(|e| e.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), all.len());
    assert_eq!(find("T1-H-n4").unwrap().id, "T1-H-n4");
    assert!(find("T1-H-n9x").is_err());
}

#[test]
fn parameter_cap_controls_family_size() {
    let small = catalog(2);
    let big = catalog(3);
    assert!(small.iter().all(|e| !e.id.ends_with("-n3")));
    assert!(big.len() > small.len());
    assert_eq!(find("T4-n3").unwrap().build().unwrap().dim(), 36);
}
