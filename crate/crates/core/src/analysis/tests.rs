use super::*;
use crate::coeff::FieldSpec;

fn plane(forms: &[&str]) -> RationalMap {
    RationalMap::parse(FieldSpec::Rationals, &["x", "y", "z"], &[], forms).unwrap()
}

fn quick() -> AnalysisConfig {
    AnalysisConfig { r_max: 2, ..AnalysisConfig::default() }
}

#[test]
fn standard_quadratic_report() {
    let rep = analyze(&plane(&["y*z", "x*z", "x*y"]), &quick()).unwrap();
    assert!(rep.birational);
    let inv = rep.inverse.as_ref().unwrap();
    assert_eq!(inv.degree, 2);
    assert!(inv.verified);
    assert!(inv.content_removed);
    let iv = &rep.invariants;
    assert_eq!(iv.delta, 2);
    assert_eq!(iv.analytic_spread, 3);
    assert_eq!(iv.x_regularity, 0);
    assert_eq!(iv.rees_cm, Some(true));
    assert_eq!(iv.saturated, Some(true));
    assert_eq!(iv.grade, Some(2));
    assert_eq!(iv.b1, Some(3));
    assert_eq!(iv.relation_type, 1);
    assert_eq!(iv.f_values, vec![0, 0]);
    let p = iv.plane.as_ref().unwrap();
    assert!(p.agree);
    assert_eq!(rep.ledger.len(), 9);
    for e in &rep.ledger {
        assert_ne!(e.status, Status::Fail, "{e:?}");
    }
    assert_eq!(rep.entry(BoundId::CRE_N2).unwrap().status, Status::Pass);
    assert!(rep.notes.is_empty(), "{:?}", rep.notes);
}

#[test]
fn veronese_is_birational_onto_its_image() {
    let f = RationalMap::parse(FieldSpec::Rationals, &["s", "t"], &[], &["s^2", "s*t", "t^2"]).unwrap();
    let rep = analyze(&f, &quick()).unwrap();
    assert!(rep.birational);
    let inv = rep.inverse.as_ref().unwrap();
    assert!(inv.verified);
    assert!(inv.upper_estimate);
    assert_eq!(rep.invariants.analytic_spread, 2);
    assert_eq!(rep.entry(BoundId::CRE_N2).unwrap().status, Status::NotApplicable);
}

#[test]
fn double_cover_is_not_birational() {
    let f = RationalMap::parse(FieldSpec::Rationals, &["s", "t"], &[], &["s^2", "t^2"]).unwrap();
    let rep = analyze(&f, &quick()).unwrap();
    assert!(!rep.birational);
    assert!(rep.inverse.is_none());
    assert_eq!(rep.verdict.rank, 0);
    assert!(!rep.notes.is_empty());
}

#[test]
fn map_on_a_quadric_surface_skips_projective_stages() {
    let f = RationalMap::parse(FieldSpec::Rationals, &["x", "y", "z", "w"], &["x*w - y*z"], &["x", "y", "z"]).unwrap();
    let rep = analyze(&f, &quick()).unwrap();
    // Projection from the point (0:0:0:1) on the quadric.
    assert!(rep.birational);
    assert!(rep.inverse.as_ref().unwrap().verified);
    assert!(rep.invariants.powers.is_empty());
    assert_eq!(rep.invariants.saturated, None);
}

#[test]
fn report_serializes_with_the_documented_keys() {
    let rep = analyze(&plane(&["y*z", "x*z", "x*y"]), &AnalysisConfig { reduction: false, ..quick() }).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    for k in ["map", "birational", "inverse", "invariants", "ledger"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["map"]["field"], "Q");
    assert_eq!(v["inverse"]["degree"], 2);
    assert_eq!(v["ledger"][0]["id"], "MR");
    assert!(v["ledger"][0].get("lhs").is_some());
    assert!(v["invariants"]["reduction_number"].is_null());
}
