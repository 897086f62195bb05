use hyperell::g2::identity::{IdentityId, IdentitySet};
use hyperell::g2::verify::{verify_all, Status};
use hyperell::ring::{CurveParams, Rat};

fn curve(lambda: [(i64, i64); 7]) -> CurveParams {
    CurveParams::new(lambda.map(|(n, d)| Rat::new(n.into(), d.into()))).unwrap()
}

fn labels(p: &CurveParams, ids: &[IdentityId]) -> Vec<&'static str> {
    verify_all(p, ids)
        .entries
        .iter()
        .map(|e| e.status.label())
        .collect()
}

#[test]
fn weierstrass_and_jacobi_systems_on_a_fixed_curve() {
    let p = CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap();
    assert_eq!(labels(&p, &IdentitySet::Weierstrass.ids()), vec!["zero"; 7]);
    assert_eq!(labels(&p, &IdentitySet::Jacobi.ids()), vec!["zero"; 7]);
    assert_eq!(labels(&p, &[IdentityId::Y1Y2]), ["zero"]);
}

#[test]
fn kummer_relation_for_any_constant_term() {
    for l0 in [(0, 1), (2, 1), (-7, 3), (1, 1)] {
        let p = curve([l0, (5, 1), (1, 2), (3, 1), (-1, 1), (4, 1), (9, 2)]);
        assert_eq!(labels(&p, &[IdentityId::Kum2]), ["zero"], "λ0 = {l0:?}");
        let flat = curve([l0, (5, 1), (1, 2), (3, 1), (-1, 1), (4, 1), (0, 1)]);
        assert_eq!(
            labels(&flat, &IdentitySet::Kummer.ids()),
            ["zero", "zero"],
            "λ0 = {l0:?}"
        );
    }
}

#[test]
fn special_systems_and_half_periods() {
    let p = curve([(0, 1), (4, 1), (-3, 5), (7, 2), (1, 3), (4, 1), (0, 1)]);
    let mut ids = IdentitySet::WeierstrassSpecial.ids();
    ids.extend(IdentitySet::JacobiSpecial.ids());
    ids.extend(IdentitySet::HalfPeriod.ids());
    ids.extend(IdentitySet::Gii.ids());
    ids.extend(IdentitySet::Integrability.ids());
    assert_eq!(labels(&p, &ids), vec!["zero"; ids.len()]);
}

#[test]
fn guarded_identities_are_skipped_with_a_reason() {
    let p = CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap();
    let report = verify_all(&p, &[IdentityId::WS1, IdentityId::IntWQ, IdentityId::Gii2]);
    for e in &report.entries {
        match &e.status {
            Status::Skipped(why) => assert!(why.ends_with("required"), "{why}"),
            s => panic!("{} gave {}", e.id, s.label()),
        }
    }
}

#[test]
fn quintic_curve_needs_nonzero_lambda5() {
    let p = CurveParams::from_ints([1, 2, 1, 3, 1, 0, 0]).unwrap();
    assert_eq!(
        labels(&p, &[IdentityId::W1, IdentityId::J1]),
        ["skipped", "zero"]
    );
}
