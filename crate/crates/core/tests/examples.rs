use std::sync::Arc;

use mlattice::classify::{self, classification_report, Class};
use mlattice::constructions::{boolean_frame, chain_frame, default_corpus, parse_lattice, serialize, zn_ideal_lattice};
use mlattice::derived;
use mlattice::maps::{self, make_delta, make_phi, DeltaKind, Isomorphism, MapError, PhiKind};
use mlattice::{Axiom, ElementId, Lattice, ParseError};

fn zn(n: u64) -> Arc<Lattice> {
    Arc::new(zn_ideal_lattice(n).unwrap())
}

fn e(l: &Lattice, label: &str) -> ElementId {
    l.element(label).unwrap_or_else(|| panic!("no {label} in {}", l.name()))
}

#[test]
fn order_join_meet_mul() {
    let l = zn(24);
    assert!(l.leq(e(&l, "(12)"), e(&l, "(4)")));
    assert!(!l.leq(e(&l, "(3)"), e(&l, "(4)")));
    assert_eq!(l.join_all([e(&l, "(4)"), e(&l, "(6)")]), e(&l, "(2)"));
    assert_eq!(l.meet_all([e(&l, "(4)"), e(&l, "(6)")]), e(&l, "(12)"));
    assert_eq!(l.join_all([]), l.bottom());
    assert_eq!(l.meet_all([]), l.top());
    assert_eq!(l.mul(e(&l, "(2)"), e(&l, "(6)")), e(&l, "(12)"));
    assert_eq!(l.power(e(&l, "(4)"), 2).unwrap(), e(&l, "(8)"));
    for a in l.elements() {
        assert_eq!(l.mul(a, l.top()), a);
        assert!(l.leq(a, a));
    }
}

#[test]
fn patched_square() {
    let l = zn(8);
    let (two, four) = (e(&l, "(2)"), e(&l, "(4)"));
    // chain 0 < (4) < (2) < 1 with (2) idempotent and (2)(4) = (4)(4) = 0 is
    // still a multiplicative lattice; check the axioms by hand
    let patched = l.with_symmetric_mul_entry(two, two, two);
    let els: Vec<ElementId> = patched.elements().collect();
    let m = |a, b| patched.mul(a, b);
    for &a in &els {
        assert_eq!(m(a, patched.top()), a);
        assert_eq!(m(a, patched.bottom()), patched.bottom());
        for &b in &els {
            assert_eq!(m(a, b), m(b, a));
            for &c in &els {
                assert_eq!(m(m(a, b), c), m(a, m(b, c)));
                if patched.leq(b, c) {
                    assert!(patched.leq(m(a, b), m(a, c)));
                }
            }
        }
    }
    assert!(patched.validate().ok);

    let bad = l.with_symmetric_mul_entry(two, four, four);
    let report = bad.validate();
    assert!(!report.ok);
    let assoc = report.failures.iter().find(|f| f.axiom == Axiom::Associativity).unwrap();
    assert_eq!(assoc.witness.len(), 3);
    assert!(chain_frame(0).validate().ok);
}

#[test]
fn residual_radical_omega() {
    let z8 = zn(8);
    assert_eq!(derived::residual(&z8, e(&z8, "(4)"), e(&z8, "(2)")), e(&z8, "(2)"));
    let z24 = zn(24);
    assert_eq!(derived::radical(&z24, e(&z24, "(4)")), e(&z24, "(2)"));
    assert_eq!(derived::radical(&z24, z24.bottom()), e(&z24, "(6)"));
    assert_eq!(derived::omega_power(&z24, e(&z24, "(2)")), e(&z24, "(8)"));
    let z30 = zn(30);
    assert_eq!(derived::omega_power(&z30, e(&z30, "(6)")), e(&z30, "(6)"));
    for l in [&z8, &z24, &z30] {
        let t = l.top();
        assert_eq!(derived::radical(l, t), t);
        assert_eq!(derived::omega_power(l, t), t);
        for a in l.elements() {
            assert_eq!(derived::residual(l, a, t), a);
            assert_eq!(derived::residual(l, t, a), t);
        }
    }
}

#[test]
fn element_and_structure_profiles() {
    let z30 = zn(30);
    let p = derived::element_profile(&z30, e(&z30, "(6)"));
    assert!(p.idempotent && !p.nilpotent);
    let z8 = zn(8);
    let p = derived::element_profile(&z8, e(&z8, "(4)"));
    assert!(!p.idempotent && p.nilpotent && p.zero_divisor);
    let top = derived::element_profile(&z8, z8.top());
    assert!(top.idempotent && !top.nilpotent);

    let s = derived::structure_profile(&z8);
    assert!(s.modular && s.quasi_local);
    assert_eq!(s.maximal_elements, vec![e(&z8, "(2)")]);
    let s = derived::structure_profile(&z30);
    assert!(!s.quasi_local);
    assert_eq!(s.maximal_elements.len(), 3);
    let s = derived::structure_profile(&chain_frame(1));
    assert!(s.domain && s.local_noether);
}

#[test]
fn delta_and_phi_tables() {
    let z24 = zn(24);
    let d1 = make_delta(&z24, DeltaKind::Radical).unwrap();
    assert_eq!(d1.apply(e(&z24, "(4)")), e(&z24, "(2)"));
    let d0 = make_delta(&z24, DeltaKind::Identity).unwrap();
    assert!(z24.elements().all(|a| d0.apply(a) == a));

    let z8 = zn(8);
    let mut table: Vec<ElementId> = z8.elements().collect();
    table[e(&z8, "(2)").index()] = z8.bottom();
    let err = make_delta(&z8, DeltaKind::Table { tag: "t".into(), table }).unwrap_err();
    assert_eq!(err, MapError::NotInflationary { element: "(2)".into(), image: "(0)".into() });

    let phi2 = make_phi(&z24, PhiKind::Power(2)).unwrap();
    assert_eq!(phi2.apply(e(&z24, "(4)")), e(&z24, "(8)"));
    let z30 = zn(30);
    let w = make_phi(&z30, PhiKind::Omega).unwrap();
    assert_eq!(w.apply(e(&z30, "(6)")), e(&z30, "(6)"));
    let phi0 = make_phi(&z30, PhiKind::Zero).unwrap();
    assert!(z30.elements().all(|a| phi0.apply(a) == z30.bottom()));
    assert_eq!(make_phi(&z30, PhiKind::Power(1)).unwrap_err(), MapError::InvalidPower(1));
}

#[test]
fn map_order() {
    let z24 = zn(24);
    let phi = |k| make_phi(&z24, k).unwrap();
    let (p0, p1, p2) = (phi(PhiKind::Zero), phi(PhiKind::Identity), phi(PhiKind::Power(2)));
    assert!(maps::map_leq(p0.as_map(), p2.as_map()).unwrap());
    assert!(maps::map_leq(p2.as_map(), p1.as_map()).unwrap());
    assert!(!maps::map_leq(p1.as_map(), p2.as_map()).unwrap());
    assert_eq!(maps::map_leq_witness(p1.as_map(), p2.as_map()).unwrap(), Some(e(&z24, "(2)")));
    let z8 = zn(8);
    assert_eq!(
        maps::map_leq(p0.as_map(), make_phi(&z8, PhiKind::Zero).unwrap().as_map()),
        Err(MapError::LatticeMismatch)
    );
}

#[test]
fn isomorphisms_and_global_property() {
    let (z8, z27, z30) = (zn(8), zn(27), zn(30));
    let isos = maps::enumerate_isomorphisms(&z8, &z27);
    assert_eq!(isos.len(), 1);
    let f = &isos[0];
    for (a, b) in [("(0)", "(0)"), ("(2)", "(3)"), ("(4)", "(9)"), ("(1)", "(1)")] {
        assert_eq!(f.apply(e(&z8, a)), e(&z27, b));
    }
    assert!(maps::enumerate_isomorphisms(&z8, &z30).is_empty());
    assert!(maps::enumerate_isomorphisms(&z30, &z30).iter().any(Isomorphism::is_identity));
    // the three atoms of Z30 can be permuted freely
    assert_eq!(maps::enumerate_isomorphisms(&z30, &z30).len(), 6);

    let d1s = make_delta(&z8, DeltaKind::Radical).unwrap();
    let d1t = make_delta(&z27, DeltaKind::Radical).unwrap();
    let d0t = make_delta(&z27, DeltaKind::Identity).unwrap();
    assert!(maps::check_global_property(f, d1s.as_map(), d1t.as_map()).unwrap());
    assert_eq!(maps::global_property_witness(f, d1s.as_map(), d0t.as_map()).unwrap(), Some(z27.bottom()));
    let id = Isomorphism::new(z30.clone(), z30.clone(), z30.elements().collect()).unwrap();
    let p2 = make_phi(&z30, PhiKind::Power(2)).unwrap();
    assert!(maps::check_global_property(&id, p2.as_map(), p2.as_map()).unwrap());
    let swapped = vec![z8.top(), z8.bottom(), e(&z8, "(4)"), e(&z8, "(2)")];
    assert!(Isomorphism::new(z8.clone(), z8.clone(), swapped).is_err());
}

#[test]
fn classifier_examples() {
    let z24 = zn(24);
    let (d0, d1) = (make_delta(&z24, DeltaKind::Identity).unwrap(), make_delta(&z24, DeltaKind::Radical).unwrap());
    let phi2 = make_phi(&z24, PhiKind::Power(2)).unwrap();
    let four = e(&z24, "(4)");
    assert!(classify::is_prime(&z24, e(&z24, "(3)")).unwrap());
    assert!(classify::is_phi_delta_primary(&z24, &d1, &phi2, four).unwrap());
    assert!(!classify::is_phi_prime(&z24, &phi2, four).unwrap());
    let pairs = Class::PhiDeltaPrimary(&d0, &phi2).violations(&z24, four).unwrap();
    assert!(pairs.contains(&(e(&z24, "(2)"), e(&z24, "(6)"))));
    assert!(classify::residual_characterization_a(&z24, &d1, &phi2, four).unwrap());

    let z8 = zn(8);
    let (d0, d1) = (make_delta(&z8, DeltaKind::Identity).unwrap(), make_delta(&z8, DeltaKind::Radical).unwrap());
    let phi2 = make_phi(&z8, PhiKind::Power(2)).unwrap();
    let (two, four) = (e(&z8, "(2)"), e(&z8, "(4)"));
    assert_eq!(Class::Prime.witness(&z8, four).unwrap(), Some((two, two)));
    assert!(classify::is_primary(&z8, four).unwrap());
    assert!(classify::is_delta_primary(&z8, &d1, four).unwrap());
    assert!(classify::is_phi_primary(&z8, &phi2, four).unwrap());
    assert!(classify::is_n_potent_delta_primary(&z8, &d0, four, 2).unwrap());
    assert!(classify::residual_characterization_a(&z8, &d1, &phi2, four).unwrap());
    assert!(classify::residual_characterization_b(&z8, &d1, &phi2, four).unwrap());
    assert!(classify::is_prime(&z8, z8.top()).is_err());
    assert!(classify::is_n_potent_delta_primary(&z8, &d0, four, 1).is_err());

    let z30 = zn(30);
    let (d0, d1) = (make_delta(&z30, DeltaKind::Identity).unwrap(), make_delta(&z30, DeltaKind::Radical).unwrap());
    let phi2 = make_phi(&z30, PhiKind::Power(2)).unwrap();
    let six = e(&z30, "(6)");
    let pair = Some((e(&z30, "(2)"), e(&z30, "(3)")));
    assert_eq!(Class::DeltaPrimary(&d1).witness(&z30, six).unwrap(), pair);
    assert_eq!(Class::PotentDeltaPrimary(&d0, 2).witness(&z30, six).unwrap(), pair);
    assert!(classify::is_phi_delta_primary(&z30, &d1, &phi2, six).unwrap());
    assert!(classify::residual_characterization_b(&z30, &d1, &phi2, six).unwrap());
}

#[test]
fn classification_reports() {
    let z24 = zn(24);
    let r = classification_report(
        &z24,
        &make_delta(&z24, DeltaKind::Radical).unwrap(),
        &make_phi(&z24, PhiKind::Power(2)).unwrap(),
    )
    .unwrap();
    assert_eq!(r.records.len(), 7);
    let rec = r.record("(4)").unwrap();
    assert_eq!(rec.holds("phi_delta_primary"), Some(true));
    assert_eq!(rec.holds("phi_prime"), Some(false));
    assert_eq!(rec.holds("prime"), Some(false));
    assert!(rec.flag("phi_prime").unwrap().witness.is_some());
    assert!(rec.flag("phi_delta_primary").unwrap().witness.is_none());
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["lattice"], "Z24");
    assert_eq!(json["delta"], "d1");
    assert_eq!(json["phi"], "phi2");
    assert!(r.to_table().contains("(4)"));

    let z8 = zn(8);
    let r = classification_report(
        &z8,
        &make_delta(&z8, DeltaKind::Radical).unwrap(),
        &make_phi(&z8, PhiKind::Power(2)).unwrap(),
    )
    .unwrap();
    let rec = r.record("(4)").unwrap();
    assert_eq!(rec.holds("phi_delta_primary"), Some(true));
    assert_eq!(rec.holds("idempotent"), Some(false));

    let z30 = zn(30);
    let r = classification_report(
        &z30,
        &make_delta(&z30, DeltaKind::Radical).unwrap(),
        &make_phi(&z30, PhiKind::Power(2)).unwrap(),
    )
    .unwrap();
    let rec = r.record("(6)").unwrap();
    assert_eq!(rec.holds("phi_delta_primary"), Some(true));
    assert_eq!(rec.holds("delta_primary"), Some(false));
    assert_eq!(rec.holds("two_potent_delta0_primary"), Some(false));
}

#[test]
fn constructions() {
    let labels = |n| zn_ideal_lattice(n).unwrap().labels().join(",");
    assert_eq!(labels(24), "(0),(2),(3),(4),(6),(8),(12),(1)");
    assert_eq!(labels(30), "(0),(2),(3),(5),(6),(10),(15),(1)");
    assert_eq!(labels(8), "(0),(2),(4),(1)");
    assert!(zn_ideal_lattice(1).is_err());

    let c1 = chain_frame(1);
    assert_eq!(c1.size(), 2);
    assert!(chain_frame(0).is_degenerate());
    let b2 = boolean_frame(2).unwrap();
    assert_eq!(b2.size(), 4);
    for a in b2.elements() {
        for b in b2.elements() {
            assert_eq!(b2.mul(a, b), b2.meet(a, b));
        }
    }

    let z8 = zn_ideal_lattice(8).unwrap();
    let text = serialize(&z8);
    assert_eq!(parse_lattice(&text).unwrap(), z8);
    let missing: String = text.lines().filter(|l| !l.contains("mul (2) * (2)")).map(|l| format!("{l}\n")).collect();
    let err = parse_lattice(&missing).unwrap_err();
    assert!(matches!(err, ParseError::MulNotTotal { .. }));
    assert!(err.to_string().starts_with("multiplication not total"));
    let cyclic = "lattice C\nelements 0 a b 1\nbottom 0\ntop 1\ncover 0 < a\ncover a < b\ncover b < a\ncover b < 1\n";
    assert!(matches!(parse_lattice(cyclic).unwrap_err(), ParseError::Antisymmetry { .. }));
}

#[test]
fn corpus_contents() {
    let c = default_corpus();
    assert!(c.get("Z24").is_some());
    assert!(c.lattices().all(|l| l.validate().ok));
    let isos = maps::enumerate_isomorphisms(c.get("Z8").unwrap(), c.get("Z27").unwrap());
    assert_eq!(isos.len(), 1);
}

#[test]
fn builtin_map_names() {
    assert_eq!(DeltaKind::builtin("d1"), Some(DeltaKind::Radical));
    assert_eq!(DeltaKind::builtin("d2"), None);
    assert_eq!(PhiKind::builtin("phi2"), Some(PhiKind::Power(2)));
    assert_eq!(PhiKind::builtin("n:5"), Some(PhiKind::Power(5)));
    assert_eq!(PhiKind::builtin("omega"), Some(PhiKind::Omega));
    assert_eq!(PhiKind::builtin("none"), Some(PhiKind::None));
    assert_eq!(PhiKind::builtin("1"), Some(PhiKind::Identity));
    assert_eq!(PhiKind::builtin("x"), None);
}
