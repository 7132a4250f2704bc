use std::sync::Arc;

use proptest::prelude::*;

use mlattice::classify::{self, Class};
use mlattice::constructions::{boolean_frame, chain_frame, parse_lattice, serialize, zn_ideal_lattice, LatticeDoc};
use mlattice::derived;
use mlattice::maps::{self, make_delta, make_phi, DeltaKind, Expansion, PhiKind, PhiMap};
use mlattice::Lattice;

fn lattices() -> impl Strategy<Value = Arc<Lattice>> {
    prop_oneof![
        4 => (2u64..=120).prop_map(|n| zn_ideal_lattice(n).unwrap()),
        1 => (1usize..=6).prop_map(chain_frame),
        1 => (0usize..=3).prop_map(|k| boolean_frame(k).unwrap()),
    ]
    .prop_map(Arc::new)
}

fn deltas(l: &Arc<Lattice>) -> Vec<Expansion> {
    [DeltaKind::Identity, DeltaKind::Radical].into_iter().map(|k| make_delta(l, k).unwrap()).collect()
}

fn phis(l: &Arc<Lattice>) -> Vec<PhiMap> {
    [
        PhiKind::None,
        PhiKind::Zero,
        PhiKind::Identity,
        PhiKind::Power(2),
        PhiKind::Power(3),
        PhiKind::Power(4),
        PhiKind::Omega,
    ]
    .into_iter()
    .map(|k| make_phi(l, k).unwrap())
    .collect()
}

fn leq_map(a: &maps::UnaryMap, b: &maps::UnaryMap) -> bool {
    maps::map_leq(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(l in lattices()) {
        prop_assert!(l.validate().ok);
        for a in l.elements() {
            for k in 1..6 {
                prop_assert!(l.leq(l.power(a, k + 1).unwrap(), l.power(a, k).unwrap()));
            }
            prop_assert_eq!(l.join(a, a), a);
            prop_assert_eq!(l.meet(a, a), a);
            for b in l.elements() {
                prop_assert!(l.leq(l.mul(a, b), l.meet(a, b)));
                prop_assert_eq!(l.join(a, b), l.join(b, a));
                prop_assert_eq!(l.meet(a, b), l.meet(b, a));
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                for c in l.elements() {
                    prop_assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                    prop_assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
                }
            }
        }
    }

    #[test]
    fn residual_radical_and_powers(l in lattices()) {
        prop_assert_eq!(derived::compact_elements(&l).len(), l.size());
        for a in l.elements() {
            for b in l.elements() {
                let r = derived::residual(&l, a, b);
                prop_assert!(l.leq(l.mul(r, b), a));
                for x in l.elements() {
                    prop_assert_eq!(l.leq(l.mul(x, b), a), l.leq(x, r));
                }
                if l.leq(a, b) {
                    prop_assert!(l.leq(derived::radical(&l, a), derived::radical(&l, b)));
                }
            }
            let ra = derived::radical(&l, a);
            prop_assert!(l.leq(a, ra));
            prop_assert_eq!(derived::radical(&l, ra), ra);
            let w = derived::omega_power(&l, a);
            for k in 1..8 {
                prop_assert!(l.leq(w, l.power(a, k).unwrap()));
            }
        }
    }

    #[test]
    fn map_ordering_chain(l in lattices()) {
        let phi = |k| make_phi(&l, k).unwrap();
        let (p0, p1, pw) = (phi(PhiKind::Zero), phi(PhiKind::Identity), phi(PhiKind::Omega));
        prop_assert!(leq_map(p0.as_map(), pw.as_map()));
        prop_assert!(leq_map(phi(PhiKind::Power(2)).as_map(), p1.as_map()));
        for n in 2..8 {
            let (lo, hi) = (phi(PhiKind::Power(n + 1)), phi(PhiKind::Power(n)));
            prop_assert!(leq_map(pw.as_map(), lo.as_map()));
            prop_assert!(leq_map(lo.as_map(), hi.as_map()));
        }
        for d in deltas(&l) {
            let dd = d.as_map().compose(d.as_map()).unwrap();
            prop_assert_eq!(dd.table(), d.as_map().table());
            for p in l.elements() {
                prop_assert!(l.leq(d.apply(p), d.apply(d.apply(p))));
            }
            for f in phis(&l) {
                prop_assert!(leq_map(f.as_map(), d.as_map()));
            }
        }
    }

    #[test]
    fn characterizations_agree(l in lattices()) {
        for d in deltas(&l) {
            for f in phis(&l) {
                for q in l.proper_elements() {
                    let def = classify::is_phi_delta_primary(&l, &d, &f, q).unwrap();
                    prop_assert_eq!(def, classify::residual_characterization_a(&l, &d, &f, q).unwrap());
                    prop_assert_eq!(def, classify::residual_characterization_b(&l, &d, &f, q).unwrap());
                    prop_assert_eq!(def, classify::compact_pair_form(&l, &d, &f, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn classes_specialize_and_are_monotone(l in lattices()) {
        let ds = deltas(&l);
        let fs = phis(&l);
        for q in l.proper_elements() {
            for f in &fs {
                let pdp = |d: &Expansion| classify::is_phi_delta_primary(&l, d, f, q).unwrap();
                prop_assert_eq!(pdp(&ds[0]), classify::is_phi_prime(&l, f, q).unwrap());
                prop_assert_eq!(pdp(&ds[1]), classify::is_phi_primary(&l, f, q).unwrap());
            }
            for d in &ds {
                let none = &fs[0];
                prop_assert_eq!(
                    classify::is_phi_delta_primary(&l, d, none, q).unwrap(),
                    classify::is_delta_primary(&l, d, q).unwrap()
                );
                for g in &ds {
                    if !leq_map(d.as_map(), g.as_map()) {
                        continue;
                    }
                    for f in &fs {
                        if classify::is_phi_delta_primary(&l, d, f, q).unwrap() {
                            prop_assert!(classify::is_phi_delta_primary(&l, g, f, q).unwrap());
                        }
                    }
                }
                for f1 in &fs {
                    for f2 in &fs {
                        // "none" excludes nothing, so pointwise order says nothing about it
                        if f1.is_none() || f2.is_none() || !leq_map(f1.as_map(), f2.as_map()) {
                            continue;
                        }
                        if classify::is_phi_delta_primary(&l, d, f1, q).unwrap() {
                            prop_assert!(classify::is_phi_delta_primary(&l, d, f2, q).unwrap());
                        }
                    }
                }
            }
            prop_assert_eq!(classify::is_delta_primary(&l, &ds[0], q).unwrap(), classify::is_prime(&l, q).unwrap());
            prop_assert_eq!(classify::is_delta_primary(&l, &ds[1], q).unwrap(), classify::is_primary(&l, q).unwrap());
            if classify::is_prime(&l, q).unwrap() {
                for d in &ds {
                    for f in &fs {
                        prop_assert!(classify::is_phi_delta_primary(&l, d, f, q).unwrap());
                    }
                }
            }
            let w = Class::Prime.witness(&l, q).unwrap();
            prop_assert_eq!(w.is_none(), classify::is_prime(&l, q).unwrap());
        }
    }

    #[test]
    fn prime_power_chains_are_isomorphic(
        (p, r) in prop::sample::select(vec![(2u64, 3u64), (2, 5), (3, 5), (3, 7), (5, 7), (2, 7)]),
        a in 1u32..=4,
    ) {
        let l1 = Arc::new(zn_ideal_lattice(p.pow(a)).unwrap());
        let l2 = Arc::new(zn_ideal_lattice(r.pow(a)).unwrap());
        let isos = maps::enumerate_isomorphisms(&l1, &l2);
        prop_assert_eq!(isos.len(), 1);
        let f = &isos[0];
        for x in l1.elements() {
            prop_assert_eq!(f.apply_inverse(f.apply(x)), x);
        }
        for i in 1..a {
            let x = l1.element(&format!("({})", p.pow(i))).unwrap();
            prop_assert_eq!(l2.label(f.apply(x)), format!("({})", r.pow(i)));
        }
        for y in l2.elements() {
            prop_assert_eq!(f.apply(f.apply_inverse(y)), y);
        }
        let profile = derived::structure_profile(&l1);
        prop_assert!(profile.quasi_local);
        for x in l1.elements() {
            for y in l1.elements() {
                prop_assert!(l1.leq(x, y) || l1.leq(y, x));
            }
        }
    }

    #[test]
    fn automorphisms_invert(l in lattices()) {
        let isos = maps::enumerate_isomorphisms(&l, &l);
        prop_assert!(isos.iter().any(|f| f.is_identity()));
        for f in &isos {
            for x in l.elements() {
                prop_assert_eq!(f.apply_inverse(f.apply(x)), x);
                prop_assert_eq!(f.apply(f.apply_inverse(x)), x);
            }
        }
    }

    #[test]
    fn text_and_json_round_trip(l in lattices()) {
        let back = parse_lattice(&serialize(&l)).unwrap();
        prop_assert_eq!(&back, l.as_ref());
        let json = serde_json::to_string(&LatticeDoc::from_lattice(&l)).unwrap();
        let doc: LatticeDoc = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&doc.to_lattice().unwrap(), l.as_ref());
    }
}
