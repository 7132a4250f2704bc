//! The theorem registry.
//!
//! Results that lean on cited external facts carry those facts as explicit
//! hypotheses (the Krull intersection property, restricted cancellation)
//! instead of trusting them.

use crate::derived;
use crate::lattice::ElementId;
use crate::maps::{self, Expansion, Isomorphism, PhiMap};

use super::{Binding, HarnessCtx, LatticeCtx, TheoremProperty, Verdict, D0, D1, PHI0, PHI2, PHI3, PHI_OMEGA};

#[derive(Clone, Copy)]
enum Range {
    Proper,
    All,
}

#[derive(Clone, Copy, Default)]
struct Axes {
    delta: bool,
    gamma: bool,
    phi: bool,
    phi2: bool,
    k: bool,
    elems: &'static [(&'static str, Range)],
}

const P: &[(&str, Range)] = &[("p", Range::Proper)];
const Q: &[(&str, Range)] = &[("q", Range::Proper)];

/// Cartesian product of the requested axes over every lattice.
fn product(ctx: &HarnessCtx, axes: Axes) -> Vec<Binding> {
    let mut out = Vec::new();
    for (li, lc) in ctx.lattices.iter().enumerate() {
        let mut partial = vec![Binding { lattice: li, ..Binding::default() }];
        let expand = |partial: Vec<Binding>, n: usize, set: fn(&mut Binding, usize)| -> Vec<Binding> {
            partial
                .into_iter()
                .flat_map(|b| {
                    (0..n).map(move |i| {
                        let mut b = b.clone();
                        set(&mut b, i);
                        b
                    })
                })
                .collect()
        };
        if axes.delta {
            partial = expand(partial, lc.deltas.len(), |b, i| b.delta = Some(i));
        }
        if axes.gamma {
            partial = expand(partial, lc.deltas.len(), |b, i| b.gamma = Some(i));
        }
        if axes.phi {
            partial = expand(partial, lc.phis.len(), |b, i| b.phi = Some(i));
        }
        if axes.phi2 {
            partial = expand(partial, lc.phis.len(), |b, i| b.phi2 = Some(i));
        }
        if axes.k {
            partial = expand(partial, (lc.max_power - 1) as usize, |b, i| b.k = Some(i as u32 + 2));
        }
        for &(role, range) in axes.elems {
            let members: Vec<ElementId> = match range {
                Range::Proper => lc.l().proper_elements().collect(),
                Range::All => lc.l().elements().collect(),
            };
            partial = partial
                .into_iter()
                .flat_map(|b| {
                    members.iter().map(move |&e| {
                        let mut b = b.clone();
                        b.elements.push((role, e));
                        b
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

fn lc<'a>(ctx: &'a HarnessCtx, b: &Binding) -> &'a LatticeCtx {
    &ctx.lattices[b.lattice]
}

fn delta<'a>(lc: &'a LatticeCtx, b: &Binding) -> &'a Expansion {
    &lc.deltas[b.delta.expect("binding has delta")]
}

fn phi<'a>(lc: &'a LatticeCtx, b: &Binding) -> &'a PhiMap {
    &lc.phis[b.phi.expect("binding has phi")]
}

fn leq_maps(f: &PhiMap, g: &PhiMap) -> bool {
    maps::map_leq(f.as_map(), g.as_map()).expect("same lattice")
}

fn check(ok: bool, clause: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(clause())
    }
}

fn iff(lhs: bool, rhs: bool, what: &str) -> Verdict {
    check(lhs == rhs, || format!("{what}: {lhs} vs {rhs}"))
}

// ---------------------------------------------------------------------------

fn t01() -> TheoremProperty {
    TheoremProperty {
        id: "T01",
        description: "phi-d0-primary iff phi-prime",
        binding: &["L", "phi", "p"],
        enumerate: |ctx| product(ctx, Axes { phi: true, elems: P, ..Axes::default() }),
        hypothesis: |_, _| true,
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (f, p) = (phi(lc, b), b.el("p"));
            iff(lc.pdp(&lc.deltas[D0], f, p), lc.phi_prime(f, p), "phi-d0-primary vs phi-prime")
        },
    }
}

fn t02() -> TheoremProperty {
    TheoremProperty {
        id: "T02",
        description: "phi-d1-primary iff phi-primary",
        binding: &["L", "phi", "p"],
        enumerate: |ctx| product(ctx, Axes { phi: true, elems: P, ..Axes::default() }),
        hypothesis: |_, _| true,
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (f, p) = (phi(lc, b), b.el("p"));
            iff(lc.pdp(&lc.deltas[D1], f, p), lc.phi_primary(f, p), "phi-d1-primary vs phi-primary")
        },
    }
}

fn t03() -> TheoremProperty {
    TheoremProperty {
        id: "T03",
        description: "delta <= gamma: phi-delta-primary implies phi-gamma-primary",
        binding: &["L", "delta", "gamma", "phi", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, gamma: true, phi: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let gamma = &lc.deltas[b.gamma.unwrap()];
            maps::map_leq(delta(lc, b).as_map(), gamma.as_map()).unwrap() && lc.pdp(delta(lc, b), phi(lc, b), b.el("p"))
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let gamma = &lc.deltas[b.gamma.unwrap()];
            check(lc.pdp(gamma, phi(lc, b), b.el("p")), || "not phi-gamma-primary".into())
        },
    }
}

fn t04() -> TheoremProperty {
    TheoremProperty {
        id: "T04",
        description: "prime (and phi-prime) elements are phi-delta-primary for every delta",
        binding: &["L", "delta", "phi", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let p = b.el("p");
            lc.prime(p) || lc.phi_prime(phi(lc, b), p)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            check(lc.pdp(delta(lc, b), phi(lc, b), b.el("p")), || "prime or phi-prime but not phi-delta-primary".into())
        },
    }
}

fn t05() -> TheoremProperty {
    TheoremProperty {
        id: "T05",
        description: "definition iff (q:a) in {q, (phi(q):a)} for a not below delta(q) iff compact-pair form",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |_, _| true,
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f, q) = (delta(lc, b), phi(lc, b), b.el("q"));
            let def = lc.pdp(d, f, q);
            let char_a = crate::classify::residual_characterization_a(lc.l(), d, f, q).unwrap();
            let compact = crate::classify::compact_pair_form(lc.l(), d, f, q).unwrap();
            iff(def, char_a, "definition vs residual form A")?;
            iff(def, compact, "definition vs compact-pair form")
        },
    }
}

fn t06() -> TheoremProperty {
    TheoremProperty {
        id: "T06",
        description: "definition iff (q:a) <= delta(q) or (q:a) = (phi(q):a) for a not below q",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |_, _| true,
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f, q) = (delta(lc, b), phi(lc, b), b.el("q"));
            let char_b = crate::classify::residual_characterization_b(lc.l(), d, f, q).unwrap();
            iff(lc.pdp(d, f, q), char_b, "definition vs residual form B")
        },
    }
}

fn t07() -> TheoremProperty {
    TheoremProperty {
        id: "T07",
        description: "quasi-local Noether (L, m), p^2 = m^2 <= p <= m: p is phi2-d1-primary",
        binding: &["L", "m", "p"],
        enumerate: |ctx| product(ctx, Axes { elems: &[("m", Range::Proper), ("p", Range::Proper)], ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let l = lc.l();
            let (m, p) = (b.el("m"), b.el("p"));
            lc.profile.quasi_local
                && lc.profile.noether
                && lc.profile.maximal_elements == [m]
                && l.square(p) == l.square(m)
                && l.leq(l.square(m), p)
                && l.leq(p, m)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            check(lc.pdp(&lc.deltas[D1], &lc.phis[PHI2], b.el("p")), || "not phi2-d1-primary".into())
        },
    }
}

fn t08() -> TheoremProperty {
    TheoremProperty {
        id: "T08",
        description: "gamma1 <= gamma2: gamma1-delta-primary implies gamma2-delta-primary",
        binding: &["L", "delta", "gamma1", "gamma2", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, phi2: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let g2 = &lc.phis[b.phi2.unwrap()];
            leq_maps(phi(lc, b), g2) && lc.pdp(delta(lc, b), phi(lc, b), b.el("p"))
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let g2 = &lc.phis[b.phi2.unwrap()];
            check(lc.pdp(delta(lc, b), g2, b.el("p")), || "not gamma2-delta-primary".into())
        },
    }
}

/// Statements (a)..(f) of the implication chain at exponent `n`.
fn chain_statements(lc: &LatticeCtx, d: &Expansion, p: ElementId, n: u32) -> [bool; 6] {
    [
        lc.delta_primary(d, p),
        lc.pdp(d, &lc.phis[PHI0], p),
        lc.pdp(d, &lc.phis[PHI_OMEGA], p),
        lc.pdp(d, lc.power_phi(n + 1), p),
        lc.pdp(d, lc.power_phi(n), p),
        lc.pdp(d, &lc.phis[PHI2], p),
    ]
}

fn t09() -> TheoremProperty {
    TheoremProperty {
        id: "T09",
        description: "delta-primary => phi0 => phi_omega => phi_(n+1) => phi_n => phi2 (-delta-primary)",
        binding: &["L", "delta", "p", "n"],
        enumerate: |ctx| product(ctx, Axes { delta: true, k: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            chain_statements(lc, delta(lc, b), b.el("p"), b.k.unwrap())[..5].iter().any(|&s| s)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let s = chain_statements(lc, delta(lc, b), b.el("p"), b.k.unwrap());
            const NAMES: [&str; 6] = ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)"];
            for i in 0..5 {
                if s[i] && !s[i + 1] {
                    return Err(format!("{} holds but {} fails", NAMES[i], NAMES[i + 1]));
                }
            }
            Ok(())
        },
    }
}

fn t10() -> TheoremProperty {
    TheoremProperty {
        id: "T10",
        description: "phi_omega-delta-primary iff phi_n-delta-primary for every n >= 2",
        binding: &["L", "delta", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, elems: P, ..Axes::default() }),
        hypothesis: |_, _| true,
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, p) = (delta(lc, b), b.el("p"));
            iff(lc.pdp(d, &lc.phis[PHI_OMEGA], p), lc.pdp_all_powers(d, p), "phi_omega vs all phi_n")
        },
    }
}

fn t11() -> TheoremProperty {
    TheoremProperty {
        id: "T11",
        description: "local Noetherian domain (with Krull intersection): all phi_n-delta-primary iff delta-primary",
        binding: &["L", "delta", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let pr = &lc(ctx, b).profile;
            pr.local_noether && pr.domain && pr.krull
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, p) = (delta(lc, b), b.el("p"));
            let dp = lc.delta_primary(d, p);
            iff(lc.pdp_all_powers(d, p), dp, "all phi_n vs delta-primary")?;
            iff(lc.pdp(d, &lc.phis[PHI_OMEGA], p), dp, "phi_omega vs delta-primary")
        },
    }
}

fn t12() -> TheoremProperty {
    TheoremProperty {
        id: "T12",
        description: "Noether, q nonzero non-nilpotent with restricted cancellation: phi-delta-primary for some phi <= phi2 (or <= phi_n for all n) implies delta-primary",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let l = lc.l();
            let q = b.el("q");
            if !(lc.profile.noether
                && q != l.bottom()
                && !derived::is_nilpotent(l, q)
                && derived::satisfies_restricted_cancellation(l, q))
            {
                return false;
            }
            let (d, f) = (delta(lc, b), phi(lc, b));
            (leq_maps(f, &lc.phis[PHI2]) && lc.pdp(d, f, q)) || lc.pdp_all_powers(d, q)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            check(lc.delta_primary(delta(lc, b), b.el("q")), || "not delta-primary".into())
        },
    }
}

fn t13() -> TheoremProperty {
    TheoremProperty {
        id: "T13",
        description: "q 2-potent delta-primary (or 2-potent d0-primary), phi <= phi2, phi-delta-primary: delta-primary",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f, q) = (delta(lc, b), phi(lc, b), b.el("q"));
            (lc.potent(d, q, 2) || lc.potent(&lc.deltas[D0], q, 2)) && leq_maps(f, &lc.phis[PHI2]) && lc.pdp(d, f, q)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, q) = (delta(lc, b), b.el("q"));
            if lc.potent(&lc.deltas[D0], q, 2) && !lc.potent(d, q, 2) {
                return Err("2-potent d0-primary but not 2-potent delta-primary".into());
            }
            check(lc.delta_primary(d, q), || "not delta-primary".into())
        },
    }
}

fn t14() -> TheoremProperty {
    TheoremProperty {
        id: "T14",
        description: "q k-potent delta-primary for some k <= n, phi <= phi_n, phi-delta-primary: delta-primary",
        binding: &["L", "delta", "phi", "q", "n"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, k: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f, q, n) = (delta(lc, b), phi(lc, b), b.el("q"), b.k.unwrap());
            leq_maps(f, lc.power_phi(n)) && lc.pdp(d, f, q) && (2..=n).any(|k| lc.potent(d, q, k))
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            check(lc.delta_primary(delta(lc, b), b.el("q")), || "not delta-primary".into())
        },
    }
}

fn t15() -> TheoremProperty {
    TheoremProperty {
        id: "T15",
        description: "phi-delta-primary with q^2 not below phi(q): delta-primary",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (f, q) = (phi(lc, b), b.el("q"));
            !lc.l().leq(lc.l().square(q), f.apply(q)) && lc.pdp(delta(lc, b), f, q)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            check(lc.delta_primary(delta(lc, b), b.el("q")), || "not delta-primary".into())
        },
    }
}

/// φ-δ-primary but not δ-primary.
fn strictly_pdp(lc: &LatticeCtx, b: &Binding, q: ElementId) -> bool {
    lc.pdp(delta(lc, b), phi(lc, b), q) && !lc.delta_primary(delta(lc, b), q)
}

fn t16() -> TheoremProperty {
    TheoremProperty {
        id: "T16",
        description: "phi-delta-primary but not delta-primary: q^2 <= phi(q)",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| strictly_pdp(lc(ctx, b), b, b.el("q")),
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let q = b.el("q");
            check(lc.l().leq(lc.l().square(q), phi(lc, b).apply(q)), || "q^2 not below phi(q)".into())
        },
    }
}

fn t17() -> TheoremProperty {
    TheoremProperty {
        id: "T17",
        description: "phi-delta-primary but not delta-primary: d1(q) = d1(phi(q))",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| strictly_pdp(lc(ctx, b), b, b.el("q")),
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let q = b.el("q");
            check(lc.radical(q) == lc.radical(phi(lc, b).apply(q)), || "d1(q) != d1(phi(q))".into())
        },
    }
}

fn t18() -> TheoremProperty {
    TheoremProperty {
        id: "T18",
        description:
            "phi <= phi3 and phi-delta-primary: phi_n-delta-primary for all n >= 2 and phi_omega-delta-primary",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            leq_maps(phi(lc, b), &lc.phis[PHI3]) && lc.pdp(delta(lc, b), phi(lc, b), b.el("q"))
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, q) = (delta(lc, b), b.el("q"));
            check(lc.pdp_all_powers(d, q), || "some phi_n fails".into())?;
            check(lc.pdp(d, &lc.phis[PHI_OMEGA], q), || "phi_omega fails".into())
        },
    }
}

fn t19() -> TheoremProperty {
    TheoremProperty {
        id: "T19",
        description: "phi0-delta-primary but not delta-primary: q^2 = 0",
        binding: &["L", "delta", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, q) = (delta(lc, b), b.el("q"));
            lc.pdp(d, &lc.phis[PHI0], q) && !lc.delta_primary(d, q)
        },
        conclusion: |ctx, b| {
            let l = lc(ctx, b).l();
            check(l.square(b.el("q")) == l.bottom(), || "q^2 != 0".into())
        },
    }
}

fn t20() -> TheoremProperty {
    TheoremProperty {
        id: "T20",
        description: "phi-delta-primary q with delta-primary phi(q): q is delta-primary",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f, q) = (delta(lc, b), phi(lc, b), b.el("q"));
            let fq = f.apply(q);
            lc.l().is_proper(fq) && lc.pdp(d, f, q) && lc.delta_primary(d, fq)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            check(lc.delta_primary(delta(lc, b), b.el("q")), || "not delta-primary".into())
        },
    }
}

/// Every nonempty totally ordered subset of `members`.
fn chains(lc: &LatticeCtx, members: &[ElementId]) -> Vec<Vec<ElementId>> {
    fn grow(
        lc: &LatticeCtx,
        members: &[ElementId],
        start: usize,
        current: &mut Vec<ElementId>,
        out: &mut Vec<Vec<ElementId>>,
    ) {
        for i in start..members.len() {
            let e = members[i];
            let l = lc.l();
            if current.iter().all(|&c| l.leq(c, e) || l.leq(e, c)) {
                current.push(e);
                out.push(current.clone());
                grow(lc, members, i + 1, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(lc, members, 0, &mut Vec::new(), &mut out);
    out
}

fn t21() -> TheoremProperty {
    TheoremProperty {
        id: "T21",
        description: "join of a chain of phi-delta-primary elements is phi-delta-primary (phi monotone)",
        binding: &["L", "delta", "phi", "chain"],
        enumerate: |ctx| {
            let mut out = Vec::new();
            for base in product(ctx, Axes { delta: true, phi: true, ..Axes::default() }) {
                let lc = &ctx.lattices[base.lattice];
                let (d, f) = (delta(lc, &base), phi(lc, &base));
                let members: Vec<ElementId> = lc.l().proper_elements().filter(|&p| lc.pdp(d, f, p)).collect();
                for chain in chains(lc, &members) {
                    let mut b = base.clone();
                    b.elements = chain.into_iter().map(|e| ("chain", e)).collect();
                    out.push(b);
                }
            }
            out
        },
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f) = (delta(lc, b), phi(lc, b));
            f.as_map().is_monotone()
                && b.all("chain").all(|p| lc.pdp(d, f, p))
                && lc.l().is_proper(lc.l().join_all(b.all("chain")))
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let join = lc.l().join_all(b.all("chain"));
            check(lc.pdp(delta(lc, b), phi(lc, b), join), || {
                format!("join {} is not phi-delta-primary", lc.l().label(join))
            })
        },
    }
}

fn t22() -> TheoremProperty {
    TheoremProperty {
        id: "T22",
        description: "p phi-delta-primary and (phi(p):q) <= phi((p:q)): (p:q) is phi-delta-primary",
        binding: &["L", "delta", "phi", "p", "q"],
        enumerate: |ctx| {
            product(
                ctx,
                Axes { delta: true, phi: true, elems: &[("p", Range::Proper), ("q", Range::All)], ..Axes::default() },
            )
        },
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let l = lc.l();
            let (f, p, q) = (phi(lc, b), b.el("p"), b.el("q"));
            let pq = derived::residual(l, p, q);
            l.is_proper(pq) && l.leq(derived::residual(l, f.apply(p), q), f.apply(pq)) && lc.pdp(delta(lc, b), f, p)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let pq = derived::residual(lc.l(), b.el("p"), b.el("q"));
            check(lc.pdp(delta(lc, b), phi(lc, b), pq), || "(p:q) is not phi-delta-primary".into())
        },
    }
}

fn t23() -> TheoremProperty {
    TheoremProperty {
        id: "T23",
        description:
            "phi-delta-primary with d1(phi(p)) <= delta(p): d1(p) <= delta(p), with equality when delta(p) <= d1(p)",
        binding: &["L", "delta", "phi", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, f, p) = (delta(lc, b), phi(lc, b), b.el("p"));
            lc.l().leq(lc.radical(f.apply(p)), d.apply(p)) && lc.pdp(d, f, p)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let l = lc.l();
            let (dp, rp) = (delta(lc, b).apply(b.el("p")), lc.radical(b.el("p")));
            check(l.leq(rp, dp), || "d1(p) not below delta(p)".into())?;
            check(!l.leq(dp, rp) || dp == rp, || "delta(p) <= d1(p) but not equal".into())
        },
    }
}

fn t24() -> TheoremProperty {
    TheoremProperty {
        id: "T24",
        description: "delta a multiplicative lattice automorphism commuting with phi, q phi-delta-primary, delta(delta(q)) <= delta(q): delta(q) is phi-prime",
        binding: &["L", "delta", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { delta: true, phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let l = lc.l();
            let (d, f, q) = (delta(lc, b), phi(lc, b), b.el("q"));
            let Some(g) = Isomorphism::from_self_map(d.as_map()) else {
                return false;
            };
            maps::check_global_property(&g, f.as_map(), f.as_map()).unwrap()
                && l.leq(d.apply(d.apply(q)), d.apply(q))
                && l.is_proper(d.apply(q))
                && lc.pdp(d, f, q)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let dq = delta(lc, b).apply(b.el("q"));
            check(lc.phi_prime(phi(lc, b), dq), || "delta(q) is not phi-prime".into())
        },
    }
}

fn t25() -> TheoremProperty {
    TheoremProperty {
        id: "T25",
        description: "q phi-d1-primary with d1(phi(q)) = phi(d1(q)): d1(q) is phi-prime",
        binding: &["L", "phi", "q"],
        enumerate: |ctx| product(ctx, Axes { phi: true, elems: Q, ..Axes::default() }),
        hypothesis: |ctx, b| {
            let lc = lc(ctx, b);
            let (f, q) = (phi(lc, b), b.el("q"));
            let rq = lc.radical(q);
            lc.l().is_proper(rq) && lc.radical(f.apply(q)) == f.apply(rq) && lc.pdp(&lc.deltas[D1], f, q)
        },
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let rq = lc.radical(b.el("q"));
            check(lc.phi_prime(phi(lc, b), rq), || "d1(q) is not phi-prime".into())
        },
    }
}

/// δ and φ of the binding on the target lattice of its isomorphism:
/// builtin maps are taken intrinsically, user maps are transported.
fn target_maps<'a>(ctx: &'a HarnessCtx, b: &Binding) -> (Expansion, PhiMap, &'a Isomorphism) {
    let (src, tgt) = (&ctx.lattices[b.lattice], &ctx.lattices[b.target.unwrap()]);
    let group = ctx
        .isomorphisms
        .iter()
        .find(|g| g.source == b.lattice && g.target == b.target.unwrap())
        .expect("binding refers to an isomorphism group");
    let f = &group.isos[b.iso.unwrap()];
    let (di, fi) = (b.delta.unwrap(), b.phi.unwrap());
    let d = if di < super::BUILTIN_DELTAS {
        tgt.deltas[di].clone()
    } else {
        Expansion::try_from_map(f.transport(src.deltas[di].as_map()).unwrap()).unwrap()
    };
    let p = if fi < super::BUILTIN_PHIS {
        tgt.phis[fi].clone()
    } else {
        PhiMap::normalized(&f.transport(src.phis[fi].as_map()).unwrap())
    };
    (d, p, f)
}

fn t26() -> TheoremProperty {
    TheoremProperty {
        id: "T26",
        description:
            "delta and phi with the global property, f an isomorphism: a phi-delta-primary iff f(a) phi-delta-primary",
        binding: &["L1", "L2", "f", "delta", "phi", "a"],
        enumerate: |ctx| {
            let mut out = Vec::new();
            for group in &ctx.isomorphisms {
                let src = &ctx.lattices[group.source];
                for iso in 0..group.isos.len() {
                    for d in 0..src.deltas.len() {
                        for f in 0..src.phis.len() {
                            for a in src.l().proper_elements() {
                                out.push(Binding {
                                    lattice: group.source,
                                    target: Some(group.target),
                                    iso: Some(iso),
                                    delta: Some(d),
                                    phi: Some(f),
                                    elements: vec![("a", a)],
                                    ..Binding::default()
                                });
                            }
                        }
                    }
                }
            }
            out
        },
        hypothesis: |ctx, b| {
            let src = &ctx.lattices[b.lattice];
            let (d, p, f) = target_maps(ctx, b);
            maps::check_global_property(f, delta(src, b).as_map(), d.as_map()).unwrap()
                && maps::check_global_property(f, phi(src, b).as_map(), p.as_map()).unwrap()
        },
        conclusion: |ctx, b| {
            let (src, tgt) = (&ctx.lattices[b.lattice], &ctx.lattices[b.target.unwrap()]);
            let (d, p, f) = target_maps(ctx, b);
            let a = b.el("a");
            // forward commutation follows from the global property
            for x in src.l().elements() {
                if f.apply(delta(src, b).apply(x)) != d.apply(f.apply(x))
                    || f.apply(phi(src, b).apply(x)) != p.apply(f.apply(x))
                {
                    return Err(format!("f does not commute with the maps at {}", src.l().label(x)));
                }
            }
            iff(src.pdp(delta(src, b), phi(src, b), a), tgt.pdp(&d, &p, f.apply(a)), "a vs f(a)")
        },
    }
}

fn t27() -> TheoremProperty {
    TheoremProperty {
        id: "T27",
        description: "idempotent elements are phi_omega-, phi_n- and phi2-delta-primary",
        binding: &["L", "delta", "p"],
        enumerate: |ctx| product(ctx, Axes { delta: true, elems: P, ..Axes::default() }),
        hypothesis: |ctx, b| derived::is_idempotent(lc(ctx, b).l(), b.el("p")),
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let (d, p) = (delta(lc, b), b.el("p"));
            check(lc.pdp(d, &lc.phis[PHI_OMEGA], p), || "not phi_omega-delta-primary".into())?;
            check(lc.pdp_all_powers(d, p), || "some phi_n fails".into())?;
            check(lc.pdp(d, &lc.phis[PHI2], p), || "not phi2-delta-primary".into())
        },
    }
}

/// (lattice, element) pairs of the worked examples.
const GOLDEN: [(&str, &str); 3] = [("Z24", "(4)"), ("Z30", "(6)"), ("Z8", "(4)")];

fn t28() -> TheoremProperty {
    TheoremProperty {
        id: "T28",
        description: "worked examples: Z24 (4), Z30 (6), Z8 (4) separate the classes as stated",
        binding: &["L", "p"],
        enumerate: |ctx| {
            let mut out = Vec::new();
            for (name, label) in GOLDEN {
                for (li, lc) in ctx.lattices.iter().enumerate() {
                    if lc.l().name() != name {
                        continue;
                    }
                    if let Some(p) = lc.l().element(label) {
                        out.push(Binding {
                            lattice: li,
                            delta: Some(D1),
                            phi: Some(PHI2),
                            elements: vec![("p", p)],
                            ..Binding::default()
                        });
                    }
                }
            }
            out
        },
        hypothesis: |_, _| true,
        conclusion: |ctx, b| {
            let lc = lc(ctx, b);
            let l = lc.l();
            let p = b.el("p");
            let (d1, phi2, d0) = (&lc.deltas[D1], &lc.phis[PHI2], &lc.deltas[D0]);
            check(lc.pdp(d1, phi2, p), || "not phi2-d1-primary".into())?;
            match l.name() {
                "Z24" => {
                    check(!lc.phi_prime(phi2, p), || "(4) is phi2-prime".into())?;
                    check(!lc.prime(p), || "(4) is prime".into())?;
                    let (two, six) = (l.element("(2)").unwrap(), l.element("(6)").unwrap());
                    let violations = crate::classify::Class::PhiPrime(phi2).violations(l, p).unwrap();
                    check(violations.contains(&(two, six)), || {
                        "((2),(6)) does not violate phi2-primeness of (4)".into()
                    })
                }
                "Z30" => {
                    check(!lc.delta_primary(d1, p), || "(6) is d1-primary".into())?;
                    check(!lc.potent(d0, p, 2), || "(6) is 2-potent d0-primary".into())
                }
                "Z8" => {
                    check(!derived::is_idempotent(l, p), || "(4) is idempotent".into())?;
                    check(lc.potent(d0, p, 2), || "(4) is not 2-potent d0-primary".into())?;
                    check(!lc.prime(p), || "(4) is prime".into())
                }
                other => Err(format!("no worked example for {other}")),
            }
        },
    }
}

/// Every theorem property, in id order.
pub fn registry() -> Vec<TheoremProperty> {
    vec![
        t01(),
        t02(),
        t03(),
        t04(),
        t05(),
        t06(),
        t07(),
        t08(),
        t09(),
        t10(),
        t11(),
        t12(),
        t13(),
        t14(),
        t15(),
        t16(),
        t17(),
        t18(),
        t19(),
        t20(),
        t21(),
        t22(),
        t23(),
        t24(),
        t25(),
        t26(),
        t27(),
        t28(),
    ]
}
