//! Residuals, radicals, power chains and the structural predicates used as
//! theorem hypotheses.
//!
//! Every element of a finite lattice is compact, so quantifications over
//! compact elements range over the whole carrier.

use serde::Serialize;

use crate::classify;
use crate::lattice::{ElementId, Lattice};

/// `(a : b)`, the join of every `x` with `x * b <= a`.
pub fn residual(l: &Lattice, a: ElementId, b: ElementId) -> ElementId {
    l.join_all(l.elements().filter(|&x| l.leq(l.mul(x, b), a)))
}

/// All residuals, indexed `a * n + b`.
pub fn residual_table(l: &Lattice) -> Vec<ElementId> {
    let mut out = Vec::with_capacity(l.size() * l.size());
    for a in l.elements() {
        for b in l.elements() {
            out.push(residual(l, a, b));
        }
    }
    out
}

/// The descending chain `a, a^2, a^3, ...` up to and including the first
/// repeated value.
pub fn power_chain(l: &Lattice, a: ElementId) -> Vec<ElementId> {
    let mut chain = vec![a];
    loop {
        let last = *chain.last().unwrap();
        let next = l.mul(last, a);
        if next == last {
            return chain;
        }
        chain.push(next);
    }
}

/// Least `s >= 1` with `a^s = a^(s+1)`; every higher power equals `a^s`.
pub fn stable_index(l: &Lattice, a: ElementId) -> u32 {
    power_chain(l, a).len() as u32
}

/// Meet of all positive powers of `p`.
pub fn omega_power(l: &Lattice, p: ElementId) -> ElementId {
    *power_chain(l, p).last().unwrap()
}

/// Join of every `x` with some power `x^k <= a`.
pub fn radical(l: &Lattice, a: ElementId) -> ElementId {
    l.join_all(l.elements().filter(|&x| power_chain(l, x).iter().any(|&y| l.leq(y, a))))
}

/// In a finite lattice every subset is finite, so every element is compact.
pub fn compact_elements(l: &Lattice) -> Vec<ElementId> {
    l.elements().collect()
}

pub fn is_idempotent(l: &Lattice, a: ElementId) -> bool {
    l.square(a) == a
}

pub fn is_nilpotent(l: &Lattice, a: ElementId) -> bool {
    omega_power(l, a) == l.bottom()
}

/// `ab = 0` for some `b != 0`.
pub fn is_zero_divisor(l: &Lattice, a: ElementId) -> bool {
    l.elements().any(|b| b != l.bottom() && l.mul(a, b) == l.bottom())
}

/// `a ∧ be = ((a:e) ∧ b)e` for all `a, b`.
pub fn is_meet_principal(l: &Lattice, e: ElementId) -> bool {
    l.elements().all(|a| {
        let ae = residual(l, a, e);
        l.elements().all(|b| l.meet(a, l.mul(b, e)) == l.mul(l.meet(ae, b), e))
    })
}

/// `(ae ∨ b) : e = (b:e) ∨ a` for all `a, b`.
pub fn is_join_principal(l: &Lattice, e: ElementId) -> bool {
    l.elements().all(|a| l.elements().all(|b| residual(l, l.join(l.mul(a, e), b), e) == l.join(residual(l, b, e), a)))
}

pub fn is_principal(l: &Lattice, e: ElementId) -> bool {
    is_meet_principal(l, e) && is_join_principal(l, e)
}

/// `qb = qc != 0` implies `b = c`.
pub fn satisfies_restricted_cancellation(l: &Lattice, q: ElementId) -> bool {
    l.elements().all(|b| {
        l.elements().all(|c| {
            let qb = l.mul(q, b);
            b == c || qb == l.bottom() || qb != l.mul(q, c)
        })
    })
}

/// Proper elements with nothing strictly between them and the top.
pub fn maximal_elements(l: &Lattice) -> Vec<ElementId> {
    l.proper_elements().filter(|&m| !l.proper_elements().any(|x| l.lt(m, x))).collect()
}

pub fn prime_elements(l: &Lattice) -> Vec<ElementId> {
    l.proper_elements().filter(|&p| classify::prime_condition(p).first_violation(l).is_none()).collect()
}

/// Primes not strictly below another prime.
pub fn maximal_primes(l: &Lattice) -> Vec<ElementId> {
    let primes = prime_elements(l);
    primes.iter().copied().filter(|&p| !primes.iter().any(|&q| l.lt(p, q))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementProfile {
    pub element: ElementId,
    pub idempotent: bool,
    pub nilpotent: bool,
    pub zero_divisor: bool,
    pub principal: bool,
    pub restricted_cancellation: bool,
    pub power_meet: ElementId,
    pub maximal: bool,
}

pub fn element_profile(l: &Lattice, a: ElementId) -> ElementProfile {
    let power_meet = omega_power(l, a);
    ElementProfile {
        element: a,
        idempotent: is_idempotent(l, a),
        nilpotent: power_meet == l.bottom(),
        zero_divisor: is_zero_divisor(l, a),
        principal: is_principal(l, a),
        restricted_cancellation: satisfies_restricted_cancellation(l, a),
        power_meet,
        maximal: maximal_elements(l).contains(&a),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub modular: bool,
    pub principally_generated: bool,
    /// Modular and principally generated; ACC holds in every finite lattice.
    pub noether: bool,
    /// No nonzero zero divisors.
    pub domain: bool,
    pub quasi_local: bool,
    pub local_noether: bool,
    pub maximal_elements: Vec<ElementId>,
    pub maximal_primes: Vec<ElementId>,
    /// The powers of every proper element meet to the bottom.
    pub krull: bool,
}

pub fn is_modular(l: &Lattice) -> bool {
    l.elements().all(|a| {
        l.elements()
            .filter(|&c| l.leq(a, c))
            .all(|c| l.elements().all(|b| l.join(a, l.meet(b, c)) == l.meet(l.join(a, b), c)))
    })
}

pub fn structure_profile(l: &Lattice) -> StructureProfile {
    let modular = is_modular(l);
    let principal: Vec<ElementId> = l.elements().filter(|&e| is_principal(l, e)).collect();
    let principally_generated =
        l.elements().all(|a| l.join_all(principal.iter().copied().filter(|&e| l.leq(e, a))) == a);
    let noether = modular && principally_generated;
    let domain = l.elements().filter(|&a| a != l.bottom()).all(|a| !is_zero_divisor(l, a));
    let maximal = maximal_elements(l);
    let maximal_primes = maximal_primes(l);
    StructureProfile {
        modular,
        principally_generated,
        noether,
        domain,
        quasi_local: maximal.len() == 1,
        local_noether: noether && maximal_primes.len() == 1,
        krull: l.proper_elements().all(|a| omega_power(l, a) == l.bottom()),
        maximal_elements: maximal,
        maximal_primes,
    }
}
