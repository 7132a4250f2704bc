//! Primality classes of lattice elements.
//!
//! Every class has the same shape: for all `a, b`, if `ab <= bound` and
//! `ab` is not below an optional exclusion, then `a <= left` or
//! `b <= right`. [`Condition`] captures that shape; the named predicates
//! instantiate it. Both orders `(a, b)` and `(b, a)` are scanned since the
//! conclusion is asymmetric. Witnesses are the first violating pair in
//! element-index order.

use serde::Serialize;
use thiserror::Error;

use crate::derived;
use crate::lattice::{ElementId, Lattice};
use crate::maps::{Expansion, PhiMap};

pub type Pair = (ElementId, ElementId);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0} is not a proper element")]
    NotProper(String),
    #[error("potency must be at least 2, got {0}")]
    PotencyTooSmall(u32),
    #[error("map `{0}` lives on a different lattice")]
    LatticeMismatch(String),
}

/// `ab <= bound ∧ ab ≰ exclude  ⟹  a <= left ∨ b <= right`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Condition {
    pub bound: ElementId,
    pub exclude: Option<ElementId>,
    pub left: ElementId,
    pub right: ElementId,
}

impl Condition {
    #[inline]
    pub fn violated_by(&self, l: &Lattice, a: ElementId, b: ElementId) -> bool {
        let ab = l.mul(a, b);
        l.leq(ab, self.bound)
            && self.exclude.is_none_or(|e| !l.leq(ab, e))
            && !l.leq(a, self.left)
            && !l.leq(b, self.right)
    }

    pub fn first_violation(&self, l: &Lattice) -> Option<Pair> {
        l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).find(|&(a, b)| self.violated_by(l, a, b))
    }

    pub fn violations(&self, l: &Lattice) -> Vec<Pair> {
        l.elements()
            .flat_map(|a| l.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| self.violated_by(l, a, b))
            .collect()
    }

    /// Same quantification restricted to the compact elements.
    pub fn first_compact_violation(&self, l: &Lattice) -> Option<Pair> {
        let compact = derived::compact_elements(l);
        compact.iter().flat_map(|&a| compact.iter().map(move |&b| (a, b))).find(|&(a, b)| self.violated_by(l, a, b))
    }
}

fn ensure_proper(l: &Lattice, p: ElementId) -> Result<(), ClassifyError> {
    if l.is_proper(p) {
        Ok(())
    } else {
        Err(ClassifyError::NotProper(l.label(p).to_string()))
    }
}

fn ensure_on(l: &Lattice, map: &crate::maps::UnaryMap) -> Result<(), ClassifyError> {
    if map.is_on(l) {
        Ok(())
    } else {
        Err(ClassifyError::LatticeMismatch(map.tag().to_string()))
    }
}

pub(crate) fn prime_condition(p: ElementId) -> Condition {
    Condition { bound: p, exclude: None, left: p, right: p }
}

/// The primality classes a single element can be tested for.
#[derive(Debug, Clone, Copy)]
pub enum Class<'a> {
    Prime,
    Primary,
    DeltaPrimary(&'a Expansion),
    PhiPrime(&'a PhiMap),
    PhiPrimary(&'a PhiMap),
    PhiDeltaPrimary(&'a Expansion, &'a PhiMap),
    /// `ab <= p^k ⟹ a <= p ∨ b <= δ(p)`
    PotentDeltaPrimary(&'a Expansion, u32),
}

impl Class<'_> {
    /// Instantiates the defining implication at `p`.
    pub fn condition(&self, l: &Lattice, p: ElementId) -> Result<Condition, ClassifyError> {
        ensure_proper(l, p)?;
        let base = |exclude, right| Condition { bound: p, exclude, left: p, right };
        Ok(match *self {
            Class::Prime => base(None, p),
            Class::Primary => base(None, derived::radical(l, p)),
            Class::DeltaPrimary(delta) => {
                ensure_on(l, delta.as_map())?;
                base(None, delta.apply(p))
            }
            Class::PhiPrime(phi) => {
                ensure_on(l, phi.as_map())?;
                base(phi.exclusion(p), p)
            }
            Class::PhiPrimary(phi) => {
                ensure_on(l, phi.as_map())?;
                base(phi.exclusion(p), derived::radical(l, p))
            }
            Class::PhiDeltaPrimary(delta, phi) => {
                ensure_on(l, delta.as_map())?;
                ensure_on(l, phi.as_map())?;
                base(phi.exclusion(p), delta.apply(p))
            }
            Class::PotentDeltaPrimary(delta, k) => {
                if k < 2 {
                    return Err(ClassifyError::PotencyTooSmall(k));
                }
                ensure_on(l, delta.as_map())?;
                Condition { bound: l.pow(p, k), exclude: None, left: p, right: delta.apply(p) }
            }
        })
    }

    pub fn witness(&self, l: &Lattice, p: ElementId) -> Result<Option<Pair>, ClassifyError> {
        Ok(self.condition(l, p)?.first_violation(l))
    }

    pub fn holds(&self, l: &Lattice, p: ElementId) -> Result<bool, ClassifyError> {
        Ok(self.witness(l, p)?.is_none())
    }

    pub fn violations(&self, l: &Lattice, p: ElementId) -> Result<Vec<Pair>, ClassifyError> {
        Ok(self.condition(l, p)?.violations(l))
    }
}

pub fn is_prime(l: &Lattice, p: ElementId) -> Result<bool, ClassifyError> {
    Class::Prime.holds(l, p)
}

pub fn is_primary(l: &Lattice, p: ElementId) -> Result<bool, ClassifyError> {
    Class::Primary.holds(l, p)
}

pub fn is_delta_primary(l: &Lattice, delta: &Expansion, p: ElementId) -> Result<bool, ClassifyError> {
    Class::DeltaPrimary(delta).holds(l, p)
}

pub fn is_phi_delta_primary(l: &Lattice, delta: &Expansion, phi: &PhiMap, p: ElementId) -> Result<bool, ClassifyError> {
    Class::PhiDeltaPrimary(delta, phi).holds(l, p)
}

pub fn is_phi_prime(l: &Lattice, phi: &PhiMap, p: ElementId) -> Result<bool, ClassifyError> {
    Class::PhiPrime(phi).holds(l, p)
}

pub fn is_phi_primary(l: &Lattice, phi: &PhiMap, p: ElementId) -> Result<bool, ClassifyError> {
    Class::PhiPrimary(phi).holds(l, p)
}

pub fn is_n_potent_delta_primary(l: &Lattice, delta: &Expansion, p: ElementId, k: u32) -> Result<bool, ClassifyError> {
    Class::PotentDeltaPrimary(delta, k).holds(l, p)
}

/// For every `a ≰ δ(q)`: `(q:a) = q` or `(q:a) = (φ(q):a)`.
pub fn residual_characterization_a(
    l: &Lattice,
    delta: &Expansion,
    phi: &PhiMap,
    q: ElementId,
) -> Result<bool, ClassifyError> {
    ensure_proper(l, q)?;
    ensure_on(l, delta.as_map())?;
    ensure_on(l, phi.as_map())?;
    let dq = delta.apply(q);
    Ok(l.elements().filter(|&a| !l.leq(a, dq)).all(|a| {
        let qa = derived::residual(l, q, a);
        qa == q || phi.exclusion(q).is_some_and(|fq| qa == derived::residual(l, fq, a))
    }))
}

/// For every `a ≰ q`: `(q:a) <= δ(q)` or `(q:a) = (φ(q):a)`.
pub fn residual_characterization_b(
    l: &Lattice,
    delta: &Expansion,
    phi: &PhiMap,
    q: ElementId,
) -> Result<bool, ClassifyError> {
    ensure_proper(l, q)?;
    ensure_on(l, delta.as_map())?;
    ensure_on(l, phi.as_map())?;
    let dq = delta.apply(q);
    Ok(l.elements().filter(|&a| !l.leq(a, q)).all(|a| {
        let qa = derived::residual(l, q, a);
        l.leq(qa, dq) || phi.exclusion(q).is_some_and(|fq| qa == derived::residual(l, fq, a))
    }))
}

/// For compact `r, s`: `rs <= q ∧ rs ≰ φ(q) ⟹ s <= q ∨ r <= δ(q)`.
pub fn compact_pair_form(l: &Lattice, delta: &Expansion, phi: &PhiMap, q: ElementId) -> Result<bool, ClassifyError> {
    let cond = Class::PhiDeltaPrimary(delta, phi).condition(l, q)?;
    let compact = derived::compact_elements(l);
    Ok(compact.iter().flat_map(|&r| compact.iter().map(move |&s| (r, s))).all(|(r, s)| !cond.violated_by(l, s, r)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub name: String,
    pub holds: bool,
    /// First violating pair, present exactly when `holds` is false.
    pub witness: Option<[String; 2]>,
    #[serde(skip)]
    pub witness_ids: Option<Pair>,
}

impl Flag {
    fn new(l: &Lattice, name: impl Into<String>, witness: Option<Pair>) -> Self {
        Flag {
            name: name.into(),
            holds: witness.is_none(),
            witness: witness.map(|(a, b)| [l.label(a).to_string(), l.label(b).to_string()]),
            witness_ids: witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub element: ElementId,
    pub label: String,
    pub flags: Vec<Flag>,
}

impl ClassificationRecord {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().find(|f| f.name == name)
    }

    pub fn holds(&self, name: &str) -> Option<bool> {
        self.flag(name).map(|f| f.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub lattice: String,
    pub delta: String,
    pub phi: String,
    pub records: Vec<ClassificationRecord>,
}

impl ClassificationReport {
    pub fn record(&self, label: &str) -> Option<&ClassificationRecord> {
        self.records.iter().find(|r| r.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one row per proper element.
    pub fn to_table(&self) -> String {
        use std::fmt::Write as _;
        let Some(first) = self.records.first() else {
            return format!("{}: no proper elements\n", self.lattice);
        };
        let width = self.records.iter().map(|r| r.label.len()).max().unwrap_or(0).max(7);
        let mut out = format!("lattice {}  delta {}  phi {}\n", self.lattice, self.delta, self.phi);
        write!(out, "{:width$}", "element").unwrap();
        for f in &first.flags {
            write!(out, "  {}", f.name).unwrap();
        }
        out.push('\n');
        for r in &self.records {
            write!(out, "{:width$}", r.label).unwrap();
            for f in &r.flags {
                let mark = if f.holds { "✓" } else { "✗" };
                write!(out, "  {:<w$}", mark, w = f.name.chars().count()).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Names of the flags in every record, in table order.
pub const FLAG_NAMES: [&str; 11] = [
    "prime",
    "primary",
    "delta_primary",
    "phi_prime",
    "phi_primary",
    "phi_delta_primary",
    "weakly_delta_primary",
    "two_potent_delta_primary",
    "two_potent_delta0_primary",
    "three_potent_delta_primary",
    "idempotent",
];

pub fn classification_report(
    l: &Lattice,
    delta: &Expansion,
    phi: &PhiMap,
) -> Result<ClassificationReport, ClassifyError> {
    ensure_on(l, delta.as_map())?;
    ensure_on(l, phi.as_map())?;
    let lattice = std::sync::Arc::new(l.clone());
    let weak = crate::maps::make_phi(&lattice, crate::maps::PhiKind::Zero).expect("phi0 is valid");
    let delta0 = crate::maps::make_delta(&lattice, crate::maps::DeltaKind::Identity).expect("d0 is valid");
    let mut records = Vec::new();
    for p in l.proper_elements() {
        let classes: [Class; 10] = [
            Class::Prime,
            Class::Primary,
            Class::DeltaPrimary(delta),
            Class::PhiPrime(phi),
            Class::PhiPrimary(phi),
            Class::PhiDeltaPrimary(delta, phi),
            Class::PhiDeltaPrimary(delta, &weak),
            Class::PotentDeltaPrimary(delta, 2),
            Class::PotentDeltaPrimary(&delta0, 2),
            Class::PotentDeltaPrimary(delta, 3),
        ];
        let mut flags = Vec::with_capacity(FLAG_NAMES.len());
        for (class, name) in classes.iter().zip(FLAG_NAMES) {
            flags.push(Flag::new(l, name, class.witness(l, p)?));
        }
        let idem = (!derived::is_idempotent(l, p)).then_some((p, p));
        flags.push(Flag::new(l, FLAG_NAMES[10], idem));
        records.push(ClassificationRecord { element: p, label: l.label(p).to_string(), flags });
    }
    Ok(ClassificationReport {
        lattice: l.name().to_string(),
        delta: delta.tag().to_string(),
        phi: phi.tag().to_string(),
        records,
    })
}
