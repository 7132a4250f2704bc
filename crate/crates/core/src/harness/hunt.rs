//! Class-separation queries: elements that have some classes and lack another.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{Class, Pair};
use crate::constructions::Corpus;
use crate::derived;
use crate::lattice::{ElementId, Lattice};
use crate::maps::{self, DeltaKind, PhiKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown predicate `{0}`")]
pub struct PredicateError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaSel {
    D0,
    D1,
}

impl DeltaSel {
    fn kind(self) -> DeltaKind {
        match self {
            DeltaSel::D0 => DeltaKind::Identity,
            DeltaSel::D1 => DeltaKind::Radical,
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "d0" => Some(DeltaSel::D0),
            "d1" => Some(DeltaSel::D1),
            _ => None,
        }
    }
}

impl fmt::Display for DeltaSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaSel::D0 => "d0",
            DeltaSel::D1 => "d1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiSel {
    Zero,
    Identity,
    Power(u32),
    Omega,
}

impl PhiSel {
    fn kind(self) -> PhiKind {
        match self {
            PhiSel::Zero => PhiKind::Zero,
            PhiSel::Identity => PhiKind::Identity,
            PhiSel::Power(k) => PhiKind::Power(k),
            PhiSel::Omega => PhiKind::Omega,
        }
    }

    /// Accepts `phi0`, `phi1`, `phi<k>` (k >= 2) and `phiomega`.
    fn parse(s: &str) -> Option<Self> {
        match s.strip_prefix("phi")? {
            "omega" => Some(PhiSel::Omega),
            "0" => Some(PhiSel::Zero),
            "1" => Some(PhiSel::Identity),
            n => match n.parse::<u32>() {
                Ok(k) if k >= 2 && !n.starts_with('0') => Some(PhiSel::Power(k)),
                _ => None,
            },
        }
    }
}

impl fmt::Display for PhiSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSel::Zero => f.write_str("phi0"),
            PhiSel::Identity => f.write_str("phi1"),
            PhiSel::Power(k) => write!(f, "phi{k}"),
            PhiSel::Omega => f.write_str("phiomega"),
        }
    }
}

/// A named element class.
///
/// Names: `prime`, `primary`, `idempotent`, `d0-primary`, `phi2-prime`,
/// `phi2-primary`, `phi2-d1-primary`, `weakly-d1-primary`,
/// `2-potent-d0-primary` (also `2potent-d0-primary`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Prime,
    Primary,
    Idempotent,
    DeltaPrimary(DeltaSel),
    PhiPrime(PhiSel),
    PhiPrimary(PhiSel),
    PhiDeltaPrimary(PhiSel, DeltaSel),
    Weakly(DeltaSel),
    Potent(u32, DeltaSel),
}

impl FromStr for Predicate {
    type Err = PredicateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PredicateError(s.to_string());
        let parts: Vec<&str> = s.trim().split('-').collect();
        let p = match parts.as_slice() {
            ["prime"] => Predicate::Prime,
            ["primary"] => Predicate::Primary,
            ["idempotent"] => Predicate::Idempotent,
            [d, "primary"] if DeltaSel::parse(d).is_some() => Predicate::DeltaPrimary(DeltaSel::parse(d).unwrap()),
            [f, "prime"] => Predicate::PhiPrime(PhiSel::parse(f).ok_or_else(err)?),
            [f, "primary"] => Predicate::PhiPrimary(PhiSel::parse(f).ok_or_else(err)?),
            ["weakly", d, "primary"] => Predicate::Weakly(DeltaSel::parse(d).ok_or_else(err)?),
            [f, d, "primary"] if f.starts_with("phi") => {
                Predicate::PhiDeltaPrimary(PhiSel::parse(f).ok_or_else(err)?, DeltaSel::parse(d).ok_or_else(err)?)
            }
            [k, "potent", d, "primary"] => {
                Predicate::Potent(potency(k).ok_or_else(err)?, DeltaSel::parse(d).ok_or_else(err)?)
            }
            [kp, d, "primary"] => {
                let k = kp.strip_suffix("potent").and_then(potency).ok_or_else(err)?;
                Predicate::Potent(k, DeltaSel::parse(d).ok_or_else(err)?)
            }
            _ => return Err(err()),
        };
        Ok(p)
    }
}

fn potency(s: &str) -> Option<u32> {
    s.parse::<u32>().ok().filter(|&k| k >= 1)
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Prime => f.write_str("prime"),
            Predicate::Primary => f.write_str("primary"),
            Predicate::Idempotent => f.write_str("idempotent"),
            Predicate::DeltaPrimary(d) => write!(f, "{d}-primary"),
            Predicate::PhiPrime(p) => write!(f, "{p}-prime"),
            Predicate::PhiPrimary(p) => write!(f, "{p}-primary"),
            Predicate::PhiDeltaPrimary(p, d) => write!(f, "{p}-{d}-primary"),
            Predicate::Weakly(d) => write!(f, "weakly-{d}-primary"),
            Predicate::Potent(k, d) => write!(f, "{k}-potent-{d}-primary"),
        }
    }
}

impl Predicate {
    /// `None` if `p` belongs to the class, otherwise the first violating pair.
    pub fn violation(&self, l: &Arc<Lattice>, p: ElementId) -> Option<Pair> {
        let delta = |d: DeltaSel| maps::make_delta(l, d.kind()).expect("builtin delta");
        let phi = |f: PhiSel| maps::make_phi(l, f.kind()).expect("builtin phi");
        let w = |class: Class| class.witness(l, p).expect("proper element");
        match *self {
            Predicate::Prime => w(Class::Prime),
            Predicate::Primary => w(Class::Primary),
            Predicate::Idempotent => (!derived::is_idempotent(l, p)).then_some((p, p)),
            Predicate::DeltaPrimary(d) => w(Class::DeltaPrimary(&delta(d))),
            Predicate::PhiPrime(f) => w(Class::PhiPrime(&phi(f))),
            Predicate::PhiPrimary(f) => w(Class::PhiPrimary(&phi(f))),
            Predicate::PhiDeltaPrimary(f, d) => w(Class::PhiDeltaPrimary(&delta(d), &phi(f))),
            Predicate::Weakly(d) => w(Class::PhiDeltaPrimary(&delta(d), &phi(PhiSel::Zero))),
            Predicate::Potent(k, d) => w(Class::PotentDeltaPrimary(&delta(d), k)),
        }
    }

    pub fn holds(&self, l: &Arc<Lattice>, p: ElementId) -> bool {
        self.violation(l, p).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub have: Vec<Predicate>,
    pub lack: Predicate,
}

impl Goal {
    pub fn parse<S: AsRef<str>>(have: &[S], lack: &str) -> Result<Self, PredicateError> {
        Ok(Goal { have: have.iter().map(|s| s.as_ref().parse()).collect::<Result<_, _>>()?, lack: lack.parse()? })
    }
}

/// An element separating the classes of a [`Goal`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub lattice: String,
    pub element: String,
    pub have: Vec<String>,
    pub lack: String,
    /// The pair showing `element` fails `lack`.
    pub pair: [String; 2],
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} but not {} (pair {}, {})",
            self.lattice,
            self.element,
            self.have.join(" and "),
            self.lack,
            self.pair[0],
            self.pair[1]
        )
    }
}

/// Every proper corpus element satisfying all of `goal.have` and failing
/// `goal.lack`, in corpus then element order.
pub fn hunt(goal: &Goal, corpus: &Corpus) -> Vec<Separation> {
    let mut out = Vec::new();
    for l in corpus.lattices() {
        for p in l.proper_elements() {
            if !goal.have.iter().all(|h| h.holds(l, p)) {
                continue;
            }
            if let Some((a, b)) = goal.lack.violation(l, p) {
                out.push(Separation {
                    lattice: l.name().to_string(),
                    element: l.label(p).to_string(),
                    have: goal.have.iter().map(|h| h.to_string()).collect(),
                    lack: goal.lack.to_string(),
                    pair: [l.label(a).to_string(), l.label(b).to_string()],
                });
            }
        }
    }
    out
}
