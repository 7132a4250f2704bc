//! Machine-checkable theorem properties run exhaustively over a corpus.
//!
//! A [`TheoremProperty`] enumerates bindings (lattice, maps, elements,
//! exponents), filters them through a hypothesis and checks a conclusion.
//! Results distinguish PASS from VACUOUS: a property whose hypothesis never
//! fires has verified nothing.

mod hunt;
mod registry;

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::Class;
use crate::constructions::Corpus;
use crate::derived::{self, StructureProfile};
use crate::lattice::{ElementId, Lattice};
use crate::maps::{self, DeltaKind, Expansion, Isomorphism, MapError, PhiKind, PhiMap};

pub use hunt::{hunt, DeltaSel, Goal, PhiSel, Predicate, PredicateError, Separation};
pub use registry::registry;

pub const D0: usize = 0;
pub const D1: usize = 1;
pub const PHI0: usize = 0;
pub const PHI1: usize = 1;
pub const PHI2: usize = 2;
pub const PHI3: usize = 3;
pub const PHI4: usize = 4;
pub const PHI_OMEGA: usize = 5;

const BUILTIN_DELTAS: usize = 2;
const BUILTIN_PHIS: usize = 6;

pub const DEFAULT_WITNESS_CAP: usize = 10;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HarnessError {
    #[error("extra map refers to unknown lattice `{0}`")]
    UnknownLattice(String),
    #[error("extra map `{tag}` on {lattice}: {source}")]
    BadMap { lattice: String, tag: String, source: MapError },
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}

/// A user-supplied table for one corpus lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    pub lattice: String,
    pub tag: String,
    pub table: Vec<ElementId>,
}

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub witness_cap: usize,
    pub extra_deltas: Vec<MapSpec>,
    pub extra_phis: Vec<MapSpec>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { witness_cap: DEFAULT_WITNESS_CAP, extra_deltas: Vec::new(), extra_phis: Vec::new() }
    }
}

/// Everything the properties need about one lattice, computed once.
pub struct LatticeCtx {
    pub lattice: Arc<Lattice>,
    pub profile: StructureProfile,
    /// `[d0, d1, extras...]`
    pub deltas: Vec<Expansion>,
    /// `[phi0, phi1, phi2, phi3, phi4, phiomega, extras...]`
    pub phis: Vec<PhiMap>,
    /// `φ_n` for `n` in `2..=max_power`, stored at `n - 2`.
    powers: Vec<PhiMap>,
    /// Every `φ_n` with `n >= max_power` equals `φ_max_power`.
    pub max_power: u32,
}

impl LatticeCtx {
    fn new(lattice: Arc<Lattice>) -> Self {
        let l = &lattice;
        let deltas = vec![
            maps::make_delta(l, DeltaKind::Identity).expect("d0"),
            maps::make_delta(l, DeltaKind::Radical).expect("d1"),
        ];
        let phis =
            [PhiKind::Zero, PhiKind::Identity, PhiKind::Power(2), PhiKind::Power(3), PhiKind::Power(4), PhiKind::Omega]
                .into_iter()
                .map(|k| maps::make_phi(l, k).expect("builtin phi"))
                .collect();
        let max_power = l.elements().map(|e| derived::stable_index(l, e)).max().unwrap_or(1).max(3) + 1;
        let powers = (2..=max_power).map(|n| maps::make_phi(l, PhiKind::Power(n)).expect("power phi")).collect();
        LatticeCtx { profile: derived::structure_profile(l), deltas, phis, powers, max_power, lattice }
    }

    pub fn l(&self) -> &Lattice {
        &self.lattice
    }

    /// `φ_n` for any `n >= 2`.
    pub fn power_phi(&self, n: u32) -> &PhiMap {
        let n = n.clamp(2, self.max_power);
        &self.powers[(n - 2) as usize]
    }

    pub fn radical(&self, e: ElementId) -> ElementId {
        self.deltas[D1].apply(e)
    }

    fn holds(&self, class: Class, p: ElementId) -> bool {
        class.holds(&self.lattice, p).expect("classes are evaluated on proper elements")
    }

    /// `p` is φ-δ-primary.
    pub fn pdp(&self, delta: &Expansion, phi: &PhiMap, p: ElementId) -> bool {
        self.holds(Class::PhiDeltaPrimary(delta, phi), p)
    }

    pub fn delta_primary(&self, delta: &Expansion, p: ElementId) -> bool {
        self.holds(Class::DeltaPrimary(delta), p)
    }

    pub fn potent(&self, delta: &Expansion, p: ElementId, k: u32) -> bool {
        self.holds(Class::PotentDeltaPrimary(delta, k), p)
    }

    pub fn phi_prime(&self, phi: &PhiMap, p: ElementId) -> bool {
        self.holds(Class::PhiPrime(phi), p)
    }

    pub fn phi_primary(&self, phi: &PhiMap, p: ElementId) -> bool {
        self.holds(Class::PhiPrimary(phi), p)
    }

    pub fn prime(&self, p: ElementId) -> bool {
        self.holds(Class::Prime, p)
    }

    /// φ-δ-primary for `φ_n` and every `n >= 2`.
    pub fn pdp_all_powers(&self, delta: &Expansion, p: ElementId) -> bool {
        (2..=self.max_power).all(|n| self.pdp(delta, self.power_phi(n), p))
    }
}

/// Isomorphisms from one corpus lattice to another (possibly itself).
pub struct IsoGroup {
    pub source: usize,
    pub target: usize,
    pub isos: Vec<Isomorphism>,
}

/// The corpus with per-lattice precomputation and all isomorphisms.
pub struct HarnessCtx {
    pub lattices: Vec<LatticeCtx>,
    pub isomorphisms: Vec<IsoGroup>,
    pub config: HarnessConfig,
}

impl HarnessCtx {
    /// Degenerate one-element lattices have no proper elements and are
    /// skipped.
    pub fn new(corpus: &Corpus, config: HarnessConfig) -> Result<Self, HarnessError> {
        let mut lattices: Vec<LatticeCtx> =
            corpus.lattices().filter(|l| !l.is_degenerate()).map(|l| LatticeCtx::new(l.clone())).collect();
        for spec in &config.extra_deltas {
            let lc = lattices
                .iter_mut()
                .find(|lc| lc.lattice.name() == spec.lattice)
                .ok_or_else(|| HarnessError::UnknownLattice(spec.lattice.clone()))?;
            let delta =
                maps::make_delta(&lc.lattice, DeltaKind::Table { tag: spec.tag.clone(), table: spec.table.clone() })
                    .map_err(|source| HarnessError::BadMap {
                        lattice: spec.lattice.clone(),
                        tag: spec.tag.clone(),
                        source,
                    })?;
            lc.deltas.push(delta);
        }
        for spec in &config.extra_phis {
            let lc = lattices
                .iter_mut()
                .find(|lc| lc.lattice.name() == spec.lattice)
                .ok_or_else(|| HarnessError::UnknownLattice(spec.lattice.clone()))?;
            let phi = maps::make_phi(&lc.lattice, PhiKind::Table { tag: spec.tag.clone(), table: spec.table.clone() })
                .map_err(|source| HarnessError::BadMap {
                    lattice: spec.lattice.clone(),
                    tag: spec.tag.clone(),
                    source,
                })?;
            lc.phis.push(phi);
        }
        let mut isomorphisms = Vec::new();
        for (i, a) in lattices.iter().enumerate() {
            for (j, b) in lattices.iter().enumerate() {
                let isos = maps::enumerate_isomorphisms(&a.lattice, &b.lattice);
                if !isos.is_empty() {
                    isomorphisms.push(IsoGroup { source: i, target: j, isos });
                }
            }
        }
        Ok(HarnessCtx { lattices, isomorphisms, config })
    }

    pub fn lattice_names(&self) -> Vec<String> {
        self.lattices.iter().map(|lc| lc.lattice.name().to_string()).collect()
    }
}

/// One point in a property's quantification domain.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub lattice: usize,
    pub target: Option<usize>,
    pub iso: Option<usize>,
    pub delta: Option<usize>,
    pub gamma: Option<usize>,
    pub phi: Option<usize>,
    pub phi2: Option<usize>,
    pub k: Option<u32>,
    pub elements: Vec<(&'static str, ElementId)>,
}

impl Binding {
    pub fn el(&self, role: &str) -> ElementId {
        self.elements
            .iter()
            .find(|(r, _)| *r == role)
            .map(|(_, e)| *e)
            .unwrap_or_else(|| panic!("binding has no `{role}`"))
    }

    pub fn all(&self, role: &str) -> impl Iterator<Item = ElementId> + '_ {
        let role = role.to_string();
        self.elements.iter().filter(move |(r, _)| *r == role).map(|(_, e)| *e)
    }
}

pub type Verdict = Result<(), String>;

/// A theorem encoded as hypothesis ⟹ conclusion over enumerated bindings.
pub struct TheoremProperty {
    pub id: &'static str,
    pub description: &'static str,
    /// Roles the property quantifies over.
    pub binding: &'static [&'static str],
    pub enumerate: fn(&HarnessCtx) -> Vec<Binding>,
    pub hypothesis: fn(&HarnessCtx, &Binding) -> bool,
    pub conclusion: fn(&HarnessCtx, &Binding) -> Verdict,
}

impl TheoremProperty {
    /// Evaluates one binding: `None` if the hypothesis does not fire,
    /// otherwise the conclusion's verdict.
    pub fn evaluate(&self, ctx: &HarnessCtx, b: &Binding) -> Option<Verdict> {
        (self.hypothesis)(ctx, b).then(|| (self.conclusion)(ctx, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Vacuous,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Vacuous => "VACUOUS",
            Status::Fail => "FAIL",
        })
    }
}

/// A violating binding, rendered with labels and tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: String,
    pub lattice: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub bound: Vec<(String, String)>,
    pub clause: String,
    #[serde(skip)]
    pub binding: Binding,
}

impl Witness {
    pub fn new(ctx: &HarnessCtx, property: &str, b: &Binding, clause: String) -> Self {
        let lc = &ctx.lattices[b.lattice];
        let l = lc.l();
        Witness {
            property: property.to_string(),
            lattice: l.name().to_string(),
            target: b.target.map(|t| ctx.lattices[t].lattice.name().to_string()),
            delta: b.delta.map(|d| lc.deltas[d].tag().to_string()),
            gamma: b.gamma.map(|d| lc.deltas[d].tag().to_string()),
            phi: b.phi.map(|f| lc.phis[f].tag().to_string()),
            phi2: b.phi2.map(|f| lc.phis[f].tag().to_string()),
            k: b.k,
            bound: b.elements.iter().map(|(role, e)| (role.to_string(), l.label(*e).to_string())).collect(),
            clause,
            binding: b.clone(),
        }
    }

    pub fn describe(&self) -> String {
        let mut out = self.lattice.clone();
        if let Some(t) = &self.target {
            write!(out, "->{t}").unwrap();
        }
        for (name, v) in [("delta", &self.delta), ("gamma", &self.gamma), ("phi", &self.phi), ("phi'", &self.phi2)] {
            if let Some(v) = v {
                write!(out, " {name}={v}").unwrap();
            }
        }
        if let Some(k) = self.k {
            write!(out, " n={k}").unwrap();
        }
        for (role, label) in &self.bound {
            write!(out, " {role}={label}").unwrap();
        }
        write!(out, ": {}", self.clause).unwrap();
        out
    }
}

/// Re-evaluates a witness; true iff it still violates its property.
pub fn replay(ctx: &HarnessCtx, prop: &TheoremProperty, w: &Witness) -> bool {
    matches!(prop.evaluate(ctx, &w.binding), Some(Err(_)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub id: String,
    pub description: String,
    pub binding: Vec<String>,
    pub instances_scanned: usize,
    pub hypothesis_hits: usize,
    pub violations: usize,
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

pub fn run_property_ctx(prop: &TheoremProperty, ctx: &HarnessCtx) -> PropertyResult {
    let bindings = (prop.enumerate)(ctx);
    let mut hits = 0;
    let mut violations = 0;
    let mut witnesses = Vec::new();
    for b in &bindings {
        match prop.evaluate(ctx, b) {
            None => {}
            Some(Ok(())) => hits += 1,
            Some(Err(clause)) => {
                hits += 1;
                violations += 1;
                if witnesses.len() < ctx.config.witness_cap {
                    witnesses.push(Witness::new(ctx, prop.id, b, clause));
                }
            }
        }
    }
    let status = if violations > 0 {
        Status::Fail
    } else if hits == 0 {
        Status::Vacuous
    } else {
        Status::Pass
    };
    PropertyResult {
        id: prop.id.to_string(),
        description: prop.description.to_string(),
        binding: prop.binding.iter().map(|s| s.to_string()).collect(),
        instances_scanned: bindings.len(),
        hypothesis_hits: hits,
        violations,
        status,
        witnesses,
    }
}

pub fn run_property(
    prop: &TheoremProperty,
    corpus: &Corpus,
    config: HarnessConfig,
) -> Result<PropertyResult, HarnessError> {
    let ctx = HarnessCtx::new(corpus, config)?;
    Ok(run_property_ctx(prop, &ctx))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub corpus: Vec<String>,
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn result(&self, id: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn total_violations(&self) -> usize {
        self.results.iter().map(|r| r.violations).sum()
    }

    pub fn vacuous(&self) -> Vec<&str> {
        self.results.iter().filter(|r| r.status == Status::Vacuous).map(|r| r.id.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out =
            format!("{:<5} {:<8} {:>9} {:>8} {:>10}  description\n", "id", "status", "scanned", "hits", "violations");
        for r in &self.results {
            writeln!(
                out,
                "{:<5} {:<8} {:>9} {:>8} {:>10}  {}",
                r.id,
                r.status.to_string(),
                r.instances_scanned,
                r.hypothesis_hits,
                r.violations,
                r.description
            )
            .unwrap();
            for w in &r.witnesses {
                writeln!(out, "      witness: {}", w.describe()).unwrap();
            }
        }
        out
    }
}

/// Runs every registry property, in parallel, merged in registry order.
pub fn run_all_ctx(ctx: &HarnessCtx) -> Report {
    let props = registry();
    let results = props.par_iter().map(|p| run_property_ctx(p, ctx)).collect();
    Report { corpus: ctx.lattice_names(), results }
}

pub fn run_all(corpus: &Corpus, config: HarnessConfig) -> Result<Report, HarnessError> {
    let ctx = HarnessCtx::new(corpus, config)?;
    Ok(run_all_ctx(&ctx))
}

pub fn property(id: &str) -> Result<TheoremProperty, HarnessError> {
    registry().into_iter().find(|p| p.id == id).ok_or_else(|| HarnessError::UnknownProperty(id.to_string()))
}
