//! Self-maps of a lattice: expansion functions, reduction functions and
//! multiplicative lattice isomorphisms.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::derived;
use crate::lattice::{ElementId, Lattice};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("table has {found} entries, lattice has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error("table entry {0} is not an element of the lattice")]
    OutOfRange(usize),
    #[error("not inflationary: {element} is not below its image {image}")]
    NotInflationary { element: String, image: String },
    #[error("not monotone: {a} <= {b} but their images are not ordered")]
    NotMonotone { a: String, b: String },
    #[error("maps live on different lattices")]
    LatticeMismatch,
    #[error("power map needs exponent >= 2, got {0}")]
    InvalidPower(u32),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
}

/// A total function from the carrier of a lattice to itself.
#[derive(Clone)]
pub struct UnaryMap {
    lattice: Arc<Lattice>,
    table: Vec<ElementId>,
    tag: String,
}

impl fmt::Debug for UnaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnaryMap")
            .field("lattice", &self.lattice.name())
            .field("tag", &self.tag)
            .field("table", &self.table)
            .finish()
    }
}

impl UnaryMap {
    pub fn new(lattice: Arc<Lattice>, table: Vec<ElementId>, tag: impl Into<String>) -> Result<Self, MapError> {
        if table.len() != lattice.size() {
            return Err(MapError::WrongLength { expected: lattice.size(), found: table.len() });
        }
        if let Some(bad) = table.iter().find(|e| !lattice.contains(**e)) {
            return Err(MapError::OutOfRange(bad.0));
        }
        Ok(UnaryMap { lattice, table, tag: tag.into() })
    }

    pub fn from_fn(lattice: Arc<Lattice>, tag: impl Into<String>, f: impl Fn(ElementId) -> ElementId) -> Self {
        let table = lattice.elements().map(f).collect();
        UnaryMap { lattice, table, tag: tag.into() }
    }

    pub fn identity(lattice: Arc<Lattice>, tag: impl Into<String>) -> Self {
        Self::from_fn(lattice, tag, |e| e)
    }

    #[inline]
    pub fn apply(&self, e: ElementId) -> ElementId {
        self.table[e.0]
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn is_on(&self, l: &Lattice) -> bool {
        std::ptr::eq(self.lattice.as_ref(), l) || *self.lattice == *l
    }

    pub fn same_lattice(&self, other: &UnaryMap) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice
    }

    pub fn is_monotone(&self) -> bool {
        let l = &self.lattice;
        l.elements().all(|a| l.elements().all(|b| !l.leq(a, b) || l.leq(self.apply(a), self.apply(b))))
    }

    pub fn compose(&self, inner: &UnaryMap) -> Result<UnaryMap, MapError> {
        if !self.same_lattice(inner) {
            return Err(MapError::LatticeMismatch);
        }
        Ok(UnaryMap::from_fn(self.lattice.clone(), format!("{}∘{}", self.tag, inner.tag), |e| {
            self.apply(inner.apply(e))
        }))
    }
}

impl PartialEq for UnaryMap {
    fn eq(&self, other: &Self) -> bool {
        self.same_lattice(other) && self.table == other.table
    }
}

/// Pointwise comparison `g1(a) <= g2(a)` for every `a`.
pub fn map_leq(g1: &UnaryMap, g2: &UnaryMap) -> Result<bool, MapError> {
    Ok(map_leq_witness(g1, g2)?.is_none())
}

/// First element where `g1(a) <= g2(a)` fails.
pub fn map_leq_witness(g1: &UnaryMap, g2: &UnaryMap) -> Result<Option<ElementId>, MapError> {
    if !g1.same_lattice(g2) {
        return Err(MapError::LatticeMismatch);
    }
    let l = &g1.lattice;
    Ok(l.elements().find(|&a| !l.leq(g1.apply(a), g2.apply(a))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaKind {
    /// `δ0(p) = p`
    Identity,
    /// `δ1(p) = √p`
    Radical,
    Table {
        tag: String,
        table: Vec<ElementId>,
    },
}

/// An inflationary, monotone self-map.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion(UnaryMap);

impl Expansion {
    pub fn as_map(&self) -> &UnaryMap {
        &self.0
    }

    #[inline]
    pub fn apply(&self, e: ElementId) -> ElementId {
        self.0.apply(e)
    }

    pub fn tag(&self) -> &str {
        self.0.tag()
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.0.lattice()
    }

    /// Checks both expansion axioms and wraps the map.
    pub fn try_from_map(map: UnaryMap) -> Result<Self, MapError> {
        let l = map.lattice.clone();
        if let Some(a) = l.elements().find(|&a| !l.leq(a, map.apply(a))) {
            return Err(MapError::NotInflationary {
                element: l.label(a).to_string(),
                image: l.label(map.apply(a)).to_string(),
            });
        }
        for a in l.elements() {
            for b in l.elements() {
                if l.leq(a, b) && !l.leq(map.apply(a), map.apply(b)) {
                    return Err(MapError::NotMonotone { a: l.label(a).to_string(), b: l.label(b).to_string() });
                }
            }
        }
        Ok(Expansion(map))
    }
}

impl DeltaKind {
    /// `d0` or `d1` (also `0`, `1`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "d0" | "0" => Some(DeltaKind::Identity),
            "d1" | "1" => Some(DeltaKind::Radical),
            _ => None,
        }
    }
}

pub fn make_delta(l: &Arc<Lattice>, kind: DeltaKind) -> Result<Expansion, MapError> {
    let map = match kind {
        DeltaKind::Identity => UnaryMap::identity(l.clone(), "d0"),
        DeltaKind::Radical => UnaryMap::from_fn(l.clone(), "d1", |e| derived::radical(l, e)),
        DeltaKind::Table { tag, table } => UnaryMap::new(l.clone(), table, tag)?,
    };
    Expansion::try_from_map(map)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiKind {
    /// No exclusion at all: φ-δ-primary collapses to δ-primary.
    None,
    /// `φ0(p) = 0`
    Zero,
    /// `φ1(p) = p`
    Identity,
    /// `φn(p) = p^n`, `n >= 2`
    Power(u32),
    /// `φω(p) = ⋀ p^n`
    Omega,
    /// Arbitrary table, normalized to `p ↦ table(p) ∧ p`.
    Table { tag: String, table: Vec<ElementId> },
}

impl PhiKind {
    /// `none`, `0`, `1`, `<k>`, `n:<k>` or `omega`, with an optional `phi` prefix.
    pub fn builtin(name: &str) -> Option<Self> {
        let name = name.strip_prefix("phi").unwrap_or(name);
        match name {
            "none" => Some(PhiKind::None),
            "0" => Some(PhiKind::Zero),
            "1" => Some(PhiKind::Identity),
            "omega" | "w" => Some(PhiKind::Omega),
            _ => name.strip_prefix("n:").unwrap_or(name).parse().ok().filter(|&k| k >= 2).map(PhiKind::Power),
        }
    }

    pub fn default_tag(&self) -> String {
        match self {
            PhiKind::None => "none".into(),
            PhiKind::Zero => "phi0".into(),
            PhiKind::Identity => "phi1".into(),
            PhiKind::Power(k) => format!("phi{k}"),
            PhiKind::Omega => "phiomega".into(),
            PhiKind::Table { tag, .. } => tag.clone(),
        }
    }
}

/// A deflationary self-map `φ(q) <= q` used to exclude products.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiMap {
    map: UnaryMap,
    excludes: bool,
}

impl PhiMap {
    pub fn as_map(&self) -> &UnaryMap {
        &self.map
    }

    #[inline]
    pub fn apply(&self, e: ElementId) -> ElementId {
        self.map.apply(e)
    }

    /// The exclusion bound at `p`, or `None` when this is the `none` map.
    #[inline]
    pub fn exclusion(&self, p: ElementId) -> Option<ElementId> {
        self.excludes.then(|| self.map.apply(p))
    }

    pub fn is_none(&self) -> bool {
        !self.excludes
    }

    pub fn tag(&self) -> &str {
        self.map.tag()
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.map.lattice()
    }

    /// Normalizes an arbitrary map by meeting each value with its argument.
    pub fn normalized(map: &UnaryMap) -> Self {
        let l = map.lattice().clone();
        let tag = map.tag().to_string();
        PhiMap { map: UnaryMap::from_fn(l.clone(), tag, |p| l.meet(map.apply(p), p)), excludes: true }
    }
}

pub fn make_phi(l: &Arc<Lattice>, kind: PhiKind) -> Result<PhiMap, MapError> {
    let tag = kind.default_tag();
    let excludes = kind != PhiKind::None;
    let map = match kind {
        PhiKind::None | PhiKind::Zero => UnaryMap::from_fn(l.clone(), tag, |_| l.bottom()),
        PhiKind::Identity => UnaryMap::identity(l.clone(), tag),
        PhiKind::Power(k) if k < 2 => return Err(MapError::InvalidPower(k)),
        PhiKind::Power(k) => UnaryMap::from_fn(l.clone(), tag, |p| l.pow(p, k)),
        PhiKind::Omega => UnaryMap::from_fn(l.clone(), tag, |p| derived::omega_power(l, p)),
        PhiKind::Table { tag, table } => {
            return Ok(PhiMap::normalized(&UnaryMap::new(l.clone(), table, tag)?));
        }
    };
    Ok(PhiMap { map, excludes })
}

/// An order- and multiplication-preserving bijection.
#[derive(Clone)]
pub struct Isomorphism {
    source: Arc<Lattice>,
    target: Arc<Lattice>,
    forward: Vec<ElementId>,
    inverse: Vec<ElementId>,
}

impl fmt::Debug for Isomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .elements()
            .map(|a| format!("{}->{}", self.source.label(a), self.target.label(self.apply(a))))
            .collect();
        write!(f, "Isomorphism({} -> {}: {})", self.source.name(), self.target.name(), pairs.join(", "))
    }
}

impl Isomorphism {
    pub fn new(source: Arc<Lattice>, target: Arc<Lattice>, forward: Vec<ElementId>) -> Result<Self, MapError> {
        let n = source.size();
        if target.size() != n || forward.len() != n {
            return Err(MapError::NotIsomorphism("sizes differ".into()));
        }
        let mut inverse = vec![None; n];
        for (a, &fa) in forward.iter().enumerate() {
            if !target.contains(fa) {
                return Err(MapError::OutOfRange(fa.0));
            }
            if inverse[fa.0].replace(ElementId(a)).is_some() {
                return Err(MapError::NotIsomorphism(format!("{} is hit twice", target.label(fa))));
            }
        }
        let inverse: Vec<ElementId> = inverse.into_iter().map(Option::unwrap).collect();
        let iso = Isomorphism { source, target, forward, inverse };
        iso.check_preservation()?;
        Ok(iso)
    }

    fn check_preservation(&self) -> Result<(), MapError> {
        let (s, t) = (&self.source, &self.target);
        for a in s.elements() {
            for b in s.elements() {
                if s.leq(a, b) != t.leq(self.apply(a), self.apply(b)) {
                    return Err(MapError::NotIsomorphism(format!(
                        "order not preserved at ({}, {})",
                        s.label(a),
                        s.label(b)
                    )));
                }
                if self.apply(s.mul(a, b)) != t.mul(self.apply(a), self.apply(b)) {
                    return Err(MapError::NotIsomorphism(format!(
                        "product not preserved at ({}, {})",
                        s.label(a),
                        s.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<Lattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Lattice> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.forward[a.0]
    }

    #[inline]
    pub fn apply_inverse(&self, a: ElementId) -> ElementId {
        self.inverse[a.0]
    }

    pub fn forward(&self) -> &[ElementId] {
        &self.forward
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, e)| e.0 == i)
    }

    /// Interprets a self-map as an automorphism, if it is one.
    pub fn from_self_map(map: &UnaryMap) -> Option<Isomorphism> {
        Isomorphism::new(map.lattice().clone(), map.lattice().clone(), map.table().to_vec()).ok()
    }

    /// Carries a map on the source over to the target: `a ↦ f(β(f⁻¹(a)))`.
    pub fn transport(&self, beta: &UnaryMap) -> Result<UnaryMap, MapError> {
        if !beta.is_on(&self.source) {
            return Err(MapError::LatticeMismatch);
        }
        Ok(UnaryMap::from_fn(self.target.clone(), beta.tag(), |a| self.apply(beta.apply(self.apply_inverse(a)))))
    }
}

/// All multiplicative lattice isomorphisms from `l1` to `l2`.
pub fn enumerate_isomorphisms(l1: &Arc<Lattice>, l2: &Arc<Lattice>) -> Vec<Isomorphism> {
    let n = l1.size();
    if l2.size() != n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut assignment: Vec<Option<ElementId>> = vec![None; n];
    let mut used = vec![false; n];
    extend_assignment(l1, l2, 0, &mut assignment, &mut used, &mut out);
    out
}

fn extend_assignment(
    l1: &Arc<Lattice>,
    l2: &Arc<Lattice>,
    next: usize,
    assignment: &mut Vec<Option<ElementId>>,
    used: &mut Vec<bool>,
    out: &mut Vec<Isomorphism>,
) {
    let n = l1.size();
    if next == n {
        let forward = assignment.iter().map(|e| e.unwrap()).collect();
        if let Ok(iso) = Isomorphism::new(l1.clone(), l2.clone(), forward) {
            out.push(iso);
        }
        return;
    }
    let a = ElementId(next);
    for candidate in l2.elements() {
        if used[candidate.0] {
            continue;
        }
        // partial consistency with every element already assigned
        let consistent = (0..next).all(|i| {
            let b = ElementId(i);
            let fb = assignment[i].unwrap();
            l1.leq(a, b) == l2.leq(candidate, fb)
                && l1.leq(b, a) == l2.leq(fb, candidate)
                && product_consistent(l1, l2, assignment, a, candidate, b, fb)
        }) && product_consistent(l1, l2, assignment, a, candidate, a, candidate);
        if !consistent {
            continue;
        }
        assignment[next] = Some(candidate);
        used[candidate.0] = true;
        extend_assignment(l1, l2, next + 1, assignment, used, out);
        assignment[next] = None;
        used[candidate.0] = false;
    }
}

fn product_consistent(
    l1: &Lattice,
    l2: &Lattice,
    assignment: &[Option<ElementId>],
    a: ElementId,
    fa: ElementId,
    b: ElementId,
    fb: ElementId,
) -> bool {
    let ab = l1.mul(a, b);
    let image = if ab == a {
        Some(fa)
    } else if ab == b {
        Some(fb)
    } else {
        assignment.get(ab.0).copied().flatten()
    };
    image.is_none_or(|img| img == l2.mul(fa, fb))
}

/// First `a` in the target with `β_s(f⁻¹(a)) != f⁻¹(β_t(a))`.
pub fn global_property_witness(
    f: &Isomorphism,
    beta_source: &UnaryMap,
    beta_target: &UnaryMap,
) -> Result<Option<ElementId>, MapError> {
    if !beta_source.is_on(&f.source) || !beta_target.is_on(&f.target) {
        return Err(MapError::LatticeMismatch);
    }
    Ok(f.target.elements().find(|&a| beta_source.apply(f.apply_inverse(a)) != f.apply_inverse(beta_target.apply(a))))
}

pub fn check_global_property(
    f: &Isomorphism,
    beta_source: &UnaryMap,
    beta_target: &UnaryMap,
) -> Result<bool, MapError> {
    Ok(global_property_witness(f, beta_source, beta_target)?.is_none())
}
