//! Finite multiplicative lattices.
//!
//! A [`Lattice`] stores its partial order as a full `n x n` relation and its
//! multiplication as an `n x n` table of element indices. Pairwise joins and
//! meets are precomputed from the order at construction time; construction
//! only checks that the tables are well formed; [`Lattice::validate`] checks
//! the axioms of a multiplicative lattice by exhaustive quantification.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Position of an element in the carrier of a specific lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Malformed input tables. Distinct from an axiom failure.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("lattice has no elements")]
    Empty,
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("order relation row {row} has length {len}, expected {n}")]
    RaggedOrder { row: usize, len: usize, n: usize },
    #[error("order relation has {rows} rows, expected {n}")]
    OrderRows { rows: usize, n: usize },
    #[error("multiplication table row {row} has length {len}, expected {n}")]
    RaggedMul { row: usize, len: usize, n: usize },
    #[error("multiplication table has {rows} rows, expected {n}")]
    MulRows { rows: usize, n: usize },
    #[error("product of {a} and {b} is {value}, outside 0..{n}")]
    MulOutOfRange { a: usize, b: usize, value: usize, n: usize },
    #[error("{which} index {index} outside 0..{n}")]
    BoundOutOfRange { which: &'static str, index: usize, n: usize },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("exponent must be at least 1")]
    ZeroExponent,
}

/// The axioms checked by [`Lattice::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    BottomLeast,
    TopGreatest,
    JoinExists,
    MeetExists,
    Commutativity,
    Associativity,
    Identity,
    ZeroAnnihilates,
    JoinDistributivity,
    Monotonicity,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::BottomLeast => "bottom_least",
            Axiom::TopGreatest => "top_greatest",
            Axiom::JoinExists => "join_exists",
            Axiom::MeetExists => "meet_exists",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Identity => "identity",
            Axiom::ZeroAnnihilates => "zero_annihilates",
            Axiom::JoinDistributivity => "join_distributivity",
            Axiom::Monotonicity => "monotonicity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One violated axiom with the lexicographically first witness tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    fn from_failures(failures: Vec<AxiomFailure>) -> Self {
        ValidationReport { ok: failures.is_empty(), failures }
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

/// A finite carrier with an order relation and a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    mul: Vec<usize>,
    bottom: usize,
    top: usize,
    join: Vec<Option<usize>>,
    meet: Vec<Option<usize>>,
}

impl Lattice {
    /// Builds a lattice from explicit tables. Only well-formedness is
    /// checked here; call [`Lattice::validate`] for the axioms.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        mul: Vec<Vec<usize>>,
        bottom: usize,
        top: usize,
    ) -> Result<Self, StructureError> {
        let n = labels.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(StructureError::DuplicateLabel(l.clone()));
            }
        }
        if leq.len() != n {
            return Err(StructureError::OrderRows { rows: leq.len(), n });
        }
        if mul.len() != n {
            return Err(StructureError::MulRows { rows: mul.len(), n });
        }
        let mut flat_leq = Vec::with_capacity(n * n);
        for (row, r) in leq.iter().enumerate() {
            if r.len() != n {
                return Err(StructureError::RaggedOrder { row, len: r.len(), n });
            }
            flat_leq.extend_from_slice(r);
        }
        let mut flat_mul = Vec::with_capacity(n * n);
        for (a, r) in mul.iter().enumerate() {
            if r.len() != n {
                return Err(StructureError::RaggedMul { row: a, len: r.len(), n });
            }
            for (b, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(StructureError::MulOutOfRange { a, b, value: v, n });
                }
            }
            flat_mul.extend_from_slice(r);
        }
        if bottom >= n {
            return Err(StructureError::BoundOutOfRange { which: "bottom", index: bottom, n });
        }
        if top >= n {
            return Err(StructureError::BoundOutOfRange { which: "top", index: top, n });
        }
        Ok(Self::from_flat(name.into(), labels, flat_leq, flat_mul, bottom, top))
    }

    /// Builds a lattice from an order predicate and a product function over
    /// indices `0..labels.len()`.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        mul: impl Fn(usize, usize) -> usize,
        bottom: usize,
        top: usize,
    ) -> Result<Self, StructureError> {
        let n = labels.len();
        let leq_rows = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
        let mul_rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::new(name, labels, leq_rows, mul_rows, bottom, top)
    }

    fn from_flat(
        name: String,
        labels: Vec<String>,
        leq: Vec<bool>,
        mul: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Self {
        let n = labels.len();
        let mut lat = Lattice { name, labels, n, leq, mul, bottom, top, join: Vec::new(), meet: Vec::new() };
        lat.join = (0..n * n).map(|i| lat.least_upper_bound(i / n, i % n)).collect();
        lat.meet = (0..n * n).map(|i| lat.greatest_lower_bound(i / n, i % n)).collect();
        lat
    }

    fn least_upper_bound(&self, a: usize, b: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.n).filter(|&u| self.le(a, u) && self.le(b, u)).collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.le(u, v)))
    }

    fn greatest_lower_bound(&self, a: usize, b: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.n).filter(|&l| self.le(l, a) && self.le(l, b)).collect();
        lowers.iter().copied().find(|&l| lowers.iter().all(|&v| self.le(v, l)))
    }

    #[inline]
    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e.0]
    }

    /// Looks up an element by its label.
    pub fn element(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label).map(ElementId)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_degenerate(&self) -> bool {
        self.bottom == self.top
    }

    pub fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }

    pub fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        e.0 < self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).map(ElementId)
    }

    /// Elements strictly below the top.
    pub fn proper_elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.elements().filter(move |&e| self.is_proper(e))
    }

    pub fn is_proper(&self, e: ElementId) -> bool {
        !self.le(self.top, e.0)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.le(a.0, b.0)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.le(a.0, b.0)
    }

    /// Least upper bound of two elements.
    ///
    /// Panics if the order has no such bound; validated lattices always do.
    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        match self.join[a.0 * self.n + b.0] {
            Some(j) => ElementId(j),
            None => panic!("{}: no join of {} and {}", self.name, self.label(a), self.label(b)),
        }
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        match self.meet[a.0 * self.n + b.0] {
            Some(m) => ElementId(m),
            None => panic!("{}: no meet of {} and {}", self.name, self.label(a), self.label(b)),
        }
    }

    /// Join of a finite set; the empty join is the bottom.
    pub fn join_all(&self, set: impl IntoIterator<Item = ElementId>) -> ElementId {
        set.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of a finite set; the empty meet is the top.
    pub fn meet_all(&self, set: impl IntoIterator<Item = ElementId>) -> ElementId {
        set.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.product(a.0, b.0))
    }

    /// `a^k` by repeated multiplication, `k >= 1`.
    pub fn power(&self, a: ElementId, k: u32) -> Result<ElementId, LatticeError> {
        if k == 0 {
            return Err(LatticeError::ZeroExponent);
        }
        Ok(self.pow(a, k))
    }

    pub(crate) fn pow(&self, a: ElementId, k: u32) -> ElementId {
        debug_assert!(k >= 1);
        let mut acc = a;
        for _ in 1..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn square(&self, a: ElementId) -> ElementId {
        self.mul(a, a)
    }

    /// Hasse covering pairs `(a, b)` with `a` covered by `b`.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b || !self.le(a, b) {
                    continue;
                }
                let between = (0..self.n).any(|c| c != a && c != b && self.le(a, c) && self.le(c, b));
                if !between {
                    out.push((ElementId(a), ElementId(b)));
                }
            }
        }
        out
    }

    /// Copy of this lattice with the single ordered entry `mul[a][b]`
    /// replaced. Commutativity is not restored.
    pub fn with_mul_entry(&self, a: ElementId, b: ElementId, value: ElementId) -> Lattice {
        let mut out = self.clone();
        out.mul[a.0 * self.n + b.0] = value.0;
        out
    }

    /// Copy with both `mul[a][b]` and `mul[b][a]` replaced.
    pub fn with_symmetric_mul_entry(&self, a: ElementId, b: ElementId, value: ElementId) -> Lattice {
        let mut out = self.with_mul_entry(a, b, value);
        out.mul[b.0 * self.n + a.0] = value.0;
        out
    }

    /// Exhaustively checks every multiplicative-lattice axiom.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut failures = Vec::new();
        let mut record = |axiom: Axiom, witness: Option<Vec<usize>>| {
            if let Some(w) = witness {
                failures.push(AxiomFailure { axiom, witness: w.into_iter().map(ElementId).collect() });
            }
        };

        record(Axiom::Reflexivity, (0..n).find(|&a| !self.le(a, a)).map(|a| vec![a]));
        record(
            Axiom::Antisymmetry,
            pairs(n).find(|&(a, b)| a != b && self.le(a, b) && self.le(b, a)).map(|(a, b)| vec![a, b]),
        );
        record(
            Axiom::Transitivity,
            triples(n)
                .find(|&(a, b, c)| self.le(a, b) && self.le(b, c) && !self.le(a, c))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        record(Axiom::BottomLeast, (0..n).find(|&a| !self.le(self.bottom, a)).map(|a| vec![a]));
        record(Axiom::TopGreatest, (0..n).find(|&a| !self.le(a, self.top)).map(|a| vec![a]));
        let join_ok = self.join.iter().all(Option::is_some);
        record(Axiom::JoinExists, pairs(n).find(|&(a, b)| self.join[a * n + b].is_none()).map(|(a, b)| vec![a, b]));
        record(Axiom::MeetExists, pairs(n).find(|&(a, b)| self.meet[a * n + b].is_none()).map(|(a, b)| vec![a, b]));
        record(
            Axiom::Commutativity,
            pairs(n).find(|&(a, b)| self.product(a, b) != self.product(b, a)).map(|(a, b)| vec![a, b]),
        );
        record(
            Axiom::Associativity,
            triples(n)
                .find(|&(a, b, c)| self.product(self.product(a, b), c) != self.product(a, self.product(b, c)))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        record(
            Axiom::Identity,
            (0..n).find(|&a| self.product(a, self.top) != a || self.product(self.top, a) != a).map(|a| vec![a]),
        );
        record(
            Axiom::ZeroAnnihilates,
            (0..n)
                .find(|&a| self.product(a, self.bottom) != self.bottom || self.product(self.bottom, a) != self.bottom)
                .map(|a| vec![a]),
        );
        if join_ok {
            let j = |a: usize, b: usize| self.join[a * n + b].unwrap();
            record(
                Axiom::JoinDistributivity,
                triples(n)
                    .find(|&(a, b, c)| {
                        self.product(a, j(b, c)) != j(self.product(a, b), self.product(a, c))
                            || self.product(j(b, c), a) != j(self.product(b, a), self.product(c, a))
                    })
                    .map(|(a, b, c)| vec![a, b, c]),
            );
        }
        record(
            Axiom::Monotonicity,
            triples(n)
                .find(|&(a, b, c)| {
                    self.le(b, c)
                        && (!self.le(self.product(a, b), self.product(a, c))
                            || !self.le(self.product(b, a), self.product(c, a)))
                })
                .map(|(a, b, c)| vec![a, b, c]),
        );

        ValidationReport::from_failures(failures)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}
