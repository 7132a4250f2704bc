//! Corpus lattices and the line-oriented lattice file format.
//!
//! ```text
//! lattice Z8
//! elements (0) (2) (4) (1)
//! bottom (0)
//! top (1)
//! cover (0) < (4)
//! cover (4) < (2)
//! cover (2) < (1)
//! mul (0) * (0) = (0)
//! mul (2) * (2) = (4)
//! ...
//! ```
//!
//! `#` starts a comment. Products with the top may be omitted.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{ElementId, Lattice, StructureError, ValidationReport};

pub const MAX_ZN: u64 = 1_000_000;
pub const MAX_BOOLEAN_ATOMS: usize = 6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConstructionError {
    #[error("Z_n needs n >= 2, got {0}")]
    ZnTooSmall(u64),
    #[error("Z_n limited to n <= {MAX_ZN}, got {0}")]
    ZnTooLarge(u64),
    #[error("boolean frame limited to {MAX_BOOLEAN_ATOMS} atoms, got {0}")]
    TooManyAtoms(usize),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("missing `{0}` line")]
    MissingHeader(&'static str),
    #[error("multiplication not total: no product for {a} * {b}")]
    MulNotTotal { a: String, b: String },
    #[error("line {line}: conflicting product for {a} * {b}")]
    ConflictingMul { line: usize, a: String, b: String },
    #[error("order closure violates antisymmetry between {a} and {b}")]
    Antisymmetry { a: String, b: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("lattice fails validation: {}", describe_failures(.0))]
    Validation(ValidationReport),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("invalid lattice source `{0}` (expected zn:<n>, chain:<k>, boolean:<k> or file:<path>)")]
    Source(String),
    #[error("json: {0}")]
    Json(String),
}

fn describe_failures(r: &ValidationReport) -> String {
    r.failures.iter().map(|f| f.axiom.name()).collect::<Vec<_>>().join(", ")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divisors of `n` in carrier order: `n` first (the zero ideal), then the
/// proper divisors above 1 ascending, then 1.
fn zn_carrier(n: u64) -> Vec<u64> {
    let mut ds = vec![n];
    ds.extend((2..n).filter(|d| n.is_multiple_of(*d)));
    ds.push(1);
    ds
}

/// Lattice of ideals of `Z_n`: the ideal `(d)` for each divisor `d`.
pub fn zn_ideal_lattice(n: u64) -> Result<Lattice, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::ZnTooSmall(n));
    }
    if n > MAX_ZN {
        return Err(ConstructionError::ZnTooLarge(n));
    }
    let ds = zn_carrier(n);
    let labels = ds.iter().map(|&d| if d == n { "(0)".to_string() } else { format!("({d})") }).collect();
    let index = |d: u64| ds.iter().position(|&x| x == d).unwrap();
    let l = Lattice::from_fn(
        format!("Z{n}"),
        labels,
        |a, b| ds[a].is_multiple_of(ds[b]),
        |a, b| index(gcd(ds[a] * ds[b], n)),
        0,
        ds.len() - 1,
    )
    .expect("divisor tables are well formed");
    Ok(l)
}

/// Chain `0 < c1 < ... < 1` of `k + 1` elements with multiplication = meet.
pub fn chain_frame(k: usize) -> Lattice {
    let labels = (0..=k)
        .map(|i| match i {
            _ if i == k => "1".to_string(),
            0 => "0".to_string(),
            _ => format!("c{i}"),
        })
        .collect();
    Lattice::from_fn(format!("chain{k}"), labels, |a, b| a <= b, |a, b| a.min(b), 0, k)
        .expect("chain tables are well formed")
}

/// Powerset of `k` atoms with multiplication = meet (intersection).
pub fn boolean_frame(k: usize) -> Result<Lattice, ConstructionError> {
    if k > MAX_BOOLEAN_ATOMS {
        return Err(ConstructionError::TooManyAtoms(k));
    }
    let full = (1usize << k) - 1;
    let labels = (0..=full)
        .map(|s| {
            if s == full {
                "1".to_string()
            } else if s == 0 {
                "0".to_string()
            } else {
                (0..k).filter(|i| s & (1 << i) != 0).map(|i| (b'a' + i as u8) as char).collect()
            }
        })
        .collect();
    Ok(Lattice::from_fn(format!("bool{k}"), labels, |a, b| a & b == a, |a, b| a & b, 0, full)
        .expect("powerset tables are well formed"))
}

/// Where a lattice comes from, as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSource {
    Zn(u64),
    Chain(usize),
    Boolean(usize),
    File(PathBuf),
}

impl FromStr for LatticeSource {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::Source(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "zn" => arg.parse().map(LatticeSource::Zn).map_err(|_| bad()),
            "chain" => arg.parse().map(LatticeSource::Chain).map_err(|_| bad()),
            "boolean" | "bool" => arg.parse().map(LatticeSource::Boolean).map_err(|_| bad()),
            "file" => Ok(LatticeSource::File(PathBuf::from(arg))),
            _ => Err(bad()),
        }
    }
}

impl LatticeSource {
    pub fn load(&self) -> Result<Lattice, ParseError> {
        match self {
            LatticeSource::Zn(n) => Ok(zn_ideal_lattice(*n)?),
            LatticeSource::Chain(k) => Ok(chain_frame(*k)),
            LatticeSource::Boolean(k) => Ok(boolean_frame(*k)?),
            LatticeSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| ParseError::Io { path: path.display().to_string(), message: e.to_string() })?;
                parse_lattice(&text)
            }
        }
    }
}

fn lookup(labels: &[String], label: &str, line: usize) -> Result<usize, ParseError> {
    labels.iter().position(|l| l == label).ok_or_else(|| ParseError::UnknownLabel { line, label: label.to_string() })
}

/// Assembles and validates a lattice from Hasse covers and product triples.
/// Each cover and product carries the source line it came from (0 if none).
fn assemble(
    name: String,
    labels: Vec<String>,
    bottom: usize,
    top: usize,
    covers: &[(usize, usize)],
    products: &[(usize, usize, usize, usize)],
) -> Result<Lattice, ParseError> {
    let n = labels.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in covers {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if leq[a][b] && leq[b][a] {
                return Err(ParseError::Antisymmetry { a: labels[a].clone(), b: labels[b].clone() });
            }
        }
    }

    let mut mul: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for &(line, a, b, c) in products {
        for (x, y) in [(a, b), (b, a)] {
            match mul[x][y] {
                Some(prev) if prev != c => {
                    return Err(ParseError::ConflictingMul { line, a: labels[a].clone(), b: labels[b].clone() })
                }
                _ => mul[x][y] = Some(c),
            }
        }
    }
    for a in 0..n {
        mul[a][top].get_or_insert(a);
        mul[top][a].get_or_insert(a);
    }
    let mut table = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            row.push(mul[a][b].ok_or_else(|| ParseError::MulNotTotal { a: labels[a].clone(), b: labels[b].clone() })?);
        }
        table.push(row);
    }

    let lattice = Lattice::new(name, labels, leq, table, bottom, top)?;
    let report = lattice.validate();
    if !report.ok {
        return Err(ParseError::Validation(report));
    }
    Ok(lattice)
}

/// Parses the lattice file format. The result is validated.
pub fn parse_lattice(text: &str) -> Result<Lattice, ParseError> {
    let mut name = None;
    let mut labels: Option<Vec<String>> = None;
    let mut bottom = None;
    let mut top = None;
    let mut covers = Vec::new();
    let mut products = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, rest)) = tokens.split_first() else {
            continue;
        };
        let syntax = |message: &str| ParseError::Syntax { line, message: message.to_string() };
        let need_labels = || labels.as_ref().ok_or_else(|| syntax("`elements` must come first"));
        match keyword {
            "lattice" => match rest {
                [n] => name = Some(n.to_string()),
                _ => return Err(syntax("expected `lattice <name>`")),
            },
            "elements" => {
                if rest.is_empty() {
                    return Err(syntax("expected at least one element"));
                }
                labels = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "bottom" | "top" => {
                let ls = need_labels()?;
                let [label] = rest else {
                    return Err(syntax("expected a single label"));
                };
                let idx = lookup(ls, label, line)?;
                if keyword == "bottom" {
                    bottom = Some(idx);
                } else {
                    top = Some(idx);
                }
            }
            "cover" => {
                let ls = need_labels()?;
                let [a, "<", b] = rest else {
                    return Err(syntax("expected `cover <a> < <b>`"));
                };
                covers.push((lookup(ls, a, line)?, lookup(ls, b, line)?));
            }
            "mul" => {
                let ls = need_labels()?;
                let [a, "*", b, "=", c] = rest else {
                    return Err(syntax("expected `mul <a> * <b> = <c>`"));
                };
                products.push((line, lookup(ls, a, line)?, lookup(ls, b, line)?, lookup(ls, c, line)?));
            }
            other => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or(ParseError::MissingHeader("lattice"))?;
    let labels = labels.ok_or(ParseError::MissingHeader("elements"))?;
    let bottom = bottom.ok_or(ParseError::MissingHeader("bottom"))?;
    let top = top.ok_or(ParseError::MissingHeader("top"))?;
    assemble(name, labels, bottom, top, &covers, &products)
}

/// Writes the lattice file format. Products with the top are omitted when
/// they are the identity.
pub fn serialize(l: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "lattice {}", l.name()).unwrap();
    writeln!(out, "elements {}", l.labels().join(" ")).unwrap();
    writeln!(out, "bottom {}", l.label(l.bottom())).unwrap();
    writeln!(out, "top {}", l.label(l.top())).unwrap();
    for (a, b) in l.covers() {
        writeln!(out, "cover {} < {}", l.label(a), l.label(b)).unwrap();
    }
    for a in l.elements() {
        for b in l.elements().filter(|&b| b >= a) {
            let c = l.mul(a, b);
            let implied = (b == l.top() && c == a) || (a == l.top() && c == b);
            if !implied {
                writeln!(out, "mul {} * {} = {}", l.label(a), l.label(b), l.label(c)).unwrap();
            }
        }
    }
    out
}

/// Parses a unary map table: one `<from> -> <to>` line per element.
pub fn parse_map_table(l: &Lattice, text: &str) -> Result<Vec<ElementId>, ParseError> {
    let mut table: Vec<Option<ElementId>> = vec![None; l.size()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let [from, "->", to] = tokens[..] else {
            return Err(ParseError::Syntax { line, message: "expected `<from> -> <to>`".into() });
        };
        let from = lookup(l.labels(), from, line)?;
        let to = lookup(l.labels(), to, line)?;
        if table[from].replace(ElementId(to)).is_some() {
            return Err(ParseError::Syntax { line, message: format!("duplicate entry for {}", l.labels()[from]) });
        }
    }
    table
        .iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or_else(|| ParseError::Syntax { line: 0, message: format!("map has no entry for {}", l.labels()[i]) })
        })
        .collect()
}

/// JSON form of a lattice: labels, bounds, Hasse covers and products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub bottom: String,
    pub top: String,
    pub covers: Vec<[String; 2]>,
    pub mul: Vec<[String; 3]>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &Lattice) -> Self {
        let label = |e: ElementId| l.label(e).to_string();
        LatticeDoc {
            name: l.name().to_string(),
            elements: l.labels().to_vec(),
            bottom: label(l.bottom()),
            top: label(l.top()),
            covers: l.covers().into_iter().map(|(a, b)| [label(a), label(b)]).collect(),
            mul: l
                .elements()
                .flat_map(|a| l.elements().filter(move |&b| b >= a).map(move |b| (a, b)))
                .map(|(a, b)| [label(a), label(b), label(l.mul(a, b))])
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice, ParseError> {
        let ls = &self.elements;
        let covers = self
            .covers
            .iter()
            .map(|[a, b]| Ok((lookup(ls, a, 0)?, lookup(ls, b, 0)?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        let products = self
            .mul
            .iter()
            .map(|[a, b, c]| Ok((0, lookup(ls, a, 0)?, lookup(ls, b, 0)?, lookup(ls, c, 0)?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        assemble(
            self.name.clone(),
            ls.clone(),
            lookup(ls, &self.bottom, 0)?,
            lookup(ls, &self.top, 0)?,
            &covers,
            &products,
        )
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub lattice: Arc<Lattice>,
    pub role: String,
}

/// Named list of validated lattices.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a lattice after validating it.
    pub fn push(&mut self, lattice: Lattice, role: impl Into<String>) -> Result<(), ParseError> {
        let report = lattice.validate();
        if !report.ok {
            return Err(ParseError::Validation(report));
        }
        self.entries.push(CorpusEntry { lattice: Arc::new(lattice), role: role.into() });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Lattice>> {
        self.entries.iter().map(|e| &e.lattice).find(|l| l.name() == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lattices(&self) -> impl Iterator<Item = &Arc<Lattice>> {
        self.entries.iter().map(|e| &e.lattice)
    }

    pub fn to_json(&self) -> String {
        let doc = CorpusDoc {
            lattices: self
                .entries
                .iter()
                .map(|e| CorpusDocEntry { role: e.role.clone(), lattice: LatticeDoc::from_lattice(&e.lattice) })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("corpus serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: CorpusDoc = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        let mut corpus = Corpus::new();
        for entry in doc.lattices {
            corpus.push(entry.lattice.to_lattice()?, entry.role)?;
        }
        Ok(corpus)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusDoc {
    lattices: Vec<CorpusDocEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusDocEntry {
    role: String,
    lattice: LatticeDoc,
}

/// The lattices every theorem run uses unless told otherwise.
pub fn default_corpus() -> Corpus {
    let mut corpus = Corpus::new();
    let zn_roles: [(u64, &str); 8] = [
        (4, "quasi-local Noether lattice with p^2 = m^2 <= p <= m"),
        (8, "worked example; isomorphic to Z27"),
        (12, "mixed nilpotent and idempotent elements"),
        (16, "chain of length 4"),
        (24, "worked example"),
        (27, "isomorphic to Z8"),
        (30, "worked example; Boolean"),
        (36, "product of two chains"),
    ];
    for (n, role) in zn_roles {
        corpus.push(zn_ideal_lattice(n).unwrap(), role).unwrap();
    }
    for k in 1..=3 {
        let role = if k == 1 { "local Noetherian domain" } else { "chain with mul = meet" };
        corpus.push(chain_frame(k), role).unwrap();
    }
    corpus.push(boolean_frame(2).unwrap(), "four-element Boolean frame").unwrap();
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(l: &Lattice) -> Vec<&str> {
        l.labels().iter().map(String::as_str).collect()
    }

    #[test]
    fn zn_carriers_match_worked_examples() {
        assert_eq!(labels(&zn_ideal_lattice(24).unwrap()), ["(0)", "(2)", "(3)", "(4)", "(6)", "(8)", "(12)", "(1)"]);
        assert_eq!(labels(&zn_ideal_lattice(30).unwrap()), ["(0)", "(2)", "(3)", "(5)", "(6)", "(10)", "(15)", "(1)"]);
        assert_eq!(labels(&zn_ideal_lattice(8).unwrap()), ["(0)", "(2)", "(4)", "(1)"]);
    }

    #[test]
    fn zn_rejects_out_of_range() {
        assert_eq!(zn_ideal_lattice(1).unwrap_err(), ConstructionError::ZnTooSmall(1));
        assert!(zn_ideal_lattice(MAX_ZN + 1).is_err());
        assert!(zn_ideal_lattice(2).unwrap().validate().ok);
    }

    #[test]
    fn frames() {
        let c1 = chain_frame(1);
        assert_eq!(c1.size(), 2);
        assert!(c1.validate().ok);
        let c0 = chain_frame(0);
        assert_eq!(c0.size(), 1);
        assert!(c0.is_degenerate());
        assert!(c0.validate().ok);
        let b2 = boolean_frame(2).unwrap();
        assert_eq!(labels(&b2), ["0", "a", "b", "1"]);
        assert_eq!(b2.mul(ElementId(1), ElementId(2)), b2.bottom());
        assert!(b2.validate().ok);
        assert_eq!(boolean_frame(0).unwrap().size(), 1);
    }

    #[test]
    fn default_corpus_members_validate() {
        let c = default_corpus();
        assert!(c.get("Z24").is_some());
        assert!(c.lattices().all(|l| l.validate().ok));
        assert_eq!(c.len(), 12);
    }

    #[test]
    fn round_trip_z8() {
        let l = zn_ideal_lattice(8).unwrap();
        let text = serialize(&l);
        assert_eq!(parse_lattice(&text).unwrap(), l);
    }

    #[test]
    fn missing_product_is_rejected() {
        let l = zn_ideal_lattice(8).unwrap();
        let text: String = serialize(&l)
            .lines()
            .filter(|line| *line != "mul (2) * (2) = (4)")
            .map(|line| format!("{line}\n"))
            .collect();
        let err = parse_lattice(&text).unwrap_err();
        assert_eq!(err, ParseError::MulNotTotal { a: "(2)".into(), b: "(2)".into() });
        assert!(err.to_string().contains("multiplication not total"));
    }

    #[test]
    fn cyclic_covers_are_rejected() {
        let text = "lattice bad\nelements 0 a b 1\nbottom 0\ntop 1\n\
                    cover 0 < a\ncover a < b\ncover b < a\ncover b < 1\n";
        assert!(matches!(parse_lattice(text), Err(ParseError::Antisymmetry { .. })));
    }

    #[test]
    fn parse_errors() {
        let text = "lattice t\nelements 0 1\nbottom 0\ntop 1\ncover 0 < x\n";
        assert!(matches!(parse_lattice(text), Err(ParseError::UnknownLabel { line: 5, .. })));
        let text = "elements 0 1\nbottom 0\ntop 1\n";
        assert_eq!(parse_lattice(text), Err(ParseError::MissingHeader("lattice")));
        let text = "lattice t\nelements 0 1\nbottom 0\ntop 1\ncover 0 < 1\nmul 0 * 0 = 0\nmul 0 * 0 = 1\n";
        assert!(matches!(parse_lattice(text), Err(ParseError::ConflictingMul { line: 7, .. })));
        // 1 * 1 = 0 breaks the identity axiom
        let text = "lattice t\nelements 0 1\nbottom 0\ntop 1\ncover 0 < 1\nmul 0 * 0 = 0\nmul 1 * 1 = 0\n";
        assert!(matches!(parse_lattice(text), Err(ParseError::Validation(_))));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text =
            "# two element frame\nlattice t # name\n\nelements 0 1\nbottom 0\ntop 1\ncover 0 < 1\nmul 0 * 0 = 0\n";
        let l = parse_lattice(text).unwrap();
        assert_eq!(l, {
            let mut c = chain_frame(1);
            c.set_name("t");
            c
        });
    }

    #[test]
    fn sources() {
        assert_eq!("zn:24".parse::<LatticeSource>().unwrap(), LatticeSource::Zn(24));
        assert_eq!("chain:2".parse::<LatticeSource>().unwrap(), LatticeSource::Chain(2));
        assert!("zn:x".parse::<LatticeSource>().is_err());
        assert!("ring:3".parse::<LatticeSource>().is_err());
        assert!(matches!(LatticeSource::Zn(1).load(), Err(ParseError::Construction(_))));
    }

    #[test]
    fn map_tables() {
        let l = zn_ideal_lattice(8).unwrap();
        let t = parse_map_table(&l, "(0) -> (2)\n(2) -> (2)\n(4) -> (2)\n(1) -> (1)\n").unwrap();
        assert_eq!(t, vec![ElementId(1), ElementId(1), ElementId(1), ElementId(3)]);
        assert!(parse_map_table(&l, "(0) -> (2)\n").is_err());
    }

    #[test]
    fn corpus_json_round_trip() {
        let c = default_corpus();
        let back = Corpus::from_json(&c.to_json()).unwrap();
        assert_eq!(back.len(), c.len());
        for (a, b) in c.lattices().zip(back.lattices()) {
            assert_eq!(**a, **b);
        }
    }
}
