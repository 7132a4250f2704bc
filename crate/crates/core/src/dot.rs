//! Graphviz rendering of Hasse diagrams.

use std::fmt::Write as _;

use crate::lattice::Lattice;

/// A DOT digraph with one node per element and one edge per cover,
/// drawn from the upper element down. The bottom sits on the sink rank.
pub fn to_dot(l: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(l.name())).unwrap();
    for e in l.elements() {
        writeln!(out, "  n{} [label={}];", e.index(), quote(l.label(e))).unwrap();
    }
    for (lower, upper) in l.covers() {
        writeln!(out, "  n{} -> n{};", upper.index(), lower.index()).unwrap();
    }
    writeln!(out, "  {{ rank=sink; n{}; }}", l.bottom().index()).unwrap();
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
