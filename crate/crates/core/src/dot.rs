//! Graphviz output of Hasse diagrams.

use std::fmt::Write;

use crate::lattice::FiniteLattice;
use crate::quasicolor::AuxStructure;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Hasse diagram of `l`: one node per element, one edge per covering
/// pair, drawn bottom to top. `edge_label` may annotate the edges.
pub fn hasse(l: &FiniteLattice, edge_label: Option<&dyn Fn(usize, usize) -> String>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in 0..l.size() {
        writeln!(out, "  {x} [label={}];", quote(l.label(x))).unwrap();
    }
    for (x, y) in l.cover_pairs() {
        match edge_label {
            Some(f) => writeln!(out, "  {x} -> {y} [label={}];", quote(&f(x, y))).unwrap(),
            None => writeln!(out, "  {x} -> {y};").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// The Hasse diagram with each covering pair labeled by its color.
pub fn colored_hasse(a: &AuxStructure) -> String {
    let label = |x: usize, y: usize| a.color_labels[a.gamma.get(x, y)].clone();
    hasse(&a.lattice, Some(&label))
}
