//! Graphviz export.

use std::fmt::Write as _;

use crate::median::MedianGraph;

const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph with one edge color per theta class. Vertices in
/// `marked` are drawn filled.
pub fn to_dot(g: &MedianGraph, marked: &[usize]) -> String {
    let mut out = String::from("graph median {\n  node [shape=circle];\n");
    for v in 0..g.len() {
        if marked.contains(&v) {
            let _ = writeln!(out, "  {} [style=filled, fillcolor=\"#ffd54f\"];", quote(g.name(v)));
        } else {
            let _ = writeln!(out, "  {};", quote(g.name(v)));
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = g.edge_class(e);
        let _ = writeln!(
            out,
            "  {} -- {} [color=\"{}\", label=\"{}\"];",
            quote(g.name(u)),
            quote(g.name(v)),
            PALETTE[c % PALETTE.len()],
            c
        );
    }
    out.push_str("}\n");
    out
}
