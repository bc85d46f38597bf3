//! Graphviz DOT rendering. Output is deterministic: vertices in numeric
//! order, edges in the canonical order of the structure being rendered.

use std::fmt::Write;

use crate::mothergraph::{ClassGraph, MotherGraph};
use crate::statemachine::HSMultigraph;

/// The mother graph, with the edges of `highlight` drawn in red.
pub fn mother_graph(m: &MotherGraph, highlight: Option<&ClassGraph>) -> String {
    let p = m.params();
    let mut out = String::new();
    writeln!(out, "digraph mother_{}_{} {{", p.n(), p.b()).unwrap();
    for d in 0..p.b() {
        let touched = highlight.is_some_and(|h| h.edges().any(|e| e.d1 == d || e.d2 == d));
        if touched {
            writeln!(out, "  {d} [color=red];").unwrap();
        } else {
            writeln!(out, "  {d};").unwrap();
        }
    }
    for &e in m.edges() {
        if highlight.is_some_and(|h| h.contains(e)) {
            writeln!(out, "  {} -> {} [color=red];", e.d1, e.d2).unwrap();
        } else {
            writeln!(out, "  {} -> {};", e.d1, e.d2).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// A permutiple (class) graph on the digits `0..base`.
pub fn class_graph(g: &ClassGraph, base: u32) -> String {
    let mut out = String::from("digraph class {\n");
    for d in 0..base {
        writeln!(out, "  {d};").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {} -> {} [color=red];", e.d1, e.d2).unwrap();
    }
    out.push_str("}\n");
    out
}

/// One vertex per carry state, one edge per multiedge labeled `d1,d2`.
/// State 0 is drawn as the initial and accepting state.
pub fn hs_multigraph(g: &HSMultigraph) -> String {
    let p = g.params();
    let mut out = String::new();
    writeln!(out, "digraph carry_states_{}_{} {{", p.n(), p.b()).unwrap();
    out.push_str("  start [shape=point];\n");
    for c in 0..g.state_count() {
        if c == 0 {
            out.push_str("  0 [shape=doublecircle];\n");
        } else {
            writeln!(out, "  {c} [shape=circle];").unwrap();
        }
    }
    out.push_str("  start -> 0;\n");
    for (e, copy) in g.numbered() {
        writeln!(
            out,
            "  {} -> {} [label=\"{},{}\", copy={}];",
            e.from, e.to, e.label.d1, e.label.d2, copy
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
