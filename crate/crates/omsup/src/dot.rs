//! Deterministic GraphViz rendering of automata.
//!
//! The drawing conventions are fixed: marker states are double circles,
//! acceptance (Büchi) states get a bold outline, controllable transitions
//! are solid, uncontrollable ones dashed, and — when a disablement ledger
//! is supplied — each event the supervisor holds back is drawn as a dotted
//! edge ending in a tee. The legend rides along as the graph label. Output
//! depends only on the input, byte for byte.

use std::fmt::Write as _;

use crate::automaton::Automaton;
use crate::solver::DisabledEvent;

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders an automaton (and, optionally, the events its supervisor keeps
/// disabled) as a GraphViz `digraph`.
pub fn export_dot(a: &Automaton, disabled: &[DisabledEvent]) -> String {
    let alphabet = a.alphabet();
    let mut out = String::new();
    out.push_str("digraph automaton {\n");
    out.push_str("  rankdir=LR;\n");
    let mut legend = String::new();
    if let Some(name) = a.name() {
        write!(legend, "{} — ", escape(name)).unwrap();
    }
    legend.push_str(
        "solid: controllable, dashed: uncontrollable, double circle: marker, bold: acceptance",
    );
    if !disabled.is_empty() {
        legend.push_str(", dotted tee: disabled");
    }
    writeln!(out, "  label=\"{legend}\";").unwrap();
    out.push_str("  labelloc=bottom;\n");
    out.push_str("  node [shape=circle];\n");
    if let Some(initial) = a.initial() {
        out.push_str("  __init [shape=point, label=\"\"];\n");
        writeln!(out, "  __init -> {initial};").unwrap();
    }
    for state in 0..a.num_states() {
        let mut attrs = vec![format!("label=\"{}\"", escape(a.label(state)))];
        if a.is_marked(state) {
            attrs.push("shape=doublecircle".to_string());
        }
        if a.is_buchi(state) {
            attrs.push("penwidth=2".to_string());
        }
        writeln!(out, "  {state} [{}];", attrs.join(", ")).unwrap();
    }
    for from in 0..a.num_states() {
        for (event, to) in a.transitions_from(from) {
            let mut attrs = vec![format!("label=\"{}\"", escape(alphabet.name(event)))];
            if !alphabet.is_controllable(event) {
                attrs.push("style=dashed".to_string());
            }
            writeln!(out, "  {from} -> {to} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (index, record) in disabled.iter().enumerate() {
        writeln!(out, "  __disabled_{index} [shape=point, label=\"\", width=0.05];").unwrap();
        writeln!(
            out,
            "  {} -> __disabled_{index} [label=\"{}\", style=dotted, arrowhead=tee];",
            record.state,
            escape(&record.event)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
