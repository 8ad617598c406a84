use std::collections::BTreeMap;
use std::fmt::Write;

use crate::fa::{Dfa, Nfa, StateId};

/// Graphviz rendering. Parallel edges are merged into one edge with a
/// comma-separated label.
pub fn nfa_to_dot(n: &Nfa, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
    s.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for q in 0..n.num_states() as StateId {
        let shape = if n.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(s, "  {q} [shape={shape}];");
    }
    for (i, &q) in n.initial().iter().enumerate() {
        let _ = writeln!(s, "  init{i} [shape=point];\n  init{i} -> {q};");
    }
    let alpha = n.alphabet();
    for p in 0..n.num_states() as StateId {
        let mut by_target: BTreeMap<StateId, Vec<String>> = BTreeMap::new();
        for &(sym, q) in n.transitions(p) {
            by_target.entry(q).or_default().push(alpha.name(sym));
        }
        for (q, labels) in by_target {
            let _ = writeln!(s, "  {p} -> {q} [label=\"{}\"];", escape(&labels.join(",")));
        }
    }
    s.push_str("}\n");
    s
}

pub fn dfa_to_dot(d: &Dfa, name: &str) -> String {
    nfa_to_dot(&d.to_nfa(), name)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
