//! Graphviz export.
//!
//! Every transition `s -a-> pi` becomes a solid edge labelled `a` from `s`
//! to a small point node, followed by dashed edges labelled with the
//! probabilities to the support of `pi`.

use std::fmt::Write as _;

use mimicry_core::Pts;

/// Renders `pts` as a DOT digraph.
pub fn to_dot(pts: &Pts) -> String {
    let mut out = String::from("digraph pts {\n    node [shape=circle];\n");
    for s in pts.processes() {
        writeln!(out, "    p{} [label={}];", s.index(), quote(pts.name(s))).unwrap();
    }
    let mut next = 0usize;
    for s in pts.processes() {
        for (a, dist) in pts.transitions(s) {
            let node = format!("d{next}");
            next += 1;
            writeln!(out, "    {node} [shape=point];").unwrap();
            writeln!(out, "    p{} -> {node} [label={}];", s.index(), quote(a.as_str())).unwrap();
            for (t, w) in dist.iter() {
                writeln!(out, "    {node} -> p{} [style=dashed, label=\"{w}\"];", t.index()).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}
