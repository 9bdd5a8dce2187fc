use std::fmt::Write;

use super::Rgp;

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz rendering; each arc becomes its own edge statement.
pub fn export_dot(p: &Rgp) -> String {
    let mut out = String::from("digraph rgp {\n");
    for name in p.vertex_names() {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for a in p.arcs() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(p.vertex_name(a.from)),
            quote(p.vertex_name(a.to)),
            quote(&a.label.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
