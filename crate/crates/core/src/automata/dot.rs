use std::fmt::Write;

use super::Automaton;

/// Graphviz rendering. Nodes are emitted in state order and edges in
/// transition-id order; each edge is labeled `id:letter` (`ε` for
/// ε-transitions).
pub fn to_dot(a: &Automaton, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    write_body(a, "", "  ", &mut out);
    out.push_str("}\n");
    out
}

/// The node and edge statements of `a`, with node names prefixed by
/// `prefix` so that several automata can share one graph.
pub(crate) fn write_body(a: &Automaton, prefix: &str, indent: &str, out: &mut String) {
    writeln!(out, "{indent}rankdir=LR;").unwrap();
    writeln!(out, "{indent}\"{prefix}start\" [shape=point];").unwrap();
    for q in 0..a.num_states() {
        let shape = if a.is_final(q) { "doublecircle" } else { "circle" };
        writeln!(out, "{indent}\"{prefix}{q}\" [label=\"{q}\", shape={shape}];").unwrap();
    }
    writeln!(out, "{indent}\"{prefix}start\" -> \"{prefix}{}\";", a.initial()).unwrap();
    for (id, t) in a.transitions().iter().enumerate() {
        let label = t.label.map_or("ε".to_string(), |c| escape(&c.to_string()));
        writeln!(
            out,
            "{indent}\"{prefix}{}\" -> \"{prefix}{}\" [label=\"{id}:{label}\"];",
            t.from, t.to
        )
        .unwrap();
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::a_eps_b;
    use super::*;

    #[test]
    fn renders_nodes_and_epsilon() {
        let dot = to_dot(&a_eps_b(), "ab");
        assert!(dot.starts_with("digraph \"ab\" {"));
        assert_eq!(dot.matches("shape=circle").count() + dot.matches("shape=doublecircle").count(), 2);
        assert!(dot.contains("[label=\"1:ε\"]"));
        assert!(dot.contains("\"0\" -> \"0\" [label=\"0:a\"]"));
    }
}
