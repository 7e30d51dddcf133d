use super::FinPoset;
use std::fmt::Write;

/// Graphviz source for the Hasse (cover) diagram, drawn bottom to top.
pub fn hasse_dot(p: &FinPoset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (i, l) in p.labels().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(l)).unwrap();
    }
    for (x, y) in p.cover_pairs() {
        writeln!(out, "  n{x} -> n{y} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_dot() {
        let dot = hasse_dot(&FinPoset::chain(3), "c3");
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 -> n2"));
        assert!(!dot.contains("n0 -> n2"));
    }
}
