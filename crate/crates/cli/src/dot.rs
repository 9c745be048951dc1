//! Hasse diagrams in DOT.
//!
//! Solid edges are covers of `<=`. A dashed gray edge `x -> y` marks
//! `x ⊑ y` where `x <= y` fails. Extension classes that are images of
//! source elements get a double border.

use std::fmt::Write as _;

use specsemi::{Extension, SpecSemilattice};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn render(name: &str, s: &SpecSemilattice, labels: &[String], marked: &[bool]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for x in s.elements() {
        let extra = if marked[x] { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  n{x} [label={}{extra}];", quote(&labels[x]));
    }
    for (x, y) in s.base().covers() {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    for (x, y) in s.spec_pairs() {
        if x != y && !s.leq(x, y) {
            let _ = writeln!(
                out,
                "  n{x} -> n{y} [style=dashed, color=gray, constraint=false];"
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn structure_dot(name: &str, s: &SpecSemilattice) -> String {
    let labels: Vec<String> = s.base().labels().to_vec();
    render(name, s, &labels, &vec![false; s.size()])
}

pub fn extension_dot(name: &str, e: &Extension) -> String {
    let r = e.result();
    let labels: Vec<String> = (0..e.class_count()).map(|c| e.class_label(c)).collect();
    let mut marked = vec![false; r.size()];
    for &c in e.upsilon() {
        marked[c] = true;
    }
    render(name, r, &labels, &marked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use specsemi::JoinSemilattice;

    #[test]
    fn singleton_has_no_edges() {
        let d = structure_dot("one", &SpecSemilattice::discrete(JoinSemilattice::chain(1)));
        assert!(!d.contains("->"));
        assert!(d.contains("n0 [label=\"0\"]"));
    }

    #[test]
    fn chain_has_one_cover() {
        let d = structure_dot("c", &SpecSemilattice::discrete(JoinSemilattice::chain(2)));
        assert_eq!(d.matches("->").count(), 1);
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
