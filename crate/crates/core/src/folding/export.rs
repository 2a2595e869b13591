//! Text, JSON and Graphviz renderings of a folding. All three name vertices
//! by their canonical-form index, so the basepoint is always `0`.
//!
//! DOT output uses `shape=doublecircle` for the basepoint, `shape=circle`
//! for other vertices, and one `label="x"` attribute per edge.

use std::fmt::Write;

use serde::Serialize;

use super::canonical::canonical_form;
use super::{Folding, SubgroupIndex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeJson {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldingJson {
    pub alphabet_rank: usize,
    pub vertices: usize,
    pub basepoint: usize,
    pub edges: Vec<EdgeJson>,
    pub rank: usize,
    pub index: SubgroupIndex,
}

pub fn to_json(g: &Folding) -> FoldingJson {
    let c = canonical_form(g);
    let alphabet = g.alphabet();
    FoldingJson {
        alphabet_rank: c.rank,
        vertices: c.vertex_count,
        basepoint: 0,
        edges: c
            .edges
            .iter()
            .map(|&(source, label, target)| EdgeJson {
                source,
                target,
                label: alphabet.name(label as usize).to_string(),
            })
            .collect(),
        rank: g.rank(),
        index: g.subgroup_index(),
    }
}

pub fn to_text(g: &Folding) -> String {
    let c = canonical_form(g);
    let alphabet = g.alphabet();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "vertices {} edges {} basepoint 0 rank {}",
        c.vertex_count,
        c.edges.len(),
        g.rank()
    );
    for &(s, l, t) in &c.edges {
        let _ = writeln!(out, "{s} -{}-> {t}", alphabet.name(l as usize));
    }
    out
}

pub fn to_dot(g: &Folding) -> String {
    let c = canonical_form(g);
    let alphabet = g.alphabet();
    let mut out = String::from("digraph folding {\n");
    for v in 0..c.vertex_count {
        let shape = if v == 0 { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {v} [shape={shape}];");
    }
    for &(s, l, t) in &c.edges {
        let _ = writeln!(
            out,
            "  {s} -> {t} [label=\"{}\"];",
            alphabet.name(l as usize)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{parse_word_list, Alphabet};

    fn folded(s: &str) -> Folding {
        let f2 = Alphabet::rank2();
        Folding::from_generators(f2, &parse_word_list(f2, s).unwrap()).unwrap()
    }

    #[test]
    fn dot_output() {
        let dot = to_dot(&folded("aa,b"));
        assert_eq!(
            dot,
            "digraph folding {\n  0 [shape=doublecircle];\n  1 [shape=circle];\n  \
             0 -> 1 [label=\"a\"];\n  0 -> 0 [label=\"b\"];\n  1 -> 0 [label=\"a\"];\n}\n"
        );
    }

    #[test]
    fn text_output() {
        assert_eq!(
            to_text(&folded("abA")),
            "vertices 2 edges 2 basepoint 0 rank 1\n0 -a-> 1\n1 -b-> 1\n"
        );
    }

    #[test]
    fn json_output() {
        let j = serde_json::to_value(to_json(&folded("a,b"))).unwrap();
        assert_eq!(j["vertices"], 1);
        assert_eq!(j["rank"], 2);
        assert_eq!(j["index"]["finite"], 1);
        assert_eq!(j["edges"][0]["label"], "a");
    }
}
