use std::collections::VecDeque;

use super::{CoreMode, Edge, Folding};

/// Breadth-first relabelling of a folded connected graph from its
/// basepoint, visiting directions in the order `a, b, ..., a^-1, b^-1, ...`.
///
/// Two folded graphs are isomorphic as basepointed labelled graphs iff
/// their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub rank: usize,
    pub vertex_count: usize,
    /// `(source, label, target)` sorted; the basepoint is vertex 0.
    pub edges: Vec<(usize, u8, usize)>,
}

impl CanonicalForm {
    pub fn to_folding(&self) -> Folding {
        let alphabet = crate::freegroup::Alphabet::new(self.rank).expect("valid rank");
        Folding::from_parts(
            alphabet,
            self.vertex_count,
            self.edges
                .iter()
                .map(|&(source, label, target)| Edge {
                    source,
                    target,
                    label,
                })
                .collect(),
            0,
            true,
            CoreMode::Raw,
        )
    }
}

/// Vertex order used by [`canonical_form`]: `order[old] = new`.
pub(crate) fn canonical_order(g: &Folding) -> Vec<usize> {
    debug_assert!(g.is_folded());
    let adj = g.adjacency();
    let mut order = vec![usize::MAX; g.vertex_count()];
    let mut next = 0;
    let mut queue = VecDeque::from([g.basepoint()]);
    order[g.basepoint()] = next;
    next += 1;
    while let Some(v) = queue.pop_front() {
        for l in g.alphabet().letters() {
            let Some(id) = adj.edge(v, l) else { continue };
            let e = g.edges()[id];
            let w = if l.is_inverse() { e.source } else { e.target };
            if order[w] == usize::MAX {
                order[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    // unreachable vertices keep their relative order at the end
    for o in order.iter_mut().filter(|o| **o == usize::MAX) {
        *o = next;
        next += 1;
    }
    order
}

pub fn canonical_form(g: &Folding) -> CanonicalForm {
    let order = canonical_order(g);
    let mut edges: Vec<(usize, u8, usize)> = g
        .edges()
        .iter()
        .map(|e| (order[e.source], e.label, order[e.target]))
        .collect();
    edges.sort_unstable();
    CanonicalForm {
        rank: g.alphabet().rank(),
        vertex_count: g.vertex_count(),
        edges,
    }
}
