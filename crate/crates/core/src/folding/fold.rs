//! The folding procedure. Vertices and edges live in union-find forests;
//! every vertex class owns one slot per letter-direction, and a merge that
//! finds two edges in one slot identifies them and schedules the merge of
//! their far endpoints.

use std::collections::VecDeque;

use super::{CoreMode, Edge, Folding};
use crate::freegroup::Letter;

/// Record of which input edges were identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldTrace {
    /// Input edge id to output edge id.
    pub edge_class: Vec<usize>,
    /// Output edge id to the number of input edges merged into it.
    pub class_size: Vec<usize>,
    /// Number of edge identifications performed.
    pub fold_count: usize,
}

impl FoldTrace {
    /// Whether input edge `e` was identified with some other edge.
    pub fn was_folded(&self, e: usize) -> bool {
        self.class_size[self.edge_class[e]] > 1
    }
}

/// Order in which pending vertex merges are processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Worklist {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns the surviving root, or `None` if already joined.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return None;
        }
        let (big, small) = if self.size[a] >= self.size[b] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        Some(big)
    }
}

struct Workspace<'g> {
    graph: &'g Folding,
    width: usize,
    vertices: UnionFind,
    edges: UnionFind,
    slots: Vec<Option<usize>>,
    pending: VecDeque<(usize, usize)>,
    discipline: Worklist,
    folds: usize,
}

impl<'g> Workspace<'g> {
    fn slot(&self, v: usize, l: Letter) -> usize {
        v * self.width + l.slot(self.width / 2)
    }

    /// Endpoint of edge `e` reached by leaving along direction `l`.
    fn far_end(&self, e: usize, l: Letter) -> usize {
        let edge = self.graph.edges[e];
        if l.is_inverse() {
            edge.source
        } else {
            edge.target
        }
    }

    fn identify_edges(&mut self, a: usize, b: usize) -> bool {
        if self.edges.union(a, b).is_some() {
            self.folds += 1;
            true
        } else {
            false
        }
    }

    fn schedule(&mut self, u: usize, v: usize) {
        self.pending.push_back((u, v));
    }

    fn next_pending(&mut self) -> Option<(usize, usize)> {
        match self.discipline {
            Worklist::Fifo => self.pending.pop_front(),
            Worklist::Lifo => self.pending.pop_back(),
        }
    }

    fn insert_edge(&mut self, id: usize) {
        let e = self.graph.edges[id];
        let x = Letter::positive(e.label);
        let s = self.vertices.find(e.source);
        let t = self.vertices.find(e.target);
        let out = self.slot(s, x);
        if let Some(other) = self.slots[out] {
            self.identify_edges(id, other);
            let far = self.far_end(other, x);
            self.schedule(t, far);
            return;
        }
        let inn = self.slot(t, x.inv());
        if let Some(other) = self.slots[inn] {
            self.identify_edges(id, other);
            let far = self.far_end(other, x.inv());
            self.schedule(s, far);
            return;
        }
        self.slots[out] = Some(id);
        self.slots[inn] = Some(id);
    }

    fn merge_vertices(&mut self, u: usize, v: usize) {
        let (u, v) = (self.vertices.find(u), self.vertices.find(v));
        let Some(root) = self.vertices.union(u, v) else {
            return;
        };
        let absorbed = if root == u { v } else { u };
        for k in 0..self.width {
            let l = Letter::from_slot(k, self.width / 2);
            let from = absorbed * self.width + k;
            let to = root * self.width + k;
            let Some(moving) = self.slots[from].take() else {
                continue;
            };
            match self.slots[to] {
                None => self.slots[to] = Some(moving),
                Some(kept) => {
                    if self.identify_edges(moving, kept) {
                        let (a, b) = (self.far_end(moving, l), self.far_end(kept, l));
                        self.schedule(a, b);
                    }
                }
            }
        }
    }

    fn drain(&mut self) {
        while let Some((u, v)) = self.next_pending() {
            self.merge_vertices(u, v);
        }
    }
}

/// Folds `g` to a deterministic graph, inserting edges in id order and
/// processing merges first-in first-out.
pub fn fold(g: &Folding) -> (Folding, FoldTrace) {
    let order: Vec<usize> = (0..g.edges.len()).collect();
    fold_with(g, &order, Worklist::Fifo)
}

/// Folds `g`, inserting edges in the given order (a permutation of edge
/// ids) and processing pending merges with the given discipline. The
/// result is the same up to relabelling for every order.
pub fn fold_with(g: &Folding, order: &[usize], discipline: Worklist) -> (Folding, FoldTrace) {
    debug_assert_eq!(order.len(), g.edges.len());
    let width = 2 * g.alphabet.rank();
    let mut ws = Workspace {
        graph: g,
        width,
        vertices: UnionFind::new(g.vertex_count),
        edges: UnionFind::new(g.edges.len()),
        slots: vec![None; g.vertex_count * width],
        pending: VecDeque::new(),
        discipline,
        folds: 0,
    };
    for &id in order {
        ws.insert_edge(id);
        ws.drain();
    }

    // number surviving classes by smallest member
    let mut vertex_id = vec![usize::MAX; g.vertex_count];
    let mut vertex_count = 0;
    for v in 0..g.vertex_count {
        let r = ws.vertices.find(v);
        if vertex_id[r] == usize::MAX {
            vertex_id[r] = vertex_count;
            vertex_count += 1;
        }
    }
    let mut class_of_root = vec![usize::MAX; g.edges.len()];
    let mut edge_class = Vec::with_capacity(g.edges.len());
    let mut class_size = Vec::new();
    let mut edges = Vec::new();
    for id in 0..g.edges.len() {
        let r = ws.edges.find(id);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = edges.len();
            let e = g.edges[id];
            edges.push(Edge {
                source: vertex_id[ws.vertices.find(e.source)],
                target: vertex_id[ws.vertices.find(e.target)],
                label: e.label,
            });
            class_size.push(0);
        }
        let c = class_of_root[r];
        class_size[c] += 1;
        edge_class.push(c);
    }
    let basepoint = vertex_id[ws.vertices.find(g.basepoint)];
    let folded = Folding::from_parts(
        g.alphabet,
        vertex_count,
        edges,
        basepoint,
        true,
        if g.folded { g.core_mode } else { CoreMode::Raw },
    );
    debug_assert!(folded.is_deterministic());
    let trace = FoldTrace {
        edge_class,
        class_size,
        fold_count: ws.folds,
    };
    (folded, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::canonical_form;
    use crate::freegroup::{parse_word_list, Alphabet};

    fn rose(s: &str) -> Folding {
        Folding::rose(
            Alphabet::rank2(),
            &parse_word_list(Alphabet::rank2(), s).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn fold_conjugate_generator() {
        let (g, t) = fold(&rose("a,baB"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 3));
        assert_eq!(t.fold_count, 1);
        assert!(g.is_deterministic());
        let loops_a = g
            .edges()
            .iter()
            .filter(|e| e.label == 0 && e.source == e.target)
            .count();
        assert_eq!(loops_a, 2);
    }

    #[test]
    fn fold_already_deterministic() {
        let (g, t) = fold(&rose("aa,b"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 3));
        assert_eq!(t.fold_count, 0);
        assert!(t.class_size.iter().all(|&c| c == 1));
    }

    #[test]
    fn fold_duplicate_generator() {
        let (g, t) = fold(&rose("a,a"));
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert_eq!(t.fold_count, 1);
        assert!(t.was_folded(0) && t.was_folded(1));
    }

    #[test]
    fn fold_count_is_edge_difference() {
        for s in ["abA,aab,BBa", "abab,baba,aBAb", "aaa,aaaa", "abA,aBA"] {
            let r = rose(s);
            let (g, t) = fold(&r);
            assert_eq!(t.fold_count, r.edge_count() - g.edge_count(), "{s}");
            assert_eq!(t.class_size.iter().sum::<usize>(), r.edge_count());
        }
    }

    #[test]
    fn fold_orders_agree() {
        let r = rose("abAB,bbaBA,aab,BaBaB");
        let (g0, _) = fold(&r);
        let rev: Vec<usize> = (0..r.edge_count()).rev().collect();
        let (g1, _) = fold_with(&r, &rev, Worklist::Lifo);
        assert_eq!(canonical_form(&g0), canonical_form(&g1));
    }

    #[test]
    fn non_reduced_cycle_folds_to_a_tree() {
        // the closed path a a^-1 collapses to one hanging edge
        let r = Folding::from_parts(
            Alphabet::rank2(),
            2,
            vec![
                Edge {
                    source: 0,
                    target: 1,
                    label: 0,
                },
                Edge {
                    source: 0,
                    target: 1,
                    label: 0,
                },
            ],
            0,
            false,
            CoreMode::Raw,
        );
        let (g, _) = fold(&r);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.core(CoreMode::CoreWithBasepoint).vertex_count(), 1);
    }
}
