//! Stallings foldings: labelled graphs whose closed reduced paths at the
//! basepoint spell the elements of a subgroup.

mod canonical;
mod census;
mod export;
mod fold;

pub use canonical::{canonical_form, CanonicalForm};
pub use census::{rank_from_census, CensusError, DegreeCensus};
pub use export::{to_dot, to_json, to_text, FoldingJson};
pub use fold::{fold, fold_with, FoldTrace, Worklist};

use std::collections::VecDeque;

use serde::Serialize;

use crate::freegroup::{Alphabet, FreeGroupError, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Generator index; the edge reads `x` forwards and `x^-1` backwards.
    pub label: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreMode {
    Raw,
    CoreWithBasepoint,
    CyclicCore,
}

/// A basepointed, connected graph with edges labelled by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Folding {
    alphabet: Alphabet,
    vertex_count: usize,
    edges: Vec<Edge>,
    basepoint: usize,
    folded: bool,
    core_mode: CoreMode,
}

/// Per-vertex lookup of the edge read by each letter when leaving a vertex.
/// Only meaningful on folded graphs.
#[derive(Debug, Clone)]
pub struct Adjacency {
    width: usize,
    slots: Vec<Option<usize>>,
}

impl Adjacency {
    /// Edge read by `l` when leaving `v`.
    pub fn edge(&self, v: usize, l: Letter) -> Option<usize> {
        self.slots[v * self.width + l.slot(self.width / 2)]
    }
}

impl Folding {
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        vertex_count: usize,
        edges: Vec<Edge>,
        basepoint: usize,
        folded: bool,
        core_mode: CoreMode,
    ) -> Self {
        debug_assert!(basepoint < vertex_count);
        debug_assert!(edges
            .iter()
            .all(|e| e.source < vertex_count && e.target < vertex_count));
        Self {
            alphabet,
            vertex_count,
            edges,
            basepoint,
            folded,
            core_mode,
        }
    }

    /// The wedge of one labelled cycle per generator, joined at the
    /// basepoint. Identity words contribute nothing.
    pub fn rose(alphabet: Alphabet, gens: &[Word]) -> Result<Self, FreeGroupError> {
        let mut vertex_count = 1;
        let mut edges = Vec::new();
        for w in gens {
            alphabet.check_same(w.alphabet())?;
            let n = w.len();
            for (i, &l) in w.letters().iter().enumerate() {
                let from = if i == 0 { 0 } else { vertex_count + i - 1 };
                let to = if i + 1 == n { 0 } else { vertex_count + i };
                edges.push(oriented_edge(from, to, l));
            }
            vertex_count += n.saturating_sub(1);
        }
        Ok(Self {
            alphabet,
            vertex_count,
            edges,
            basepoint: 0,
            folded: false,
            core_mode: CoreMode::Raw,
        })
    }

    /// Builds `Γ_H` from a generating set: rose, fold, then prune hanging
    /// trees.
    pub fn from_generators(alphabet: Alphabet, gens: &[Word]) -> Result<Self, FreeGroupError> {
        let (folded, _) = fold(&Self::rose(alphabet, gens)?);
        Ok(folded.core(CoreMode::CoreWithBasepoint))
    }

    /// Coset graph of a subgroup of finite index given by one permutation
    /// of `0..n` per generator; `perms[x][v]` is the endpoint of the
    /// `x`-edge leaving `v`. The basepoint is vertex 0.
    pub fn from_permutations(alphabet: Alphabet, perms: &[Vec<usize>]) -> Option<Self> {
        if perms.len() != alphabet.rank() {
            return None;
        }
        let n = perms.first().map_or(1, Vec::len);
        let mut edges = Vec::new();
        for (x, p) in perms.iter().enumerate() {
            if p.len() != n {
                return None;
            }
            let mut seen = vec![false; n];
            for (v, &t) in p.iter().enumerate() {
                if t >= n || std::mem::replace(&mut seen[t], true) {
                    return None;
                }
                edges.push(Edge {
                    source: v,
                    target: t,
                    label: x as u8,
                });
            }
        }
        let g = Self {
            alphabet,
            vertex_count: n,
            edges,
            basepoint: 0,
            folded: true,
            core_mode: CoreMode::CyclicCore,
        };
        g.is_connected().then_some(g)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn is_folded(&self) -> bool {
        self.folded
    }

    pub fn core_mode(&self) -> CoreMode {
        self.core_mode
    }

    /// Undirected degree of every vertex; loops count twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.source] += 1;
            deg[e.target] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Adjacency {
        let width = 2 * self.alphabet.rank();
        let mut slots = vec![None; self.vertex_count * width];
        for (id, e) in self.edges.iter().enumerate() {
            let x = Letter::positive(e.label);
            slots[e.source * width + x.slot(width / 2)] = Some(id);
            slots[e.target * width + x.inv().slot(width / 2)] = Some(id);
        }
        Adjacency { width, slots }
    }

    /// Checks the folded-graph invariant: no two edges with one label share
    /// a source or a target.
    pub fn is_deterministic(&self) -> bool {
        let width = 2 * self.alphabet.rank();
        let mut used = vec![false; self.vertex_count * width];
        for e in &self.edges {
            let x = Letter::positive(e.label);
            for slot in [
                e.source * width + x.slot(width / 2),
                e.target * width + x.inv().slot(width / 2),
            ] {
                if std::mem::replace(&mut used[slot], true) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let nbrs = self.neighbours();
        let mut stack = vec![self.basepoint];
        seen[self.basepoint] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &nbrs[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.vertex_count
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut nbrs = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            nbrs[e.source].push(e.target);
            nbrs[e.target].push(e.source);
        }
        nbrs
    }

    /// Repeatedly deletes degree-1 vertices other than the basepoint. In
    /// [`CoreMode::CyclicCore`] the basepoint tail is also removed and the
    /// basepoint moves to where the tail was attached, which passes to a
    /// conjugate subgroup with no degree-1 vertices.
    pub fn core(&self, mode: CoreMode) -> Folding {
        if mode == CoreMode::Raw {
            return self.clone();
        }
        let mut deg = self.degrees();
        let mut alive_v = vec![true; self.vertex_count];
        let mut alive_e = vec![true; self.edges.len()];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            incident[e.source].push(id);
            if e.target != e.source {
                incident[e.target].push(id);
            }
        }
        let mut base = self.basepoint;

        // removes the single live edge at a degree-1 vertex, returns the
        // other endpoint
        let strip = |v: usize,
                     deg: &mut Vec<usize>,
                     alive_v: &mut Vec<bool>,
                     alive_e: &mut Vec<bool>|
         -> Option<usize> {
            let id = *incident[v].iter().find(|&&id| alive_e[id])?;
            let e = self.edges[id];
            let other = if e.source == v { e.target } else { e.source };
            alive_e[id] = false;
            alive_v[v] = false;
            deg[v] = 0;
            deg[other] -= 1;
            Some(other)
        };

        let mut queue: Vec<usize> = (0..self.vertex_count)
            .filter(|&v| deg[v] == 1 && v != base)
            .collect();
        while let Some(v) = queue.pop() {
            if !alive_v[v] || deg[v] != 1 || v == base {
                continue;
            }
            if let Some(other) = strip(v, &mut deg, &mut alive_v, &mut alive_e) {
                if deg[other] == 1 && other != base {
                    queue.push(other);
                }
            }
        }
        if mode == CoreMode::CyclicCore {
            while deg[base] == 1 {
                match strip(base, &mut deg, &mut alive_v, &mut alive_e) {
                    Some(other) => base = other,
                    None => break,
                }
            }
        }

        let mut remap = vec![usize::MAX; self.vertex_count];
        let mut n = 0;
        for v in 0..self.vertex_count {
            if alive_v[v] {
                remap[v] = n;
                n += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .zip(&alive_e)
            .filter(|(_, &a)| a)
            .map(|(e, _)| Edge {
                source: remap[e.source],
                target: remap[e.target],
                label: e.label,
            })
            .collect();
        Folding {
            alphabet: self.alphabet,
            vertex_count: n,
            edges,
            basepoint: remap[base],
            folded: self.folded,
            core_mode: mode,
        }
    }

    /// `|E| - |V| + 1` for a connected graph.
    pub fn rank(&self) -> usize {
        (self.edges.len() + 1)
            .checked_sub(self.vertex_count)
            .expect("connected graph has |E| >= |V| - 1")
    }

    pub fn census(&self) -> DegreeCensus {
        DegreeCensus::of(self)
    }

    /// Whether `u` labels a closed path at the basepoint. The graph must be
    /// folded.
    pub fn accepts(&self, u: &Word) -> bool {
        debug_assert!(self.folded);
        if u.alphabet() != self.alphabet {
            return false;
        }
        let adj = self.adjacency();
        self.read_from(&adj, self.basepoint, u) == Some(self.basepoint)
    }

    fn read_from(&self, adj: &Adjacency, start: usize, u: &Word) -> Option<usize> {
        let mut v = start;
        for &l in u.letters() {
            let id = adj.edge(v, l)?;
            let e = self.edges[id];
            v = if l.is_inverse() { e.source } else { e.target };
        }
        Some(v)
    }

    /// Index of the subgroup: the vertex count when every vertex has every
    /// letter-direction, otherwise infinite.
    pub fn subgroup_index(&self) -> SubgroupIndex {
        let full = 2 * self.alphabet.rank();
        if self.degrees().iter().all(|&d| d == full) {
            SubgroupIndex::Finite(self.vertex_count)
        } else {
            SubgroupIndex::Infinite
        }
    }

    /// A free basis read off a breadth-first spanning tree: one generator
    /// per non-tree edge.
    pub fn basis(&self) -> Vec<Word> {
        let n = self.vertex_count;
        let mut path: Vec<Option<Vec<Letter>>> = vec![None; n];
        let mut tree_edge = vec![false; self.edges.len()];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (id, e) in self.edges.iter().enumerate() {
            incident[e.source].push(id);
            if e.target != e.source {
                incident[e.target].push(id);
            }
        }
        path[self.basepoint] = Some(Vec::new());
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            let pv = path[v].clone().expect("visited");
            for &id in &incident[v] {
                let e = self.edges[id];
                let (other, l) = if e.source == v {
                    (e.target, Letter::positive(e.label))
                } else {
                    (e.source, Letter::negative(e.label))
                };
                if path[other].is_none() {
                    let mut p = pv.clone();
                    p.push(l);
                    path[other] = Some(p);
                    tree_edge[id] = true;
                    queue.push_back(other);
                }
            }
        }
        self.edges
            .iter()
            .zip(&tree_edge)
            .filter(|(_, &t)| !t)
            .map(|(e, _)| {
                let to_src = path[e.source].as_ref().expect("connected");
                let to_tgt = path[e.target].as_ref().expect("connected");
                let letters = to_src
                    .iter()
                    .copied()
                    .chain([Letter::positive(e.label)])
                    .chain(to_tgt.iter().rev().map(|l| l.inv()));
                Word::from_valid(self.alphabet, letters)
            })
            .collect()
    }
}

pub(crate) fn oriented_edge(from: usize, to: usize, l: Letter) -> Edge {
    if l.is_inverse() {
        Edge {
            source: to,
            target: from,
            label: l.generator() as u8,
        }
    } else {
        Edge {
            source: from,
            target: to,
            label: l.generator() as u8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupIndex {
    Finite(usize),
    Infinite,
}
