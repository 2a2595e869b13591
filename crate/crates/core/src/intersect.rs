//! Intersections of subgroups through the product automaton.

use std::collections::{HashMap, VecDeque};

use crate::folding::{CoreMode, DegreeCensus, Edge, Folding};
use crate::freegroup::{FreeGroupError, Letter};

/// The connected component of `Γ_H × Γ_K` containing `(1_H, 1_K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductComponent {
    pub folding: Folding,
    /// `pairs[v]` is the `(vertex of Γ_H, vertex of Γ_K)` that `v` stands
    /// for; vertex 0 is the basepoint pair.
    pub pairs: Vec<(usize, usize)>,
}

/// Generates the basepoint component breadth-first, following edges in
/// both directions. Unreachable pairs are never materialised.
pub fn product_component(h: &Folding, k: &Folding) -> Result<ProductComponent, FreeGroupError> {
    h.alphabet().check_same(k.alphabet())?;
    debug_assert!(h.is_folded() && k.is_folded());
    let alphabet = h.alphabet();
    let (ah, ak) = (h.adjacency(), k.adjacency());
    let far = |g: &Folding, id: usize, l: Letter| {
        let e = g.edges()[id];
        if l.is_inverse() {
            e.source
        } else {
            e.target
        }
    };

    let start = (h.basepoint(), k.basepoint());
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut pairs = vec![start];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some((u, v)) = queue.pop_front() {
        let here = index[&(u, v)];
        for l in alphabet.letters() {
            let (Some(eh), Some(ek)) = (ah.edge(u, l), ak.edge(v, l)) else {
                continue;
            };
            let next = (far(h, eh, l), far(k, ek, l));
            let there = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(next);
                pairs.len() - 1
            });
            // each edge is recorded once, from its source
            if !l.is_inverse() {
                edges.push(Edge {
                    source: here,
                    target: there,
                    label: l.generator() as u8,
                });
            }
        }
    }
    let folding = Folding::from_parts(alphabet, pairs.len(), edges, 0, true, CoreMode::Raw);
    Ok(ProductComponent { folding, pairs })
}

/// `Γ_{H∩K}`: the core of the basepoint component of the product.
pub fn intersection_folding(h: &Folding, k: &Folding) -> Result<Folding, FreeGroupError> {
    Ok(product_component(h, k)?
        .folding
        .core(CoreMode::CoreWithBasepoint))
}

/// Upper bounds on `d_4` and `d_3` of `Γ_H × Γ_K` for `F_2` censuses:
/// `d_4(H) d_4(K)` and `d_4(H) d_3(K) + d_3(H) d_4(K) + Σ_x C_x(H) C_x(K)`.
pub fn product_census_bounds(ch: &DegreeCensus, ck: &DegreeCensus) -> (u64, u64) {
    let d4 = ch.d(4) * ck.d(4);
    let shared: u64 = crate::freegroup::Alphabet::rank2()
        .letters()
        .map(|x| ch.c(x) * ck.c(x))
        .sum();
    let d3 = ch.d(4) * ck.d(3) + ch.d(3) * ck.d(4) + shared;
    (d4, d3)
}
