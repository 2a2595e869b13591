#![allow(dead_code)]

use proptest::prelude::*;
use stallings::{Alphabet, Folding, GeneratorMap, Letter, Word};

pub fn f2() -> Alphabet {
    Alphabet::rank2()
}

/// A word over `F(a, b)` of at most `max` letters before reduction.
pub fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..4usize, 0..=max)
        .prop_map(|s| Word::new(f2(), s.into_iter().map(|i| Letter::from_slot(i, 2))).unwrap())
}

pub fn nontrivial_word(max: usize) -> impl Strategy<Value = Word> {
    word(max).prop_filter("nontrivial", |w| !w.is_identity())
}

pub fn subgroup(gens: usize, len: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(nontrivial_word(len), 1..=gens)
}

pub fn folded(gens: &[Word]) -> Folding {
    Folding::from_generators(f2(), gens).unwrap()
}

pub fn image(f: &GeneratorMap, gens: &[Word]) -> Vec<Word> {
    gens.iter().map(|w| f.apply(w).unwrap()).collect()
}

/// A permutation of `0..n`.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
