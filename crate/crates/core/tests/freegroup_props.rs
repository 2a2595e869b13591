mod common;

use common::*;
use proptest::prelude::*;
use stallings::freegroup::{
    check_n_reduced, enumerate_length_preserving, middle_decomposition, reduce,
};
use stallings::morphisms::phi0;
use stallings::{GeneratorMap, Letter, Word};

proptest! {
    #[test]
    fn reduce_is_idempotent_and_shortens(raw in prop::collection::vec(0..4usize, 0..30)) {
        let letters: Vec<Letter> = raw.iter().map(|&i| Letter::from_slot(i, 2)).collect();
        let once = reduce(letters.iter().copied());
        prop_assert!(once.len() <= letters.len());
        prop_assert_eq!(reduce(once.iter().copied()), once.clone());
        prop_assert!(once.windows(2).all(|p| p[0] != p[1].inv()));
    }

    #[test]
    fn inverse_cancels(u in word(20)) {
        prop_assert!(u.multiply(&u.invert()).unwrap().is_identity());
        prop_assert!(u.invert().multiply(&u).unwrap().is_identity());
        prop_assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn length_preserving_maps_keep_length(u in word(20), k in 0..8usize) {
        let f = &enumerate_length_preserving(f2())[k];
        prop_assert_eq!(f.apply(&u).unwrap().len(), u.len());
    }

    #[test]
    fn cyclic_reduction_is_a_conjugate(u in word(20)) {
        let (core, conj) = u.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        let back = conj.multiply(&core).unwrap().multiply(&conj.invert()).unwrap();
        prop_assert_eq!(back, u);
    }
}

/// N-reduced pairs: images of `φ_0` composed with length-preserving maps,
/// plus random pairs that pass the check.
fn n_reduced_family() -> impl Strategy<Value = Vec<Word>> {
    let catalog = (0..8usize).prop_map(|k| {
        let lp = enumerate_length_preserving(f2()).swap_remove(k);
        phi0().compose(&lp).unwrap().images().to_vec()
    });
    let random = prop::collection::vec(nontrivial_word(6), 2..=3)
        .prop_filter("N-reduced", |u| check_n_reduced(u).passed());
    prop_oneof![catalog, random]
}

/// Signed indices `(i, inverse)` with no formal inverse pair adjacent.
fn product_indices(n: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0..n, any::<bool>()), 1..=8).prop_filter("no formal cancellation", |s| {
        s.windows(2)
            .all(|p| !(p[0].0 == p[1].0 && p[0].1 != p[1].1))
    })
}

fn find_from(hay: &[Letter], needle: &[Letter], from: usize) -> Option<usize> {
    (from..=hay.len().checked_sub(needle.len())?).find(|&i| &hay[i..i + needle.len()] == needle)
}

proptest! {
    #[test]
    fn middles_reassemble_without_cancellation(u in n_reduced_family()) {
        let md = middle_decomposition(&u).unwrap();
        for e in md.entries() {
            let joined: Vec<Letter> = e.prefix.letters().iter()
                .chain(e.middle.letters())
                .chain(e.suffix.letters())
                .copied()
                .collect();
            prop_assert_eq!(joined.as_slice(), e.word.letters());
            prop_assert!(!e.middle.is_identity());
        }
    }

    #[test]
    fn middles_survive_in_products((u, idx) in n_reduced_family()
        .prop_flat_map(|u| { let n = u.len(); (Just(u), product_indices(n)) }))
    {
        let md = middle_decomposition(&u).unwrap();
        let mut w = Word::identity(f2());
        for &(i, inv) in &idx {
            w = w.multiply(&md.get(i, inv).word).unwrap();
        }
        let mut pos = 0;
        for &(i, inv) in &idx {
            let m = md.get(i, inv).middle.letters();
            let at = find_from(w.letters(), m, pos);
            prop_assert!(at.is_some(), "middle {} of {:?} missing from {}", md.get(i, inv).middle, idx, w);
            pos = at.unwrap() + m.len();
        }
    }
}

#[test]
fn catalog_is_a_group() {
    let maps = enumerate_length_preserving(f2());
    assert_eq!(maps.len(), 8);
    let id = GeneratorMap::identity(f2());
    for f in &maps {
        assert!(maps.iter().any(|g| f.compose(g).unwrap() == id));
        for g in &maps {
            assert!(maps.contains(&f.compose(g).unwrap()));
        }
    }
}
