mod common;

use common::*;
use proptest::prelude::*;
use stallings::freegroup::enumerate_length_preserving;
use stallings::hnc::cyclic_census;
use stallings::morphisms::{
    apply_endo_to_folding, check_injective, is_n_endomorphism, relabel, survivor_map, tau,
};
use stallings::{canonical_form, CoreMode, GeneratorMap};

fn map_with_nontrivial_images(len: usize) -> impl Strategy<Value = GeneratorMap> {
    (nontrivial_word(len), nontrivial_word(len))
        .prop_map(|(x, y)| GeneratorMap::new(f2(), f2(), vec![x, y]).unwrap())
}

fn n_endomorphism() -> impl Strategy<Value = GeneratorMap> {
    map_with_nontrivial_images(5).prop_filter("N-reduced images", is_n_endomorphism)
}

proptest! {
    #[test]
    fn image_folding_matches_folded_images(h in subgroup(4, 8), f in map_with_nontrivial_images(5)) {
        let out = apply_endo_to_folding(&folded(&h), &f).unwrap();
        prop_assert_eq!(canonical_form(&out.result), canonical_form(&folded(&image(&f, &h))));
    }

    #[test]
    fn injective_maps_keep_rank(h in subgroup(4, 8), f in map_with_nontrivial_images(4)) {
        prop_assume!(check_injective(&f));
        prop_assert_eq!(folded(&image(&f, &h)).rank(), folded(&h).rank());
    }

    #[test]
    fn n_endomorphisms_are_injective(f in n_endomorphism()) {
        prop_assert!(check_injective(&f));
    }

    #[test]
    fn relabelling_permutes_types(k in subgroup(4, 10)) {
        let g = folded(&k);
        let ck = cyclic_census(&g);
        for m in enumerate_length_preserving(f2()) {
            let moved = relabel(&g, &m).unwrap();
            prop_assert_eq!(
                canonical_form(&moved.core(CoreMode::CoreWithBasepoint)),
                canonical_form(&folded(&image(&m, &k)))
            );
            let cm = cyclic_census(&moved);
            for x in f2().letters() {
                prop_assert_eq!(ck.c(x), cm.c(m.permute_letter(x).unwrap()));
            }
        }
    }

    #[test]
    fn tau_preserves_the_five_tuple(h in subgroup(4, 8), wa in word(4), wb in word(4)) {
        let Ok(t) = tau(&wa, &wb) else { return Ok(()) };
        prop_assume!(t.injective);
        let before = cyclic_census(&folded(&h)).five_tuple();
        let after = cyclic_census(&folded(&image(&t.map, &h))).five_tuple();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn survivors_do_not_fold(h in subgroup(4, 10), f in n_endomorphism()) {
        let s = survivor_map(&folded(&h), &f).unwrap();
        prop_assert!(s.all_survive(), "{:?}", s.violations().collect::<Vec<_>>());
    }
}
