//! Random subgroups and maps.
//!
//! Words are non-backtracking random walks, so they are reduced by
//! construction. Generator counts and word lengths are uniform.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::freegroup::{enumerate_length_preserving, Alphabet, GeneratorMap, Letter, Word};
use crate::morphisms::{is_n_endomorphism, tau, Tau};

/// A reduced word of exactly `len` letters.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: Alphabet, len: usize) -> Word {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = *letters.choose(rng).expect("nonempty alphabet");
        if out.last() != Some(&l.inv()) {
            out.push(l);
        }
    }
    Word::new(alphabet, out).expect("letters drawn from alphabet")
}

/// Between 1 and `max_gens` generators, each of length uniform in
/// `1..=max_len`.
pub fn random_subgroup<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    max_gens: usize,
    max_len: usize,
) -> Vec<Word> {
    let n = rng.gen_range(1..=max_gens.max(1));
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            random_word(rng, alphabet, len)
        })
        .collect()
}

/// An N-endomorphism of `F(a, b)` found by rejection over image lengths
/// `1..=max_len`.
pub fn random_n_endomorphism<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> GeneratorMap {
    let f2 = Alphabet::rank2();
    loop {
        let images = (0..2)
            .map(|_| {
                let len = rng.gen_range(1..=max_len.max(1));
                random_word(rng, f2, len)
            })
            .collect();
        let f = GeneratorMap::new(f2, f2, images).expect("rank-2 images");
        if is_n_endomorphism(&f) {
            return f;
        }
    }
}

/// A map `a ↦ a w_a a`, `b ↦ b w_b b` with `|w_x| <= max_len`, reduced as
/// written and injective.
pub fn random_tau<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Tau {
    let f2 = Alphabet::rank2();
    loop {
        let la = rng.gen_range(0..=max_len);
        let lb = rng.gen_range(0..=max_len);
        let (wa, wb) = (random_word(rng, f2, la), random_word(rng, f2, lb));
        if let Ok(t) = tau(&wa, &wb) {
            if t.injective {
                return t;
            }
        }
    }
}

/// A length-preserving automorphism of `F(a, b)` fixing no nontrivial
/// word.
pub fn random_fixed_point_free<R: Rng + ?Sized>(rng: &mut R) -> GeneratorMap {
    let maps: Vec<GeneratorMap> = enumerate_length_preserving(Alphabet::rank2())
        .into_iter()
        .filter(|m| !m.has_nontrivial_fixed_point().expect("length-preserving"))
        .collect();
    maps.choose(rng).expect("five such maps").clone()
}
