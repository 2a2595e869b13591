use std::fmt;

use super::{Alphabet, FreeGroupError, Letter, Word};

/// A homomorphism between free groups, given by the images of the domain
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorMap {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn new(
        domain: Alphabet,
        codomain: Alphabet,
        images: Vec<Word>,
    ) -> Result<Self, FreeGroupError> {
        if images.len() != domain.rank() {
            return Err(FreeGroupError::MalformedMap(format!(
                "expected {} images, got {}",
                domain.rank(),
                images.len()
            )));
        }
        for img in &images {
            codomain.check_same(img.alphabet())?;
        }
        Ok(Self {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.rank())
            .map(|i| Word::from_valid(alphabet, [Letter::positive(i as u8)]))
            .collect();
        Self {
            domain: alphabet,
            codomain: alphabet,
            images,
        }
    }

    /// Parses `"a=aa;b=ABab"`. Entries may appear in any order but must
    /// cover exactly the generators `a, b, ...` of the domain.
    pub fn parse(text: &str, codomain: Alphabet) -> Result<Self, FreeGroupError> {
        let mut entries: Vec<(usize, Word)> = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| FreeGroupError::MalformedMap(format!("missing '=' in {part:?}")))?;
            let mut chars = lhs.trim().chars();
            let gen = match (chars.next(), chars.next()) {
                (Some(c @ 'a'..='z'), None) => c as usize - 'a' as usize,
                _ => {
                    return Err(FreeGroupError::MalformedMap(format!(
                        "bad generator name {lhs:?}"
                    )))
                }
            };
            if entries.iter().any(|(g, _)| *g == gen) {
                return Err(FreeGroupError::MalformedMap(format!(
                    "generator {lhs:?} given twice"
                )));
            }
            entries.push((gen, Word::parse(codomain, rhs)?));
        }
        entries.sort_by_key(|(g, _)| *g);
        if entries.iter().enumerate().any(|(i, (g, _))| i != *g) {
            return Err(FreeGroupError::MalformedMap(
                "images must cover generators a, b, ... without gaps".into(),
            ));
        }
        let domain = Alphabet::new(entries.len())?;
        Self::new(
            domain,
            codomain,
            entries.into_iter().map(|(_, w)| w).collect(),
        )
    }

    pub fn domain(&self) -> Alphabet {
        self.domain
    }

    pub fn codomain(&self) -> Alphabet {
        self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &Word {
        &self.images[gen]
    }

    /// Image of a single letter, reduced.
    pub fn letter_image(&self, l: Letter) -> Word {
        let img = &self.images[l.generator()];
        if l.is_inverse() {
            img.invert()
        } else {
            img.clone()
        }
    }

    pub fn apply(&self, u: &Word) -> Result<Word, FreeGroupError> {
        self.domain.check_same(u.alphabet())?;
        let raw = u.letters().iter().flat_map(|&l| {
            let img = &self.images[l.generator()];
            let letters: Vec<Letter> = if l.is_inverse() {
                img.letters().iter().rev().map(|x| x.inv()).collect()
            } else {
                img.letters().to_vec()
            };
            letters
        });
        Ok(Word::from_valid(self.codomain, raw))
    }

    /// `self` followed by `then`: `u ↦ then(self(u))`.
    pub fn compose(&self, then: &GeneratorMap) -> Result<GeneratorMap, FreeGroupError> {
        self.codomain.check_same(then.domain)?;
        let images = self
            .images
            .iter()
            .map(|w| then.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorMap::new(self.domain, then.codomain, images)
    }

    /// True iff the map permutes `X^±`, i.e. is a signed permutation of the
    /// generators.
    pub fn is_length_preserving(&self) -> bool {
        if self.domain != self.codomain {
            return false;
        }
        let mut seen = vec![false; self.domain.rank()];
        for img in &self.images {
            if img.len() != 1 {
                return false;
            }
            let g = img.letters()[0].generator();
            if std::mem::replace(&mut seen[g], true) {
                return false;
            }
        }
        true
    }

    /// For a length-preserving map, whether some nontrivial word is fixed.
    ///
    /// The image of a reduced word is its letterwise image, already
    /// reduced, so a fixed word exists iff some letter is fixed.
    pub fn has_nontrivial_fixed_point(&self) -> Result<bool, FreeGroupError> {
        if !self.is_length_preserving() {
            return Err(FreeGroupError::NotLengthPreserving);
        }
        Ok(self
            .images
            .iter()
            .enumerate()
            .any(|(i, img)| img.letters()[0] == Letter::positive(i as u8)))
    }

    /// Letter permutation induced by a length-preserving map.
    pub fn permute_letter(&self, l: Letter) -> Result<Letter, FreeGroupError> {
        if !self.is_length_preserving() {
            return Err(FreeGroupError::NotLengthPreserving);
        }
        Ok(self.letter_image(l).letters()[0])
    }
}

impl fmt::Display for GeneratorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}={}", self.domain.name(i), img)?;
        }
        Ok(())
    }
}

/// All signed permutations of the generators, in a fixed order:
/// permutations in lexicographic order, and for each permutation the sign
/// masks `0..2^rank` (bit `i` set inverts the image of generator `i`).
pub fn enumerate_length_preserving(alphabet: Alphabet) -> Vec<GeneratorMap> {
    let r = alphabet.rank();
    let mut perms = Vec::new();
    permutations(&mut (0..r).collect::<Vec<_>>(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << r);
    for perm in perms {
        for mask in 0..(1usize << r) {
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let l = Letter::positive(p as u8);
                    let l = if mask >> i & 1 == 1 { l.inv() } else { l };
                    Word::from_valid(alphabet, [l])
                })
                .collect();
            out.push(GeneratorMap {
                domain: alphabet,
                codomain: alphabet,
                images,
            });
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}
