//! Words in a finitely generated free group.
//!
//! Generators are named by lowercase letters `a`, `b`, `c`, ... and their
//! inverses by the matching uppercase letter, so `"baB"` is `b a b^-1`.
//! Every [`Word`] is kept freely reduced.

mod map;
mod nielsen;

pub use map::{enumerate_length_preserving, GeneratorMap};
pub use nielsen::{
    check_n_reduced, middle_decomposition, MiddleDecomposition, MiddleEntry, NCondition,
    NReducedReport, NViolation, SignedIndex,
};

use std::fmt;

use thiserror::Error;

pub const MAX_RANK: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("alphabet rank must be between 1 and {MAX_RANK}, got {0}")]
    InvalidRank(usize),
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },
    #[error("invalid word symbol {0:?}")]
    BadSymbol(char),
    #[error("malformed generator map: {0}")]
    MalformedMap(String),
    #[error("map is not length-preserving")]
    NotLengthPreserving,
    #[error("set is not N-reduced: {0}")]
    NotNReduced(NReducedReport),
}

/// A free-group alphabet of the given rank. Generator `i` is named by the
/// `i`-th lowercase Latin letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    rank: u8,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self, FreeGroupError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(FreeGroupError::InvalidRank(rank));
        }
        Ok(Self { rank: rank as u8 })
    }

    /// The alphabet `{a, b}` of `F_2`.
    pub fn rank2() -> Self {
        Self { rank: 2 }
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }

    pub fn name(self, index: usize) -> char {
        debug_assert!(index < self.rank());
        (b'a' + index as u8) as char
    }

    pub fn names(self) -> impl Iterator<Item = char> {
        (0..self.rank()).map(move |i| self.name(i))
    }

    /// All letters of `X^±`, positive letters first: `a, b, ..., A, B, ...`.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        let r = self.rank;
        (0..r)
            .map(Letter::positive)
            .chain((0..r).map(Letter::negative))
    }

    pub fn letter(self, index: usize, inverse: bool) -> Result<Letter, FreeGroupError> {
        if index >= self.rank() {
            return Err(FreeGroupError::LetterOutOfRange {
                index,
                rank: self.rank(),
            });
        }
        Ok(Letter {
            gen: index as u8,
            inverse,
        })
    }

    pub fn parse_letter(self, c: char) -> Result<Letter, FreeGroupError> {
        let (index, inverse) = match c {
            'a'..='z' => (c as usize - 'a' as usize, false),
            'A'..='Z' => (c as usize - 'A' as usize, true),
            _ => return Err(FreeGroupError::BadSymbol(c)),
        };
        self.letter(index, inverse)
    }

    pub(crate) fn check_same(self, other: Alphabet) -> Result<(), FreeGroupError> {
        if self != other {
            return Err(FreeGroupError::AlphabetMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }
}

/// A signed generator `x` or `x^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u8,
    inverse: bool,
}

impl Letter {
    pub fn positive(gen: u8) -> Self {
        Self {
            gen,
            inverse: false,
        }
    }

    pub fn negative(gen: u8) -> Self {
        Self { gen, inverse: true }
    }

    pub fn generator(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Position of this letter in the order `a, b, ..., A, B, ...` of
    /// [`Alphabet::letters`].
    pub fn slot(self, rank: usize) -> usize {
        self.generator() + if self.inverse { rank } else { 0 }
    }

    pub fn from_slot(slot: usize, rank: usize) -> Self {
        if slot < rank {
            Letter::positive(slot as u8)
        } else {
            Letter::negative((slot - rank) as u8)
        }
    }

    pub fn symbol(self) -> char {
        let base = if self.inverse { b'A' } else { b'a' };
        (base + self.gen) as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Freely reduces a letter sequence with a single stack pass.
pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A freely reduced word over an [`Alphabet`]. The empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Validates every letter against `alphabet` and freely reduces.
    pub fn new(
        alphabet: Alphabet,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<Self, FreeGroupError> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for l in &letters {
            if l.generator() >= alphabet.rank() {
                return Err(FreeGroupError::LetterOutOfRange {
                    index: l.generator(),
                    rank: alphabet.rank(),
                });
            }
        }
        Ok(Self {
            alphabet,
            letters: reduce(letters),
        })
    }

    /// Letters must already be in range; reduction is still applied.
    pub(crate) fn from_valid(
        alphabet: Alphabet,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Self {
        Self {
            alphabet,
            letters: reduce(letters),
        }
    }

    pub fn generator(alphabet: Alphabet, index: usize) -> Result<Self, FreeGroupError> {
        Ok(Self {
            alphabet,
            letters: vec![alphabet.letter(index, false)?],
        })
    }

    /// Parses the text format: lowercase = generator, uppercase = inverse.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self, FreeGroupError> {
        let letters = text
            .trim()
            .chars()
            .map(|c| alphabet.parse_letter(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_valid(alphabet, letters))
    }

    /// `x^n` for generator `x` (negative `n` gives inverse powers).
    pub fn power(alphabet: Alphabet, index: usize, n: i64) -> Result<Self, FreeGroupError> {
        let l = alphabet.letter(index, n < 0)?;
        Ok(Self {
            alphabet,
            letters: vec![l; n.unsigned_abs() as usize],
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, FreeGroupError> {
        self.alphabet.check_same(other.alphabet)?;
        Ok(Word::from_valid(
            self.alphabet,
            self.letters.iter().chain(other.letters.iter()).copied(),
        ))
    }

    pub fn invert(&self) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Returns `(core, conjugator)` with `self = conjugator * core *
    /// conjugator^-1` and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inv() {
            k += 1;
        }
        let core = Word {
            alphabet: self.alphabet,
            letters: self.letters[k..n - k].to_vec(),
        };
        let conj = Word {
            alphabet: self.alphabet,
            letters: self.letters[..k].to_vec(),
        };
        (core, conj)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.letters.len() == 1 || f != l.inv(),
            _ => true,
        }
    }

    /// Reinterprets the word over a larger alphabet.
    pub fn widen(&self, alphabet: Alphabet) -> Result<Word, FreeGroupError> {
        Word::new(alphabet, self.letters.iter().copied())
    }

    /// Number of letters cancelled when forming `self * other`.
    pub fn cancellation_with(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(x, y)| **x == y.inv())
            .count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of words. Empty entries are identities.
pub fn parse_word_list(alphabet: Alphabet, csv: &str) -> Result<Vec<Word>, FreeGroupError> {
    if csv.trim().is_empty() {
        return Ok(Vec::new());
    }
    csv.split(',').map(|w| Word::parse(alphabet, w)).collect()
}

/// Smallest rank (at least `min_rank`) whose alphabet covers every symbol in
/// `texts`.
pub fn infer_rank<'a>(texts: impl IntoIterator<Item = &'a str>, min_rank: usize) -> usize {
    texts
        .into_iter()
        .flat_map(|t| t.chars())
        .filter(|c| c.is_ascii_alphabetic())
        .map(|c| c.to_ascii_lowercase() as usize - 'a' as usize + 1)
        .fold(min_rank, usize::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(Alphabet::rank2(), s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = Letter::positive(0);
        let b = Letter::positive(1);
        assert!(reduce([a, a.inv()]).is_empty());
        assert_eq!(reduce([a, b, b.inv(), a]), vec![a, a]);
        assert_eq!(reduce([a, b, a.inv()]), vec![a, b, a.inv()]);
        // cascading cancellation
        assert!(reduce([a, b, b.inv(), a.inv()]).is_empty());
    }

    #[test]
    fn group_operations() {
        assert!(w("ab").multiply(&w("BA")).unwrap().is_identity());
        assert_eq!(w("abA").invert(), w("aBA"));
        let (core, conj) = w("abA").cyclic_reduce();
        assert_eq!(core, w("b"));
        assert_eq!(conj, w("a"));
        let (core, conj) = w("aaAbb").cyclic_reduce();
        assert_eq!((core, conj), (w("abb"), w("")));
    }

    #[test]
    fn cyclic_reduce_reassembles() {
        let u = w("abaBabABA");
        let (core, conj) = u.cyclic_reduce();
        assert!(core.is_cyclically_reduced());
        let back = conj
            .multiply(&core)
            .unwrap()
            .multiply(&conj.invert())
            .unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a3 = Alphabet::new(3).unwrap();
        let u = Word::parse(a3, "c").unwrap();
        assert!(matches!(
            u.multiply(&w("a")),
            Err(FreeGroupError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn parse_rejects_out_of_range_and_junk() {
        assert!(Word::parse(Alphabet::rank2(), "abc").is_err());
        assert!(Word::parse(Alphabet::rank2(), "a1").is_err());
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(27).is_err());
    }

    #[test]
    fn text_roundtrip_and_lists() {
        assert_eq!(w("baB").to_string(), "baB");
        assert_eq!(w("aA").to_string(), "");
        let list = parse_word_list(Alphabet::rank2(), "a, bab ,").unwrap();
        assert_eq!(list, vec![w("a"), w("bab"), w("")]);
        assert_eq!(infer_rank(["aB", "C"], 2), 3);
        assert_eq!(infer_rank(["a"], 2), 2);
    }
}
