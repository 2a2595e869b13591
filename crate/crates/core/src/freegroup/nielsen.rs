//! Nielsen conditions N0–N2 and the cancellation-free middles `m(u)`.
//!
//! A set `U` is treated as an indexed family: `U^±` holds `u_i` and
//! `u_i^-1` for every index `i`, and the exemption "`v1 v2 = 1`" applies
//! only to a formal inverse pair `(u_i^ε, u_i^-ε)`. On a family of distinct
//! words that are not inverses of each other this is the usual set
//! condition; on a family with repeats it flags the repeat.

use std::fmt;

use serde::Serialize;

use super::{FreeGroupError, Word};

/// `u_index` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignedIndex {
    pub index: usize,
    pub inverse: bool,
}

impl SignedIndex {
    fn cancels(self, other: SignedIndex) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NCondition {
    N0,
    N1,
    N2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NViolation {
    pub condition: NCondition,
    #[serde(serialize_with = "serialize_words")]
    pub witness: Vec<Word>,
}

fn serialize_words<S: serde::Serializer>(words: &[Word], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(words.iter().map(|w| w.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NReducedReport {
    pub violations: Vec<NViolation>,
}

impl NReducedReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, c: NCondition) -> Option<&NViolation> {
        self.violations.iter().find(|v| v.condition == c)
    }
}

impl fmt::Display for NReducedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "N-reduced");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let ws: Vec<String> = v.witness.iter().map(|w| format!("{w:?}")).collect();
            write!(f, "{:?} fails at ({})", v.condition, ws.join(", "))?;
        }
        Ok(())
    }
}

fn signed_family(words: &[Word]) -> Vec<(SignedIndex, Word)> {
    words
        .iter()
        .enumerate()
        .flat_map(|(index, w)| {
            [
                (
                    SignedIndex {
                        index,
                        inverse: false,
                    },
                    w.clone(),
                ),
                (
                    SignedIndex {
                        index,
                        inverse: true,
                    },
                    w.invert(),
                ),
            ]
        })
        .collect()
}

fn product(u: &Word, v: &Word) -> Word {
    u.multiply(v).expect("family shares one alphabet")
}

/// Evaluates N0 over `U^±`, N1 over ordered pairs and N2 over ordered
/// triples, keeping the first witness of each failed condition.
pub fn check_n_reduced(words: &[Word]) -> NReducedReport {
    let fam = signed_family(words);
    let mut violations = Vec::new();

    if let Some((_, v)) = fam.iter().find(|(_, v)| v.is_identity()) {
        violations.push(NViolation {
            condition: NCondition::N0,
            witness: vec![v.clone()],
        });
    }

    'n1: for (i1, v1) in &fam {
        for (i2, v2) in &fam {
            if i1.cancels(*i2) {
                continue;
            }
            let p = product(v1, v2).len();
            if p < v1.len().max(v2.len()) {
                violations.push(NViolation {
                    condition: NCondition::N1,
                    witness: vec![v1.clone(), v2.clone()],
                });
                break 'n1;
            }
        }
    }

    'n2: for (i1, v1) in &fam {
        for (i2, v2) in &fam {
            if i1.cancels(*i2) {
                continue;
            }
            let v12 = product(v1, v2);
            for (i3, v3) in &fam {
                if i2.cancels(*i3) {
                    continue;
                }
                let lhs = product(&v12, v3).len() as i64;
                let rhs = v1.len() as i64 - v2.len() as i64 + v3.len() as i64;
                if lhs <= rhs {
                    violations.push(NViolation {
                        condition: NCondition::N2,
                        witness: vec![v1.clone(), v2.clone(), v3.clone()],
                    });
                    break 'n2;
                }
            }
        }
    }

    NReducedReport { violations }
}

/// `u = prefix · middle · suffix` for one element `u` of `U^±`, where
/// `suffix = a(u^-1)^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleEntry {
    pub element: SignedIndex,
    pub word: Word,
    pub prefix: Word,
    pub middle: Word,
    pub suffix: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleDecomposition {
    entries: Vec<MiddleEntry>,
}

impl MiddleDecomposition {
    pub fn entries(&self) -> &[MiddleEntry] {
        &self.entries
    }

    pub fn get(&self, index: usize, inverse: bool) -> &MiddleEntry {
        &self.entries[2 * index + usize::from(inverse)]
    }
}

/// For each `u` in `U^±`, `a(u)` is the prefix of `u` of length equal to
/// the largest cancellation in any product `v u` with `v ∈ U^±` not the
/// formal inverse of `u`.
pub fn middle_decomposition(words: &[Word]) -> Result<MiddleDecomposition, FreeGroupError> {
    let report = check_n_reduced(words);
    if !report.passed() {
        return Err(FreeGroupError::NotNReduced(report));
    }
    let fam = signed_family(words);
    let prefix_len: Vec<usize> = fam
        .iter()
        .map(|(iu, u)| {
            fam.iter()
                .filter(|(iv, _)| !iv.cancels(*iu))
                .map(|(_, v)| v.cancellation_with(u))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut entries = Vec::with_capacity(fam.len());
    for (k, (iu, u)) in fam.iter().enumerate() {
        // u^-1 sits next to u in the family
        let inv_k = k ^ 1;
        let head = prefix_len[k];
        let tail = prefix_len[inv_k];
        let n = u.len();
        if head + tail >= n {
            return Err(FreeGroupError::NotNReduced(NReducedReport {
                violations: vec![NViolation {
                    condition: NCondition::N2,
                    witness: vec![u.clone()],
                }],
            }));
        }
        let alph = u.alphabet();
        let l = u.letters();
        entries.push(MiddleEntry {
            element: *iu,
            word: u.clone(),
            prefix: Word::from_valid(alph, l[..head].iter().copied()),
            middle: Word::from_valid(alph, l[head..n - tail].iter().copied()),
            suffix: Word::from_valid(alph, l[n - tail..].iter().copied()),
        });
    }
    Ok(MiddleDecomposition { entries })
}
