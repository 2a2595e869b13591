use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::Folding;
use crate::freegroup::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census gives non-integral rank {0}")]
    NonIntegralRank(Ratio<i64>),
}

/// Vertex counts by undirected degree and, over `F_2`, the number of
/// degree-3 vertices of each type.
///
/// A degree-3 vertex in an `F_2` folding can be left along exactly three of
/// the four letter-directions `a, b, a^-1, b^-1`; it has type `C_x` where
/// `x` is the direction it cannot be left along.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeCensus {
    alphabet: Alphabet,
    /// `by_degree[i]` is the number of vertices of degree `i`.
    by_degree: Vec<u64>,
    /// Counts in the order `a, b, a^-1, b^-1`; present for rank 2 only.
    types: Option<[u64; 4]>,
}

impl DegreeCensus {
    pub fn of(g: &Folding) -> Self {
        let alphabet = g.alphabet();
        let rank = alphabet.rank();
        let mut by_degree = vec![0u64; 2 * rank + 1];
        let deg = g.degrees();
        for &d in &deg {
            if d >= by_degree.len() {
                by_degree.resize(d + 1, 0);
            }
            by_degree[d] += 1;
        }
        let types = (rank == 2).then(|| {
            let adj = g.adjacency();
            let mut counts = [0u64; 4];
            for v in (0..g.vertex_count()).filter(|&v| deg[v] == 3) {
                let missing = alphabet
                    .letters()
                    .find(|&l| adj.edge(v, l).is_none())
                    .expect("degree-3 vertex misses a direction");
                counts[missing.slot(2)] += 1;
            }
            counts
        });
        Self {
            alphabet,
            by_degree,
            types,
        }
    }

    /// Builds a census directly from counts. `types` is in the order
    /// `a, b, a^-1, b^-1`.
    pub fn from_counts(alphabet: Alphabet, by_degree: Vec<u64>, types: Option<[u64; 4]>) -> Self {
        Self {
            alphabet,
            by_degree,
            types,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn d(&self, degree: usize) -> u64 {
        self.by_degree.get(degree).copied().unwrap_or(0)
    }

    pub fn by_degree(&self) -> &[u64] {
        &self.by_degree
    }

    pub fn types(&self) -> Option<[u64; 4]> {
        self.types
    }

    /// `C_x`; zero outside rank 2.
    pub fn c(&self, x: Letter) -> u64 {
        self.types.map_or(0, |t| t[x.slot(2)])
    }

    /// `(C_a, C_b, C_{a^-1}, C_{b^-1}, d_4)`.
    pub fn five_tuple(&self) -> [u64; 5] {
        let t = self.types.unwrap_or_default();
        [t[0], t[1], t[2], t[3], self.d(4)]
    }

    /// Number of vertices of degree at least 3.
    pub fn branch_vertices(&self) -> u64 {
        self.by_degree.iter().skip(3).sum()
    }
}

impl Serialize for DegreeCensus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        let degrees: BTreeMap<usize, u64> = self
            .by_degree
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(d, &n)| (d, n))
            .collect();
        m.serialize_entry("degrees", &degrees)?;
        m.serialize_entry("d1", &self.d(1))?;
        m.serialize_entry("d3", &self.d(3))?;
        m.serialize_entry("d4", &self.d(4))?;
        let types = self.types.map(|t| {
            Alphabet::rank2()
                .letters()
                .map(|l| (l.symbol().to_string(), t[l.slot(2)]))
                .collect::<Vec<_>>()
        });
        match types {
            Some(t) => {
                let t: BTreeMap<String, u64> = t.into_iter().collect();
                m.serialize_entry("types", &t)?
            }
            None => m.serialize_entry("types", &None::<()>)?,
        }
        m.end()
    }
}

/// `1 + Σ_v (deg(v) - 2) / 2`, which for `F_2` is
/// `d_4 + d_3/2 - d_1/2 + 1`.
pub fn rank_from_census(c: &DegreeCensus) -> Result<i64, CensusError> {
    let excess: i64 = c
        .by_degree
        .iter()
        .enumerate()
        .map(|(d, &n)| (d as i64 - 2) * n as i64)
        .sum();
    let r = Ratio::new(excess, 2) + 1;
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(CensusError::NonIntegralRank(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word_list;

    fn census(s: &str) -> DegreeCensus {
        let f2 = Alphabet::rank2();
        Folding::from_generators(f2, &parse_word_list(f2, s).unwrap())
            .unwrap()
            .census()
    }

    fn letter(c: char) -> Letter {
        Alphabet::rank2().parse_letter(c).unwrap()
    }

    #[test]
    fn census_examples() {
        let c = census("a,b");
        assert_eq!((c.d(4), c.d(3)), (1, 0));

        let c = census("a,baB");
        assert_eq!(c.d(3), 2);
        assert_eq!(c.c(letter('b')), 1);
        assert_eq!(c.c(letter('B')), 1);
        assert_eq!(c.c(letter('a')) + c.c(letter('A')), 0);

        let c = census("aa,b");
        assert_eq!((c.d(4), c.d(2)), (1, 1));
    }

    #[test]
    fn rank_formula_examples() {
        let f2 = Alphabet::rank2();
        let d4 = DegreeCensus::from_counts(f2, vec![0, 0, 0, 0, 1], None);
        assert_eq!(rank_from_census(&d4), Ok(2));
        let d3 = DegreeCensus::from_counts(f2, vec![0, 0, 0, 2, 0], None);
        assert_eq!(rank_from_census(&d3), Ok(2));
        let tail = DegreeCensus::from_counts(f2, vec![0, 1, 0, 1, 0], None);
        assert_eq!(rank_from_census(&tail), Ok(1));
        let bad = DegreeCensus::from_counts(f2, vec![0, 0, 0, 1, 0], None);
        assert!(rank_from_census(&bad).is_err());
        assert_eq!(rank_from_census(&census("abA")), Ok(1));
    }

    #[test]
    fn handshake_and_type_sum() {
        for s in ["a,baB", "abAB,bbaBA,aab", "abA", "aaBaa,bAbb"] {
            let f2 = Alphabet::rank2();
            let g = Folding::from_generators(f2, &parse_word_list(f2, s).unwrap()).unwrap();
            let c = g.census();
            let total: u64 = c
                .by_degree()
                .iter()
                .enumerate()
                .map(|(d, &n)| d as u64 * n)
                .sum();
            assert_eq!(total, 2 * g.edge_count() as u64);
            assert_eq!(c.types().unwrap().iter().sum::<u64>(), c.d(3));
        }
    }

    #[test]
    fn census_json_shape() {
        let v = serde_json::to_value(census("a,baB")).unwrap();
        assert_eq!(v["d3"], 2);
        assert_eq!(v["types"]["b"], 1);
        assert_eq!(v["types"]["B"], 1);
        assert_eq!(v["degrees"]["3"], 2);
    }
}
