//! Quantities entering the Hanna Neumann inequality
//! `r̄(H ∩ K) <= r̄(H) r̄(K)`, where `r̄ = max(rank - 1, 0)`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::folding::{CoreMode, DegreeCensus, Folding};
use crate::freegroup::{Alphabet, FreeGroupError, GeneratorMap, Letter, Word};
use crate::intersect::{intersection_folding, product_census_bounds};
use crate::morphisms::psi_embedding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HncError {
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
    #[error("bound needs ranks {need}, got ({0}, {1})", need = .2)]
    BoundPrecondition(u64, u64, &'static str),
    #[error("δ(H,K) = {0} <= 1/2; the W. Neumann criterion already applies")]
    DeltaTooSmall(Fraction),
    #[error("the two automorphisms agree on μ(H,K) = {0}")]
    MuAgrees(Letter),
    #[error("automorphism {0} is not length-preserving")]
    NotLengthPreserving(String),
    #[error("expected words over F(a, b)")]
    NotRankTwo,
}

/// An exact rational, serialised as `{"num": .., "den": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(pub Ratio<i64>);

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        Fraction(Ratio::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Fraction(Ratio::from_integer(n))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Fraction", 2)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.end()
    }
}

pub fn reduced_rank(rank: u64) -> u64 {
    rank.saturating_sub(1)
}

/// `min(C_x(H)/d_3(H), C_x(K)/d_3(K))`, or 0 when either `d_3` is 0.
pub fn delta_x(ch: &DegreeCensus, ck: &DegreeCensus, x: Letter) -> Fraction {
    let (h3, k3) = (ch.d(3) as i64, ck.d(3) as i64);
    if h3 == 0 || k3 == 0 {
        return Fraction::from_integer(0);
    }
    let a = Ratio::new(ch.c(x) as i64, h3);
    let b = Ratio::new(ck.c(x) as i64, k3);
    Fraction(a.min(b))
}

/// `δ(H,K) = max_x δ_x(H,K)` and the first maximiser `μ` in the order
/// `a, b, a^-1, b^-1`. `μ` is `None` when either census has no degree-3
/// vertex.
pub fn delta_mu(ch: &DegreeCensus, ck: &DegreeCensus) -> (Fraction, Option<Letter>) {
    if ch.d(3) == 0 || ck.d(3) == 0 {
        return (Fraction::from_integer(0), None);
    }
    let mut best = (Fraction::from_integer(-1), None);
    for x in Alphabet::rank2().letters() {
        let d = delta_x(ch, ck, x);
        if d > best.0 {
            best = (d, Some(x));
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WNeumannEstimate {
    /// `d_4 d_4 + (d_4 d_3 + d_3 d_4 + Σ_x C_x C_x) / 2`.
    pub value: Fraction,
    /// Whether `δ <= 1/2`, in which case the estimate is at most
    /// `r̄(H) r̄(K)`.
    pub certifies: bool,
}

/// Upper bound on `r̄(H ∩ K)` from the censuses of the cyclic cores of
/// `Γ_H` and `Γ_K`.
pub fn wneumann_estimate(ch: &DegreeCensus, ck: &DegreeCensus) -> WNeumannEstimate {
    let (d4, d3) = product_census_bounds(ch, ck);
    let value = Ratio::from_integer(d4 as i64) + Ratio::new(d3 as i64, 2);
    let (delta, _) = delta_mu(ch, ck);
    WNeumannEstimate {
        value: Fraction(value),
        certifies: delta <= Fraction::new(1, 2),
    }
}

fn check_ranks(rh: u64, rk: u64, min: u64, need: &'static str) -> Result<(i64, i64), HncError> {
    if rh < min || rk < min {
        return Err(HncError::BoundPrecondition(rh, rk, need));
    }
    Ok((rh as i64 - 1, rk as i64 - 1))
}

/// `2 (rank(H) - 1)(rank(K) - 1)`.
pub fn bound_hneumann(rh: u64, rk: u64) -> Result<i64, HncError> {
    let (h, k) = check_ranks(rh, rk, 1, ">= 1")?;
    Ok(2 * h * k)
}

/// `2 (rank(H) - 1)(rank(K) - 1) - min(rank(H) - 1, rank(K) - 1)`.
pub fn bound_burns(rh: u64, rk: u64) -> Result<i64, HncError> {
    let (h, k) = check_ranks(rh, rk, 1, ">= 1")?;
    Ok(2 * h * k - h.min(k))
}

/// `2 (rank(H) - 1)(rank(K) - 1) - (rank(H) - 1) - (rank(K) - 1)`, valid for
/// ranks at least 3.
pub fn bound_tardos96(rh: u64, rk: u64) -> Result<i64, HncError> {
    let (h, k) = check_ranks(rh, rk, 3, ">= 3")?;
    Ok(2 * h * k - h - k)
}

/// `(rank(H) - 1)(rank(K) - 1) + max(rank(H) - 3, 0) max(rank(K) - 3, 0)`.
pub fn bound_dicksformanek(rh: u64, rk: u64) -> Result<i64, HncError> {
    let (h, k) = check_ranks(rh, rk, 1, ">= 1")?;
    let extra = (rh as i64 - 3).max(0) * (rk as i64 - 3).max(0);
    Ok(h * k + extra)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub hneumann: Option<i64>,
    pub burns: Option<i64>,
    pub tardos96: Option<i64>,
    pub dicksformanek: Option<i64>,
    pub wneumann_estimate: Fraction,
}

impl Bounds {
    /// The applicable integer bounds, named.
    pub fn integer_bounds(&self) -> impl Iterator<Item = (&'static str, i64)> + '_ {
        [
            ("hneumann", self.hneumann),
            ("burns", self.burns),
            ("tardos96", self.tardos96),
            ("dicksformanek", self.dicksformanek),
        ]
        .into_iter()
        .filter_map(|(n, b)| b.map(|b| (n, b)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub rank_h: u64,
    pub rank_k: u64,
    pub rank_meet: u64,
    pub reduced_rank_h: u64,
    pub reduced_rank_k: u64,
    pub reduced_rank_meet: u64,
    pub delta: Fraction,
    #[serde(serialize_with = "serialize_letter")]
    pub mu: Option<Letter>,
    pub hnc_holds: bool,
    /// `rank_meet - 1` is within every applicable bound and the W. Neumann
    /// estimate is at least `r̄(H ∩ K)`.
    pub bounds_respected: bool,
    pub wneumann_certifies: bool,
    pub bounds: Bounds,
    pub census_h: DegreeCensus,
    pub census_k: DegreeCensus,
    /// Whether the inputs were carried into `F(a, b)` by `a_i ↦ a^i b a^i`.
    pub embedded: bool,
}

fn serialize_letter<S: Serializer>(l: &Option<Letter>, s: S) -> Result<S::Ok, S::Error> {
    match l {
        Some(l) => s.serialize_str(&l.symbol().to_string()),
        None => s.serialize_none(),
    }
}

/// Carries words into `F(a, b)`: unchanged over rank 2, by inclusion from
/// rank 1, and through `a_i ↦ a^i b a^i` from higher ranks.
pub fn to_rank_two(words: &[Word]) -> Result<(Vec<Word>, bool), HncError> {
    let f2 = Alphabet::rank2();
    let Some(first) = words.first() else {
        return Ok((Vec::new(), false));
    };
    let alphabet = first.alphabet();
    match alphabet.rank() {
        1 | 2 => Ok((
            words
                .iter()
                .map(|w| w.widen(f2))
                .collect::<Result<_, _>>()?,
            false,
        )),
        n => {
            let psi = psi_embedding(n).expect("rank checked by alphabet");
            Ok((
                words
                    .iter()
                    .map(|w| psi.apply(w))
                    .collect::<Result<_, _>>()?,
                true,
            ))
        }
    }
}

fn common_alphabet(h: &[Word], k: &[Word]) -> Result<(), HncError> {
    let mut all = h.iter().chain(k);
    if let Some(first) = all.next() {
        for w in all {
            first.alphabet().check_same(w.alphabet())?;
        }
    }
    Ok(())
}

/// Cyclic-core census of `Γ_H`.
pub fn cyclic_census(g: &Folding) -> DegreeCensus {
    g.core(CoreMode::CyclicCore).census()
}

/// Full report for the pair `⟨h⟩, ⟨k⟩`.
pub fn check_pair(h: &[Word], k: &[Word]) -> Result<PairReport, HncError> {
    common_alphabet(h, k)?;
    let (h2, eh) = to_rank_two(h)?;
    let (k2, ek) = to_rank_two(k)?;
    let f2 = Alphabet::rank2();
    let gh = Folding::from_generators(f2, &h2)?;
    let gk = Folding::from_generators(f2, &k2)?;
    let meet = intersection_folding(&gh, &gk)?;
    Ok(pair_report(&gh, &gk, &meet, eh || ek))
}

/// Report from already-built foldings over `F(a, b)`.
pub fn pair_report(gh: &Folding, gk: &Folding, meet: &Folding, embedded: bool) -> PairReport {
    let (rank_h, rank_k, rank_meet) = (gh.rank() as u64, gk.rank() as u64, meet.rank() as u64);
    let census_h = cyclic_census(gh);
    let census_k = cyclic_census(gk);
    let (delta, mu) = delta_mu(&census_h, &census_k);
    let wn = wneumann_estimate(&census_h, &census_k);
    let bounds = Bounds {
        hneumann: bound_hneumann(rank_h, rank_k).ok(),
        burns: bound_burns(rank_h, rank_k).ok(),
        tardos96: bound_tardos96(rank_h, rank_k).ok(),
        dicksformanek: bound_dicksformanek(rank_h, rank_k).ok(),
        wneumann_estimate: wn.value,
    };
    let (rh, rk, rm) = (
        reduced_rank(rank_h),
        reduced_rank(rank_k),
        reduced_rank(rank_meet),
    );
    let excess = rank_meet as i64 - 1;
    let bounds_respected = bounds.integer_bounds().all(|(_, b)| excess <= b)
        && Fraction::from_integer(rm as i64) <= wn.value;
    PairReport {
        rank_h,
        rank_k,
        rank_meet,
        reduced_rank_h: rh,
        reduced_rank_k: rk,
        reduced_rank_meet: rm,
        delta,
        mu,
        hnc_holds: rm <= rh * rk,
        bounds_respected,
        wneumann_certifies: wn.certifies,
        bounds,
        census_h,
        census_k,
        embedded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpLemmaVerdict {
    pub delta_before: Fraction,
    #[serde(serialize_with = "serialize_letter")]
    pub mu: Option<Letter>,
    pub delta_after: Fraction,
    /// `δ(H^∘, K^∗) < 1/2`.
    pub delta_dropped: bool,
    pub hnc_holds: bool,
}

impl LpLemmaVerdict {
    pub fn confirmed(&self) -> bool {
        self.delta_dropped && self.hnc_holds
    }
}

/// Given `δ(H,K) > 1/2` and length-preserving `∘`, `∗` with
/// `μ^∘ != μ^∗`, computes `δ(H^∘, K^∗)` and the verdict for that pair.
pub fn verify_lp_lemma(
    h: &[Word],
    k: &[Word],
    circ: &GeneratorMap,
    star: &GeneratorMap,
) -> Result<LpLemmaVerdict, HncError> {
    common_alphabet(h, k)?;
    let f2 = Alphabet::rank2();
    if h.iter().chain(k).any(|w| w.alphabet() != f2) {
        return Err(HncError::NotRankTwo);
    }
    for m in [circ, star] {
        if !m.is_length_preserving() || m.domain() != f2 {
            return Err(HncError::NotLengthPreserving(m.to_string()));
        }
    }
    let gh = Folding::from_generators(f2, h)?;
    let gk = Folding::from_generators(f2, k)?;
    let (delta_before, mu) = delta_mu(&cyclic_census(&gh), &cyclic_census(&gk));
    if delta_before <= Fraction::new(1, 2) {
        return Err(HncError::DeltaTooSmall(delta_before));
    }
    let x0 = mu.expect("δ > 1/2 has a maximiser");
    if circ.permute_letter(x0)? == star.permute_letter(x0)? {
        return Err(HncError::MuAgrees(x0));
    }
    let hc: Vec<Word> = h.iter().map(|w| circ.apply(w)).collect::<Result<_, _>>()?;
    let ks: Vec<Word> = k.iter().map(|w| star.apply(w)).collect::<Result<_, _>>()?;
    let report = check_pair(&hc, &ks)?;
    Ok(LpLemmaVerdict {
        delta_before,
        mu,
        delta_after: report.delta,
        delta_dropped: report.delta < Fraction::new(1, 2),
        hnc_holds: report.hnc_holds,
    })
}
