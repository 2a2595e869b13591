//! Randomised experiment drivers.
//!
//! Each trial draws from its own ChaCha stream, selected by the trial
//! index, so a report depends only on the configuration: trials can run in
//! parallel, and any trial can be replayed alone with [`run_trial`].

pub mod sample;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::folding::{CoreMode, Folding};
use crate::freegroup::{Alphabet, GeneratorMap, Word};
use crate::hnc::{check_pair, cyclic_census, Fraction, PairReport};
use crate::morphisms::{
    apply_endo_to_folding, bar, is_n_endomorphism, parse_map_spec, phi0, survivor_map,
};

use sample::{random_fixed_point_free, random_n_endomorphism, random_subgroup, random_tau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentName {
    HncScan,
    Phi0,
    Theorem1,
    Theorem1b,
    Survivors,
    CensusDeterminism,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 6] = [
        ExperimentName::HncScan,
        ExperimentName::Phi0,
        ExperimentName::Theorem1,
        ExperimentName::Theorem1b,
        ExperimentName::Survivors,
        ExperimentName::CensusDeterminism,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::HncScan => "hnc-scan",
            ExperimentName::Phi0 => "phi0",
            ExperimentName::Theorem1 => "theorem1",
            ExperimentName::Theorem1b => "theorem1b",
            ExperimentName::Survivors => "survivors",
            ExperimentName::CensusDeterminism => "census-determinism",
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| ExperimentError::UnknownExperiment(s.to_string()))
    }
}

impl Serialize for ExperimentName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("bad map: {0}")]
    BadMap(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentName,
    pub trials: usize,
    pub max_gens: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Fixed map for `survivors` (default: a fresh random N-endomorphism
    /// per trial) and `census-determinism` (default `phi0`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
}

impl ExperimentConfig {
    pub fn new(
        experiment: ExperimentName,
        trials: usize,
        max_gens: usize,
        max_len: usize,
        seed: u64,
    ) -> Self {
        Self {
            experiment,
            trials,
            max_gens,
            max_len,
            seed,
            map: None,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        for (name, v) in [
            ("trials", self.trials),
            ("max_gens", self.max_gens),
            ("max_len", self.max_len),
        ] {
            if v == 0 {
                return Err(ExperimentError::NotPositive(name));
            }
        }
        if let Some(spec) = &self.map {
            let f = parse_map_spec(spec, Alphabet::rank2())
                .map_err(|e| ExperimentError::BadMap(e.to_string()))?;
            if matches!(
                self.experiment,
                ExperimentName::Survivors | ExperimentName::CensusDeterminism
            ) && !is_n_endomorphism(&f)
            {
                return Err(ExperimentError::BadMap(format!(
                    "{spec} is not an N-endomorphism"
                )));
            }
        }
        Ok(())
    }

    fn fixed_map(&self) -> Option<GeneratorMap> {
        self.map
            .as_deref()
            .map(|s| parse_map_spec(s, Alphabet::rank2()).expect("validated"))
    }

    fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub passed: bool,
    /// What settled the trial, e.g. `wneumann` or `direct`.
    pub certificate: String,
    pub h: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub seed: u64,
    pub h: Vec<String>,
    pub k: Vec<String>,
    pub map: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub passed: usize,
    pub violations: usize,
    pub certificates: BTreeMap<String, usize>,
    /// `census-determinism` only: pairs of trials with equal nonzero
    /// 5-tuples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_pairs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub summary: Summary,
    pub violations: Vec<Violation>,
    pub outcomes: Vec<TrialOutcome>,
}

impl ExperimentReport {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn strings(words: &[Word]) -> Vec<String> {
    words.iter().map(Word::to_string).collect()
}

fn folding(words: &[Word]) -> Folding {
    Folding::from_generators(Alphabet::rank2(), words).expect("rank-2 words")
}

fn apply_all(f: &GeneratorMap, words: &[Word]) -> Vec<Word> {
    words
        .iter()
        .map(|w| f.apply(w).expect("matching alphabet"))
        .collect()
}

fn pair_line(r: &PairReport) -> String {
    format!(
        "ranks ({}, {}, {}), r̄ meet {} <= {}, δ = {}",
        r.rank_h,
        r.rank_k,
        r.rank_meet,
        r.reduced_rank_meet,
        r.reduced_rank_h * r.reduced_rank_k,
        r.delta
    )
}

fn hnc_scan_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    let mut rng = cfg.rng(trial);
    let f2 = Alphabet::rank2();
    let h = random_subgroup(&mut rng, f2, cfg.max_gens, cfg.max_len);
    let k = random_subgroup(&mut rng, f2, cfg.max_gens, cfg.max_len);
    let r = check_pair(&h, &k).expect("rank-2 words");
    let criterion_ok = !r.wneumann_certifies || r.hnc_holds;
    TrialOutcome {
        trial,
        passed: r.hnc_holds && r.bounds_respected && criterion_ok,
        certificate: if r.wneumann_certifies {
            "wneumann"
        } else {
            "direct"
        }
        .into(),
        h: strings(&h),
        k: strings(&k),
        map: None,
        detail: pair_line(&r),
    }
}

fn phi0_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    let mut rng = cfg.rng(trial);
    let h = random_subgroup(&mut rng, Alphabet::rank2(), cfg.max_gens, cfg.max_len);
    let g = folding(&h).core(CoreMode::CyclicCore);
    let before = g.census();
    let image = apply_endo_to_folding(&g, &phi0())
        .expect("phi0 has nontrivial images")
        .result;
    let after = image.core(CoreMode::CyclicCore).census();
    let types = after.types().expect("rank 2");
    let occupied = types.iter().filter(|&&n| n > 0).count();
    let expected = before.d(3) + 2 * before.d(4);
    let shared = types.iter().copied().max().unwrap_or(0);
    let rank_kept = image.rank() == g.rank();
    let passed = after.d(4) == 0
        && occupied <= 1
        && shared == expected
        && after.d(3) == expected
        && rank_kept;
    TrialOutcome {
        trial,
        passed,
        certificate: "phi0-law".into(),
        h: strings(&h),
        k: Vec::new(),
        map: None,
        detail: format!(
            "before d3={} d4={}; after d3={} d4={} types={:?}; rank {} -> {}",
            before.d(3),
            before.d(4),
            after.d(3),
            after.d(4),
            types,
            g.rank(),
            image.rank()
        ),
    }
}

fn theorem1_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    let mut rng = cfg.rng(trial);
    let f2 = Alphabet::rank2();
    let h = random_subgroup(&mut rng, f2, cfg.max_gens, cfg.max_len);
    let k = random_subgroup(&mut rng, f2, cfg.max_gens, cfg.max_len);
    let t = random_tau(&mut rng, 3);
    let sigma = random_fixed_point_free(&mut rng);
    let h_tau = apply_all(&t.map, &h);
    let h_ts = apply_all(&sigma, &h_tau);

    let base = check_pair(&h, &k).expect("rank-2 words");
    let moved = check_pair(&h_ts, &k).expect("rank-2 words");
    let mut passed = base.hnc_holds || moved.hnc_holds;
    let mut certificate = match (base.hnc_holds, moved.hnc_holds) {
        (true, true) => "both",
        (true, false) => "original",
        (false, true) => "transformed",
        (false, false) => "neither",
    }
    .to_string();
    let mut detail = format!("{} | {}", pair_line(&base), pair_line(&moved));
    if base.delta > Fraction::new(1, 2) {
        let tau_delta = check_pair(&h_tau, &k).expect("rank-2 words").delta;
        let mechanism = tau_delta == base.delta && moved.delta < Fraction::new(1, 2);
        passed &= mechanism;
        certificate.push_str("+delta-drop");
        detail.push_str(&format!(
            " | δ(H^τ,K) = {tau_delta}, δ(H^τσ,K) = {}",
            moved.delta
        ));
    }
    TrialOutcome {
        trial,
        passed,
        certificate,
        h: strings(&h),
        k: strings(&k),
        map: Some(t.map.compose(&sigma).expect("rank 2").to_string()),
        detail,
    }
}

fn theorem1b_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    let mut rng = cfg.rng(trial);
    let a3 = Alphabet::new(3).expect("valid rank");
    let h = random_subgroup(&mut rng, a3, cfg.max_gens, cfg.max_len);
    let k = random_subgroup(&mut rng, a3, cfg.max_gens, cfg.max_len);
    let h_bar = apply_all(&bar(a3), &h);
    let base = check_pair(&h, &k).expect("common alphabet");
    let moved = check_pair(&h_bar, &k).expect("common alphabet");
    let mut passed = base.hnc_holds || moved.hnc_holds;
    let mut certificate = match (base.hnc_holds, moved.hnc_holds) {
        (true, true) => "both",
        (true, false) => "original",
        (false, true) => "transformed",
        (false, false) => "neither",
    }
    .to_string();
    if base.delta > Fraction::new(1, 2) {
        passed &= moved.delta < Fraction::new(1, 2);
        certificate.push_str("+delta-drop");
    }
    TrialOutcome {
        trial,
        passed,
        certificate,
        h: strings(&h),
        k: strings(&k),
        map: Some(bar(a3).to_string()),
        detail: format!("{} | {}", pair_line(&base), pair_line(&moved)),
    }
}

fn survivors_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    let mut rng = cfg.rng(trial);
    let h = random_subgroup(&mut rng, Alphabet::rank2(), cfg.max_gens, cfg.max_len);
    let f = cfg
        .fixed_map()
        .unwrap_or_else(|| random_n_endomorphism(&mut rng, 4));
    let g = folding(&h);
    let s = survivor_map(&g, &f).expect("N-endomorphism");
    let bad: Vec<usize> = s.violations().map(|v| v.edge).collect();
    TrialOutcome {
        trial,
        passed: bad.is_empty(),
        certificate: "survivors".into(),
        h: strings(&h),
        k: Vec::new(),
        map: Some(f.to_string()),
        detail: format!(
            "{} edges, folded designated edges {:?}",
            s.survivors.len(),
            bad
        ),
    }
}

/// Cyclic-core 5-tuples of `H` and of its image.
fn census_pair(
    cfg: &ExperimentConfig,
    trial: usize,
) -> (Vec<Word>, [u64; 5], [u64; 5], GeneratorMap) {
    let mut rng = cfg.rng(trial);
    let h = random_subgroup(&mut rng, Alphabet::rank2(), cfg.max_gens, cfg.max_len);
    let f = cfg.fixed_map().unwrap_or_else(phi0);
    let g = folding(&h).core(CoreMode::CyclicCore);
    let image = apply_endo_to_folding(&g, &f)
        .expect("N-endomorphism")
        .result;
    let before = cyclic_census(&g).five_tuple();
    let after = cyclic_census(&image).five_tuple();
    (h, before, after, f)
}

fn census_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    let (h, before, after, f) = census_pair(cfg, trial);
    TrialOutcome {
        trial,
        passed: true,
        certificate: "census".into(),
        h: strings(&h),
        k: Vec::new(),
        map: Some(f.to_string()),
        detail: format!("{before:?} -> {after:?}"),
    }
}

/// Runs one trial in isolation. For `census-determinism` the outcome holds
/// the trial's own tuples; cross-trial comparison happens in
/// [`run_experiment`].
pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> TrialOutcome {
    match cfg.experiment {
        ExperimentName::HncScan => hnc_scan_trial(cfg, trial),
        ExperimentName::Phi0 => phi0_trial(cfg, trial),
        ExperimentName::Theorem1 => theorem1_trial(cfg, trial),
        ExperimentName::Theorem1b => theorem1b_trial(cfg, trial),
        ExperimentName::Survivors => survivors_trial(cfg, trial),
        ExperimentName::CensusDeterminism => census_trial(cfg, trial),
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let mut outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect();

    let mut matched_pairs = None;
    if cfg.experiment == ExperimentName::CensusDeterminism {
        let tuples: Vec<([u64; 5], [u64; 5])> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let (_, b, a, _) = census_pair(cfg, t);
                (b, a)
            })
            .collect();
        let mut groups: BTreeMap<[u64; 5], Vec<usize>> = BTreeMap::new();
        for (t, (b, _)) in tuples.iter().enumerate() {
            groups.entry(*b).or_default().push(t);
        }
        let mut pairs = 0;
        for (tuple, members) in &groups {
            // subgroups without branch vertices match trivially
            if tuple.iter().any(|&n| n > 0) {
                pairs += members.len() * (members.len() - 1) / 2;
            }
            let first = members[0];
            for &t in &members[1..] {
                if tuples[t].1 != tuples[first].1 {
                    outcomes[t].passed = false;
                    outcomes[t].detail.push_str(&format!(
                        " disagrees with trial {first} ({:?})",
                        tuples[first].1
                    ));
                }
            }
        }
        matched_pairs = Some(pairs);
    }

    let mut certificates = BTreeMap::new();
    for o in &outcomes {
        *certificates.entry(o.certificate.clone()).or_insert(0) += 1;
    }
    let violations: Vec<Violation> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| Violation {
            trial: o.trial,
            seed: cfg.seed,
            h: o.h.clone(),
            k: o.k.clone(),
            map: o.map.clone(),
            detail: o.detail.clone(),
        })
        .collect();
    Ok(ExperimentReport {
        config: cfg.clone(),
        summary: Summary {
            trials: cfg.trials,
            passed: outcomes.iter().filter(|o| o.passed).count(),
            violations: violations.len(),
            certificates,
            matched_pairs,
        },
        violations,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for e in ExperimentName::ALL {
            assert_eq!(e.as_str().parse::<ExperimentName>().unwrap(), e);
        }
        assert!("nope".parse::<ExperimentName>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new(ExperimentName::Survivors, 0, 2, 3, 1);
        assert!(c.validate().is_err());
        c.trials = 1;
        assert!(c.validate().is_ok());
        c.map = Some("a=a;b=ab".into());
        assert!(c.validate().is_err());
        c.map = Some("id".into());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn phi0_single_trial() {
        let cfg = ExperimentConfig::new(ExperimentName::Phi0, 3, 2, 3, 5);
        let r = run_experiment(&cfg).unwrap();
        assert!(!r.has_violations(), "{}", r.to_json());
    }

    #[test]
    fn identity_survivors() {
        let mut cfg = ExperimentConfig::new(ExperimentName::Survivors, 1, 3, 6, 9);
        cfg.map = Some("id".into());
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.summary.passed, 1);
    }

    #[test]
    fn hnc_scan_is_clean_and_deterministic() {
        let cfg = ExperimentConfig::new(ExperimentName::HncScan, 100, 3, 8, 2024);
        let a = run_experiment(&cfg).unwrap();
        assert_eq!(a.summary.violations, 0, "{}", a.to_json());
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn trials_replay_in_isolation() {
        let cfg = ExperimentConfig::new(ExperimentName::Theorem1, 20, 3, 6, 77);
        let r = run_experiment(&cfg).unwrap();
        for o in &r.outcomes {
            assert_eq!(&run_trial(&cfg, o.trial), o);
        }
    }
}
