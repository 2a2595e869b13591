//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any failed.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stallings::experiment::sample::{random_n_endomorphism, random_subgroup, random_word};
use stallings::experiment::{run_experiment, ExperimentConfig, ExperimentName};
use stallings::folding::{fold_with, rank_from_census, Worklist};
use stallings::freegroup::{enumerate_length_preserving, parse_word_list};
use stallings::hnc::{check_pair, cyclic_census, delta_mu, verify_lp_lemma, Fraction};
use stallings::intersect::intersection_folding;
use stallings::morphisms::{apply_endo_to_folding, phi0, survivor_map};
use stallings::{canonical_form, Alphabet, CanonicalForm, CoreMode, Folding, GeneratorMap, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f2() -> Alphabet {
    Alphabet::rank2()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn words(csv: &str) -> Vec<Word> {
    parse_word_list(f2(), csv).unwrap()
}

fn folded(gens: &[Word]) -> Folding {
    Folding::from_generators(f2(), gens).unwrap()
}

fn image(f: &GeneratorMap, gens: &[Word]) -> Vec<Word> {
    gens.iter().map(|w| f.apply(w).unwrap()).collect()
}

fn show(gens: &[Word]) -> String {
    gens.iter()
        .map(Word::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn oracle_intersection() -> Outcome {
    let meet = intersection_folding(&folded(&words("aa,b")), &folded(&words("aaa,b"))).unwrap();
    // a-hexagon through the basepoint with a b-loop there, numbered by a
    // breadth-first walk in the order a, b, A, B
    let expected = CanonicalForm {
        rank: 2,
        vertex_count: 6,
        edges: vec![
            (0, 0, 1),
            (0, 1, 0),
            (1, 0, 3),
            (2, 0, 0),
            (3, 0, 5),
            (4, 0, 2),
            (5, 0, 4),
        ],
    };
    let got = canonical_form(&meet);
    let six = canonical_form(&folded(&words("aaaaaa,b")));
    if meet.rank() != 2 {
        return Err(format!("rank {}", meet.rank()));
    }
    if got != expected || six != expected {
        return Err(format!("meet {got:?}, <a^6, b> {six:?}"));
    }
    Ok("rank 2, equal to <a^6, b>".into())
}

fn rank_formula() -> Outcome {
    let mut r = rng(2);
    for i in 0..2000 {
        let h = random_subgroup(&mut r, f2(), 5, 12);
        let g = folded(&h);
        let direct = g.edge_count() as i64 - g.vertex_count() as i64 + 1;
        let census = rank_from_census(&g.census()).map_err(|e| e.to_string())?;
        if direct != census || direct != g.rank() as i64 {
            return Err(format!(
                "#{i} {}: |E|-|V|+1 = {direct}, census {census}",
                show(&h)
            ));
        }
    }
    Ok("2000 foldings".into())
}

fn confluence() -> Outcome {
    let mut r = rng(3);
    for i in 0..500 {
        let h = random_subgroup(&mut r, f2(), 5, 12);
        let rose = Folding::rose(f2(), &h).unwrap();
        let mut forms = BTreeSet::new();
        for j in 0..3 {
            let mut order: Vec<usize> = (0..rose.edge_count()).collect();
            order.shuffle(&mut r);
            let discipline = if j % 2 == 0 {
                Worklist::Fifo
            } else {
                Worklist::Lifo
            };
            let (g, _) = fold_with(&rose, &order, discipline);
            forms.insert(canonical_form(&g.core(CoreMode::CoreWithBasepoint)));
        }
        if forms.len() != 1 {
            return Err(format!("#{i} {}: {} distinct forms", show(&h), forms.len()));
        }
    }
    Ok("500 sets x 3 orders".into())
}

fn membership() -> Outcome {
    let mut r = rng(4);
    let mut members = 0;
    for i in 0..500 {
        let h = random_subgroup(&mut r, f2(), 4, 8);
        let k = random_subgroup(&mut r, f2(), 4, 8);
        let (gh, gk) = (folded(&h), folded(&k));
        let meet = intersection_folding(&gh, &gk).unwrap();
        // half the test words are products of generators of H, so that the
        // positive side is exercised too
        for t in 0..20 {
            let w = if t % 2 == 0 {
                let len = r.gen_range(0..=14);
                random_word(&mut r, f2(), len)
            } else {
                let mut w = Word::identity(f2());
                for _ in 0..r.gen_range(1..=3) {
                    let g = h.choose(&mut r).unwrap();
                    let g = if r.gen() { g.clone() } else { g.invert() };
                    w = w.multiply(&g).unwrap();
                }
                w
            };
            let both = gh.accepts(&w) && gk.accepts(&w);
            if meet.accepts(&w) != both {
                return Err(format!("#{i} H={} K={} w={w}", show(&h), show(&k)));
            }
            members += both as usize;
        }
    }
    Ok(format!("10000 words, {members} in both"))
}

fn phi0_law() -> Outcome {
    let mut r = rng(5);
    let mut images = Vec::new();
    for i in 0..500 {
        let h = random_subgroup(&mut r, f2(), 4, 10);
        let g = folded(&h).core(CoreMode::CyclicCore);
        let before = g.census();
        let out = apply_endo_to_folding(&g, &phi0()).unwrap().result;
        let after = cyclic_census(&out);
        let word_level = cyclic_census(&folded(&image(&phi0(), &h)));
        let types = after.types().unwrap();
        let expected = before.d(3) + 2 * before.d(4);
        let occupied = types.iter().filter(|&&n| n > 0).count();
        let ok = after.d(4) == 0
            && occupied <= 1
            && types.iter().sum::<u64>() == expected
            && out.rank() == g.rank()
            && after == word_level;
        if !ok {
            return Err(format!(
                "#{i} {}: before {before:?}, after {after:?}",
                show(&h)
            ));
        }
        images.push(after);
    }
    // δ over consecutive image pairs: the shared type has full count, so
    // δ = 1 whenever both sides have branch vertices
    let mut ones = 0;
    for p in images.chunks(2) {
        let (d, mu) = delta_mu(&p[0], &p[1]);
        if p[0].d(3) > 0 && p[1].d(3) > 0 {
            if d != Fraction::from_integer(1) {
                return Err(format!("δ = {d} for {:?}, {:?}", p[0], p[1]));
            }
            if mu.map(|l| l.symbol()) != Some('b') {
                return Err(format!("μ = {mu:?}"));
            }
            ones += 1;
        }
    }
    Ok(format!(
        "500 subgroups; shared type b; δ = 1 on {ones} image pairs"
    ))
}

fn survivors() -> Outcome {
    let mut r = rng(6);
    let mut edges = 0;
    for i in 0..300 {
        let h = random_subgroup(&mut r, f2(), 4, 10);
        let f = random_n_endomorphism(&mut r, 4);
        let s = survivor_map(&folded(&h), &f).map_err(|e| e.to_string())?;
        if !s.all_survive() {
            return Err(format!("#{i} H={} f={f}", show(&h)));
        }
        edges += s.survivors.len();
    }
    Ok(format!("300 pairs, {edges} edges"))
}

/// Brute-force search for a nontrivial fixed word of length at most 6.
fn fixes_some_word(f: &GeneratorMap) -> bool {
    let letters: Vec<_> = f2().letters().collect();
    let mut layer = vec![Word::identity(f2())];
    for _ in 0..6 {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(l.inv()) {
                    continue;
                }
                let v = w.multiply(&Word::new(f2(), [l]).unwrap()).unwrap();
                if f.apply(&v).unwrap() == v {
                    return true;
                }
                next.push(v);
            }
        }
        layer = next;
    }
    false
}

fn lp_catalog() -> Outcome {
    let maps = enumerate_length_preserving(f2());
    if maps.len() != 8 {
        return Err(format!("{} maps", maps.len()));
    }
    let free = maps.iter().filter(|m| !fixes_some_word(m)).count();
    let claimed = maps
        .iter()
        .filter(|m| !m.has_nontrivial_fixed_point().unwrap())
        .count();
    if free != 5 || claimed != 5 {
        return Err(format!(
            "fixed-point-free: search {free}, criterion {claimed}"
        ));
    }
    let mut r = rng(7);
    for i in 0..200 {
        let k = random_subgroup(&mut r, f2(), 4, 10);
        let ck = cyclic_census(&folded(&k));
        for m in &maps {
            let cs = cyclic_census(&folded(&image(m, &k)));
            for x in f2().letters() {
                if ck.c(x) != cs.c(m.permute_letter(x).unwrap()) {
                    return Err(format!("#{i} K={} map {m} letter {x:?}", show(&k)));
                }
            }
        }
    }
    Ok("8 maps, 5 fixed-point-free, relabelling on 200 subgroups".into())
}

fn lp_lemma() -> Outcome {
    let mut r = rng(8);
    let maps = enumerate_length_preserving(f2());
    let mut done = 0;
    let mut skipped = 0;
    while done < 200 {
        let h = image(&phi0(), &random_subgroup(&mut r, f2(), 4, 8));
        let k = image(&phi0(), &random_subgroup(&mut r, f2(), 4, 8));
        let (d, mu) = delta_mu(&cyclic_census(&folded(&h)), &cyclic_census(&folded(&k)));
        if d <= Fraction::new(1, 2) {
            // a side with no branch vertex, e.g. a cyclic subgroup
            skipped += 1;
            continue;
        }
        let mu = mu.unwrap();
        let (circ, star) = loop {
            let c = maps.choose(&mut r).unwrap();
            let s = maps.choose(&mut r).unwrap();
            if c.permute_letter(mu).unwrap() != s.permute_letter(mu).unwrap() {
                break (c, s);
            }
        };
        let v = verify_lp_lemma(&h, &k, circ, star).map_err(|e| e.to_string())?;
        if !v.confirmed() {
            return Err(format!(
                "H={} K={} ∘={circ} ∗={star}: δ after {}",
                show(&h),
                show(&k),
                v.delta_after
            ));
        }
        done += 1;
    }
    Ok(format!(
        "200 pairs ({skipped} samples without δ > 1/2 redrawn)"
    ))
}

struct Scan {
    certified: usize,
}

fn hnc_scan_pairs() -> Result<Scan, String> {
    let mut r = rng(9);
    let mut certified = 0;
    for i in 0..1000 {
        let h = random_subgroup(&mut r, f2(), 4, 10);
        let k = random_subgroup(&mut r, f2(), 4, 10);
        let rep = check_pair(&h, &k).map_err(|e| e.to_string())?;
        let excess = rep.rank_meet as i64 - 1;
        let within = |b: Option<i64>| b.is_none_or(|b| excess <= b);
        let ok = rep.reduced_rank_meet <= rep.reduced_rank_h * rep.reduced_rank_k
            && rep.hnc_holds
            && within(rep.bounds.burns)
            && within(rep.bounds.dicksformanek)
            && within(rep.bounds.hneumann)
            && within(rep.bounds.tardos96)
            && Fraction::from_integer(rep.reduced_rank_meet as i64) <= rep.bounds.wneumann_estimate;
        if !ok {
            return Err(format!("#{i} H={} K={}: {rep:?}", show(&h), show(&k)));
        }
        if rep.delta <= Fraction::new(1, 2) {
            certified += 1;
        }
    }
    Ok(Scan { certified })
}

fn hnc_scan() -> Outcome {
    hnc_scan_pairs().map(|_| "1000 pairs within every bound".into())
}

fn wneumann_criterion() -> Outcome {
    // every scanned pair already satisfies the inequality, so it suffices to
    // know how many of them the criterion covers
    let s = hnc_scan_pairs()?;
    Ok(format!(
        "{} of 1000 pairs have δ <= 1/2, all satisfy it",
        s.certified
    ))
}

fn census_determinism() -> Outcome {
    let cfg = ExperimentConfig::new(ExperimentName::CensusDeterminism, 600, 2, 4, 11);
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    if report.has_violations() {
        return Err(format!("{:?}", report.violations[0]));
    }
    let via_phi0 = report.summary.matched_pairs.unwrap_or(0);

    // the same check under a second, randomly drawn N-endomorphism
    let mut r = rng(11);
    let f = random_n_endomorphism(&mut r, 3);
    let mut seen: BTreeMap<[u64; 5], ([u64; 5], String)> = BTreeMap::new();
    let mut matched = 0;
    for _ in 0..600 {
        let h = random_subgroup(&mut r, f2(), 2, 4);
        let g = folded(&h).core(CoreMode::CyclicCore);
        let before = g.census().five_tuple();
        if before == [0; 5] {
            continue;
        }
        let after = cyclic_census(&apply_endo_to_folding(&g, &f).unwrap().result).five_tuple();
        match seen.get(&before) {
            Some((a, who)) if *a != after => {
                return Err(format!("f={f}: {who} and {} share {before:?}", show(&h)));
            }
            Some(_) => matched += 1,
            None => {
                seen.insert(before, (after, show(&h)));
            }
        }
    }
    if via_phi0 < 30 || matched < 30 {
        return Err(format!(
            "matched pairs: {via_phi0} under phi0, {matched} under {f}"
        ));
    }
    Ok(format!(
        "{via_phi0} matched pairs under phi0, {matched} matches under {f}"
    ))
}

fn determinism() -> Outcome {
    for name in [
        ExperimentName::HncScan,
        ExperimentName::Phi0,
        ExperimentName::Theorem1,
        ExperimentName::Survivors,
    ] {
        let cfg = ExperimentConfig::new(name, 50, 3, 8, 12);
        let a = run_experiment(&cfg).map_err(|e| e.to_string())?.to_json();
        let b = run_experiment(&cfg).map_err(|e| e.to_string())?.to_json();
        if a.as_bytes() != b.as_bytes() {
            return Err(format!("{} differs between runs", name.as_str()));
        }
    }
    Ok("4 experiments byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("oracle intersection", oracle_intersection),
        ("rank formula", rank_formula),
        ("folding confluence", confluence),
        ("membership soundness", membership),
        ("phi0 law", phi0_law),
        ("survivor property", survivors),
        ("length-preserving catalog", lp_catalog),
        ("length-preserving lemma", lp_lemma),
        ("hnc scan", hnc_scan),
        ("w. neumann criterion", wneumann_criterion),
        ("census determinism", census_determinism),
        ("report determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS {name}: {note} ({secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
