use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stallings::experiment::{run_experiment, ExperimentConfig, ExperimentName};
use stallings::folding::{to_dot, to_json, to_text};
use stallings::freegroup::{
    check_n_reduced, enumerate_length_preserving, infer_rank, middle_decomposition, parse_word_list,
};
use stallings::hnc::{
    check_pair, cyclic_census, delta_mu, delta_x, to_rank_two, wneumann_estimate,
};
use stallings::intersect::intersection_folding;
use stallings::morphisms::{
    apply_endo_to_folding, check_injective, is_n_endomorphism, parse_map_spec,
};
use stallings::{Alphabet, CoreMode, Folding, GeneratorMap, Word};

/// Stallings foldings of subgroups of free groups.
///
/// Words use lowercase letters for generators and uppercase for their
/// inverses, e.g. `baB`; lists are comma-separated.
#[derive(Parser, Debug)]
#[command(name = "stallings", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fold a generating set into its subgroup graph.
    Fold {
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value_t = Core::Keep)]
        core: Core,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Graph of the intersection of two subgroups.
    Intersect {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ranks, bounds and verdict for a pair (JSON). Exits 2 if the pair
    /// breaks the inequality or a bound.
    Check {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Degree census of a subgroup graph (JSON).
    Census {
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value_t = Core::Cyclic)]
        core: Core,
    },
    /// δ, μ and the W. Neumann estimate for a pair (JSON).
    Delta {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Endomorphisms given as `a=aa;b=ABab` or by catalog name.
    Endo {
        #[command(subcommand)]
        command: EndoCommand,
    },
    /// Built-in map catalogs.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Run a seeded randomized experiment and print its JSON report. Exits 2
    /// if any trial fails.
    Experiment {
        name: ExperimentName,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_gens: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixed N-endomorphism for `survivors` and `census-determinism`.
        #[arg(long)]
        map: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EndoCommand {
    /// Fold the image of a subgroup.
    Apply {
        #[arg(long)]
        map: String,
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Nielsen conditions, middles and injectivity of a map (JSON).
    Check {
        #[arg(long)]
        map: String,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// The eight length-preserving automorphisms of F(a, b).
    Lp {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Core {
    Keep,
    Cyclic,
}

impl Core {
    fn mode(self) -> CoreMode {
        match self {
            Core::Keep => CoreMode::CoreWithBasepoint,
            Core::Cyclic => CoreMode::CyclicCore,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Parsed arguments are fine but the answer is a counterexample.
struct Violation(String);

fn words(alphabet: Alphabet, csv: &str) -> Result<Vec<Word>> {
    parse_word_list(alphabet, csv).with_context(|| format!("cannot parse word list {csv:?}"))
}

fn alphabet_for(texts: &[&str]) -> Result<Alphabet> {
    Ok(Alphabet::new(infer_rank(texts.iter().copied(), 2))?)
}

fn render(g: &Folding, format: Format) -> String {
    match format {
        Format::Text => to_text(g),
        Format::Json => pretty(&to_json(g)),
        Format::Dot => to_dot(g),
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn map_for(spec: &str) -> Result<GeneratorMap> {
    let codomain = if spec.contains('=') {
        let rhs: Vec<&str> = spec
            .split(';')
            .filter_map(|p| p.split_once('='))
            .map(|p| p.1)
            .collect();
        alphabet_for(&rhs)?
    } else {
        Alphabet::rank2()
    };
    Ok(parse_map_spec(spec, codomain)?)
}

fn run(cli: Cli) -> Result<std::result::Result<String, (String, Violation)>> {
    let out = match cli.command {
        Command::Fold { gens, core, format } => {
            let a = alphabet_for(&[&gens])?;
            let g = Folding::from_generators(a, &words(a, &gens)?)?.core(core.mode());
            render(&g, format)
        }
        Command::Intersect { h, k, format } => {
            let a = alphabet_for(&[&h, &k])?;
            let gh = Folding::from_generators(a, &words(a, &h)?)?;
            let gk = Folding::from_generators(a, &words(a, &k)?)?;
            render(&intersection_folding(&gh, &gk)?, format)
        }
        Command::Check { h, k } => {
            let a = alphabet_for(&[&h, &k])?;
            let r = check_pair(&words(a, &h)?, &words(a, &k)?)?;
            let out = pretty(&r);
            if !(r.hnc_holds && r.bounds_respected) {
                return Ok(Err((
                    out,
                    Violation("pair violates the inequality or a bound".into()),
                )));
            }
            out
        }
        Command::Census { gens, core } => {
            let a = alphabet_for(&[&gens])?;
            let g = Folding::from_generators(a, &words(a, &gens)?)?.core(core.mode());
            pretty(&json!({
                "rank": g.rank(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "census": g.census(),
            }))
        }
        Command::Delta { h, k } => {
            let a = alphabet_for(&[&h, &k])?;
            let (h2, _) = to_rank_two(&words(a, &h)?)?;
            let (k2, _) = to_rank_two(&words(a, &k)?)?;
            let f2 = Alphabet::rank2();
            let ch = cyclic_census(&Folding::from_generators(f2, &h2)?);
            let ck = cyclic_census(&Folding::from_generators(f2, &k2)?);
            let (delta, mu) = delta_mu(&ch, &ck);
            let per_letter: serde_json::Map<String, Value> = f2
                .letters()
                .map(|x| (x.symbol().to_string(), json!(delta_x(&ch, &ck, x))))
                .collect();
            let wn = wneumann_estimate(&ch, &ck);
            pretty(&json!({
                "delta": delta,
                "mu": mu.map(|l| l.symbol().to_string()),
                "delta_x": per_letter,
                "wneumann_estimate": wn.value,
                "wneumann_certifies": wn.certifies,
                "census_h": ch,
                "census_k": ck,
            }))
        }
        Command::Endo {
            command: EndoCommand::Apply { map, gens, format },
        } => {
            let f = map_for(&map)?;
            let gens = words(f.domain(), &gens)?;
            let g = Folding::from_generators(f.domain(), &gens)?;
            let image = apply_endo_to_folding(&g, &f)?;
            render(&image.result, format)
        }
        Command::Endo {
            command: EndoCommand::Check { map },
        } => {
            let f = map_for(&map)?;
            let report = check_n_reduced(f.images());
            let middles: Vec<Value> = match middle_decomposition(f.images()) {
                Ok(md) => md
                    .entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "word": e.word.to_string(),
                            "prefix": e.prefix.to_string(),
                            "middle": e.middle.to_string(),
                            "suffix": e.suffix.to_string(),
                        })
                    })
                    .collect(),
                Err(_) => Vec::new(),
            };
            let lp = f.is_length_preserving();
            pretty(&json!({
                "map": f.to_string(),
                "domain_rank": f.domain().rank(),
                "codomain_rank": f.codomain().rank(),
                "n_reduced": report.passed(),
                "n_endomorphism": is_n_endomorphism(&f),
                "violations": report.violations,
                "middles": middles,
                "injective": check_injective(&f),
                "length_preserving": lp,
                "fixed_point_free": if lp { Some(!f.has_nontrivial_fixed_point()?) } else { None },
            }))
        }
        Command::Catalog {
            command: CatalogCommand::Lp { format },
        } => {
            let rows: Vec<(usize, GeneratorMap, bool)> =
                enumerate_length_preserving(Alphabet::rank2())
                    .into_iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let free = !m.has_nontrivial_fixed_point().expect("length-preserving");
                        (i, m, free)
                    })
                    .collect();
            match format {
                Format::Json => pretty(
                    &rows
                        .iter()
                        .map(|(i, m, free)| {
                            json!({"name": format!("lp:{i}"), "map": m.to_string(), "fixed_point_free": free})
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Text => rows
                    .iter()
                    .map(|(i, m, free)| {
                        let note = if *free { "fixed-point-free" } else { "fixes a word" };
                        format!("lp:{i}  {:<12} {note}\n", m.to_string())
                    })
                    .collect(),
                Format::Dot => bail!("catalog has no dot form"),
            }
        }
        Command::Experiment {
            name,
            trials,
            max_gens,
            max_len,
            seed,
            map,
        } => {
            let cfg = ExperimentConfig {
                map,
                ..ExperimentConfig::new(name, trials, max_gens, max_len, seed)
            };
            let report = run_experiment(&cfg)?;
            let out = report.to_json() + "\n";
            if report.has_violations() {
                let n = report.violations.len();
                return Ok(Err((out, Violation(format!("{n} trial(s) failed")))));
            }
            out
        }
    };
    Ok(Ok(out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err((out, Violation(why)))) => {
            print!("{out}");
            eprintln!("violation: {why}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
