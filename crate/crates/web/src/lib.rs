//! WebAssembly bindings for the browser demo. Every export takes plain
//! strings and returns a JSON string, `{"error": ...}` on bad input.

mod svg;

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use stallings::folding::to_text;
use stallings::freegroup::{infer_rank, parse_word_list};
use stallings::hnc::{check_pair, cyclic_census};
use stallings::intersect::intersection_folding;
use stallings::morphisms::{apply_endo_to_folding, parse_map_spec, survivor_map};
use stallings::{Alphabet, CoreMode, Folding, Word};

pub use svg::render as render_svg;

type Result<T> = std::result::Result<T, String>;

#[derive(Serialize)]
struct Drawn {
    svg: String,
    text: String,
    rank: usize,
    vertices: usize,
    edges: usize,
    census: Value,
}

fn drawn(g: &Folding) -> Drawn {
    Drawn {
        svg: svg::render(g),
        text: to_text(g),
        rank: g.rank(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        census: serde_json::to_value(g.census()).expect("census serialises"),
    }
}

fn alphabet(texts: &[&str]) -> Result<Alphabet> {
    Alphabet::new(infer_rank(texts.iter().copied(), 2)).map_err(|e| e.to_string())
}

fn words(a: Alphabet, csv: &str) -> Result<Vec<Word>> {
    parse_word_list(a, csv).map_err(|e| e.to_string())
}

fn folding(a: Alphabet, csv: &str) -> Result<Folding> {
    Folding::from_generators(a, &words(a, csv)?).map_err(|e| e.to_string())
}

fn respond(r: Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// `Γ_H` for comma-separated generators; `cyclic` prunes to the cyclic core.
pub fn fold_json(gens: &str, cyclic: bool) -> String {
    respond((|| {
        let a = alphabet(&[gens])?;
        let mut g = folding(a, gens)?;
        if cyclic {
            g = g.core(CoreMode::CyclicCore);
        }
        Ok(json!(drawn(&g)))
    })())
}

/// Both subgroup graphs, the graph of the intersection and the pair report.
pub fn intersect_json(h: &str, k: &str) -> String {
    respond((|| {
        let a = alphabet(&[h, k])?;
        let (gh, gk) = (folding(a, h)?, folding(a, k)?);
        let meet = intersection_folding(&gh, &gk).map_err(|e| e.to_string())?;
        let report = check_pair(&words(a, h)?, &words(a, k)?).map_err(|e| e.to_string())?;
        Ok(json!({
            "h": drawn(&gh),
            "k": drawn(&gk),
            "meet": drawn(&meet),
            "report": report,
        }))
    })())
}

/// `Γ_H` and the folded image of `H` under a map spec such as `phi0`,
/// `lp:3` or `a=aa;b=ABab`, with cyclic-core censuses of both.
pub fn apply_map_json(spec: &str, gens: &str) -> String {
    respond((|| {
        let codomain = if spec.contains('=') {
            let rhs: Vec<&str> = spec
                .split(';')
                .filter_map(|p| p.split_once('='))
                .map(|p| p.1)
                .collect();
            alphabet(&rhs)?
        } else {
            Alphabet::rank2()
        };
        let f = parse_map_spec(spec, codomain).map_err(|e| e.to_string())?;
        let g = folding(f.domain(), gens)?;
        let image = apply_endo_to_folding(&g, &f).map_err(|e| e.to_string())?;
        let survivors = survivor_map(&g, &f).ok().map(|s| s.all_survive());
        Ok(json!({
            "map": f.to_string(),
            "before": drawn(&g),
            "after": drawn(&image.result),
            "cyclic_before": cyclic_census(&g),
            "cyclic_after": cyclic_census(&image.result),
            "folds": image.trace.fold_count,
            "survivors_intact": survivors,
        }))
    })())
}

#[wasm_bindgen]
pub fn fold(gens: &str, cyclic: bool) -> String {
    fold_json(gens, cyclic)
}

#[wasm_bindgen]
pub fn intersect(h: &str, k: &str) -> String {
    intersect_json(h, k)
}

#[wasm_bindgen]
pub fn apply_map(spec: &str, gens: &str) -> String {
    apply_map_json(spec, gens)
}
