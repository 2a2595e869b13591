//! Endomorphisms acting on foldings.
//!
//! `Γ_{H^φ}` is obtained from `Γ_H` by replacing every `x`-edge with a path
//! spelling `x^φ` and folding the result. This module keeps track of where
//! each subdivided edge came from, so that the fate of individual image
//! edges during folding can be inspected.

use thiserror::Error;

use crate::folding::{fold, oriented_edge, CoreMode, Edge, FoldTrace, Folding};
use crate::freegroup::{
    check_n_reduced, enumerate_length_preserving, middle_decomposition, Alphabet, FreeGroupError,
    GeneratorMap, Letter, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
    #[error("generator {0:?} has trivial image")]
    TrivialImage(char),
    #[error("map is not an N-endomorphism: {0}")]
    NotNEndomorphism(String),
    #[error("{0} is not reduced as written")]
    JunctionCancels(String),
    #[error("unknown map {0:?}")]
    UnknownMap(String),
}

/// `φ(Γ_H)` before folding.
#[derive(Debug, Clone)]
pub struct SubdividedImage {
    pub graph: Folding,
    /// For every edge of `graph`: the `Γ_H` edge it came from and its
    /// position in that edge's image word.
    pub provenance: Vec<(usize, usize)>,
    /// For every `Γ_H` edge, its image edges in reading order.
    pub paths: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct EndoImage {
    pub subdivided: SubdividedImage,
    /// `φ(Γ_H)` folded; edge ids are those referenced by `trace`.
    pub folded: Folding,
    pub trace: FoldTrace,
    /// `Γ_{H^φ}`: `folded` with hanging trees removed.
    pub result: Folding,
}

pub fn subdivide(g: &Folding, f: &GeneratorMap) -> Result<SubdividedImage, MorphismError> {
    f.domain().check_same(g.alphabet())?;
    let mut vertex_count = g.vertex_count();
    let mut edges = Vec::new();
    let mut provenance = Vec::new();
    let mut paths = Vec::with_capacity(g.edge_count());
    for (id, e) in g.edges().iter().enumerate() {
        let word = f.image(e.label as usize);
        if word.is_identity() {
            return Err(MorphismError::TrivialImage(
                f.domain().name(e.label as usize),
            ));
        }
        let n = word.len();
        let mut path = Vec::with_capacity(n);
        let mut cur = e.source;
        for (pos, &l) in word.letters().iter().enumerate() {
            let next = if pos + 1 == n {
                e.target
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            path.push(edges.len());
            edges.push(oriented_edge(cur, next, l));
            provenance.push((id, pos));
            cur = next;
        }
        paths.push(path);
    }
    let graph = Folding::from_parts(
        f.codomain(),
        vertex_count,
        edges,
        g.basepoint(),
        false,
        CoreMode::Raw,
    );
    Ok(SubdividedImage {
        graph,
        provenance,
        paths,
    })
}

/// Computes `Γ_{H^φ}` from `Γ_H` by subdividing and folding.
pub fn apply_endo_to_folding(g: &Folding, f: &GeneratorMap) -> Result<EndoImage, MorphismError> {
    let subdivided = subdivide(g, f)?;
    let (folded, trace) = fold(&subdivided.graph);
    let result = folded.core(CoreMode::CoreWithBasepoint);
    Ok(EndoImage {
        subdivided,
        folded,
        trace,
        result,
    })
}

/// Whether `{x^φ}` is N-reduced (over the images as an indexed family).
pub fn is_n_endomorphism(f: &GeneratorMap) -> bool {
    f.domain() == f.codomain() && check_n_reduced(f.images()).passed()
}

/// Whether `f` is injective.
///
/// The images generate a free subgroup whose rank is read off its folding;
/// `f` maps onto that subgroup, and a surjection between free groups of
/// equal finite rank is an isomorphism, so `f` is injective iff the rank
/// equals the domain rank.
pub fn check_injective(f: &GeneratorMap) -> bool {
    Folding::from_generators(f.codomain(), f.images())
        .map(|g| g.rank() == f.domain().rank())
        .unwrap_or(false)
}

/// The image edge that must survive folding for one edge of `Γ_H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Survivor {
    pub edge: usize,
    /// Position of the first letter of `m(x^φ)` in `x^φ`.
    pub position: usize,
    pub image_edge: usize,
    pub class_size: usize,
}

#[derive(Debug, Clone)]
pub struct SurvivorMap {
    pub survivors: Vec<Survivor>,
}

impl SurvivorMap {
    /// Designated edges that were identified with another edge.
    pub fn violations(&self) -> impl Iterator<Item = &Survivor> {
        self.survivors.iter().filter(|s| s.class_size != 1)
    }

    pub fn all_survive(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// For each edge `e` of `Γ_H` labelled `x`, the image edge at the first
/// letter of `m(x^φ)` and the size of its fold class.
pub fn survivor_map(g: &Folding, f: &GeneratorMap) -> Result<SurvivorMap, MorphismError> {
    if f.domain() != f.codomain() {
        return Err(MorphismError::NotNEndomorphism(
            "domain and codomain differ".into(),
        ));
    }
    let middles = middle_decomposition(f.images())
        .map_err(|e| MorphismError::NotNEndomorphism(e.to_string()))?;
    let image = apply_endo_to_folding(g, f)?;
    let survivors = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let position = middles.get(e.label as usize, false).prefix.len();
            let image_edge = image.subdivided.paths[id][position];
            Survivor {
                edge: id,
                position,
                image_edge,
                class_size: image.trace.class_size[image.trace.edge_class[image_edge]],
            }
        })
        .collect();
    Ok(SurvivorMap { survivors })
}

/// `a ↦ a^2`, `b ↦ [a, b] = a^-1 b^-1 a b`.
pub fn phi0() -> GeneratorMap {
    GeneratorMap::parse("a=aa;b=ABab", Alphabet::rank2()).expect("well-formed")
}

/// `x ↦ x^-1` for every generator.
pub fn bar(alphabet: Alphabet) -> GeneratorMap {
    let images = (0..alphabet.rank())
        .map(|i| Word::power(alphabet, i, -1).expect("in range"))
        .collect();
    GeneratorMap::new(alphabet, alphabet, images).expect("well-formed")
}

/// `a_i ↦ a^i b a^i` from rank `n` into `F(a, b)`.
pub fn psi_embedding(n: usize) -> Result<GeneratorMap, MorphismError> {
    let domain = Alphabet::new(n)?;
    let f2 = Alphabet::rank2();
    let images = (1..=n as i64)
        .map(|i| {
            let p = Word::power(f2, 0, i).expect("in range");
            let b = Word::generator(f2, 1).expect("in range");
            p.multiply(&b)
                .and_then(|w| w.multiply(&p))
                .expect("same alphabet")
        })
        .collect();
    Ok(GeneratorMap::new(domain, f2, images)?)
}

#[derive(Debug, Clone)]
pub struct Tau {
    pub map: GeneratorMap,
    pub injective: bool,
}

/// `a ↦ a w_a a`, `b ↦ b w_b b`; both words must be reduced as written.
pub fn tau(w_a: &Word, w_b: &Word) -> Result<Tau, MorphismError> {
    let f2 = Alphabet::rank2();
    f2.check_same(w_a.alphabet())?;
    f2.check_same(w_b.alphabet())?;
    let mut images = Vec::with_capacity(2);
    for (gen, w) in [(0u8, w_a), (1u8, w_b)] {
        let x = Letter::positive(gen);
        if w.first() == Some(x.inv()) || w.last() == Some(x.inv()) {
            return Err(MorphismError::JunctionCancels(format!("{x}{w}{x}")));
        }
        let letters: Vec<Letter> = std::iter::once(x)
            .chain(w.letters().iter().copied())
            .chain([x])
            .collect();
        images.push(Word::new(f2, letters)?);
    }
    let map = GeneratorMap::new(f2, f2, images)?;
    let injective = check_injective(&map);
    Ok(Tau { map, injective })
}

/// Parses a map specification: a catalog name (`phi0`, `bar`, `bar:<n>`,
/// `psi:<n>`, `tau:<w_a>:<w_b>`, `lp:<k>`, `id`, `id:<n>`) or an explicit
/// `a=...;b=...` list over `codomain`.
pub fn parse_map_spec(spec: &str, codomain: Alphabet) -> Result<GeneratorMap, MorphismError> {
    let spec = spec.trim();
    let f2 = Alphabet::rank2();
    let rank_arg = |s: &str| -> Result<Alphabet, MorphismError> {
        let n: usize = s
            .parse()
            .map_err(|_| MorphismError::UnknownMap(spec.to_string()))?;
        Ok(Alphabet::new(n)?)
    };
    let mut parts = spec.splitn(3, ':');
    let head = parts.next().unwrap_or_default();
    let arg1 = parts.next();
    let arg2 = parts.next();
    match (head, arg1, arg2) {
        ("phi0", None, None) => Ok(phi0()),
        ("bar", None, None) => Ok(bar(f2)),
        ("bar", Some(n), None) => Ok(bar(rank_arg(n)?)),
        ("id", None, None) => Ok(GeneratorMap::identity(f2)),
        ("id", Some(n), None) => Ok(GeneratorMap::identity(rank_arg(n)?)),
        ("psi", Some(n), None) => psi_embedding(rank_arg(n)?.rank()),
        ("tau", Some(a), Some(b)) => Ok(tau(&Word::parse(f2, a)?, &Word::parse(f2, b)?)?.map),
        ("lp", Some(k), None) => {
            let k: usize = k
                .parse()
                .map_err(|_| MorphismError::UnknownMap(spec.to_string()))?;
            enumerate_length_preserving(f2)
                .into_iter()
                .nth(k)
                .ok_or_else(|| MorphismError::UnknownMap(spec.to_string()))
        }
        _ if spec.contains('=') => Ok(GeneratorMap::parse(spec, codomain)?),
        _ => Err(MorphismError::UnknownMap(spec.to_string())),
    }
}

/// `Γ_{H^ψ}` and `Γ_{(H^ψ)^{φ_0}}` for a subgroup `H` of any rank.
#[derive(Debug, Clone)]
pub struct PsiPhi0Image {
    pub psi_image: Folding,
    pub result: Folding,
}

/// Embeds `H ≤ F(X)` into `F_2` with `ψ`, then applies `φ_0`. The result
/// has every branch vertex of degree 3, all of one type.
pub fn psi_then_phi0(gens: &[Word]) -> Result<PsiPhi0Image, MorphismError> {
    let Some(first) = gens.first() else {
        let trivial = Folding::from_generators(Alphabet::rank2(), &[])?;
        return Ok(PsiPhi0Image {
            psi_image: trivial.clone(),
            result: trivial,
        });
    };
    let psi = psi_embedding(first.alphabet().rank())?;
    let images = gens
        .iter()
        .map(|w| psi.apply(w))
        .collect::<Result<Vec<_>, _>>()?;
    let psi_image = Folding::from_generators(Alphabet::rank2(), &images)?;
    let result = apply_endo_to_folding(&psi_image, &phi0())?.result;
    Ok(PsiPhi0Image { psi_image, result })
}

/// Relabels `Γ_H` by a length-preserving automorphism, which is the same as
/// folding `σ(Γ_H)` (no folds occur).
pub fn relabel(g: &Folding, sigma: &GeneratorMap) -> Result<Folding, MorphismError> {
    if !sigma.is_length_preserving() {
        return Err(FreeGroupError::NotLengthPreserving.into());
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let l = sigma.letter_image(Letter::positive(e.label)).letters()[0];
            oriented_edge(e.source, e.target, l)
        })
        .collect::<Vec<Edge>>();
    Ok(Folding::from_parts(
        g.alphabet(),
        g.vertex_count(),
        edges,
        g.basepoint(),
        g.is_folded(),
        g.core_mode(),
    ))
}
