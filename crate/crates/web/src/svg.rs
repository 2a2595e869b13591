//! SVG drawing of a folded graph: vertices on a circle in canonical order,
//! curved arcs for parallel edges, loops drawn outward.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use stallings::{canonical_form, Folding};

const SIZE: f64 = 360.0;
const RADIUS: f64 = 130.0;
const NODE: f64 = 11.0;
/// `(source, label, target)`.
type Arc = (usize, u8, usize);

const COLOURS: [&str; 6] = [
    "#c0392b", "#2471a3", "#239b56", "#b9770e", "#7d3c98", "#117a65",
];

pub fn colour(label: u8) -> &'static str {
    COLOURS[label as usize % COLOURS.len()]
}

fn position(i: usize, n: usize) -> (f64, f64) {
    if n == 1 {
        return (SIZE / 2.0, SIZE / 2.0);
    }
    let t = -PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
    (SIZE / 2.0 + RADIUS * t.cos(), SIZE / 2.0 + RADIUS * t.sin())
}

fn markers(out: &mut String, rank: usize) {
    out.push_str("<defs>");
    for l in 0..rank {
        let _ = write!(
            out,
            r#"<marker id="arrow{l}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><polygon points="0,0 10,5 0,10" fill="{}"/></marker>"#,
            colour(l as u8)
        );
    }
    out.push_str("</defs>");
}

/// Depth-first order from the basepoint, so cycles run around the circle
/// instead of across it. `slot[v]` is the position of vertex `v`.
fn circle_slots(n: usize, edges: &[Arc]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(s, _, t) in edges {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut slot = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if slot[v] != usize::MAX {
            continue;
        }
        slot[v] = next;
        next += 1;
        stack.extend(adj[v].iter().rev().filter(|&&w| slot[w] == usize::MAX));
    }
    for s in slot.iter_mut().filter(|s| **s == usize::MAX) {
        *s = next;
        next += 1;
    }
    slot
}

/// Renders `g` with the basepoint at the top. Vertex numbers are those of
/// the canonical form.
pub fn render(g: &Folding) -> String {
    let cf = canonical_form(g);
    let n = cf.vertex_count;
    let slot = circle_slots(n, &cf.edges);
    let at = |v: usize| position(slot[v], n);
    let names: Vec<char> = g.alphabet().names().collect();
    let mut out = String::new();
    let _ = write!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}" font-family="sans-serif" font-size="12"><rect width="100%" height="100%" fill="#fff"/>"##
    );
    markers(&mut out, cf.rank);

    // edges between the same unordered pair share a fan of curvatures
    let mut bundles: BTreeMap<(usize, usize), Vec<Arc>> = BTreeMap::new();
    for &(s, l, t) in &cf.edges {
        bundles
            .entry((s.min(t), s.max(t)))
            .or_default()
            .push((s, l, t));
    }
    for ((u, v), edges) in &bundles {
        for (i, &(s, l, t)) in edges.iter().enumerate() {
            let c = colour(l);
            let name = names[l as usize];
            if u == v {
                loop_edge(&mut out, at(s), n == 1, i, l, c, name);
            } else {
                let k = edges.len() as f64;
                // offsets are measured in the frame of the lower endpoint, so
                // an edge drawn backwards flips its sign
                let mut bend = (i as f64 - (k - 1.0) / 2.0) * 70.0;
                if s > t {
                    bend = -bend;
                }
                arc(&mut out, at(s), at(t), bend, l, c, name);
            }
        }
    }
    for v in 0..n {
        let (x, y) = at(v);
        if v == 0 {
            let _ = write!(
                out,
                r##"<circle cx="{x:.1}" cy="{y:.1}" r="{}" fill="none" stroke="#222"/>"##,
                NODE + 4.0
            );
        }
        let _ = write!(
            out,
            r##"<circle cx="{x:.1}" cy="{y:.1}" r="{NODE}" fill="#fdfefe" stroke="#222"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{v}</text>"##,
            y + 4.0
        );
    }
    out.push_str("</svg>");
    out
}

fn arc(
    out: &mut String,
    (x1, y1): (f64, f64),
    (x2, y2): (f64, f64),
    bend: f64,
    l: u8,
    c: &str,
    name: char,
) {
    let (dx, dy) = (x2 - x1, y2 - y1);
    let len = (dx * dx + dy * dy).sqrt().max(1e-9);
    let (nx, ny) = (-dy / len, dx / len);
    let (mx, my) = ((x1 + x2) / 2.0 + nx * bend, (y1 + y2) / 2.0 + ny * bend);
    // trim both ends to the vertex circles along the control directions
    let trim = |(px, py): (f64, f64), (qx, qy): (f64, f64)| {
        let (ex, ey) = (qx - px, qy - py);
        let d = (ex * ex + ey * ey).sqrt().max(1e-9);
        (px + ex / d * NODE, py + ey / d * NODE)
    };
    let (sx, sy) = trim((x1, y1), (mx, my));
    let (tx, ty) = trim((x2, y2), (mx, my));
    let _ = write!(
        out,
        r#"<path d="M{sx:.1},{sy:.1} Q{mx:.1},{my:.1} {tx:.1},{ty:.1}" fill="none" stroke="{c}" stroke-width="1.6" marker-end="url(#arrow{l})"/>"#
    );
    // label just outside the curve's midpoint, on the side it bulges to
    let side = if bend < 0.0 { -1.0 } else { 1.0 };
    let (lx, ly) = (
        0.25 * sx + 0.5 * mx + 0.25 * tx + side * nx * 9.0,
        0.25 * sy + 0.5 * my + 0.25 * ty + side * ny * 9.0,
    );
    let _ = write!(
        out,
        r#"<text x="{lx:.1}" y="{:.1}" fill="{c}" text-anchor="middle">{name}</text>"#,
        ly + 4.0
    );
}

fn loop_edge(
    out: &mut String,
    (x, y): (f64, f64),
    alone: bool,
    i: usize,
    l: u8,
    c: &str,
    name: char,
) {
    let (ox, oy) = if alone {
        (0.0, -1.0)
    } else {
        let (dx, dy) = (x - SIZE / 2.0, y - SIZE / 2.0);
        let d = (dx * dx + dy * dy).sqrt();
        (dx / d, dy / d)
    };
    // successive loops at one vertex fan out by rotating the outward direction
    let turn = i as f64 * 1.2;
    let (ox, oy) = (
        ox * turn.cos() - oy * turn.sin(),
        ox * turn.sin() + oy * turn.cos(),
    );
    let (px, py) = (-oy, ox);
    let reach = 24.0 + 8.0 * i as f64;
    let a = (
        x + (ox * 0.7 + px * 0.7) * NODE,
        y + (oy * 0.7 + py * 0.7) * NODE,
    );
    let b = (
        x + (ox * 0.7 - px * 0.7) * NODE,
        y + (oy * 0.7 - py * 0.7) * NODE,
    );
    let c1 = (
        x + ox * (NODE + reach) + px * reach,
        y + oy * (NODE + reach) + py * reach,
    );
    let c2 = (
        x + ox * (NODE + reach) - px * reach,
        y + oy * (NODE + reach) - py * reach,
    );
    let _ = write!(
        out,
        r#"<path d="M{:.1},{:.1} C{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}" fill="none" stroke="{c}" stroke-width="1.6" marker-end="url(#arrow{l})"/>"#,
        a.0, a.1, c1.0, c1.1, c2.0, c2.1, b.0, b.1
    );
    let _ = write!(
        out,
        r#"<text x="{:.1}" y="{:.1}" fill="{c}" text-anchor="middle">{name}</text>"#,
        x + ox * (NODE + reach + 6.0),
        y + oy * (NODE + reach + 6.0) + 4.0
    );
}
