import init, { fold, intersect, apply_map } from "./pkg/stallings_web.js";

const census = (c) => {
  const t = c.types ? ` C=${["a", "b", "A", "B"].map((x) => `${x}:${c.types[x]}`).join(" ")}` : "";
  return `d1=${c.d1} d3=${c.d3} d4=${c.d4}${t}`;
};

const figure = (title, g) => {
  const f = document.createElement("figure");
  f.innerHTML = g.svg;
  const cap = document.createElement("figcaption");
  cap.textContent = `${title}\nrank ${g.rank}, ${g.vertices} vertices, ${g.edges} edges\n${census(g.census)}`;
  f.append(cap);
  return f;
};

const note = (text, cls) => {
  const p = document.createElement("pre");
  p.textContent = text;
  if (cls) p.className = cls;
  return p;
};

const frac = (q) => (q.den === 1 ? `${q.num}` : `${q.num}/${q.den}`);

function show(section, result, build) {
  const out = section.querySelector(".out");
  out.replaceChildren();
  const r = JSON.parse(result);
  if (r.error) {
    out.append(note(r.error, "error"));
    return;
  }
  out.append(...build(r));
}

const handlers = {
  fold: (f) => fold(f.gens.value, f.cyclic.checked),
  intersect: (f) => intersect(f.h.value, f.k.value),
  map: (f) => apply_map(f.spec.value, f.gens.value),
};

const views = {
  fold: (r) => [figure("Γ_H", r), note(r.text)],
  intersect: (r) => {
    const p = r.report;
    const lines = [
      `rank H ${p.rank_h}, rank K ${p.rank_k}, rank H∩K ${p.rank_meet}`,
      `r̄(H∩K) = ${p.reduced_rank_meet} ≤ r̄(H)·r̄(K) = ${p.reduced_rank_h * p.reduced_rank_k}: ${p.hnc_holds}`,
      `δ = ${frac(p.delta)}, μ = ${p.mu ?? "none"}`,
      `W. Neumann estimate ${frac(p.bounds.wneumann_estimate)}${p.wneumann_certifies ? " (certifies)" : ""}`,
      `bounds: ${Object.entries(p.bounds)
        .filter(([k, v]) => k !== "wneumann_estimate" && v !== null)
        .map(([k, v]) => `${k} ${v}`)
        .join(", ")}`,
    ];
    return [figure("Γ_H", r.h), figure("Γ_K", r.k), figure("Γ_{H∩K}", r.meet), note(lines.join("\n"))];
  },
  map: (r) => [
    figure("Γ_H", r.before),
    figure(`image under ${r.map}`, r.after),
    note(
      [
        `folds while folding the image: ${r.folds}`,
        `cyclic core before: ${census(r.cyclic_before)}`,
        `cyclic core after:  ${census(r.cyclic_after)}`,
        r.survivors_intact === null ? "not an N-endomorphism" : `designated edges survive: ${r.survivors_intact}`,
      ].join("\n"),
    ),
  ],
};

await init();
for (const id of Object.keys(handlers)) {
  const section = document.getElementById(id);
  const form = section.querySelector("form");
  const run = () => show(section, handlers[id](form), views[id]);
  form.addEventListener("submit", (e) => {
    e.preventDefault();
    run();
  });
  run();
}
