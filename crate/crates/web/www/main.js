import init, { layout, params, orbit } from "./pkg/chebgraph_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let circles = [];

function svgEl(name, attrs) {
  const el = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

function inputs() {
  return { n: BigInt($("n").value), q: BigInt($("q").value), a: BigInt($("a").value) };
}

function draw() {
  $("err").textContent = "";
  $("orbit").textContent = "";
  const { n, q } = inputs();
  try {
    showParams(JSON.parse(params(n, q)));
    const g = JSON.parse(layout(n, q));
    $("spec").textContent = g.spec;
    const svg = $("graph");
    svg.replaceChildren();
    svg.setAttribute("viewBox", `0 0 ${g.width} ${g.height}`);
    for (const [from, to] of g.edges) {
      if (from === to) continue;
      const a = g.nodes[from], b = g.nodes[to];
      svg.append(svgEl("line", { x1: a.x, y1: a.y, x2: b.x, y2: b.y }));
    }
    circles = g.nodes.map((v) => {
      const c = svgEl("circle", { cx: v.x, cy: v.y, r: 4, class: v.periodic ? "periodic" : "" });
      const title = svgEl("title", {});
      title.textContent = String(v.id);
      c.append(title);
      c.addEventListener("click", () => { $("a").value = v.id; trace(); });
      svg.append(c);
      return c;
    });
  } catch (e) {
    $("err").textContent = String(e);
  }
}

function showParams(p) {
  const rows = [
    ["N", p.N, ""], ["T0", p.T0, ""],
    ["C", p.C, p.C_decimal], ["T", p.T, p.T_decimal], ["R", p.R, p.R_decimal],
  ];
  const body = rows.map(([k, v, d]) => `<tr><th>${k}</th><td>${v}</td><td>${d}</td></tr>`).join("");
  const note = p.closed_form_agrees ? "closed forms for N, T0 and C agree" : "closed forms for N, T0 and C DISAGREE";
  $("params").innerHTML = `<table>${body}</table><p>${note}; partial-product T formula gives ${p.T_partial_products}</p>`;
}

function trace() {
  $("err").textContent = "";
  const { n, q, a } = inputs();
  try {
    const o = JSON.parse(orbit(n, q, a));
    const tail = o.path.slice(0, o.pper), cyc = o.path.slice(o.pper);
    $("orbit").textContent =
      `tail ${tail.join(" → ") || "(none)"} | cycle ${cyc.join(" → ")} (pper ${o.pper}, per ${o.per})`;
    for (const c of circles) c.classList.remove("orbit");
    for (const v of o.path) circles[v]?.classList.add("orbit");
  } catch (e) {
    $("err").textContent = String(e);
  }
}

await init();
$("controls").addEventListener("submit", (ev) => { ev.preventDefault(); draw(); });
$("trace").addEventListener("click", trace);
draw();
