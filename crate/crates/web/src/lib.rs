//! Browser bindings: draw the functional graph of `T_n` on `F_q`, report its
//! parameters, and trace one orbit.

use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use chebgraph::ff::{cheb_eval_u64, FieldCtx, PrimePower};
use chebgraph::oracle::{cheb_graph, RawGraph};
use chebgraph::render::render_text;
use chebgraph::structure::{chebyshev_graph_spec, fmt_decimal, fmt_ratio, params_closed_form};

/// Largest field drawn node by node.
pub const DRAW_LIMIT: u64 = 4096;
const STEP: f64 = 14.0;
const GAP: f64 = 24.0;

#[derive(Serialize)]
struct Node {
    id: usize,
    x: f64,
    y: f64,
    periodic: bool,
}

#[derive(Serialize)]
struct Layout {
    n: u64,
    q: u64,
    spec: String,
    width: f64,
    height: f64,
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
}

fn field(q: u64) -> Result<PrimePower, String> {
    PrimePower::from_order(q).map_err(|e| e.to_string())
}

fn check_n(n: u64) -> Result<(), String> {
    if n == 0 {
        return Err("n must be positive".into());
    }
    Ok(())
}

fn tree_preds<'a>(g: &'a RawGraph, preds: &'a [Vec<usize>], v: usize) -> impl Iterator<Item = usize> + 'a {
    preds[v].iter().copied().filter(|&u| !g.is_periodic(u))
}

/// Places one component around the origin: cycle on a circle, each tree
/// node one ring further out per level, in a sector sized by its leaves.
/// Returns the component radius.
fn place_component(g: &RawGraph, cycle: &[usize], preds: &[Vec<usize>], pos: &mut [(f64, f64)]) -> f64 {
    // breadth-first order, so every node precedes its tree children
    let mut order = cycle.to_vec();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        order.extend(tree_preds(g, preds, v));
        i += 1;
    }
    let mut weight: HashMap<usize, f64> = HashMap::new();
    for &v in order.iter().rev() {
        let w: f64 = tree_preds(g, preds, v).map(|u| weight[&u]).sum();
        weight.insert(v, w.max(1.0));
    }
    let total: f64 = cycle.iter().map(|c| weight[c]).sum();
    let r0 = if cycle.len() == 1 { 0.0 } else { (cycle.len() as f64 * STEP / TAU).max(STEP) };
    let mut sector: HashMap<usize, (f64, f64)> = HashMap::new();
    let mut start = 0.0;
    for &c in cycle {
        let span = TAU * weight[&c] / total;
        sector.insert(c, (start, span));
        start += span;
    }
    let mut depth = 0u32;
    for &v in &order {
        let (a, s) = sector[&v];
        let r = r0 + g.pper[v] as f64 * STEP;
        pos[v] = (r * (a + s / 2.0).cos(), r * (a + s / 2.0).sin());
        depth = depth.max(g.pper[v]);
        let mut off = a;
        for u in tree_preds(g, preds, v) {
            let su = s * weight[&u] / weight[&v];
            sector.insert(u, (off, su));
            off += su;
        }
    }
    r0 + depth as f64 * STEP
}

/// Layout of the functional graph as JSON: node coordinates, edges and the
/// closed-form description.
pub fn layout(n: u64, q: u64) -> Result<String, String> {
    check_n(n)?;
    let pp = field(q)?;
    if q > DRAW_LIMIT {
        return Err(format!("drawing is limited to q <= {DRAW_LIMIT}"));
    }
    let g = cheb_graph(n, &FieldCtx::new(pp)).map_err(|e| e.to_string())?;
    let mut preds = vec![Vec::new(); g.size()];
    for (x, &y) in g.succ.iter().enumerate() {
        if x != y || !g.is_periodic(x) {
            preds[y].push(x);
        }
    }
    let mut pos = vec![(0.0, 0.0); g.size()];
    let mut comps: Vec<(usize, f64)> = Vec::new();
    for (i, cycle) in g.cycles.iter().enumerate() {
        comps.push((i, place_component(&g, cycle, &preds, &mut pos)));
    }
    // shelf packing, largest components first
    comps.sort_by(|a, b| b.1.total_cmp(&a.1));
    let area: f64 = comps.iter().map(|c| (2.0 * c.1 + GAP).powi(2)).sum();
    let widest = comps.first().map_or(0.0, |c| 2.0 * c.1 + GAP);
    let width = area.sqrt().max(widest) + 2.0 * GAP;
    let mut offset = vec![(0.0, 0.0); g.cycles.len()];
    let (mut x, mut y, mut row) = (GAP, GAP, 0.0f64);
    for &(i, r) in &comps {
        let d = 2.0 * r + GAP;
        if x + d > width && x > GAP {
            x = GAP;
            y += row;
            row = 0.0;
        }
        offset[i] = (x + r, y + r);
        x += d;
        row = row.max(d);
    }
    let height = y + row + GAP;
    let nodes = (0..g.size())
        .map(|v| {
            let (ox, oy) = offset[g.cycle_of[v]];
            Node { id: v, x: ox + pos[v].0, y: oy + pos[v].1, periodic: g.is_periodic(v) }
        })
        .collect();
    let spec = chebyshev_graph_spec(n, q).map_err(|e| e.to_string())?;
    let out = Layout {
        n,
        q,
        spec: render_text(&spec),
        width,
        height,
        nodes,
        edges: g.succ.iter().copied().enumerate().collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Exact and decimal N, T0, C, T, R, plus the closed-form comparison.
pub fn params(n: u64, q: u64) -> Result<String, String> {
    check_n(n)?;
    field(q)?;
    let r = params_closed_form(n, q).map_err(|e| e.to_string())?;
    let s = &r.structural;
    let v = serde_json::json!({
        "N": s.components.to_string(),
        "T0": s.periodic.to_string(),
        "C": fmt_ratio(&s.c),
        "T": fmt_ratio(&s.t),
        "R": fmt_ratio(&s.r),
        "C_decimal": fmt_decimal(&s.c, 6),
        "T_decimal": fmt_decimal(&s.t, 6),
        "R_decimal": fmt_decimal(&s.r, 6),
        "closed_form_agrees": r.components_agree && r.periodic_agree && r.c_agrees,
        "T_partial_products": fmt_ratio(&r.t_partial_products),
    });
    Ok(v.to_string())
}

/// The orbit `a, T_n(a), T_n(T_n(a)), ...` up to the first repeat.
pub fn orbit(n: u64, q: u64, a: u64) -> Result<String, String> {
    check_n(n)?;
    let ctx = FieldCtx::new(field(q)?);
    if a >= q {
        return Err(format!("a must be below {q}"));
    }
    if q > 1 << 24 {
        return Err("orbit tracing is limited to q <= 2^24".into());
    }
    let mut seen = vec![u32::MAX; q as usize];
    let mut path = Vec::new();
    let mut x = ctx.decode(a as u128).map_err(|e| e.to_string())?;
    loop {
        let code = ctx.encode(&x) as usize;
        if seen[code] != u32::MAX {
            let pper = seen[code] as usize;
            let v = serde_json::json!({ "path": path, "pper": pper, "per": path.len() - pper });
            return Ok(v.to_string());
        }
        seen[code] = path.len() as u32;
        path.push(code as u64);
        x = cheb_eval_u64(&ctx, n, &x);
    }
}

#[wasm_bindgen(js_name = layout)]
pub fn layout_js(n: u64, q: u64) -> Result<String, JsValue> {
    layout(n, q).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = params)]
pub fn params_js(n: u64, q: u64) -> Result<String, JsValue> {
    params(n, q).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = orbit)]
pub fn orbit_js(n: u64, q: u64, a: u64) -> Result<String, JsValue> {
    orbit(n, q, a).map_err(|e| JsValue::from_str(&e))
}
