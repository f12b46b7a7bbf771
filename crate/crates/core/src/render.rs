//! Text, JSON and Graphviz output for graph specs.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::RawGraph;
use crate::structure::{CycleClass, Domain, GraphSpec};
use crate::trees::RootedTree;

/// Largest tree whose parenthesis key is written out.
pub const MAX_KEY_NODES: u128 = 1 << 22;
const INLINE_WIDTH: usize = 72;

/// Assigns names like `T13` to trees too big to print inline.
#[derive(Default)]
struct Namer {
    inline: HashMap<(u64, u64), String>,
    taken: HashMap<String, usize>,
    defs: Vec<(String, String, RootedTree)>,
}

impl Namer {
    fn repr(&mut self, t: &RootedTree, top: bool) -> String {
        if t.depth() <= 1 {
            return t.to_string();
        }
        if let Some(s) = self.inline.get(&t.digest()) {
            if !top || self.defs.iter().any(|(name, _, _)| name == s) {
                return s.clone();
            }
        }
        let parts: Vec<String> = t
            .children()
            .iter()
            .map(|(c, k)| format!("{k}x{}", self.repr(c, false)))
            .collect();
        let body = format!("<{}>", parts.join(" (+) "));
        let out = if top || body.len() > INLINE_WIDTH {
            let base = format!("T{}", t.size());
            let seen = self.taken.entry(base.clone()).or_insert(0);
            *seen += 1;
            let name = if *seen == 1 { base } else { format!("{base}_{seen}") };
            self.defs.push((name.clone(), body, t.clone()));
            name
        } else {
            body
        };
        self.inline.insert(t.digest(), out.clone());
        out
    }
}

fn class_term(c: &CycleClass, tree: &str) -> String {
    if c.multiplicity == 1 {
        format!("Cyc({}, {tree})", c.cycle_len)
    } else {
        format!("{} x Cyc({}, {tree})", c.multiplicity, c.cycle_len)
    }
}

/// Renders a term list such as `Cyc(5, <1x*>) (+) Cyc(1, T13)`, followed by
/// the definitions of the named trees and their parenthesis keys.
pub fn render_text(spec: &GraphSpec) -> String {
    let mut namer = Namer::default();
    let terms: Vec<String> = spec
        .classes
        .iter()
        .map(|c| {
            let t = namer.repr(&c.tree, true);
            class_term(c, &t)
        })
        .collect();
    let mut out = if terms.is_empty() { "(empty)".to_string() } else { terms.join(" (+) ") };
    out.push('\n');
    if !namer.defs.is_empty() {
        out.push_str("where\n");
        for (name, body, tree) in &namer.defs {
            let _ = writeln!(out, "  {name} = {body}");
            if tree.size() <= 4096 {
                let _ = writeln!(out, "  {:width$}   key {}", "", tree.canonical_key(), width = name.len());
            }
        }
    }
    let _ = writeln!(out, "total nodes: {}", spec.total_nodes());
    out
}

/// A class list on one line, naming nothing: for short summaries.
pub fn render_inline(classes: &[CycleClass]) -> String {
    if classes.is_empty() {
        return "(empty)".into();
    }
    classes.iter().map(|c| class_term(c, &c.tree.to_string())).collect::<Vec<_>>().join(" (+) ")
}

#[derive(Serialize, Deserialize)]
struct WireClass {
    multiplicity: u64,
    cycle_length: u64,
    tree: String,
}

#[derive(Serialize, Deserialize)]
struct WireSpec {
    n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    domain: String,
    classes: Vec<WireClass>,
    total_nodes: u128,
}

fn to_wire(spec: &GraphSpec) -> Result<WireSpec> {
    let (q, m) = match spec.domain {
        Domain::Chebyshev { q } | Domain::PowerMap { q } => (Some(q), None),
        Domain::Multiplication { m } => (None, Some(m)),
    };
    let classes = spec
        .classes
        .iter()
        .map(|c| {
            if c.tree.size() > MAX_KEY_NODES {
                return Err(Error::InvalidArgument(format!(
                    "tree with {} nodes is too large to serialize",
                    c.tree.size()
                )));
            }
            Ok(WireClass { multiplicity: c.multiplicity, cycle_length: c.cycle_len, tree: c.tree.canonical_key() })
        })
        .collect::<Result<_>>()?;
    Ok(WireSpec { n: spec.n, q, m, domain: spec.domain.tag().into(), classes, total_nodes: spec.total_nodes() })
}

pub fn spec_to_json(spec: &GraphSpec) -> Result<String> {
    serde_json::to_string_pretty(&to_wire(spec)?).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn spec_from_json(s: &str) -> Result<GraphSpec> {
    let w: WireSpec = serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let need = |v: Option<u64>, what: &str| v.ok_or_else(|| Error::InvalidArgument(format!("missing field `{what}`")));
    let domain = match w.domain.as_str() {
        "chebyshev" => Domain::Chebyshev { q: need(w.q, "q")? },
        "power_map" => Domain::PowerMap { q: need(w.q, "q")? },
        "multiplication" => Domain::Multiplication { m: need(w.m, "m")? },
        other => return Err(Error::InvalidArgument(format!("unknown domain `{other}`"))),
    };
    let classes = w
        .classes
        .into_iter()
        .map(|c| Ok(CycleClass::new(c.multiplicity, c.cycle_length, RootedTree::from_key(&c.tree)?)))
        .collect::<Result<Vec<_>>>()?;
    let spec = GraphSpec::new(w.n, domain, classes);
    if spec.total_nodes() != w.total_nodes {
        return Err(Error::InvalidArgument(format!(
            "total_nodes is {} but the classes cover {}",
            w.total_nodes,
            spec.total_nodes()
        )));
    }
    Ok(spec)
}

/// Graphviz digraph with one node per element; cyclic nodes are doubled circles.
pub fn render_dot(name: &str, g: &RawGraph, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    for x in 0..g.size() {
        let shape = if g.is_periodic(x) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {x} [label=\"{}\", shape={shape}];", label(x));
    }
    for (x, &y) in g.succ.iter().enumerate() {
        let _ = writeln!(out, "  {x} -> {y};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_graph, brute_mult};
    use crate::structure::{chebyshev_graph_spec, mult_map_spec};

    #[test]
    fn text_for_f23() {
        let s = render_text(&chebyshev_graph_spec(30, 23).unwrap());
        let first = s.lines().next().unwrap();
        assert_eq!(first, "Cyc(1, T13) (+) Cyc(5, <1x*>)");
        // children are listed in canonical key order, larger subtrees first
        assert!(s.contains("T13 = <1x<1x<6x*> (+) 2x*> (+) 2x*>"), "{s}");
        assert!(s.contains("key (((()()()()()())()())()())"), "{s}");
        assert!(s.ends_with("total nodes: 23\n"));
    }

    #[test]
    fn text_for_f739_names_each_tree() {
        let s = render_text(&chebyshev_graph_spec(30, 739).unwrap());
        assert_eq!(s.lines().next().unwrap(), "Cyc(1, T19) (+) 2 x Cyc(9, T20) (+) Cyc(20, T18)");
        assert!(s.contains("T18 = <2x<6x*> (+) 3x*>"));
    }

    #[test]
    fn deep_trees_stay_short() {
        let spec = mult_map_spec(2, 1 << 60).unwrap();
        let s = render_text(&spec);
        assert!(s.len() < 20_000, "{} bytes", s.len());
        assert!(spec_to_json(&spec).is_err());
    }

    #[test]
    fn json_round_trip() {
        for spec in [chebyshev_graph_spec(30, 739).unwrap(), brute_mult(6, 40).unwrap()] {
            let j = spec_to_json(&spec).unwrap();
            assert_eq!(spec_from_json(&j).unwrap(), spec);
        }
        let j = spec_to_json(&chebyshev_graph_spec(30, 23).unwrap()).unwrap();
        let keys: Vec<&str> = ["\"n\"", "\"q\"", "\"domain\"", "\"classes\"", "\"total_nodes\""]
            .into_iter()
            .collect();
        let pos: Vec<usize> = keys.iter().map(|k| j.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{j}");
        assert!(spec_from_json(&j.replace("\"total_nodes\": 23", "\"total_nodes\": 24")).is_err());
    }

    #[test]
    fn dot_shape() {
        let g = brute_graph(4, |x| [1, 0, 0, 2][x]);
        let d = render_dot("g", &g, |x| x.to_string());
        assert_eq!(d.matches("doublecircle").count(), 2);
        assert_eq!(d.matches("->").count(), 4);
    }
}
