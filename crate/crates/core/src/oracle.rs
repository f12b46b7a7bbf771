//! Brute-force ground truth: functional graphs built by evaluating the map on
//! every element, canonicalized into the same normal form as `structure`.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::{cheb_eval_u64, ExtCtx, FieldCtx, FieldElement, PrimePower};
use crate::structure::{
    chebyshev_graph_spec, normalize_classes, params_closed_form, params_from_spec, ClosedFormReport, Components,
    CycleClass, Domain, GraphSpec, ParamReport,
};
use crate::trees::RootedTree;

/// A functional graph on `0..size` with its periodic structure.
#[derive(Clone, Debug)]
pub struct RawGraph {
    pub succ: Vec<usize>,
    /// Period of the cycle each node eventually reaches.
    pub per: Vec<u64>,
    /// Steps until the node reaches a cycle; 0 exactly on cycles.
    pub pper: Vec<u32>,
    /// Each cycle as the list of its nodes in successor order.
    pub cycles: Vec<Vec<usize>>,
    /// Index into `cycles` of the cycle each node eventually reaches.
    pub cycle_of: Vec<usize>,
}

impl RawGraph {
    pub fn size(&self) -> usize {
        self.succ.len()
    }

    pub fn is_periodic(&self, x: usize) -> bool {
        self.pper[x] == 0
    }
}

pub fn brute_graph(size: usize, f: impl Fn(usize) -> usize) -> RawGraph {
    let succ: Vec<usize> = (0..size).map(&f).collect();
    assert!(succ.iter().all(|&y| y < size), "successor out of range");

    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let mut color = vec![NEW; size];
    let mut per = vec![0u64; size];
    let mut pper = vec![u32::MAX; size];
    let mut cycle_of = vec![usize::MAX; size];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();
    for start in 0..size {
        if color[start] != NEW {
            continue;
        }
        path.clear();
        let mut x = start;
        while color[x] == NEW {
            color[x] = OPEN;
            path.push(x);
            x = succ[x];
        }
        if color[x] == OPEN {
            let pos = path.iter().position(|&y| y == x).expect("open node is on the path");
            let cyc = path[pos..].to_vec();
            for &y in &cyc {
                per[y] = cyc.len() as u64;
                pper[y] = 0;
                cycle_of[y] = cycles.len();
            }
            cycles.push(cyc);
        }
        for &y in &path {
            color[y] = DONE;
        }
    }

    // reverse BFS from the cycles fills the tree nodes
    let preds = predecessors(&succ);
    let mut queue: Vec<usize> = (0..size).filter(|&x| pper[x] == 0).collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &y in &preds[x] {
            if pper[y] == u32::MAX {
                pper[y] = pper[x] + 1;
                per[y] = per[x];
                cycle_of[y] = cycle_of[x];
                queue.push(y);
            }
        }
    }
    RawGraph { succ, per, pper, cycles, cycle_of }
}

fn predecessors(succ: &[usize]) -> Vec<Vec<usize>> {
    let mut preds = vec![Vec::new(); succ.len()];
    for (x, &y) in succ.iter().enumerate() {
        preds[y].push(x);
    }
    preds
}

/// Hash-conses trees across graphs so that equal shapes get equal ids.
#[derive(Default)]
pub struct TreeInterner {
    ids: HashMap<Vec<(u32, u64)>, u32>,
    trees: Vec<RootedTree>,
}

impl TreeInterner {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, mut kids: Vec<(u32, u64)>) -> u32 {
        kids.sort_unstable();
        if let Some(&id) = self.ids.get(&kids) {
            return id;
        }
        let tree = RootedTree::from_children(kids.iter().map(|&(k, c)| (self.trees[k as usize].clone(), c)).collect());
        let id = self.trees.len() as u32;
        self.trees.push(tree);
        self.ids.insert(kids, id);
        id
    }

    pub fn tree(&self, id: u32) -> &RootedTree {
        &self.trees[id as usize]
    }
}

/// For every node `x`, the id of the tree rooted at `x` formed by its
/// non-periodic ancestors under the map.
pub fn tree_ids(g: &RawGraph, interner: &mut TreeInterner) -> Vec<u32> {
    let n = g.size();
    let preds = predecessors(&g.succ);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&x| std::cmp::Reverse(g.pper[x]));
    let mut id = vec![u32::MAX; n];
    for x in order {
        let mut kids: Vec<u32> = preds[x].iter().filter(|&&y| !g.is_periodic(y)).map(|&y| id[y]).collect();
        kids.sort_unstable();
        let mut counted: Vec<(u32, u64)> = Vec::new();
        for k in kids {
            match counted.last_mut() {
                Some((last, c)) if *last == k => *c += 1,
                _ => counted.push((k, 1)),
            }
        }
        id[x] = interner.intern(counted);
    }
    id
}

fn cycle_classes(g: &RawGraph, ids: &[u32], interner: &TreeInterner, keep: impl Fn(usize) -> bool) -> Result<Vec<CycleClass>> {
    let mut classes = Vec::new();
    for cyc in &g.cycles {
        if !keep(cyc[0]) {
            continue;
        }
        let first = ids[cyc[0]];
        if cyc.iter().any(|&x| ids[x] != first) {
            return Err(Error::NonUniformComponent { cycle_len: cyc.len() as u64 });
        }
        classes.push(CycleClass::new(1, cyc.len() as u64, interner.tree(first).clone()));
    }
    Ok(normalize_classes(classes))
}

pub fn canonical_spec(g: &RawGraph, n: u64, domain: Domain) -> Result<GraphSpec> {
    let mut interner = TreeInterner::new();
    let ids = tree_ids(g, &mut interner);
    Ok(GraphSpec::new(n, domain, cycle_classes(g, &ids, &interner, |_| true)?))
}

fn field_for(q: u64) -> Result<FieldCtx> {
    Ok(FieldCtx::new(PrimePower::from_order(q)?))
}

fn index_of(v: u128) -> usize {
    usize::try_from(v).expect("domain index fits usize")
}

/// The graph of `T_n` on F_q, elements indexed by their base-p encoding.
pub fn cheb_graph(n: u64, ctx: &FieldCtx) -> Result<RawGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let size = index_of(ctx.order());
    let elems: Vec<FieldElement> = ctx.elements().collect();
    Ok(brute_graph(size, |i| index_of(ctx.encode(&cheb_eval_u64(ctx, n, &elems[i])))))
}

pub fn brute_cheb(n: u64, q: u64) -> Result<GraphSpec> {
    let ctx = field_for(q)?;
    canonical_spec(&cheb_graph(n, &ctx)?, n, Domain::Chebyshev { q })
}

pub fn brute_mult(n: u64, m: u64) -> Result<GraphSpec> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be positive".into()));
    }
    let r = (n % m) as u128;
    let g = brute_graph(m as usize, |x| ((x as u128 * r) % m as u128) as usize);
    canonical_spec(&g, n, Domain::Multiplication { m })
}

/// `r_n(α) = α^n` on `F_q^* ∪ H`, with the domain listed in encoding order.
pub struct PowerGraph {
    pub domain: Vec<FieldElement>,
    pub index: HashMap<FieldElement, usize>,
    pub graph: RawGraph,
}

pub fn power_graph(n: u64, ext: &ExtCtx) -> PowerGraph {
    let domain = ext.domain_elements();
    let index: HashMap<FieldElement, usize> = domain.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let full = ext.full();
    let graph = brute_graph(domain.len(), |i| index[&full.pow(&domain[i], n as u128)]);
    PowerGraph { domain, index, graph }
}

pub fn brute_power_map(n: u64, q: u64) -> Result<GraphSpec> {
    let ext = ExtCtx::new(PrimePower::from_order(q)?);
    let pg = power_graph(n, &ext);
    let expected = Domain::PowerMap { q }.size();
    if pg.domain.len() as u128 != expected {
        return Err(Error::InternalInconsistency(format!(
            "|F_q^* ∪ H| = {} but expected {expected}",
            pg.domain.len()
        )));
    }
    canonical_spec(&pg.graph, n, Domain::PowerMap { q })
}

/// Which invariant part of F_q an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Rational,
    Quadratic,
    Special,
}

/// Labels each element of F_q: special if its orbit reaches ±2, otherwise
/// rational or quadratic according to where its η-preimages live.
pub fn classify_elements(n: u64, ext: &ExtCtx) -> Result<(RawGraph, Vec<Part>)> {
    let base = ext.base();
    let g = cheb_graph(n, base)?;
    let two = index_of(base.encode(&base.from_int(2)));
    let minus_two = index_of(base.encode(&base.from_int(-2)));
    let special_cycles: Vec<usize> = [two, minus_two].iter().map(|&i| g.cycle_of[i]).collect();
    let mut parts = Vec::with_capacity(g.size());
    for (i, a) in base.elements().enumerate() {
        let part = if special_cycles.contains(&g.cycle_of[i]) {
            Part::Special
        } else {
            let alpha = &ext.eta_preimage(&a)?[0];
            if ext.in_base_units(alpha) {
                Part::Rational
            } else {
                Part::Quadratic
            }
        };
        parts.push(part);
    }
    Ok((g, parts))
}

/// The brute-force graph of `T_n` on F_q split by [`classify_elements`].
pub fn brute_components(n: u64, q: u64) -> Result<Components> {
    let ext = ExtCtx::new(PrimePower::from_order(q)?);
    let (g, parts) = classify_elements(n, &ext)?;
    // each part must be a union of whole components
    for (x, &y) in g.succ.iter().enumerate() {
        if parts[x] != parts[y] {
            return Err(Error::InternalInconsistency(format!("edge {x} -> {y} crosses parts")));
        }
    }
    let mut interner = TreeInterner::new();
    let ids = tree_ids(&g, &mut interner);
    let pick = |p: Part| cycle_classes(&g, &ids, &interner, |x| parts[x] == p);
    Ok(Components {
        rational: pick(Part::Rational)?,
        quadratic: pick(Part::Quadratic)?,
        special: pick(Part::Special)?,
    })
}

/// Outcome of the covering cross-checks between `r_n` and `T_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoveringReport {
    pub transport_checked: usize,
    pub inversion_checked: usize,
    pub negation_checked: usize,
    pub violations: Vec<String>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, node by node, that
/// - the tree at `α ≠ ±1` under `r_n` matches the tree at `η(α)` under `T_n`,
/// - the trees at `α` and `α⁻¹` match,
/// - for odd `n`, the trees at `a` and `-a` match.
pub fn covering_checks(n: u64, q: u64) -> Result<CoveringReport> {
    let ext = ExtCtx::new(PrimePower::from_order(q)?);
    let base = ext.base();
    let full = ext.full();
    let pg = power_graph(n, &ext);
    let cg = cheb_graph(n, base)?;
    let mut interner = TreeInterner::new();
    let pid = tree_ids(&pg.graph, &mut interner);
    let cid = tree_ids(&cg, &mut interner);
    let mut report = CoveringReport::default();

    let one = full.one();
    let minus_one = full.neg(&one);
    for (i, alpha) in pg.domain.iter().enumerate() {
        if *alpha != one && *alpha != minus_one {
            let a = ext.eta(alpha)?;
            let j = index_of(base.encode(&a));
            report.transport_checked += 1;
            if pid[i] != cid[j] {
                report.violations.push(format!(
                    "transport: tree at α = {} differs from tree at η(α) = {}",
                    full.encode(alpha),
                    base.encode(&a)
                ));
            }
        }
        let inv = full.inv(alpha)?;
        report.inversion_checked += 1;
        if pid[i] != pid[pg.index[&inv]] {
            report.violations.push(format!("inversion: trees at {} and its inverse differ", full.encode(alpha)));
        }
    }
    if n % 2 == 1 {
        for (i, a) in base.elements().enumerate() {
            let j = index_of(base.encode(&base.neg(&a)));
            report.negation_checked += 1;
            if cid[i] != cid[j] {
                report.violations.push(format!("negation: trees at {i} and {j} differ"));
            }
        }
    }
    Ok(report)
}

pub fn raw_params(g: &RawGraph) -> ParamReport {
    let c_hat: u128 = g.per.iter().map(|&p| p as u128).sum();
    let t_hat: u128 = g.pper.iter().map(|&p| p as u128).sum();
    let periodic = g.pper.iter().filter(|&&p| p == 0).count() as u128;
    ParamReport::from_sums(
        g.size() as u128,
        g.cycles.len() as u128,
        periodic,
        BigUint::from(c_hat),
        BigUint::from(t_hat),
    )
}

/// `N`, `T_0`, `Ĉ`, `T̂` summed directly over the elements of F_q.
pub fn brute_params(n: u64, q: u64) -> Result<ParamReport> {
    Ok(raw_params(&cheb_graph(n, &field_for(q)?)?))
}

/// Period and preperiod of `a` under `T_n` by Brent's cycle detection, or
/// `None` if the orbit's rho length exceeds `limit`.
pub fn iterate_per_pper(ctx: &FieldCtx, n: u64, a: &FieldElement, limit: u64) -> Option<(u64, u64)> {
    let f = |x: &FieldElement| cheb_eval_u64(ctx, n, x);
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = a.clone();
    let mut hare = f(a);
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power = power.checked_mul(2)?;
            lam = 0;
        }
        hare = f(&hare);
        lam += 1;
        if power > 2 * limit {
            return None;
        }
    }
    let mut tortoise = a.clone();
    let mut hare = a.clone();
    for _ in 0..lam {
        hare = f(&hare);
    }
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = f(&tortoise);
        hare = f(&hare);
        mu += 1;
    }
    Some((lam, mu))
}

/// Everything `verify` compares for one `(n, q)`.
#[derive(Clone, Debug)]
pub struct CellReport {
    pub n: u64,
    pub q: u64,
    pub theorem: GraphSpec,
    pub brute: GraphSpec,
    pub structural: ParamReport,
    pub brute_params: ParamReport,
    pub closed_form: ClosedFormReport,
}

impl CellReport {
    pub fn spec_equal(&self) -> bool {
        self.theorem == self.brute
    }

    /// `N`, `T_0`, `Ĉ` and `T̂` agree between the spec and direct summation.
    pub fn params_equal(&self) -> bool {
        let (a, b) = (&self.structural, &self.brute_params);
        a.components == b.components && a.periodic == b.periodic && a.c_hat == b.c_hat && a.t_hat == b.t_hat
    }

    /// The closed forms for `N`, `T_0` and `C` reproduce the structural values.
    pub fn closed_form_ok(&self) -> bool {
        let c = &self.closed_form;
        c.components_agree && c.periodic_agree && c.c_agrees
    }

    pub fn passed(&self) -> bool {
        self.spec_equal() && self.params_equal() && self.closed_form_ok()
    }
}

pub fn check_cell(n: u64, q: u64) -> Result<CellReport> {
    let theorem = chebyshev_graph_spec(n, q)?;
    let brute = brute_cheb(n, q)?;
    let structural = params_from_spec(&theorem);
    let brute_params = brute_params(n, q)?;
    let closed_form = params_closed_form(n, q)?;
    Ok(CellReport { n, q, theorem, brute, structural, brute_params, closed_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numth::nu_series;
    use crate::structure::{chebyshev_components, mult_map_spec, per_pper};
    use crate::trees::tree_of_nu_series;

    #[test]
    fn tiny_graphs() {
        let g = brute_graph(5, |_| 0);
        assert_eq!(g.cycles, vec![vec![0]]);
        assert_eq!(g.pper, vec![0, 1, 1, 1, 1]);
        let g = brute_graph(4, |x| x);
        assert_eq!(g.cycles.len(), 4);
        assert!(g.pper.iter().all(|&p| p == 0));
        // a 3-cycle on 0..3 with 3, 4, 5 hanging off 0, 1, 2
        let g = brute_graph(6, |x| if x < 3 { (x + 1) % 3 } else { x - 3 });
        assert_eq!(g.cycles.len(), 1);
        assert_eq!(g.per, vec![3; 6]);
        assert_eq!(&g.pper[3..], &[1, 1, 1]);
    }

    #[test]
    fn multiplication_by_30_on_z18() {
        let s = brute_mult(30, 18).unwrap();
        let t = tree_of_nu_series(&nu_series(18, 30).unwrap());
        assert_eq!(s.classes, vec![CycleClass::new(1, 1, t.clone())]);
        assert_eq!(t.depth_histogram(), vec![1, 5, 12]);
    }

    #[test]
    fn worked_fields_match_theorem() {
        for (n, q) in [(30u64, 19u64), (30, 23), (30, 739), (17, 16), (255, 16), (2, 7)] {
            assert_eq!(brute_cheb(n, q).unwrap(), chebyshev_graph_spec(n, q).unwrap(), "n={n} q={q}");
            assert_eq!(brute_components(n, q).unwrap(), chebyshev_components(n, q).unwrap(), "n={n} q={q}");
        }
    }

    #[test]
    fn params_two_ways() {
        let p = brute_params(30, 23).unwrap();
        assert_eq!((p.components, p.periodic), (2, 6));
        assert_eq!((p.c_hat.clone(), p.t_hat.clone()), (63u32.into(), 32u32.into()));
        assert_eq!(p, params_from_spec(&brute_cheb(30, 23).unwrap()));
        let p = brute_params(1, 5).unwrap();
        assert_eq!(p.t_hat, BigUint::from(0u32));
        assert_eq!(p.c, num_rational::BigRational::from_integer(1.into()));
        let p = brute_params(30, 739).unwrap();
        assert_eq!((p.components, p.periodic), (4, 39));
    }

    #[test]
    fn cell_reports() {
        let r = check_cell(30, 23).unwrap();
        assert!(r.passed());
        assert!(!r.closed_form.t_agrees);
        assert!(check_cell(4, 24).is_err());
    }

    #[test]
    fn mult_small() {
        for m in 1..200 {
            for n in 1..20 {
                assert_eq!(brute_mult(n, m).unwrap(), mult_map_spec(n, m).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn power_map_domain_sizes() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let s = brute_power_map(3, q).unwrap();
            assert_eq!(s.total_nodes(), Domain::PowerMap { q }.size());
        }
    }

    #[test]
    fn covering_examples() {
        let r = covering_checks(30, 19).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let r = covering_checks(3, 16).unwrap();
        assert!(r.passed());
        assert_eq!(r.negation_checked, 16);
        let r = covering_checks(2, 7).unwrap();
        assert!(r.passed());
        // |F_7^* ∪ H| = 6 + 8 - 2, and ±1 are skipped
        assert_eq!(r.transport_checked, 10);
    }

    #[test]
    fn iteration_matches_per_pper() {
        for q in [19u64, 23, 16, 25, 27, 49] {
            let ext = ExtCtx::new(PrimePower::from_order(q).unwrap());
            for n in [2u64, 3, 6, 30] {
                for a in ext.base().elements() {
                    let (per, pper) = per_pper(&ext, n, &a).unwrap();
                    assert_eq!(iterate_per_pper(ext.base(), n, &a, 1000), Some((per, pper as u64)), "q={q} n={n}");
                }
            }
        }
    }
}
