//! Closed-form functional graphs: `G(n/Z_m)` and `G(T_n/F_q)` as multisets of
//! `Cyc(length, tree)` terms, their statistics, and the permutation and
//! involution predicates.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ff::{ExtCtx, FieldElement, PrimePower};
use crate::numth::{factorize, gcd, mul_mod, nu_series, preperiod_exponent, split_factored, Factorization, OrderOracle};
use crate::trees::{bisect, tree_of_nu_series, tree_sub, tree_sum, RootedTree};

/// The set a functional graph lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `x ↦ T_n(x)` on F_q.
    Chebyshev { q: u64 },
    /// `α ↦ α^n` on `F_q^* ∪ H ⊂ F_{q^2}`.
    PowerMap { q: u64 },
    /// `x ↦ n·x` on `Z_m`.
    Multiplication { m: u64 },
}

impl Domain {
    pub fn size(&self) -> u128 {
        match *self {
            Domain::Chebyshev { q } => q as u128,
            // ±1 lie in both F_q^* and H; they coincide in characteristic 2
            Domain::PowerMap { q } => 2 * q as u128 - if q % 2 == 0 { 1 } else { 2 },
            Domain::Multiplication { m } => m as u128,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Domain::Chebyshev { .. } => "chebyshev",
            Domain::PowerMap { .. } => "power_map",
            Domain::Multiplication { .. } => "multiplication",
        }
    }
}

/// `multiplicity × Cyc(cycle_len, tree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub multiplicity: u64,
    pub cycle_len: u64,
    pub tree: RootedTree,
}

impl CycleClass {
    pub fn new(multiplicity: u64, cycle_len: u64, tree: RootedTree) -> Self {
        Self { multiplicity, cycle_len, tree }
    }

    pub fn nodes(&self) -> u128 {
        self.multiplicity as u128 * self.cycle_len as u128 * self.tree.size()
    }
}

/// A functional graph in normal form: classes sorted by `(cycle_len, tree)`
/// with equal pairs merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    pub n: u64,
    pub domain: Domain,
    pub classes: Vec<CycleClass>,
}

impl GraphSpec {
    pub fn new(n: u64, domain: Domain, classes: Vec<CycleClass>) -> Self {
        Self { n, domain, classes: normalize_classes(classes) }
    }

    pub fn total_nodes(&self) -> u128 {
        self.classes.iter().map(CycleClass::nodes).sum()
    }

    pub fn components(&self) -> u128 {
        self.classes.iter().map(|c| c.multiplicity as u128).sum()
    }

    pub fn all_trees_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.tree.is_leaf())
    }
}

pub fn normalize_classes(mut classes: Vec<CycleClass>) -> Vec<CycleClass> {
    classes.retain(|c| c.multiplicity > 0);
    classes.sort_by(|a, b| a.cycle_len.cmp(&b.cycle_len).then_with(|| a.tree.cmp(&b.tree)));
    let mut out: Vec<CycleClass> = Vec::with_capacity(classes.len());
    for c in classes {
        match out.last_mut() {
            Some(last) if last.cycle_len == c.cycle_len && last.tree == c.tree => {
                last.multiplicity += c.multiplicity
            }
            _ => out.push(c),
        }
    }
    out
}

fn phi_of(d: &Factorization) -> u64 {
    d.pairs().iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
}

fn tree_for(nu: &Factorization, n: u64) -> Result<RootedTree> {
    let nu = nu.value_u64().ok_or_else(|| Error::InvalidArgument("ν exceeds u64".into()))?;
    Ok(tree_of_nu_series(&nu_series(nu, n)?))
}

/// `⊕_{d | ω} φ(d)/o_d(n) × Cyc(o_d(n), T_{ν(n)})` for `m = νω`.
pub fn mult_map_spec(n: u64, m: u64) -> Result<GraphSpec> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be positive".into()));
    }
    let (nu, omega) = split_factored(&factorize(m), n);
    let tree = tree_for(&nu, n)?;
    let mut oracle = OrderOracle::new(n, &omega);
    let mut classes = Vec::new();
    for d in omega.factored_divisors() {
        let o = oracle.order(&d)?;
        let phi = phi_of(&d);
        if phi % o != 0 {
            return Err(Error::InternalInconsistency(format!("φ({}) not divisible by o = {o}", d.value())));
        }
        classes.push(CycleClass::new(phi / o, o, tree.clone()));
    }
    let spec = GraphSpec::new(n, Domain::Multiplication { m }, classes);
    check_total(&spec)?;
    Ok(spec)
}

/// Arithmetic data of `q ∓ 1` with respect to `n`.
#[derive(Clone, Debug)]
pub struct ChebData {
    pub n: u64,
    pub q: u64,
    /// `q - 1 = ν₀ω₀`
    pub nu0: Factorization,
    pub omega0: Factorization,
    /// `q + 1 = ν₁ω₁`
    pub nu1: Factorization,
    pub omega1: Factorization,
}

impl ChebData {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let pp = PrimePower::from_order(q)?;
        let qp1 = q.checked_add(1).ok_or(Error::FieldTooLarge { p: pp.p, k: pp.k })?;
        let (nu0, omega0) = split_factored(&factorize(q - 1), n);
        let (nu1, omega1) = split_factored(&factorize(qp1), n);
        Ok(Self { n, q, nu0, omega0, nu1, omega1 })
    }

    pub fn nu0(&self) -> u64 {
        self.nu0.value() as u64
    }
    pub fn nu1(&self) -> u64 {
        self.nu1.value() as u64
    }
    pub fn omega0(&self) -> u64 {
        self.omega0.value() as u64
    }
    pub fn omega1(&self) -> u64 {
        self.omega1.value() as u64
    }
}

/// `⊕_{d | ω, d > 2} φ(d)/(2õ_d(n)) × Cyc(õ_d(n), T_{ν(n)})`
fn halved_component(n: u64, nu: &Factorization, omega: &Factorization) -> Result<Vec<CycleClass>> {
    let tree = tree_for(nu, n)?;
    let mut oracle = OrderOracle::new(n, omega);
    let mut classes = Vec::new();
    for d in omega.factored_divisors() {
        if d.value() <= 2 {
            continue;
        }
        let o = oracle.half_order(&d)?;
        let phi = phi_of(&d);
        if phi % (2 * o) != 0 {
            return Err(Error::InternalInconsistency(format!(
                "φ({})/(2·{o}) is not an integer",
                d.value()
            )));
        }
        classes.push(CycleClass::new(phi / (2 * o), o, tree.clone()));
    }
    Ok(classes)
}

pub fn rational_component(n: u64, q: u64) -> Result<Vec<CycleClass>> {
    let data = ChebData::new(n, q)?;
    halved_component(n, &data.nu0, &data.omega0)
}

pub fn quadratic_component(n: u64, q: u64) -> Result<Vec<CycleClass>> {
    let data = ChebData::new(n, q)?;
    halved_component(n, &data.nu1, &data.omega1)
}

/// The tree `½T_{ν₀(n)} + ½T_{ν₁(n)}` at the fixed point 2, adjusted per the
/// parities of `n` and `q`.
fn special_classes(data: &ChebData) -> Result<Vec<CycleClass>> {
    let n = data.n;
    let t0 = tree_for(&data.nu0, n)?;
    let t1 = tree_for(&data.nu1, n)?;
    let sum = tree_sum(&bisect(&t0)?, &bisect(&t1)?);
    let q_even = data.q % 2 == 0;
    Ok(if q_even {
        vec![CycleClass::new(1, 1, sum)]
    } else if n % 2 == 0 {
        vec![CycleClass::new(1, 1, tree_sub(&sum, &RootedTree::star(1))?)]
    } else {
        vec![CycleClass::new(2, 1, sum)]
    })
}

pub fn special_component(n: u64, q: u64) -> Result<Vec<CycleClass>> {
    special_classes(&ChebData::new(n, q)?)
}

/// The graph split into its rational, quadratic and special parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub rational: Vec<CycleClass>,
    pub quadratic: Vec<CycleClass>,
    pub special: Vec<CycleClass>,
}

pub fn chebyshev_components(n: u64, q: u64) -> Result<Components> {
    let data = ChebData::new(n, q)?;
    Ok(Components {
        rational: normalize_classes(halved_component(n, &data.nu0, &data.omega0)?),
        quadratic: normalize_classes(halved_component(n, &data.nu1, &data.omega1)?),
        special: normalize_classes(special_classes(&data)?),
    })
}

pub fn chebyshev_graph_spec(n: u64, q: u64) -> Result<GraphSpec> {
    let c = chebyshev_components(n, q)?;
    let mut all = c.rational;
    all.extend(c.quadratic);
    all.extend(c.special);
    let spec = GraphSpec::new(n, Domain::Chebyshev { q }, all);
    check_total(&spec)?;
    Ok(spec)
}

fn check_total(spec: &GraphSpec) -> Result<()> {
    let total = spec.total_nodes();
    if total != spec.domain.size() {
        return Err(Error::InternalInconsistency(format!(
            "spec covers {total} nodes, domain has {}",
            spec.domain.size()
        )));
    }
    Ok(())
}

/// Exact statistics of a functional graph on a set `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamReport {
    pub domain_size: u128,
    /// `N`: number of connected components (= cycles).
    pub components: u128,
    /// `T_0`: number of periodic points.
    pub periodic: u128,
    /// `Σ_x per(x)`
    pub c_hat: BigUint,
    /// `Σ_x pper(x)`
    pub t_hat: BigUint,
    pub c: BigRational,
    pub t: BigRational,
    pub r: BigRational,
}

impl ParamReport {
    pub fn from_sums(domain_size: u128, components: u128, periodic: u128, c_hat: BigUint, t_hat: BigUint) -> Self {
        let x = BigInt::from(domain_size);
        let c = BigRational::new(BigInt::from(c_hat.clone()), x.clone());
        let t = BigRational::new(BigInt::from(t_hat.clone()), x);
        let r = &c + &t;
        Self { domain_size, components, periodic, c_hat, t_hat, c, t, r }
    }
}

/// `N = Σ mult`, `T_0 = Σ mult·len`, `Ĉ = Σ mult·len²·|tree|`,
/// `T̂ = Σ mult·len·Σ_j j·h(j)`.
pub fn params_from_spec(spec: &GraphSpec) -> ParamReport {
    let mut periodic = 0u128;
    let mut c_hat = BigUint::zero();
    let mut t_hat = BigUint::zero();
    for cl in &spec.classes {
        let ml = BigUint::from(cl.multiplicity) * BigUint::from(cl.cycle_len);
        periodic += cl.multiplicity as u128 * cl.cycle_len as u128;
        c_hat += &ml * BigUint::from(cl.cycle_len) * BigUint::from(cl.tree.size());
        t_hat += &ml * BigUint::from(cl.tree.depth_sum());
    }
    ParamReport::from_sums(spec.domain.size(), spec.components(), periodic, c_hat, t_hat)
}

/// Closed-form parameters next to the structural ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub components: BigRational,
    pub periodic: BigRational,
    pub c: BigRational,
    /// The partial-product formula `(q-1)/(2q ν₀) Σ_{i<D} a₁⋯a_i + (q+1)/(2q ν₁) Σ_{i<D'} b₁⋯b_i`.
    pub t_partial_products: BigRational,
    pub structural: ParamReport,
    pub components_agree: bool,
    pub periodic_agree: bool,
    pub c_agrees: bool,
    pub t_agrees: bool,
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn params_closed_form(n: u64, q: u64) -> Result<ClosedFormReport> {
    let data = ChebData::new(n, q)?;
    let sums = |omega: &Factorization| -> Result<(BigRational, BigRational)> {
        let mut oracle = OrderOracle::new(n, omega);
        let mut by_order = BigRational::zero();
        let mut times_order = BigRational::zero();
        for d in omega.factored_divisors() {
            let o = oracle.half_order(&d)?;
            let phi = phi_of(&d);
            by_order += BigRational::new(phi.into(), o.into());
            times_order += rat(phi as u128 * o as u128);
        }
        Ok((by_order, times_order))
    };
    let (n0, c0) = sums(&data.omega0)?;
    let (n1, c1) = sums(&data.omega1)?;
    let half = BigRational::new(1.into(), 2.into());
    let (w0, w1) = (rat(data.omega0()), rat(data.omega1()));
    let two_q = rat(2 * q as u128);
    let (qm1, qp1) = (rat(q - 1), rat(q as u128 + 1));

    let components = &half * (n0 + n1);
    let periodic = &half * (&w0 + &w1);
    let c = &qm1 / &two_q * (c0 / &w0) + &qp1 / &two_q * (c1 / &w1);

    let partial = |nu: &Factorization| -> Result<BigRational> {
        let s = nu_series(nu.value() as u64, n)?;
        let pp = s.partial_products();
        // a₁⋯a_i for i = 1..D-1
        let total: u128 = pp[1..s.depth()].iter().sum();
        Ok(BigRational::new(total.into(), BigInt::from(nu.value())))
    };
    let t_partial_products = &qm1 / &two_q * partial(&data.nu0)? + &qp1 / &two_q * partial(&data.nu1)?;

    let structural = params_from_spec(&chebyshev_graph_spec(n, q)?);
    Ok(ClosedFormReport {
        components_agree: components == rat(structural.components),
        periodic_agree: periodic == rat(structural.periodic),
        c_agrees: c == structural.c,
        t_agrees: t_partial_products == structural.t,
        components,
        periodic,
        c,
        t_partial_products,
        structural,
    })
}

/// `(per(a), pper(a))` from the order of a preimage `α` of `a` under η:
/// with `ord(α) = u·d` its n-decomposition, `per = õ_d(n)` and `pper` is the
/// least `k` with `u | n^k`.
pub fn per_pper(ext: &ExtCtx, n: u64, a: &FieldElement) -> Result<(u64, u32)> {
    let alpha = ext.eta_preimage(a)?.into_iter().next().expect("η is onto");
    let ord = ext.full().element_order(&alpha)?;
    let ord = u64::try_from(ord).map_err(|_| Error::InvalidArgument("order exceeds u64".into()))?;
    let (u, d) = split_factored(&factorize(ord), n);
    let per = OrderOracle::new(n, &d).half_order(&d)?;
    let pper = preperiod_exponent(u.value() as u64, n)?;
    Ok((per, pper))
}

/// The data behind the permutation and involution criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub n: u64,
    pub q: u64,
    pub gcd_q_minus_1: u64,
    pub gcd_q_plus_1: u64,
    pub omega0: u64,
    pub omega1: u64,
    /// `n² mod ω₀` and `n² mod ω₁`
    pub n_sq_mod_omega0: u64,
    pub n_sq_mod_omega1: u64,
    pub permutation: bool,
    pub involution: bool,
}

fn is_pm_one(r: u64, m: u64) -> bool {
    m <= 2 || r == 1 || r == m - 1
}

pub fn predicates(n: u64, q: u64) -> Result<Predicates> {
    let data = ChebData::new(n, q)?;
    let g0 = gcd(q - 1, n);
    let g1 = gcd(q.wrapping_add(1), n);
    let (w0, w1) = (data.omega0(), data.omega1());
    let sq = |w: u64| if w == 1 { 0 } else { mul_mod(n % w, n % w, w) };
    let (s0, s1) = (sq(w0), sq(w1));
    let permutation = g0 == 1 && g1 == 1;
    let involution = data.nu0() == 1 && data.nu1() == 1 && is_pm_one(s0, w0) && is_pm_one(s1, w1);
    Ok(Predicates {
        n,
        q,
        gcd_q_minus_1: g0,
        gcd_q_plus_1: g1,
        omega0: w0,
        omega1: w1,
        n_sq_mod_omega0: s0,
        n_sq_mod_omega1: s1,
        permutation,
        involution,
    })
}

/// `T_n` permutes F_q iff `gcd(q² - 1, n) = 1`.
pub fn is_permutation(n: u64, q: u64) -> Result<bool> {
    Ok(predicates(n, q)?.permutation)
}

/// `T_n ∘ T_n = id` on F_q iff `ν₀ = ν₁ = 1` and `n² ≡ ±1` modulo `ω₀` and `ω₁`.
pub fn is_involution(n: u64, q: u64) -> Result<bool> {
    Ok(predicates(n, q)?.involution)
}

/// The cycle structure of a permutation `T_n`; fails if `T_n` is not one.
pub fn cycle_decomposition(n: u64, q: u64) -> Result<GraphSpec> {
    if !is_permutation(n, q)? {
        return Err(Error::InvalidArgument(format!("T_{n} does not permute F_{q}")));
    }
    let spec = chebyshev_graph_spec(n, q)?;
    if !spec.all_trees_trivial() {
        return Err(Error::InternalInconsistency("permutation with nontrivial trees".into()));
    }
    Ok(spec)
}

/// `BigRational` as `a/b`, or `a` when integral.
pub fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal expansion of `r` truncated toward zero to `digits` places.
pub fn fmt_decimal(r: &BigRational, digits: u32) -> String {
    let neg = r < &BigRational::zero();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r.numer() * &scale / r.denom()).magnitude().clone();
    let s = scaled.to_string();
    let s = format!("{s:0>width$}", width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::RootedTree as T;

    fn leaf() -> T {
        T::leaf()
    }
    fn node(k: &[(T, u64)]) -> T {
        T::from_children(k.to_vec())
    }
    fn nu_tree(nu: u64, n: u64) -> T {
        tree_of_nu_series(&nu_series(nu, n).unwrap())
    }
    fn t19() -> T {
        node(&[(T::star(6), 1), (T::star(5), 1), (leaf(), 5)])
    }

    #[test]
    fn mult_map_examples() {
        assert_eq!(mult_map_spec(5, 1).unwrap().classes, vec![CycleClass::new(1, 1, leaf())]);
        assert_eq!(mult_map_spec(30, 18).unwrap().classes, vec![CycleClass::new(1, 1, nu_tree(18, 30))]);
        assert_eq!(
            mult_map_spec(2, 7).unwrap().classes,
            vec![CycleClass::new(1, 1, leaf()), CycleClass::new(2, 3, leaf())]
        );
    }

    #[test]
    fn worked_examples() {
        assert!(rational_component(30, 19).unwrap().is_empty());
        assert!(quadratic_component(30, 19).unwrap().is_empty());
        assert_eq!(chebyshev_graph_spec(30, 19).unwrap().classes, vec![CycleClass::new(1, 1, t19())]);

        let t13 = node(&[(leaf(), 2), (node(&[(leaf(), 2), (T::star(6), 1)]), 1)]);
        assert_eq!(rational_component(30, 23).unwrap(), vec![CycleClass::new(1, 5, T::star(1))]);
        assert!(quadratic_component(30, 23).unwrap().is_empty());
        let s = chebyshev_graph_spec(30, 23).unwrap();
        assert_eq!(s.classes, vec![CycleClass::new(1, 1, t13), CycleClass::new(1, 5, T::star(1))]);

        assert_eq!(rational_component(30, 739).unwrap(), vec![CycleClass::new(1, 20, nu_tree(18, 30))]);
        assert_eq!(quadratic_component(30, 739).unwrap(), vec![CycleClass::new(2, 9, nu_tree(20, 30))]);
        assert_eq!(special_component(30, 739).unwrap(), vec![CycleClass::new(1, 1, t19())]);
        assert_eq!(chebyshev_graph_spec(30, 739).unwrap().total_nodes(), 739);

        assert_eq!(quadratic_component(2, 16).unwrap(), vec![CycleClass::new(2, 4, leaf())]);
        // n odd, q odd, gcd(n, q^2 - 1) = 1: the two fixed points ±2
        assert_eq!(special_component(5, 7).unwrap(), vec![CycleClass::new(2, 1, leaf())]);
    }

    #[test]
    fn params_examples() {
        let p = params_from_spec(&chebyshev_graph_spec(30, 23).unwrap());
        assert_eq!((p.components, p.periodic), (2, 6));
        assert_eq!(p.c_hat, BigUint::from(63u32));
        assert_eq!(p.t_hat, BigUint::from(32u32));
        assert_eq!(fmt_ratio(&p.r), "95/23");
        assert_eq!(fmt_decimal(&p.c, 6), "2.739130");
        assert_eq!(fmt_decimal(&-p.c.clone(), 2), "-2.73");
        assert_eq!(fmt_decimal(&rat(7), 0), "7");

        let cyc = GraphSpec::new(1, Domain::Multiplication { m: 7 }, vec![CycleClass::new(1, 7, leaf())]);
        let p = params_from_spec(&cyc);
        assert_eq!((p.components, p.periodic, p.c_hat.clone(), p.t_hat.clone()), (1, 7, 49u32.into(), 0u32.into()));

        let cf = params_closed_form(30, 739).unwrap();
        assert_eq!(cf.components, rat(4));
        assert_eq!(cf.periodic, rat(39));
        assert!(cf.components_agree && cf.periodic_agree && cf.c_agrees);

        let cf = params_closed_form(30, 23).unwrap();
        assert_eq!(fmt_ratio(&cf.c), "63/23");
        assert_eq!(fmt_ratio(&cf.t_partial_products), "9/23");
        assert_eq!(fmt_ratio(&cf.structural.t), "32/23");
        assert!(!cf.t_agrees);
    }

    #[test]
    fn per_pper_examples() {
        let e = ExtCtx::new(PrimePower::from_order(19).unwrap());
        let two = e.base().from_int(2);
        assert_eq!(per_pper(&e, 30, &two).unwrap(), (1, 0));
        // an element of order 9 in F_19^*: 4 = 2^2
        let alpha = e.embed(&e.base().from_int(4));
        assert_eq!(e.full().element_order(&alpha).unwrap(), 9);
        let a = e.eta(&alpha).unwrap();
        assert_eq!(per_pper(&e, 30, &a).unwrap(), (1, 2));

        let e = ExtCtx::new(PrimePower::from_order(23).unwrap());
        // 2 has order 11 mod 23
        let a = e.eta(&e.embed(&e.base().from_int(2))).unwrap();
        assert_eq!(per_pper(&e, 30, &a).unwrap(), (5, 0));
    }

    #[test]
    fn predicate_examples() {
        assert!(is_permutation(7, 16).unwrap());
        assert!(!is_permutation(2, 7).unwrap());
        assert!(is_permutation(31, 25).unwrap());
        let p = predicates(31, 25).unwrap();
        assert!(p.involution);
        assert_eq!((p.n_sq_mod_omega0, p.omega0, p.n_sq_mod_omega1, p.omega1), (1, 24, 25, 26));
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25] {
            assert!(is_involution(1, q).unwrap());
        }
        assert!(!is_involution(2, 7).unwrap());
        assert!(cycle_decomposition(7, 16).unwrap().all_trees_trivial());
        assert!(cycle_decomposition(2, 7).is_err());
    }

    #[test]
    fn node_totals_small_sweep() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 32, 49, 64, 81, 121, 125, 128] {
            for n in 1..=40 {
                let s = chebyshev_graph_spec(n, q).unwrap();
                assert_eq!(s.total_nodes(), q as u128);
            }
        }
        for m in 1..300 {
            for n in 1..30 {
                assert_eq!(mult_map_spec(n, m).unwrap().total_nodes(), m as u128);
            }
        }
    }

    #[test]
    fn huge_field_is_fast() {
        // q = 2^61 - 1 is prime; q + 1 = 2^61 gives a ν-series of depth 61 for n = 2
        let q = (1u64 << 61) - 1;
        let s = chebyshev_graph_spec(2, q).unwrap();
        assert_eq!(s.total_nodes(), q as u128);
        let p = params_closed_form(2, q).unwrap();
        assert!(p.components_agree && p.periodic_agree && p.c_agrees);
    }
}
