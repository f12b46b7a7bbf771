//! F_{q^2} as F_{p^{2k}}, the embedding of F_q into it, and the map
//! `η(α) = α + α^{-1}` from `F_q^* ∪ H` onto F_q.

use super::{FieldCtx, FieldElement, PrimePower};
use crate::error::{Error, Result};
use crate::numth::{factorize, mul_mod, sub_mod};

/// Polynomial over a [`FieldCtx`], ascending, trailing zeros trimmed.
type LPoly = Vec<FieldElement>;

fn lp_trim(ctx: &FieldCtx, mut a: LPoly) -> LPoly {
    while a.last().is_some_and(|c| ctx.is_zero(c)) {
        a.pop();
    }
    a
}

fn lp_mul(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> LPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    lp_trim(ctx, out)
}

/// Quotient and remainder by a monic divisor.
fn lp_divrem(ctx: &FieldCtx, a: &[FieldElement], m: &[FieldElement]) -> (LPoly, LPoly) {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dm {
        return (Vec::new(), lp_trim(ctx, r));
    }
    let mut quot = vec![ctx.zero(); r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top].clone();
        let shift = top - dm;
        for (i, mi) in m.iter().enumerate() {
            r[shift + i] = ctx.sub(&r[shift + i], &ctx.mul(&c, mi));
        }
        quot[shift] = c;
        r.pop();
    }
    (lp_trim(ctx, quot), lp_trim(ctx, r))
}

fn lp_monic(ctx: &FieldCtx, a: LPoly) -> LPoly {
    let lead = ctx.inv(a.last().expect("nonzero polynomial")).expect("nonzero lead");
    a.iter().map(|c| ctx.mul(c, &lead)).collect()
}

fn lp_gcd(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> LPoly {
    let mut x = lp_trim(ctx, a.to_vec());
    let mut y = lp_trim(ctx, b.to_vec());
    while !y.is_empty() {
        let ym = lp_monic(ctx, y);
        let (_, r) = lp_divrem(ctx, &x, &ym);
        x = ym;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        lp_monic(ctx, x)
    }
}

fn lp_mul_rem(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement], m: &[FieldElement]) -> LPoly {
    lp_divrem(ctx, &lp_mul(ctx, a, b), m).1
}

fn lp_pow_rem(ctx: &FieldCtx, base: &[FieldElement], mut e: u128, m: &[FieldElement]) -> LPoly {
    let mut acc = lp_divrem(ctx, &[ctx.one()], m).1;
    let mut b = lp_divrem(ctx, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = lp_mul_rem(ctx, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = lp_mul_rem(ctx, &b, &b, m);
        }
    }
    acc
}

/// Roots of a monic, squarefree polynomial that splits into linear factors
/// over `ctx` (equal-degree splitting with a deterministic probe sequence).
fn split_roots(ctx: &FieldCtx, f: &[FieldElement]) -> Vec<FieldElement> {
    match f.len() {
        0 | 1 => return Vec::new(),
        2 => return vec![ctx.neg(&f[0])],
        _ => {}
    }
    // Probes must leave every proper subfield: when all roots lie in F_p, no
    // δ in F_p separates them because F_p sits inside the squares of F_{p^2}.
    let mut probe: u128 = 1;
    loop {
        let delta = ctx.decode(probe % ctx.order()).expect("in range");
        probe = probe
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        let h = if ctx.characteristic() == 2 {
            // trace of δx, summed over the Frobenius orbit
            let mut u = lp_divrem(ctx, &[ctx.zero(), delta], f).1;
            let mut acc = u.clone();
            for _ in 1..ctx.degree() {
                u = lp_mul_rem(ctx, &u, &u, f);
                acc = add_polys(ctx, &acc, &u);
            }
            acc
        } else {
            let pw = lp_pow_rem(ctx, &[delta, ctx.one()], (ctx.order() - 1) / 2, f);
            add_polys(ctx, &pw, &[ctx.neg(&ctx.one())])
        };
        let g = lp_gcd(ctx, f, &h);
        if g.len() > 1 && g.len() < f.len() {
            let (cofactor, _) = lp_divrem(ctx, f, &g);
            let mut roots = split_roots(ctx, &g);
            roots.extend(split_roots(ctx, &cofactor));
            return roots;
        }
    }
}

fn add_polys(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> LPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ctx.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    lp_trim(ctx, out)
}

/// A base field F_q together with F_{q^2} and the embedding between them.
#[derive(Clone, Debug)]
pub struct ExtCtx {
    base: FieldCtx,
    full: FieldCtx,
    /// β^i for a root β of the base modulus; the image of the base basis.
    basis_image: Vec<FieldElement>,
    /// Left inverse of the embedding, `k x 2k` over F_p.
    projector: Vec<Vec<u64>>,
    q: u64,
}

impl ExtCtx {
    pub fn new(pp: PrimePower) -> Self {
        let base = FieldCtx::new(pp);
        Self::over(base)
    }

    pub fn over(base: FieldCtx) -> Self {
        let pp = base.prime_power().expect("base field order fits u64");
        let (p, k, q) = (pp.p, pp.k, pp.q);
        let unit = base.unit_group().mul(&factorize(q + 1));
        let full = FieldCtx::with_unit_group(p, 2 * k, unit);

        // lift the base modulus into F_{q^2} and pick its least root
        let lifted: LPoly = base
            .modulus()
            .iter()
            .map(|&c| full.from_int_u64(c))
            .collect();
        let beta = split_roots(&full, &lifted)
            .into_iter()
            .min_by_key(|r| full.encode(r))
            .expect("base modulus splits in the quadratic extension");
        let mut basis_image = Vec::with_capacity(k as usize);
        let mut acc = full.one();
        for _ in 0..k {
            basis_image.push(acc.clone());
            acc = full.mul(&acc, &beta);
        }
        let projector = left_inverse(&basis_image, p);
        Self {
            base,
            full,
            basis_image,
            projector,
            q,
        }
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn full(&self) -> &FieldCtx {
        &self.full
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ring embedding F_q -> F_{q^2}.
    pub fn embed(&self, a: &FieldElement) -> FieldElement {
        let mut out = self.full.zero();
        for (c, img) in a.coeffs().iter().zip(&self.basis_image) {
            if *c != 0 {
                out = self.full.add(&out, &self.full.scale(img, *c));
            }
        }
        out
    }

    /// Inverse of [`ExtCtx::embed`] on its image.
    pub fn project(&self, x: &FieldElement) -> Result<FieldElement> {
        let p = self.base.characteristic();
        let coeffs: Vec<u64> = self
            .projector
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.coeffs())
                    .fold(0u64, |acc, (&r, &c)| crate::numth::add_mod(acc, mul_mod(r, c, p), p))
            })
            .collect();
        let a = self.base.element(coeffs)?;
        if self.embed(&a) != *x {
            return Err(Error::NotInBaseField);
        }
        Ok(a)
    }

    /// Whether `α ∈ F_q^*` (order divides `q - 1`).
    pub fn in_base_units(&self, alpha: &FieldElement) -> bool {
        !self.full.is_zero(alpha) && self.full.pow(alpha, self.q as u128 - 1) == self.full.one()
    }

    /// Whether `α ∈ H`, the subgroup of order `q + 1`.
    pub fn in_norm_one(&self, alpha: &FieldElement) -> bool {
        !self.full.is_zero(alpha) && self.full.pow(alpha, self.q as u128 + 1) == self.full.one()
    }

    /// Membership in `F_q^* ∪ H`.
    pub fn in_domain(&self, alpha: &FieldElement) -> bool {
        self.in_base_units(alpha) || self.in_norm_one(alpha)
    }

    /// `η(α) = α + α^{-1}`, defined on `F_q^* ∪ H`.
    pub fn eta(&self, alpha: &FieldElement) -> Result<FieldElement> {
        if !self.full.contains(alpha) {
            return Err(Error::ForeignElement);
        }
        if !self.in_domain(alpha) {
            return Err(Error::OutsideDomain);
        }
        let s = self.full.add(alpha, &self.full.inv(alpha)?);
        // Frobenius-fixed elements are exactly the base field
        if self.full.pow(&s, self.q as u128) != s {
            return Err(Error::InternalInconsistency("η(α) not fixed by Frobenius".into()));
        }
        self.project(&s)
    }

    /// The roots of `x^2 - a x + 1` in F_{q^2}: `{α, α^{-1}}`, a singleton
    /// exactly when `a = ±2`. Sorted by encoding.
    pub fn eta_preimage(&self, a: &FieldElement) -> Result<Vec<FieldElement>> {
        if !self.base.contains(a) {
            return Err(Error::ForeignElement);
        }
        let f = &self.full;
        let big_a = self.embed(a);
        let disc = f.sub(&f.square(&big_a), &f.from_int(4));
        let mut roots = if f.is_zero(&disc) {
            // double root a/2, or 1 in characteristic 2
            if f.characteristic() == 2 {
                vec![f.one()]
            } else {
                vec![f.div(&big_a, &f.from_int(2))?]
            }
        } else {
            split_roots(f, &[f.one(), f.neg(&big_a), f.one()])
        };
        roots.sort_by_key(|r| f.encode(r));
        Ok(roots)
    }

    /// `F_q^* ∪ H` inside F_{q^2}, in encoding order.
    pub fn domain_elements(&self) -> Vec<FieldElement> {
        self.full.elements().filter(|a| self.in_domain(a)).collect()
    }
}

impl FieldCtx {
    pub(crate) fn from_int_u64(&self, v: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = v % self.p;
        e
    }
}

/// Rows `P` with `P · M = I` where the columns of `M` are `cols`.
fn left_inverse(cols: &[FieldElement], p: u64) -> Vec<Vec<u64>> {
    let k = cols.len();
    let n = cols[0].coeffs().len();
    // augmented rows [M_r | e_r]
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c.coeffs()[r]).collect();
            row.extend((0..n).map(|j| u64::from(j == r)));
            row
        })
        .collect();
    let width = k + n;
    let mut pivot_row = 0;
    for col in 0..k {
        let sel = (pivot_row..n)
            .find(|&r| rows[r][col] != 0)
            .expect("embedding has full column rank");
        rows.swap(pivot_row, sel);
        let inv = super::poly::inv_mod_p(rows[pivot_row][col], p);
        for j in 0..width {
            rows[pivot_row][j] = mul_mod(rows[pivot_row][j], inv, p);
        }
        for r in 0..n {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for j in 0..width {
                    let t = mul_mod(factor, rows[pivot_row][j], p);
                    rows[r][j] = sub_mod(rows[r][j], t, p);
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(k);
    rows.into_iter().map(|r| r[k..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(q: u64) -> ExtCtx {
        ExtCtx::new(PrimePower::from_order(q).unwrap())
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for q in [2u64, 3, 4, 8, 9, 16, 25, 27, 49] {
            let e = ext(q);
            let b = e.base();
            assert_eq!(e.embed(&b.zero()), e.full().zero());
            assert_eq!(e.embed(&b.one()), e.full().one());
            let all: Vec<_> = b.elements().collect();
            for x in &all {
                assert_eq!(e.project(&e.embed(x)).unwrap(), *x);
                for y in all.iter().step_by(3) {
                    assert_eq!(e.embed(&b.add(x, y)), e.full().add(&e.embed(x), &e.embed(y)));
                    assert_eq!(e.embed(&b.mul(x, y)), e.full().mul(&e.embed(x), &e.embed(y)));
                }
            }
            let h = e.full().elements().filter(|a| e.in_norm_one(a)).count() as u64;
            assert_eq!(h, q + 1, "|H| for q = {q}");
        }
    }

    #[test]
    fn eta_examples() {
        let e = ext(19);
        let f = e.full();
        let one = f.one();
        assert_eq!(e.eta(&one).unwrap(), e.base().from_int(2));
        assert_eq!(e.eta(&f.neg(&one)).unwrap(), e.base().from_int(-2));
        let two = e.embed(&e.base().from_int(2));
        assert_eq!(e.base().encode(&e.eta(&two).unwrap()), 12);
        assert_eq!(e.eta(&f.zero()), Err(Error::OutsideDomain));

        let e16 = ext(16);
        assert!(e16.base().is_zero(&e16.eta(&e16.full().one()).unwrap()));
    }

    #[test]
    fn eta_rejects_outside_domain() {
        let e = ext(5);
        let outside = e
            .full()
            .elements()
            .find(|a| !e.full().is_zero(a) && !e.in_domain(a))
            .unwrap();
        assert_eq!(e.eta(&outside), Err(Error::OutsideDomain));
    }

    #[test]
    fn eta_preimage_examples() {
        let e = ext(19);
        let b = e.base();
        assert_eq!(e.eta_preimage(&b.from_int(2)).unwrap(), vec![e.full().one()]);
        assert_eq!(
            e.eta_preimage(&b.from_int(-2)).unwrap(),
            vec![e.full().neg(&e.full().one())]
        );
        let pre = e.eta_preimage(&b.from_int(12)).unwrap();
        let projected: Vec<u128> = pre.iter().map(|r| b.encode(&e.project(r).unwrap())).collect();
        assert_eq!(projected, vec![2, 10]);
    }

    #[test]
    fn eta_is_two_to_one_and_inverse_symmetric() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let e = ext(q);
            let b = e.base();
            let f = e.full();
            let dom = e.domain_elements();
            let overlap = if q % 2 == 0 { 1 } else { 2 };
            assert_eq!(dom.len() as u64, (q - 1) + (q + 1) - overlap);
            let mut fibres = vec![0usize; q as usize];
            for alpha in &dom {
                let a = e.eta(alpha).unwrap();
                assert_eq!(a, e.eta(&f.inv(alpha).unwrap()).unwrap());
                fibres[b.encode(&a) as usize] += 1;
            }
            let two = b.encode(&b.from_int(2)) as usize;
            let mtwo = b.encode(&b.from_int(-2)) as usize;
            for (i, &c) in fibres.iter().enumerate() {
                let expected = if i == two || i == mtwo { 1 } else { 2 };
                assert_eq!(c, expected, "q = {q}, a = {i}");
            }
            for a in b.elements() {
                let pre = e.eta_preimage(&a).unwrap();
                assert_eq!(pre.len(), fibres[b.encode(&a) as usize]);
                for r in &pre {
                    assert!(e.in_domain(r));
                    assert_eq!(e.eta(r).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn large_field_extension() {
        let q = 1_000_000_007u64;
        let e = ext(q);
        let a = e.base().from_int(123_456);
        let pre = e.eta_preimage(&a).unwrap();
        assert_eq!(pre.len(), 2);
        for r in &pre {
            assert_eq!(e.eta(r).unwrap(), a);
        }
        let order = e.full().element_order(&pre[0]).unwrap();
        assert!((q as u128 - 1) % order == 0 || (q as u128 + 1) % order == 0);
    }
}
