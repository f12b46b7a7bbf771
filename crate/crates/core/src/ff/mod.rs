//! Arithmetic in F_{p^k}, realized as F_p[x]/(m(x)) with `m` the
//! lexicographically least monic irreducible of degree `k`.
//!
//! Elements cross API boundaries as base-p integers: coefficient `c_i` of
//! `x^i` contributes `c_i * p^i`, so the encoding of a field of order `Q` is a
//! bijection onto `[0, Q)`.

mod cheb;
mod ext;
mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numth::{self, add_mod, factorize, mul_mod, sub_mod, Factorization};

pub use cheb::{cheb_coeffs, cheb_eval, cheb_eval_u64, eval_integer_poly, format_integer_poly};
pub use ext::ExtCtx;

/// A prime power `q = p^k` that fits in 64 bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !numth::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let q = p.checked_pow(k).ok_or(Error::FieldTooLarge { p, k })?;
        Ok(Self { p, k, q })
    }

    /// Recognizes `q` as a prime power.
    pub fn from_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        match factorize(q).pairs() {
            [(p, k)] => Ok(Self { p: *p, k: *k, q }),
            _ => Err(Error::NotPrimePower(q)),
        }
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }
}

impl FromStr for PrimePower {
    type Err = Error;

    /// Accepts `"25"` as well as `"5^2"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse field order {s:?}"));
        let s = s.trim();
        match s.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                PrimePower::new(p, k)
            }
            None => PrimePower::from_order(s.parse().map_err(|_| bad())?),
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// An element of some [`FieldCtx`]: `degree` residues mod `p`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Arithmetic context for a finite field of order `p^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    degree: u32,
    order: u128,
    modulus: Vec<u64>,
    unit_group: Factorization,
}

/// Builds the canonical context for F_{p^k}.
pub fn make_field(p: u64, k: u32) -> Result<FieldCtx> {
    let pp = PrimePower::new(p, k)?;
    Ok(FieldCtx::with_unit_group(p, k, factorize(pp.q - 1)))
}

impl FieldCtx {
    pub fn new(pp: PrimePower) -> Self {
        Self::with_unit_group(pp.p, pp.k, factorize(pp.q - 1))
    }

    /// `unit_group` must be the factorization of `p^degree - 1`.
    pub(crate) fn with_unit_group(p: u64, degree: u32, unit_group: Factorization) -> Self {
        let order = (p as u128).pow(degree);
        debug_assert_eq!(unit_group.value(), order - 1);
        Self {
            p,
            degree,
            order,
            modulus: poly::least_irreducible(p, degree),
            unit_group,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// The prime power `q`, when this field is small enough to be a base field.
    pub fn prime_power(&self) -> Option<PrimePower> {
        u64::try_from(self.order).ok().map(|q| PrimePower {
            p: self.p,
            k: self.degree,
            q,
        })
    }

    /// Monic modulus, ascending coefficients (length `degree + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Factorization of `|F^*| = order - 1`.
    pub fn unit_group(&self) -> &Factorization {
        &self.unit_group
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer under `Z -> F`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let r = if v >= 0 {
            v as u64 % self.p
        } else {
            let m = v.unsigned_abs() % self.p;
            if m == 0 {
                0
            } else {
                self.p - m
            }
        };
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.degree as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::ForeignElement);
        }
        Ok(FieldElement { coeffs })
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.degree as usize && a.coeffs.iter().all(|&c| c < self.p)
    }

    /// Base-p integer encoding, least significant coefficient first.
    pub fn encode(&self, a: &FieldElement) -> u128 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn decode(&self, mut v: u128) -> Result<FieldElement> {
        if v >= self.order {
            return Err(Error::ForeignElement);
        }
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (v % self.p as u128) as u64;
            v /= self.p as u128;
        }
        Ok(e)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.decode(i).expect("index in range"))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x, y, self.p))
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, self.p))
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| mul_mod(x, c % self.p, self.p)).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let d = self.degree as usize;
        if d == 1 {
            return FieldElement {
                coeffs: vec![mul_mod(a.coeffs[0], b.coeffs[0], p)],
            };
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus[..d].iter().enumerate() {
                prod[i - d + j] = sub_mod(prod[i - d + j], mul_mod(c, m, p), p);
            }
        }
        prod.truncate(d);
        FieldElement { coeffs: prod }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^e` by square-and-multiply; `a^0 = 1` for every `a`.
    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `a^e` for an arbitrary-precision exponent.
    pub fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        if e.is_zero() {
            return self.one();
        }
        if self.is_zero(a) {
            return self.zero();
        }
        // a^(order-1) = 1 for units
        let group = BigUint::from(self.order - 1);
        let r = e % &group;
        let r = u128::try_from(&r).expect("reduced exponent fits u128");
        self.pow(a, r)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplicative order, found by stripping prime factors from `|F^*|`.
    pub fn element_order(&self, a: &FieldElement) -> Result<u128> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let one = self.one();
        let mut t = self.order - 1;
        for &(r, _) in self.unit_group.pairs() {
            let r = r as u128;
            while t % r == 0 && self.pow(a, t / r) == one {
                t /= r;
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(19, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 19);
    }

    /// Monic polynomials of degree `k` over F_p in lexicographic order of
    /// `(c_0, ..., c_{k-1})`; irreducibility by trial division against all
    /// monics of degree <= k/2.
    fn least_irreducible_by_enumeration(p: u64, k: u32) -> Vec<u64> {
        let rem = |f: &[u64], g: &[u64]| super::poly::rem(f, g, p);
        let monics = |d: u32| {
            (0..p.pow(d)).map(move |s| {
                let mut g: Vec<u64> = (0..d).map(|i| (s / p.pow(i)) % p).collect();
                g.push(1);
                g
            })
        };
        for t in 0..p.pow(k) {
            // c_0 is the most significant digit
            let mut f: Vec<u64> = (0..k).map(|i| (t / p.pow(k - 1 - i)) % p).collect();
            f.push(1);
            if (1..=k / 2).all(|d| monics(d).all(|g| !rem(&f, &g).is_empty())) {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn canonical_moduli_match_enumeration() {
        for (p, k) in [(2, 4), (5, 2), (2, 2), (3, 3), (2, 6), (7, 2), (3, 4)] {
            let f = make_field(p, k).unwrap();
            assert_eq!(f.modulus(), least_irreducible_by_enumeration(p, k).as_slice(), "F_{p}^{k}");
        }
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]);
        // deterministic
        assert_eq!(make_field(5, 2).unwrap(), make_field(5, 2).unwrap());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(15, 1), Err(Error::NotPrime(15)));
        assert!(matches!(make_field(19, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_field(2, 64), Err(Error::FieldTooLarge { .. })));
        assert_eq!("5^2".parse::<PrimePower>().unwrap().q, 25);
        assert_eq!("343".parse::<PrimePower>().unwrap(), PrimePower::new(7, 3).unwrap());
        assert_eq!("24".parse::<PrimePower>(), Err(Error::NotPrimePower(24)));
        assert!("x".parse::<PrimePower>().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f = make_field(19, 1).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.encode(&f.inv(&two).unwrap()), 10);
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        for a in f.elements() {
            assert_eq!(f.pow(&a, 0), f.one());
        }
        assert_eq!(f.encode(&f.from_int(-2)), 17);
    }

    #[test]
    fn f25_inverses_exhaustive() {
        let f = make_field(5, 2).unwrap();
        let units: Vec<_> = f.elements().filter(|a| !f.is_zero(a)).collect();
        assert_eq!(units.len(), 24);
        for a in &units {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, &ai), f.one());
        }
    }

    #[test]
    fn field_axioms_f16() {
        let f = make_field(2, 4).unwrap();
        let all: Vec<_> = f.elements().collect();
        for a in &all {
            for b in &all {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(&f.add(a, b), b), *a);
                for c in all.iter().step_by(5) {
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn pow_big_reduces_exponent() {
        let f = make_field(7, 2).unwrap();
        let a = f.decode(10).unwrap();
        let e = BigUint::from(10u32).pow(40);
        let r = u128::try_from(&e % BigUint::from(48u32)).unwrap();
        assert_eq!(f.pow_big(&a, &e), f.pow(&a, r));
        assert_eq!(f.pow_big(&f.zero(), &e), f.zero());
        assert_eq!(f.pow_big(&f.zero(), &BigUint::zero()), f.one());
    }

    #[test]
    fn element_orders() {
        let f = make_field(19, 1).unwrap();
        assert_eq!(f.element_order(&f.one()).unwrap(), 1);
        // direct powering oracle
        let two = f.from_int(2);
        let brute = (1..=18u128).find(|&t| f.pow(&two, t) == f.one()).unwrap();
        assert_eq!(brute, 18);
        assert_eq!(f.element_order(&two).unwrap(), 18);
        assert_eq!(f.element_order(&f.zero()), Err(Error::ZeroElement));

        let f16 = make_field(2, 4).unwrap();
        let cube_roots: Vec<_> = f16
            .elements()
            .filter(|a| !f16.is_zero(a) && *a != f16.one() && f16.pow(a, 3) == f16.one())
            .collect();
        assert_eq!(cube_roots.len(), 2);
        for w in &cube_roots {
            assert_eq!(f16.element_order(w).unwrap(), 3);
        }
        for a in f16.elements().skip(1) {
            let o = f16.element_order(&a).unwrap();
            let brute = (1..=15u128).find(|&t| f16.pow(&a, t) == f16.one()).unwrap();
            assert_eq!(o, brute);
        }
    }

    #[test]
    fn large_prime_field() {
        let p = 18_446_744_073_709_551_557u64;
        let f = make_field(p, 1).unwrap();
        let a = f.from_int(-3);
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), f.one());
        let o = f.element_order(&a).unwrap();
        assert_eq!((p as u128 - 1) % o, 0);
        assert_eq!(f.pow(&a, o), f.one());
    }
}
