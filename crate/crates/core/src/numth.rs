//! Integer arithmetic: factorization, radicals, n-decompositions, multiplicative
//! orders modulo `d` (plain and modulo ±1), and ν-series.
//!
//! Every value handled here is bounded by `q + 1` for a field size `q < 2^64`,
//! so `u64` storage with `u128` intermediates is exact; group orders of
//! quadratic extensions (`q^2 - 1`) are represented as merged factorizations of
//! `q - 1` and `q + 1` rather than as a single integer.

use std::collections::HashMap;

use crate::error::{Error, Result};

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    if s >= m as u128 {
        (s - m as u128) as u64
    } else {
        s as u64
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization with strictly increasing primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization from arbitrary `(prime, exponent)` pairs, merging
    /// repeated primes and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut map: Vec<(u64, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        map.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::with_capacity(map.len());
        for (p, e) in map {
            match factors.last_mut() {
                Some((lp, le)) if *lp == p => *le += e,
                _ => factors.push((p, e)),
            }
        }
        Self { factors }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The factored integer. Panics if it does not fit in 128 bits.
    pub fn value(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, &(p, e)| {
            (0..e).fold(acc, |a, _| a.checked_mul(p as u128).expect("factorization value overflows u128"))
        })
    }

    pub fn value_u64(&self) -> Option<u64> {
        u64::try_from(self.value()).ok()
    }

    pub fn mul(&self, other: &Factorization) -> Factorization {
        Factorization::from_pairs(self.factors.iter().chain(other.factors.iter()).copied())
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn radical(&self) -> u128 {
        self.factors.iter().map(|&(p, _)| p as u128).product()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// All divisors, increasing.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p as u128;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Divisors together with their own factorizations, in no particular order.
    pub fn factored_divisors(&self) -> Vec<Factorization> {
        let mut out = vec![Factorization::one()];
        for &(p, e) in &self.factors {
            let len = out.len();
            for k in 1..=e {
                for i in 0..len {
                    let mut f = out[i].clone();
                    f.factors.push((p, k));
                    out.push(f);
                }
            }
        }
        out
    }
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let m = 128u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
        if r > (1 << 40) {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_composite(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push((n, 1));
        return;
    }
    for c in 1.. {
        if let Some(d) = pollard_brent(n, c) {
            split_composite(d, out);
            split_composite(n / d, out);
            return;
        }
    }
}

/// Complete prime factorization: trial division up to 10^6, then Pollard rho
/// (Brent) with the deterministic seed sequence `c = 1, 2, 3, ...`.
pub fn factorize(mut m: u64) -> Factorization {
    assert!(m >= 1, "factorize requires m >= 1");
    let mut pairs = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    // wheel mod 30
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_DIVISION_BOUND && p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if m > 1 {
        if p * p > m {
            pairs.push((m, 1));
        } else {
            split_composite(m, &mut pairs);
        }
    }
    Factorization::from_pairs(pairs)
}

pub fn radical(m: u64) -> u64 {
    factorize(m).radical() as u64
}

pub fn euler_phi(d: u64) -> u64 {
    phi_of(&factorize(d)) as u64
}

fn phi_of(f: &Factorization) -> u128 {
    f.pairs()
        .iter()
        .map(|&(p, e)| (p as u128 - 1) * (p as u128).pow(e - 1))
        .product()
}

pub fn divisors(m: u64) -> Vec<u64> {
    factorize(m).divisors().into_iter().map(|d| d as u64).collect()
}

/// `m = nu * omega` with `rad(nu) | rad(n)` and `gcd(omega, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NDecomposition {
    pub m: u64,
    pub n: u64,
    pub nu: u64,
    pub omega: u64,
}

pub fn n_decomposition(m: u64, n: u64) -> NDecomposition {
    assert!(m >= 1 && n >= 1, "n-decomposition needs positive arguments");
    let mut omega = m;
    let mut g = gcd(omega, n);
    while g > 1 {
        omega /= g;
        g = gcd(omega, n);
    }
    NDecomposition {
        m,
        n,
        nu: m / omega,
        omega,
    }
}

/// Splits a factorization into its `n`-decomposition, keeping both halves factored.
pub fn split_factored(f: &Factorization, n: u64) -> (Factorization, Factorization) {
    let (nu, omega): (Vec<_>, Vec<_>) = f.pairs().iter().partition(|&&(p, _)| n % p == 0);
    (Factorization::from_pairs(nu), Factorization::from_pairs(omega))
}

/// The ν-series `(ν_1, ..., ν_D)` of `nu` with respect to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NuSeries {
    pub nu: u64,
    pub n: u64,
    pub terms: Vec<u64>,
}

impl NuSeries {
    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    /// `ν_1 ⋯ ν_j` for `j = 0..=D`.
    pub fn partial_products(&self) -> Vec<u128> {
        let mut out = Vec::with_capacity(self.terms.len() + 1);
        let mut acc = 1u128;
        out.push(acc);
        for &t in &self.terms {
            acc *= t as u128;
            out.push(acc);
        }
        out
    }
}

pub fn nu_series(nu: u64, n: u64) -> Result<NuSeries> {
    if nu == 0 || n == 0 {
        return Err(Error::InvalidArgument("nu-series needs positive nu and n".into()));
    }
    if nu == 1 {
        return Ok(NuSeries { nu, n, terms: vec![1] });
    }
    let mut terms = Vec::new();
    let mut rest = nu;
    while rest > 1 {
        let g = gcd(rest, n);
        if g == 1 {
            return Err(Error::BadRadical { nu, n });
        }
        terms.push(g);
        rest /= g;
    }
    Ok(NuSeries { nu, n, terms })
}

/// Order computations modulo divisors of a fixed factored modulus.
///
/// Orders are found by stripping prime factors from `φ(d)`; factorizations of
/// `p - 1` for the primes of the modulus are computed once.
pub struct OrderOracle {
    n: u64,
    pm1: HashMap<u64, Factorization>,
}

impl OrderOracle {
    pub fn new(n: u64, modulus: &Factorization) -> Self {
        let pm1 = modulus.primes().map(|p| (p, factorize(p - 1))).collect();
        Self { n, pm1 }
    }

    fn phi_factorization(&mut self, d: &Factorization) -> Factorization {
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        for &(p, e) in d.pairs() {
            if e > 1 {
                pairs.push((p, e - 1));
            }
            let f = self.pm1.entry(p).or_insert_with(|| factorize(p - 1));
            pairs.extend_from_slice(f.pairs());
        }
        Factorization::from_pairs(pairs)
    }

    /// `o_d(n)` for the factored divisor `d`.
    pub fn order(&mut self, d: &Factorization) -> Result<u64> {
        let dv = d.value_u64().ok_or_else(|| Error::InvalidArgument("modulus exceeds u64".into()))?;
        order_with_phi(self.n, dv, &self.phi_factorization(d))
    }

    /// `õ_d(n)`: the order of `n` in `Z_d^* / {±1}`.
    pub fn half_order(&mut self, d: &Factorization) -> Result<u64> {
        let dv = d.value_u64().ok_or_else(|| Error::InvalidArgument("modulus exceeds u64".into()))?;
        let o = self.order(d)?;
        Ok(halve_if_minus_one(self.n, dv, o))
    }
}

fn order_with_phi(n: u64, d: u64, phi: &Factorization) -> Result<u64> {
    if d == 1 {
        return Ok(1);
    }
    let r = n % d;
    if gcd(r, d) != 1 {
        return Err(Error::NotCoprime { n, d });
    }
    let mut t = phi.value() as u64;
    for &(p, _) in phi.pairs() {
        while t % p == 0 && pow_mod(r, t / p, d) == 1 {
            t /= p;
        }
    }
    Ok(t)
}

fn halve_if_minus_one(n: u64, d: u64, o: u64) -> u64 {
    if d <= 2 {
        return 1;
    }
    if o % 2 == 0 && pow_mod(n % d, o / 2, d) == d - 1 {
        o / 2
    } else {
        o
    }
}

/// `o_d(n)`: least `t >= 1` with `n^t ≡ 1 (mod d)`.
pub fn mult_order(n: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let f = factorize(d);
    OrderOracle::new(n, &f).order(&f)
}

/// `õ_d(n)`: least `t >= 1` with `n^t ≡ ±1 (mod d)`.
pub fn half_order(n: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let f = factorize(d);
    OrderOracle::new(n, &f).half_order(&f)
}

/// Least `k >= 0` with `u | n^k`; requires `rad(u) | rad(n)`.
pub fn preperiod_exponent(u: u64, n: u64) -> Result<u32> {
    let mut rest = u;
    let mut k = 0;
    while rest > 1 {
        let g = gcd(rest, n);
        if g == 1 {
            return Err(Error::BadRadical { nu: u, n });
        }
        rest /= g;
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(n: u64, d: u64, pm: bool) -> u64 {
        if d == 1 {
            return 1;
        }
        let mut x = n % d;
        for t in 1..=d {
            if x == 1 % d || (pm && x == d - 1) {
                return t;
            }
            x = x * (n % d) % d;
        }
        unreachable!()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).is_one());
        assert_eq!(factorize(738).pairs(), &[(2, 1), (3, 2), (41, 1)]);
        assert_eq!(factorize(740).pairs(), &[(2, 2), (5, 1), (37, 1)]);
    }

    #[test]
    fn factorize_large_semiprimes() {
        let p = 4_294_967_291u64; // largest 32-bit prime
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q).pairs(), &[(q, 1), (p, 1)]);
        let big = 18_446_744_073_709_551_557u64; // largest 64-bit prime
        assert_eq!(factorize(big).pairs(), &[(big, 1)]);
        let f = factorize(u64::MAX);
        assert_eq!(f.value(), u64::MAX as u128);
        assert_eq!(f.pairs().len(), 7);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn decomposition_examples() {
        let d = n_decomposition(738, 30);
        assert_eq!((d.nu, d.omega), (18, 41));
        let d = n_decomposition(740, 30);
        assert_eq!((d.nu, d.omega), (20, 37));
        let d = n_decomposition(1, 7);
        assert_eq!((d.nu, d.omega), (1, 1));
    }

    #[test]
    fn nu_series_examples() {
        assert_eq!(nu_series(18, 30).unwrap().terms, vec![6, 3]);
        assert_eq!(nu_series(24, 30).unwrap().terms, vec![6, 2, 2]);
        assert_eq!(nu_series(16, 2).unwrap().terms, vec![2, 2, 2, 2]);
        assert_eq!(nu_series(1, 5).unwrap().terms, vec![1]);
        assert!(matches!(nu_series(14, 30), Err(Error::BadRadical { .. })));
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(30, 1).unwrap(), 1);
        assert_eq!(mult_order(30, 11).unwrap(), brute_order(30, 11, false));
        assert_eq!(mult_order(30, 11).unwrap(), 10);
        assert_eq!(mult_order(30, 41).unwrap(), 40);
        assert_eq!(half_order(30, 11).unwrap(), 5);
        assert_eq!(half_order(30, 41).unwrap(), 20);
        assert_eq!(half_order(30, 37).unwrap(), 9);
        assert_eq!(half_order(7, 1).unwrap(), 1);
        assert_eq!(half_order(7, 2).unwrap(), 1);
        assert!(matches!(mult_order(6, 9), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn orders_match_brute_force() {
        for d in 1..300u64 {
            for n in 1..40u64 {
                if gcd(n, d) != 1 {
                    continue;
                }
                assert_eq!(mult_order(n, d).unwrap(), brute_order(n, d, false), "o_{d}({n})");
                assert_eq!(half_order(n, d).unwrap(), brute_order(n, d, true), "õ_{d}({n})");
            }
        }
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(41), 40);
        assert_eq!(radical(1), 1);
        assert_eq!(radical(72), 6);
        assert_eq!(divisors(11), vec![1, 11]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        for m in 1..=10_000u64 {
            let s: u64 = divisors(m).into_iter().map(euler_phi).sum();
            assert_eq!(s, m);
        }
    }

    #[test]
    fn preperiod_exponent_examples() {
        assert_eq!(preperiod_exponent(1, 30).unwrap(), 0);
        assert_eq!(preperiod_exponent(9, 30).unwrap(), 2);
        assert_eq!(preperiod_exponent(8, 2).unwrap(), 3);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn decomposition_invariants(m in 1u64..=1_000_000, n in 1u64..=1000) {
                let d = n_decomposition(m, n);
                prop_assert_eq!(d.nu * d.omega, m);
                prop_assert_eq!(gcd(d.omega, n), 1);
                prop_assert_eq!(radical(n) % radical(d.nu), 0);
                // nu re-derived from the factorization
                let nu: u64 = factorize(m)
                    .pairs()
                    .iter()
                    .filter(|&&(p, _)| n % p == 0)
                    .map(|&(p, e)| p.pow(e))
                    .product();
                prop_assert_eq!(nu, d.nu);
            }

            #[test]
            fn nu_series_invariants(m in 1u64..=10_000, n in 1u64..=1000) {
                let nu = n_decomposition(m, n).nu;
                let s = nu_series(nu, n).unwrap();
                prop_assert_eq!(s.terms.iter().product::<u64>(), nu);
                for w in s.terms.windows(2) {
                    prop_assert_eq!(w[0] % w[1], 0);
                }
                if nu > 1 {
                    prop_assert!(*s.terms.last().unwrap() > 1);
                }
                let partial = s.partial_products();
                let mut npow = 1u128;
                for (j, &pp) in partial.iter().enumerate().skip(1) {
                    npow *= n as u128;
                    prop_assert_eq!(pp, gcd_u128(npow, nu as u128), "j = {}", j);
                }
            }

            #[test]
            fn half_order_relation(d in 1u64..=5000, n in 1u64..=1000) {
                prop_assume!(gcd(n, d) == 1);
                let o = mult_order(n, d).unwrap();
                let h = half_order(n, d).unwrap();
                prop_assert!(h == o || 2 * h == o);
                let r = pow_mod(n, h, d);
                prop_assert!(r == 1 % d || r == d - 1);
            }

            #[test]
            fn factorization_multiplies_back(m in 1u64..) {
                let f = factorize(m);
                prop_assert_eq!(f.value(), m as u128);
                prop_assert!(f.primes().all(is_prime));
            }
        }
    }
}
