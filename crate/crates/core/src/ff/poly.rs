//! Dense polynomials over F_p, ascending coefficients, trailing zeros trimmed.

use crate::numth::{factorize, mul_mod, pow_mod};

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x >= y {
                x - y
            } else {
                p - (y - x)
            }
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = mul_mod(x, y, p);
            let s = out[i + j] as u128 + t as u128;
            out[i + j] = (s % p as u128) as u64;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let dm = m.len() - 1;
    let mut r: Poly = a.to_vec();
    let lead_inv = inv_mod_p(*m.last().unwrap(), p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let t = mul_mod(c, mi, p);
                let v = r[shift + i];
                r[shift + i] = if v >= t { v - t } else { p - (t - v) };
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m`.
pub(crate) fn pow_rem(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic `f` of degree `k >= 1` over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    // frob[i] = x^{p^i} mod f
    let x: Poly = vec![0, 1];
    let mut frob = vec![rem(&x, f, p)];
    for i in 1..=k {
        let next = pow_rem(&frob[i - 1], p as u128, f, p);
        frob.push(next);
    }
    if sub(&frob[k], &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in factorize(k as u64).primes() {
        let g = gcd(f, &sub(&frob[k / r as usize], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `k`, comparing the
/// coefficient vectors `(c_0, c_1, ..., c_{k-1})` from the constant term up.
pub(crate) fn least_irreducible(p: u64, k: u32) -> Poly {
    let k = k as usize;
    let mut coeffs = vec![0u64; k];
    if k >= 2 {
        // anything with zero constant term is divisible by x
        coeffs[0] = 1;
    }
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment with c_{k-1} as the least significant digit
        let mut i = k;
        loop {
            assert!(i > 0, "no irreducible polynomial found");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rabin_agrees_with_trial_division_small() {
        // every monic of degree <= 4 over F_2 and F_3, checked by trial division
        for p in [2u64, 3] {
            for k in 1..=4usize {
                let total = p.pow(k as u32);
                for t in 0..total {
                    let mut f: Poly = (0..k).map(|i| (t / p.pow(i as u32)) % p).collect();
                    f.push(1);
                    let brute = (1..=k / 2).all(|d| {
                        (0..p.pow(d as u32)).all(|s| {
                            let mut g: Poly = (0..d).map(|i| (s / p.pow(i as u32)) % p).collect();
                            g.push(1);
                            !rem(&f, &g, p).is_empty()
                        })
                    });
                    assert_eq!(is_irreducible(&f, p), brute, "p={p} f={f:?}");
                }
            }
        }
    }
}
