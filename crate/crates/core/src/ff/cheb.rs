//! Chebyshev polynomials `T_n` (Dickson polynomials `D_n(x, 1)`): integer
//! coefficients and fast evaluation over a finite field.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Evaluates `T_n(a)` with the doubling ladder on `(T_m, T_{m+1})`:
/// `T_{2m} = T_m^2 - 2` and `T_{2m+1} = T_m T_{m+1} - a`.
fn ladder(ctx: &FieldCtx, bits: impl Iterator<Item = bool>, a: &FieldElement) -> FieldElement {
    let two = ctx.from_int(2);
    let mut lo = two.clone();
    let mut hi = a.clone();
    for bit in bits {
        let mixed = ctx.sub(&ctx.mul(&lo, &hi), a);
        if bit {
            hi = ctx.sub(&ctx.square(&hi), &two);
            lo = mixed;
        } else {
            lo = ctx.sub(&ctx.square(&lo), &two);
            hi = mixed;
        }
    }
    lo
}

/// `T_n(a)` for an arbitrary positive `n`.
pub fn cheb_eval(ctx: &FieldCtx, n: &BigUint, a: &FieldElement) -> Result<FieldElement> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("Chebyshev degree must be positive".into()));
    }
    if !ctx.contains(a) {
        return Err(Error::ForeignElement);
    }
    let len = n.bits();
    Ok(ladder(ctx, (0..len).rev().map(|i| n.bit(i)), a))
}

/// `T_n(a)` for `n >= 1` fitting in 64 bits.
pub fn cheb_eval_u64(ctx: &FieldCtx, n: u64, a: &FieldElement) -> FieldElement {
    assert!(n >= 1, "Chebyshev degree must be positive");
    let len = 64 - n.leading_zeros();
    ladder(ctx, (0..len).rev().map(|i| (n >> i) & 1 == 1), a)
}

/// Integer coefficients of `T_n`, ascending, from `T_{k+1} = x T_k - T_{k-1}`
/// with `T_0 = 2`, `T_1 = x`.
pub fn cheb_coeffs(n: u32) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Chebyshev degree must be positive".into()));
    }
    let mut prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Horner evaluation of an integer polynomial after reduction into `ctx`.
pub fn eval_integer_poly(ctx: &FieldCtx, coeffs: &[BigInt], a: &FieldElement) -> FieldElement {
    let p = BigInt::from(ctx.characteristic());
    coeffs.iter().rev().fold(ctx.zero(), |acc, c| {
        let r = c.mod_floor(&p).to_u64().expect("residue fits u64");
        ctx.add(&ctx.mul(&acc, a), &ctx.from_int_u64(r))
    })
}

/// Renders coefficients the way polynomials are usually written:
/// `x^10 - 10x^8 + ... - 2`.
pub fn format_integer_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = mag.is_one();
        match deg {
            0 => out.push_str(&mag.to_string()),
            1 if unit => out.push('x'),
            1 => out.push_str(&format!("{mag}x")),
            _ if unit => out.push_str(&format!("x^{deg}")),
            _ => out.push_str(&format!("{mag}x^{deg}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
