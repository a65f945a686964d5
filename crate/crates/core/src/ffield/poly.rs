//! Dense univariate polynomials over a [`FiniteField`], coefficients stored
//! lowest degree first with no trailing zeros.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FieldElem, FiniteField};
use crate::arith;

pub type Poly = Vec<FieldElem>;

pub fn trim(f: &mut Poly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(f: &[FieldElem]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn add(k: &FiniteField, f: &[FieldElem], g: &[FieldElem]) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(FieldElem::ZERO);
            let b = g.get(i).copied().unwrap_or(FieldElem::ZERO);
            k.add(a, b)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &FiniteField, f: &[FieldElem], g: &[FieldElem]) -> Poly {
    let neg: Poly = g.iter().map(|&c| k.neg(c)).collect();
    add(k, f, &neg)
}

pub fn mul(k: &FiniteField, f: &[FieldElem], g: &[FieldElem]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElem::ZERO; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `f` by a nonzero `g`.
pub fn div_rem(k: &FiniteField, f: &[FieldElem], g: &[FieldElem]) -> (Poly, Poly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let mut r: Poly = f.to_vec();
    trim(&mut r);
    let lead_inv = k.inv(g[dg]);
    let mut quot = vec![FieldElem::ZERO; r.len().saturating_sub(dg).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = k.mul(r[dr], lead_inv);
        let shift = dr - dg;
        quot[shift] = c;
        for (j, &gj) in g[..=dg].iter().enumerate() {
            r[shift + j] = k.sub(r[shift + j], k.mul(c, gj));
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub fn rem(k: &FiniteField, f: &[FieldElem], g: &[FieldElem]) -> Poly {
    div_rem(k, f, g).1
}

pub fn monic(k: &FiniteField, f: &[FieldElem]) -> Poly {
    let mut f = f.to_vec();
    trim(&mut f);
    if let Some(&lead) = f.last() {
        let inv = k.inv(lead);
        for c in f.iter_mut() {
            *c = k.mul(*c, inv);
        }
    }
    f
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(k: &FiniteField, f: &[FieldElem], g: &[FieldElem]) -> Poly {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

pub fn mul_mod(k: &FiniteField, f: &[FieldElem], g: &[FieldElem], m: &[FieldElem]) -> Poly {
    rem(k, &mul(k, f, g), m)
}

pub fn pow_mod(k: &FiniteField, base: &[FieldElem], mut e: u128, m: &[FieldElem]) -> Poly {
    let mut acc = rem(k, &[FieldElem::ONE], m);
    let mut b = rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(k, &acc, &b, m);
        }
        b = mul_mod(k, &b, &b, m);
        e >>= 1;
    }
    acc
}

pub fn eval(k: &FiniteField, f: &[FieldElem], x: FieldElem) -> FieldElem {
    f.iter()
        .rev()
        .fold(FieldElem::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

fn x_poly() -> Poly {
    vec![FieldElem::ZERO, FieldElem::ONE]
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(Q^n) = x mod f` and
/// `gcd(x^(Q^(n/r)) - x, f) = 1` for every prime `r | n`, where `Q = |k|`.
pub fn is_irreducible(k: &FiniteField, f: &[FieldElem]) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = monic(k, f);
    let q = k.order() as u128;
    // powers[i] = x^(Q^i) mod f
    let mut powers = vec![rem(k, &x_poly(), &f)];
    for i in 1..=n {
        let next = pow_mod(k, &powers[i - 1], q, &f);
        powers.push(next);
    }
    if powers[n] != rem(k, &x_poly(), &f) {
        return false;
    }
    for r in arith::prime_divisors(n as u128) {
        let h = sub(k, &powers[n / r as usize], &x_poly());
        if degree(&gcd(k, &h, &f)) != Some(0) {
            return false;
        }
    }
    true
}

/// Distinct roots of `f` in `k`, sorted by element index.
pub fn roots(k: &FiniteField, f: &[FieldElem]) -> Vec<FieldElem> {
    let f = monic(k, f);
    match degree(&f) {
        None => panic!("roots of the zero polynomial"),
        Some(0) => return Vec::new(),
        _ => {}
    }
    // product of the distinct linear factors
    let xq = pow_mod(k, &x_poly(), k.order() as u128, &f);
    let g = gcd(k, &f, &sub(k, &xq, &x_poly()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_2007);
    let mut out = Vec::new();
    split_linear(k, g, &mut rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(k: &FiniteField, g: Poly, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElem>) {
    match degree(&g) {
        None | Some(0) => return,
        Some(1) => {
            out.push(k.neg(k.mul(g[0], k.inv(g[1]))));
            return;
        }
        Some(_) => {}
    }
    loop {
        let delta = k.elem(rng.gen_range(0..k.order())).expect("in range");
        let probe = if k.p() == 2 {
            // absolute trace of delta*X, which is F_2-valued on every root
            let base = vec![FieldElem::ZERO, delta];
            let mut term = rem(k, &base, &g);
            let mut acc = term.clone();
            for _ in 1..k.a() {
                term = mul_mod(k, &term, &term, &g);
                acc = add(k, &acc, &term);
            }
            acc
        } else {
            let base = vec![delta, FieldElem::ONE];
            let half = (k.order() as u128 - 1) / 2;
            sub(k, &pow_mod(k, &base, half, &g), &[FieldElem::ONE])
        };
        let h = gcd(k, &g, &probe);
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && Some(dh) < degree(&g) {
            let (other, _) = div_rem(k, &g, &h);
            split_linear(k, h, rng, out);
            split_linear(k, monic(k, &other), rng, out);
            return;
        }
    }
}
