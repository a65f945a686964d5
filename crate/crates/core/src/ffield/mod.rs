//! Exact arithmetic in finite fields `GF(p^a)`.
//!
//! An element is stored as its coefficient vector over `GF(p)` with respect to
//! the polynomial basis `1, x, ..., x^(a-1)`, packed base `p` into a `u64`
//! (so the index of `c_0 + c_1 x + ...` is `c_0 + c_1 p + ...`). The packed
//! form is canonical, which makes elements directly hashable and gives every
//! field a fixed enumeration order `0..q`.
//!
//! The modulus is the least monic irreducible polynomial of degree `a` when
//! its non-leading coefficients `(c_{a-1}, ..., c_0)` are read as a base-`p`
//! number. Equal `(p, a)` therefore always produce the same field.

mod embed;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::arith;
use crate::error::{Error, Result};

pub use embed::Embedding;

/// Fields with at most this many elements get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Default cap on the field order, `2^61`.
pub const DEFAULT_CAP_BITS: u32 = 61;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Packed coefficient index in `0..q`.
    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// `exp[i] = g^i`, doubled in length so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `u32::MAX` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

enum Arith {
    Prime,
    Tables(Tables),
    Poly,
}

struct Inner {
    p: u64,
    a: u32,
    q: u64,
    modulus: Vec<u64>,
    arith: Arith,
    generator: FieldElem,
}

/// A finite field `GF(p^a)`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        // construction is deterministic in (p, a)
        self.p() == other.p() && self.a() == other.a()
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl FiniteField {
    pub fn new(p: u64, a: u32) -> Result<Self> {
        Self::with_cap(p, a, DEFAULT_CAP_BITS)
    }

    /// Builds `GF(p^a)` provided `p^a < 2^cap_bits`.
    pub fn with_cap(p: u64, a: u32, cap_bits: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::ZeroDegree);
        }
        let cap = 1u128 << cap_bits.min(63);
        let q = (p as u128)
            .checked_pow(a)
            .filter(|&q| q < cap)
            .ok_or(Error::SizeCap { p, a, cap_bits })? as u64;

        if a == 1 {
            let mut inner = Inner {
                p,
                a,
                q,
                modulus: vec![0, 1],
                arith: Arith::Prime,
                generator: FieldElem::ONE,
            };
            inner.generator = find_generator(&inner);
            return Ok(FiniteField {
                inner: Arc::new(inner),
            });
        }

        let modulus = least_irreducible(p, a)?;
        let mut inner = Inner {
            p,
            a,
            q,
            modulus,
            arith: Arith::Poly,
            generator: FieldElem::ONE,
        };
        inner.generator = find_generator(&inner);
        if q <= TABLE_LIMIT {
            inner.arith = Arith::Tables(build_tables(&inner));
        }
        Ok(FiniteField {
            inner: Arc::new(inner),
        })
    }

    /// Parses `GF(p^a)`, `GF(p)` or a bare prime power such as `9`.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix("GF(")
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(t);
        let (p, a) = match body.split_once('^') {
            Some((p, a)) => (
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(format!("bad prime in {s:?}")))?,
                a.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(format!("bad degree in {s:?}")))?,
            ),
            None => {
                let q = body
                    .parse::<u64>()
                    .map_err(|_| Error::parse(format!("bad field literal {s:?}")))?;
                prime_power(q).ok_or_else(|| Error::parse(format!("{q} is not a prime power")))?
            }
        };
        Self::new(p, a)
    }

    pub fn literal(&self) -> String {
        if self.a() == 1 {
            format!("GF({})", self.p())
        } else {
            format!("GF({}^{})", self.p(), self.a())
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.inner.p
    }

    #[inline]
    pub fn a(&self) -> u32 {
        self.inner.a
    }

    /// Number of elements `q = p^a`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Monic modulus, lowest coefficient first (length `a + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// A generator of the multiplicative group (the one with least index).
    pub fn primitive_element(&self) -> FieldElem {
        self.inner.generator
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem((n as i128).rem_euclid(self.p() as i128) as u64)
    }

    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index < self.order() {
            Ok(FieldElem(index))
        } else {
            Err(Error::BadElement(format!(
                "index {index} outside {}",
                self.literal()
            )))
        }
    }

    /// The element `sum c_i x^i`; shorter lists are zero padded, entries are
    /// reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem> {
        if coeffs.len() > self.a() as usize {
            return Err(Error::BadElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.a()
            )));
        }
        let p = self.p() as i128;
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p() + (c as i128).rem_euclid(p) as u64;
        }
        Ok(FieldElem(idx))
    }

    /// Coefficient vector of length `a`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        let mut v = x.0;
        (0..self.a())
            .map(|_| {
                let c = v % self.p();
                v /= self.p();
                c
            })
            .collect()
    }

    /// Comma-separated coefficient list, e.g. `1,0,2`.
    pub fn format_elem(&self, x: FieldElem) -> String {
        let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let coeffs = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::BadElement(format!("{s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order()).map(FieldElem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen_range(0..self.order()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen_range(1..self.order()))
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let inner = &*self.inner;
        if inner.p == 2 {
            return FieldElem(x.0 ^ y.0);
        }
        match &inner.arith {
            Arith::Prime => {
                let s = x.0 + y.0;
                FieldElem(if s >= inner.p { s - inner.p } else { s })
            }
            Arith::Tables(t) => {
                if x.0 == 0 {
                    return y;
                }
                if y.0 == 0 {
                    return x;
                }
                let n = inner.q - 1;
                let lx = t.log[x.0 as usize] as u64;
                let ly = t.log[y.0 as usize] as u64;
                let d = (ly + n - lx) % n;
                match t.zech[d as usize] {
                    u32::MAX => FieldElem::ZERO,
                    z => FieldElem(t.exp[(lx + z as u64) as usize] as u64),
                }
            }
            Arith::Poly => poly_add(inner, x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        let inner = &*self.inner;
        if inner.p == 2 || x.0 == 0 {
            return x;
        }
        match &inner.arith {
            Arith::Prime => FieldElem(inner.p - x.0),
            Arith::Tables(t) => {
                let half = (inner.q - 1) / 2;
                FieldElem(t.exp[(t.log[x.0 as usize] as u64 + half) as usize] as u64)
            }
            Arith::Poly => {
                let p = inner.p;
                let mut v = x.0;
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..inner.a {
                    let c = v % p;
                    v /= p;
                    out += ((p - c) % p) * place;
                    place = place.wrapping_mul(p);
                }
                FieldElem(out)
            }
        }
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Prime => FieldElem(((x.0 as u128 * y.0 as u128) % inner.p as u128) as u64),
            Arith::Tables(t) => {
                if x.0 == 0 || y.0 == 0 {
                    return FieldElem::ZERO;
                }
                let s = t.log[x.0 as usize] + t.log[y.0 as usize];
                FieldElem(t.exp[s as usize] as u64)
            }
            Arith::Poly => poly_mul(inner, x, y),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, x: FieldElem) -> FieldElem {
        assert!(!x.is_zero(), "inverse of zero in {}", self.literal());
        match &self.inner.arith {
            Arith::Tables(t) => {
                let n = self.order() - 1;
                FieldElem(t.exp[(n - t.log[x.0 as usize] as u64) as usize] as u64)
            }
            _ => self.pow(x, self.order() as u128 - 2),
        }
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.mul(x, self.inv(y))
    }

    pub fn pow(&self, x: FieldElem, mut e: u128) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if x.is_zero() {
            return FieldElem::ZERO;
        }
        let n = self.order() as u128 - 1;
        e %= n;
        if let Arith::Tables(t) = &self.inner.arith {
            let l = (t.log[x.0 as usize] as u128 * e % n) as usize;
            return FieldElem(t.exp[l] as u64);
        }
        let mut acc = FieldElem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        if self.a() == 1 {
            return x;
        }
        self.pow(x, self.p() as u128)
    }

    /// Least `b` with `x` in `GF(p^b)`: the length of the Frobenius orbit of `x`.
    pub fn minimal_degree(&self, x: FieldElem) -> u32 {
        let mut y = self.frobenius(x);
        let mut b = 1;
        while y != x {
            y = self.frobenius(y);
            b += 1;
        }
        b
    }

    /// Degree over `GF(p)` of the subfield generated by `xs` (1 for the empty set).
    pub fn field_generated<I: IntoIterator<Item = FieldElem>>(&self, xs: I) -> u32 {
        let mut deg = 1u128;
        for x in xs {
            deg = arith::lcm(deg, self.minimal_degree(x) as u128);
            if deg == self.a() as u128 {
                break;
            }
        }
        deg as u32
    }

    /// Whether `x` lies in the subfield `GF(p^b)`.
    pub fn in_subfield(&self, x: FieldElem, b: u32) -> bool {
        self.a().is_multiple_of(b) && self.pow(x, (self.p() as u128).pow(b)) == x
    }

    /// Whether `x` is a square in this field.
    pub fn is_square(&self, x: FieldElem) -> bool {
        if x.is_zero() || self.p() == 2 {
            return true;
        }
        self.pow(x, (self.order() as u128 - 1) / 2) == FieldElem::ONE
    }

    /// The canonical embedding of `sub` (which must be `GF(p^b)` with `b | a`).
    pub fn embedding_of(&self, sub: &FiniteField) -> Result<Embedding> {
        Embedding::new(sub, self)
    }
}

/// Splits a prime power `q` as `(p, a)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = arith::factor(q as u128);
    match f.as_slice() {
        [(p, a)] => Some((*p as u64, *a)),
        _ => None,
    }
}

fn poly_add(inner: &Inner, x: FieldElem, y: FieldElem) -> FieldElem {
    let p = inner.p;
    let (mut u, mut v) = (x.0, y.0);
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..inner.a {
        let s = (u % p + v % p) % p;
        u /= p;
        v /= p;
        out += s * place;
        place = place.wrapping_mul(p);
    }
    FieldElem(out)
}

fn poly_mul(inner: &Inner, x: FieldElem, y: FieldElem) -> FieldElem {
    let p = inner.p;
    let a = inner.a as usize;
    let mut xs = [0u64; 64];
    let mut ys = [0u64; 64];
    let (mut u, mut v) = (x.0, y.0);
    for i in 0..a {
        xs[i] = u % p;
        ys[i] = v % p;
        u /= p;
        v /= p;
    }
    let mut prod = [0u64; 128];
    for i in 0..a {
        if xs[i] == 0 {
            continue;
        }
        for j in 0..a {
            prod[i + j] = (prod[i + j] + xs[i] * ys[j] % p) % p;
        }
    }
    let m = &inner.modulus;
    for k in (a..2 * a - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for j in 0..a {
            let t = c * m[j] % p;
            prod[k - a + j] = (prod[k - a + j] + p - t) % p;
        }
    }
    let mut out = 0u64;
    for i in (0..a).rev() {
        out = out * p + prod[i];
    }
    FieldElem(out)
}

fn raw_pow(inner: &Inner, x: FieldElem, mut e: u128) -> FieldElem {
    let mul = |a: FieldElem, b: FieldElem| match inner.arith {
        Arith::Prime => FieldElem(((a.0 as u128 * b.0 as u128) % inner.p as u128) as u64),
        _ => poly_mul(inner, a, b),
    };
    let mut acc = FieldElem::ONE;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn find_generator(inner: &Inner) -> FieldElem {
    let n = inner.q as u128 - 1;
    if n == 1 {
        return FieldElem::ONE;
    }
    let primes = arith::prime_divisors(n);
    (1..inner.q)
        .map(FieldElem)
        .find(|&g| {
            primes
                .iter()
                .all(|&r| raw_pow(inner, g, n / r) != FieldElem::ONE)
        })
        .expect("multiplicative group of a finite field is cyclic")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as usize;
    let n = q - 1;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![0u32; q];
    let mut x = FieldElem::ONE;
    for i in 0..n {
        exp[i] = x.0 as u32;
        exp[i + n] = x.0 as u32;
        log[x.0 as usize] = i as u32;
        x = poly_mul(inner, x, inner.generator);
    }
    let zech = (0..n)
        .map(|k| {
            let s = poly_add(inner, FieldElem::ONE, FieldElem(exp[k] as u64));
            if s.is_zero() {
                u32::MAX
            } else {
                log[s.0 as usize]
            }
        })
        .collect();
    Tables { exp, log, zech }
}

/// Least monic irreducible of degree `a` over `GF(p)` in the documented order.
fn least_irreducible(p: u64, a: u32) -> Result<Vec<u64>> {
    let fp = FiniteField::new(p, 1)?;
    let span = p.pow(a);
    for v in 0..span {
        let mut coeffs: Vec<u64> = Vec::with_capacity(a as usize + 1);
        let mut t = v;
        for _ in 0..a {
            coeffs.push(t % p);
            t /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let f: poly::Poly = coeffs.iter().map(|&c| FieldElem(c)).collect();
        if poly::is_irreducible(&fp, &f) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
