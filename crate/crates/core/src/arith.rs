//! Integer helpers: primality, factorisation, gcd/lcm.
//!
//! Factorisation works on `u128` because group orders such as
//! `|Sp4(q)|` overflow `u64` long before the field size cap does.

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a as u128, b as u128) as u64
}

#[inline]
fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

/// `a * b mod m` without overflow for any `m < 2^128`.
fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
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

/// Deterministic Miller–Rabin for `n < 3.3 * 10^24` and a strong probable-prime
/// test beyond that.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &SMALL_PRIMES {
        let sp = sp as u128;
        if n == sp {
            return true;
        }
        if n.is_multiple_of(sp) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &SMALL_PRIMES {
        let mut x = pow_mod(w as u128, d, n);
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

pub fn is_prime(n: u64) -> bool {
    is_prime_u128(n as u128)
}

/// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_brent(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u128, 2u128, 1u128);
        let mut r = 1u64;
        let mut q = 1u128;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = 64.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += steps;
            }
            r *= 2;
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
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime_u128(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorisation as sorted `(prime, exponent)` pairs. `factor(1)` is empty.
pub fn factor(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    for d in 2u128..1000 {
        if d * d > n {
            break;
        }
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
    }
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for pr in primes {
        match out.last_mut() {
            Some((last, e)) if *last == pr => *e += 1,
            _ => out.push((pr, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u128> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Multiplicative order of `q` modulo `n` (`gcd(q, n) = 1` required).
pub fn mult_order_mod(q: u64, n: u64) -> u32 {
    assert!(gcd_u64(q, n) == 1, "q and n must be coprime");
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = q % n;
    while x != 1 {
        x = ((x as u128 * q as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

/// `Phi_n(q)`, the `n`-th cyclotomic polynomial at `q`, or `None` on overflow.
pub fn cyclotomic_eval(n: u32, q: u128) -> Option<u128> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, over the integers
    fn poly(n: u32) -> Vec<i128> {
        let mut num = vec![0i128; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                num = exact_div(&num, &poly(d));
            }
        }
        num
    }
    fn exact_div(f: &[i128], g: &[i128]) -> Vec<i128> {
        let mut r = f.to_vec();
        let dg = g.len() - 1;
        let mut quot = vec![0i128; f.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = r[i + dg] / g[dg];
            quot[i] = c;
            for (j, &gj) in g.iter().enumerate() {
                r[i + j] -= c * gj;
            }
        }
        quot
    }
    let q = i128::try_from(q).ok()?;
    let mut acc: i128 = 0;
    for &c in poly(n).iter().rev() {
        acc = acc.checked_mul(q)?.checked_add(c)?;
    }
    u128::try_from(acc).ok()
}
