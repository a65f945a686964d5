//! Conjugacy classes of a given order in groups too large to enumerate.
//!
//! A semisimple class is determined by its multiset of eigenvalues, which we
//! write as exponents of a primitive `N`-th root of unity `zeta` in an
//! extension of `GF(q)`. Frobenius acts on exponents by multiplication by
//! `q`; classes of the simply connected group correspond to Frobenius-stable
//! multisets of determinant one (closed under inversion for `Sp4`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classes::ClassSpec;
use super::group::{Family, GroupSpec};
use super::linalg::{self, Echelon};
use super::matrix::SquareMatrix;
use crate::arith;
use crate::error::{Error, Result};
use crate::ffield::{poly, FieldElem, FiniteField};

pub(super) fn classes_of_order(spec: &GroupSpec, r: u128) -> Result<Vec<ClassSpec>> {
    let p = spec.field().p() as u128;
    if r.is_multiple_of(p) {
        if spec.family() == Family::SL2 {
            return sl2_unipotent(spec, r);
        }
        return Err(Error::Unsupported(format!(
            "classes of order {r} in {spec}: order divisible by the characteristic and the group is too large to enumerate"
        )));
    }
    let z = if spec.quotient() {
        spec.center().len() as u128
    } else {
        1
    };
    let n_big = r.checked_mul(z).filter(|&n| n <= 1 << 24).ok_or_else(|| {
        Error::Unsupported(format!("classes of order {r} in {spec}: order too large"))
    })? as u64;
    semisimple_classes(spec, r, n_big)
}

fn checked_prod(xs: impl IntoIterator<Item = u128>) -> Result<u128> {
    xs.into_iter()
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .ok_or(Error::Overflow { cap: u128::MAX })
}

fn qpow(q: u128, e: u32) -> Result<u128> {
    q.checked_pow(e).ok_or(Error::Overflow { cap: u128::MAX })
}

pub(crate) fn gl_order(m: u32, q: u128) -> Result<u128> {
    let mut xs = vec![qpow(q, m * (m - 1) / 2)?];
    for i in 1..=m {
        xs.push(qpow(q, i)? - 1);
    }
    checked_prod(xs)
}

pub(crate) fn gu_order(m: u32, q: u128) -> Result<u128> {
    let mut xs = vec![qpow(q, m * (m - 1) / 2)?];
    for i in 1..=m {
        let qi = qpow(q, i)?;
        xs.push(if i % 2 == 0 { qi - 1 } else { qi + 1 });
    }
    checked_prod(xs)
}

pub(crate) fn sp_order(two_m: u32, q: u128) -> Result<u128> {
    let m = two_m / 2;
    let mut xs = vec![qpow(q, m * m)?];
    for i in 1..=m {
        xs.push(qpow(q, 2 * i)? - 1);
    }
    checked_prod(xs)
}

/// Orbits of `e -> q e` on `Z/N`, each sorted, listed by least element.
fn frobenius_orbits(q: u64, n: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for e in 0..n {
        if seen[e as usize] {
            continue;
        }
        let mut orb = vec![e];
        seen[e as usize] = true;
        let mut x = ((e as u128 * q as u128) % n as u128) as u64;
        while x != e {
            seen[x as usize] = true;
            orb.push(x);
            x = ((x as u128 * q as u128) % n as u128) as u64;
        }
        if orb.len() <= max_len {
            orb.sort_unstable();
            out.push(orb);
        }
    }
    out
}

/// Multisets of orbits (index, multiplicity) of total size `d`.
fn orbit_multisets(orbits: &[Vec<u64>], d: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        orbits: &[Vec<u64>],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..orbits.len() {
            let k = orbits[i].len();
            let mut m = 1;
            while m * k <= left {
                cur.push((i, m));
                go(orbits, i + 1, left - m * k, cur, out);
                cur.pop();
                m += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(orbits, 0, d, &mut Vec::new(), &mut out);
    out
}

fn exponents(orbits: &[Vec<u64>], ms: &[(usize, usize)]) -> Vec<u64> {
    let mut v: Vec<u64> = ms
        .iter()
        .flat_map(|&(i, m)| std::iter::repeat_n(orbits[i].iter().copied(), m).flatten())
        .collect();
    v.sort_unstable();
    v
}

fn semisimple_classes(spec: &GroupSpec, r: u128, n: u64) -> Result<Vec<ClassSpec>> {
    let k = spec.field();
    let q = k.order();
    let d = spec.dim();
    let symplectic = spec.family().is_symplectic();
    let zsize = if spec.quotient() {
        spec.center().len() as u64
    } else {
        1
    };

    let orbits = frobenius_orbits(q, n, d);
    let orbit_of = |e: u64| orbits.iter().position(|o| o.binary_search(&e).is_ok());
    let mut found: Vec<(Vec<u64>, Vec<(usize, usize)>, u64)> = Vec::new();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    for ms in orbit_multisets(&orbits, d) {
        let ev = exponents(&orbits, &ms);
        if ev.iter().sum::<u64>() % n != 0 {
            continue;
        }
        if symplectic {
            let mut neg: Vec<u64> = ev.iter().map(|&e| (n - e) % n).collect();
            neg.sort_unstable();
            if neg != ev {
                continue;
            }
        }
        // order modulo the centre: least m with all m e_i equal
        let ord = arith::divisors(n)
            .into_iter()
            .find(|&m| {
                let c = ev[0] * m % n;
                ev.iter().all(|&e| e * m % n == c) && (spec.quotient() || c == 0)
            })
            .expect("n itself works");
        if ord as u128 != r {
            continue;
        }
        // identify multisets differing by a central scalar
        let shifts: Vec<u64> = (0..zsize).map(|j| j * (n / zsize)).collect();
        let images: Vec<Vec<u64>> = shifts
            .iter()
            .map(|&t| {
                let mut v: Vec<u64> = ev.iter().map(|&e| (e + t) % n).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let canon = images.iter().min().expect("nonempty").clone();
        if seen.contains(&canon) {
            continue;
        }
        seen.push(canon);
        let mut distinct = images.clone();
        distinct.sort();
        distinct.dedup();
        found.push((ev, ms, distinct.len() as u64));
    }
    if found.is_empty() {
        return Ok(Vec::new());
    }

    let ext_deg = arith::mult_order_mod(q, n);
    let ext = FiniteField::new(k.p(), k.a() * ext_deg).map_err(|_| {
        Error::Unsupported(format!(
            "classes of order {r} in {spec}: eigenvalues lie in a field above the size cap"
        ))
    })?;
    let emb = ext.embedding_of(k)?;
    let zeta = ext.pow(ext.primitive_element(), ((ext.order() - 1) / n) as u128);

    let group_order = spec.lift_order()?;
    let qq = q as u128;
    let mut out = Vec::new();
    for (idx, (ev, ms, e)) in found.into_iter().enumerate() {
        // centralizer order in the simply connected group
        let mut cent = 1u128;
        let mut done = vec![false; ms.len()];
        for (j, &(oi, m)) in ms.iter().enumerate() {
            if done[j] {
                continue;
            }
            done[j] = true;
            let orb = &orbits[oi];
            let kk = orb.len() as u32;
            let factor = if !symplectic {
                gl_order(m as u32, qpow(qq, kk)?)?
            } else if orb == &[0] || (n.is_multiple_of(2) && orb == &[n / 2]) {
                sp_order(m as u32, qq)?
            } else {
                let neg = orbit_of((n - orb[0]) % n).expect("symmetric multiset");
                if neg == oi {
                    gu_order(m as u32, qpow(qq, kk / 2)?)?
                } else {
                    let jn = ms
                        .iter()
                        .position(|&(o, _)| o == neg)
                        .expect("symmetric multiset");
                    done[jn] = true;
                    gl_order(m as u32, qpow(qq, kk)?)?
                }
            };
            cent = cent
                .checked_mul(factor)
                .ok_or(Error::Overflow { cap: u128::MAX })?;
        }
        if !symplectic {
            cent /= qq - 1;
        }
        let size = if spec.quotient() {
            group_order / cent * e as u128 / spec.center().len() as u128
        } else {
            group_order / cent
        };

        let mut rep = block_diagonal(spec, &orbits, &ms, &ext, &emb_pull(&emb), zeta)?;
        if symplectic {
            rep = into_standard_form(spec, &rep)?;
        }
        let label = format!(
            "{r}ss{}[{}/{n}]",
            idx + 1,
            ev.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let cls = ClassSpec::new(spec.clone(), rep, label)?;
        if cls.order != r {
            return Err(Error::invalid(format!(
                "constructed class {} has order {}",
                cls.label, cls.order
            )));
        }
        out.push(cls.with_size(size));
    }
    Ok(out)
}

fn emb_pull(emb: &crate::ffield::Embedding) -> impl Fn(FieldElem) -> FieldElem + '_ {
    move |y| {
        emb.pull_back(y)
            .expect("minimal polynomial coefficients lie in GF(q)")
    }
}

fn block_diagonal(
    spec: &GroupSpec,
    orbits: &[Vec<u64>],
    ms: &[(usize, usize)],
    ext: &FiniteField,
    pull: &impl Fn(FieldElem) -> FieldElem,
    zeta: FieldElem,
) -> Result<SquareMatrix> {
    let k = spec.field();
    let mut m = spec.space().zero();
    let mut at = 0;
    for &(oi, mult) in ms {
        // minimal polynomial of zeta^e over GF(q)
        let mut f: poly::Poly = vec![FieldElem::ONE];
        for &e in &orbits[oi] {
            f = poly::mul(
                ext,
                &f,
                &[ext.neg(ext.pow(zeta, e as u128)), FieldElem::ONE],
            );
        }
        let coeffs: Vec<FieldElem> = f.iter().map(|&c| pull(c)).collect();
        let deg = orbits[oi].len();
        for _ in 0..mult {
            for i in 0..deg {
                if i + 1 < deg {
                    m.set(at + i + 1, at + i, k.one());
                }
                m.set(at + i, at + deg - 1, k.neg(coeffs[i]));
            }
            at += deg;
        }
    }
    Ok(m)
}

/// Conjugates a matrix preserving some nondegenerate alternating form into
/// one preserving `J`.
fn into_standard_form(spec: &GroupSpec, m: &SquareMatrix) -> Result<SquareMatrix> {
    let k = spec.field();
    let sp = spec.space();
    let d = spec.dim();
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    // (M^T B M - B)_{ab} is linear in the entries B_ij, i < j
    let mut rows = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let row: Vec<FieldElem> = pairs
                .iter()
                .map(|&(i, j)| {
                    let mut c = k.sub(
                        k.mul(m.get(i, a), m.get(j, b)),
                        k.mul(m.get(j, a), m.get(i, b)),
                    );
                    if (i, j) == (a, b) {
                        c = k.sub(c, k.one());
                    } else if (j, i) == (a, b) {
                        c = k.add(c, k.one());
                    }
                    c
                })
                .collect();
            rows.push(row);
        }
    }
    let ker = linalg::kernel(k, &rows, pairs.len());
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0_4d);
    let mut form = None;
    for _ in 0..10_000 {
        let mut bf = sp.zero();
        for v in &ker {
            let c = k.random(&mut rng);
            for (t, &(i, j)) in pairs.iter().enumerate() {
                let x = k.add(bf.get(i, j), k.mul(c, v[t]));
                bf.set(i, j, x);
                bf.set(j, i, k.neg(x));
            }
        }
        if !sp.det(&bf).is_zero() {
            form = Some(bf);
            break;
        }
    }
    let bf = form.ok_or_else(|| Error::invalid("no invariant symplectic form found"))?;
    let b = |u: &[FieldElem], v: &[FieldElem]| -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for i in 0..d {
            for j in 0..d {
                acc = k.add(acc, k.mul(u[i], k.mul(bf.get(i, j), v[j])));
            }
        }
        acc
    };
    // symplectic basis with B(f_i, f_{d-1-i}) = 1 for i < d/2
    let mut basis: Vec<Vec<FieldElem>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { k.one() } else { k.zero() })
                .collect()
        })
        .collect();
    let mut f = vec![Vec::new(); d];
    for i in 0..d / 2 {
        let f0 = basis[0].clone();
        let w = basis
            .iter()
            .find(|w| !b(&f0, w).is_zero())
            .ok_or_else(|| Error::invalid("degenerate form"))?
            .clone();
        let s = k.inv(b(&f0, &w));
        let f1: Vec<FieldElem> = w.iter().map(|&x| k.mul(s, x)).collect();
        let mut next = Echelon::new(k.clone(), d);
        let mut rest = Vec::new();
        for v in &basis {
            let beta = b(v, &f0);
            let alpha = k.neg(b(v, &f1));
            let pv: Vec<FieldElem> = (0..d)
                .map(|t| k.add(v[t], k.add(k.mul(alpha, f0[t]), k.mul(beta, f1[t]))))
                .collect();
            if next.insert(&pv) {
                rest.push(pv);
            }
        }
        f[i] = f0;
        f[d - 1 - i] = f1;
        basis = rest;
    }
    let mut pm = sp.zero();
    for (col, v) in f.iter().enumerate() {
        for row in 0..d {
            pm.set(row, col, v[row]);
        }
    }
    let pinv = sp.inverse(&pm)?;
    Ok(sp.mul(&sp.mul(&pinv, m), &pm))
}

/// Non-semisimple classes of `SL2(q)` (elements `+-u`, `u` a nontrivial
/// unipotent) of order `r`.
fn sl2_unipotent(spec: &GroupSpec, r: u128) -> Result<Vec<ClassSpec>> {
    let k = spec.field();
    let p = k.p() as u128;
    let q = k.order() as u128;
    let sp = spec.space();
    let minus = !spec.quotient() && p != 2 && r == 2 * p;
    if r != p && !minus {
        return Ok(Vec::new());
    }
    let sign = if minus { k.from_int(-1) } else { k.one() };
    let mut params = vec![k.one()];
    if p != 2 {
        let nonsquare = k.primitive_element();
        params.push(nonsquare);
    }
    let size = if p == 2 { q * q - 1 } else { (q * q - 1) / 2 };
    params
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut m = sp.scalar(sign);
            m.set(0, 1, k.mul(sign, t));
            Ok(ClassSpec::new(spec.clone(), m, format!("{r}u{}", i + 1))?.with_size(size))
        })
        .collect()
}
