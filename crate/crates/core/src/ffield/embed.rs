use super::{poly, FieldElem, FiniteField};
use crate::error::{Error, Result};

/// The embedding `GF(p^b) -> GF(p^a)` sending the generator `x` of the
/// smaller field to the least-index root of its modulus in the larger one.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FiniteField,
    sup: FiniteField,
    image_of_x: FieldElem,
    /// Row-reduced `F_p` basis of the image, as `(pivot column, coefficients
    /// in sup, combination of sub basis vectors)`.
    echelon: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl Embedding {
    pub(super) fn new(sub: &FiniteField, sup: &FiniteField) -> Result<Self> {
        if sub.p() != sup.p() || !sup.a().is_multiple_of(sub.a()) {
            return Err(Error::invalid(format!("{sub} is not a subfield of {sup}")));
        }
        let modulus: poly::Poly = sub
            .modulus()
            .iter()
            .map(|&c| sup.from_int(c as i64))
            .collect();
        let image_of_x = *poly::roots(sup, &modulus)
            .first()
            .expect("an irreducible of degree b | a splits in GF(p^a)");

        let p = sup.p();
        let b = sub.a() as usize;
        let mut echelon: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
        let mut power = FieldElem::ONE;
        for i in 0..b {
            let mut row = sup.coeffs(power);
            let mut comb = vec![0u64; b];
            comb[i] = 1;
            reduce(&mut row, &mut comb, &echelon, p);
            let pivot = row
                .iter()
                .position(|&c| c != 0)
                .expect("powers of a generator are independent");
            let inv = inv_mod(row[pivot], p);
            row.iter_mut().for_each(|c| *c = *c * inv % p);
            comb.iter_mut().for_each(|c| *c = *c * inv % p);
            echelon.push((pivot, row, comb));
            power = sup.mul(power, image_of_x);
        }
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image_of_x,
            echelon,
        })
    }

    pub fn image_of_generator(&self) -> FieldElem {
        self.image_of_x
    }

    pub fn apply(&self, x: FieldElem) -> FieldElem {
        let k = &self.sup;
        self.sub
            .coeffs(x)
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| {
                k.add(k.mul(acc, self.image_of_x), k.from_int(c as i64))
            })
    }

    /// Inverse of [`apply`](Self::apply) on its image; `None` outside it.
    pub fn pull_back(&self, y: FieldElem) -> Option<FieldElem> {
        let p = self.sup.p();
        let mut row = self.sup.coeffs(y);
        let mut comb = vec![0u64; self.sub.a() as usize];
        reduce(&mut row, &mut comb, &self.echelon, p);
        if row.iter().any(|&c| c != 0) {
            return None;
        }
        // row = y + comb . basis is zero, so y = -comb . basis
        let coeffs: Vec<i64> = comb.iter().map(|&c| ((p - c) % p) as i64).collect();
        self.sub.from_coeffs(&coeffs).ok()
    }
}

fn reduce(row: &mut [u64], comb: &mut [u64], echelon: &[(usize, Vec<u64>, Vec<u64>)], p: u64) {
    for (pivot, erow, ecomb) in echelon {
        let c = row[*pivot];
        if c == 0 {
            continue;
        }
        for (r, e) in row.iter_mut().zip(erow) {
            *r = (*r + p - c * e % p) % p;
        }
        for (r, e) in comb.iter_mut().zip(ecomb) {
            *r = (*r + p - c * e % p) % p;
        }
    }
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}
