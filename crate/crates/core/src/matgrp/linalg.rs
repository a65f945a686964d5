//! Vector-space routines over a finite field: incremental echelon bases,
//! kernels and affine solution sets.

use crate::ffield::{FieldElem, FiniteField};

/// A row-reduced basis that grows one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FiniteField,
    len: usize,
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl Echelon {
    pub fn new(field: FiniteField, len: usize) -> Self {
        Echelon {
            field,
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    fn reduce(&self, v: &mut [FieldElem]) {
        let k = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = k.sub(*x, k.mul(c, y));
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let k = &self.field;
        let inv = k.inv(v[pivot]);
        v.iter_mut().for_each(|x| *x = k.mul(*x, inv));
        // keep rows fully reduced so `reduce` is a single pass
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = k.sub(*x, k.mul(c, y));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }

    pub fn basis(&self) -> impl Iterator<Item = &[FieldElem]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(k: &FiniteField, rows: &mut Vec<Vec<FieldElem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = k.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let c = row[col];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = k.sub(*x, k.mul(c, y));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solutions of `a x = b` for `x` of length `n`: a particular solution and a
/// kernel basis, or `None` when inconsistent.
pub fn solve_affine(
    k: &FiniteField,
    a: &[Vec<FieldElem>],
    b: &[FieldElem],
    n: usize,
) -> Option<(Vec<FieldElem>, Vec<Vec<FieldElem>>)> {
    let mut rows: Vec<Vec<FieldElem>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(k, &mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![FieldElem::ZERO; n];
    for (row, &pc) in rows.iter().zip(&pivots) {
        particular[pc] = row[n];
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![FieldElem::ZERO; n];
            v[f] = FieldElem::ONE;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = k.neg(row[f]);
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

pub fn kernel(k: &FiniteField, a: &[Vec<FieldElem>], n: usize) -> Vec<Vec<FieldElem>> {
    let zeros = vec![FieldElem::ZERO; a.len()];
    solve_affine(k, a, &zeros, n)
        .expect("homogeneous systems are consistent")
        .1
}

pub fn dot(k: &FiniteField, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
    u.iter()
        .zip(v)
        .fold(FieldElem::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
}
