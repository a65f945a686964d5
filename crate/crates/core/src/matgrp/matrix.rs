use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ffield::{FieldElem, FiniteField};

pub const MAX_DIM: usize = 8;

/// A `d x d` matrix stored row-major. The owning field is carried by the
/// [`MatrixSpace`] that does the arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareMatrix {
    d: usize,
    entries: SmallVec<[FieldElem; 16]>,
}

impl SquareMatrix {
    pub fn from_entries(d: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: entries.len(),
            });
        }
        Ok(SquareMatrix {
            d,
            entries: SmallVec::from_vec(entries),
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.entries[i * self.d + j] = x;
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [FieldElem] {
        &mut self.entries
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.d).map(|i| self.get(i, j)).collect()
    }
}

/// Arithmetic on `d x d` matrices over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSpace {
    field: FiniteField,
    d: usize,
}

impl MatrixSpace {
    pub fn new(field: FiniteField, d: usize) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::invalid(format!(
                "matrix dimension {d} outside 1..={MAX_DIM}"
            )));
        }
        Ok(MatrixSpace { field, d })
    }

    #[inline]
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn check(&self, m: &SquareMatrix) -> Result<()> {
        if m.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: m.d,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> SquareMatrix {
        SquareMatrix {
            d: self.d,
            entries: SmallVec::from_elem(FieldElem::ZERO, self.d * self.d),
        }
    }

    pub fn scalar(&self, x: FieldElem) -> SquareMatrix {
        let mut m = self.zero();
        for i in 0..self.d {
            m.set(i, i, x);
        }
        m
    }

    pub fn identity(&self) -> SquareMatrix {
        self.scalar(FieldElem::ONE)
    }

    pub fn diag(&self, xs: &[FieldElem]) -> SquareMatrix {
        let mut m = self.zero();
        for (i, &x) in xs.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Matrix with entries given as prime-field integers, row-major.
    pub fn from_ints(&self, xs: &[i64]) -> Result<SquareMatrix> {
        SquareMatrix::from_entries(self.d, xs.iter().map(|&x| self.field.from_int(x)).collect())
    }

    pub fn mul(&self, a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        let d = self.d;
        let k = &self.field;
        let mut out = self.zero();
        for i in 0..d {
            for j in 0..d {
                let mut acc = FieldElem::ZERO;
                for t in 0..d {
                    acc = k.add(acc, k.mul(a.entries[i * d + t], b.entries[t * d + j]));
                }
                out.entries[i * d + j] = acc;
            }
        }
        out
    }

    pub fn add(&self, a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        let mut out = a.clone();
        for (x, &y) in out.entries.iter_mut().zip(&b.entries) {
            *x = self.field.add(*x, y);
        }
        out
    }

    pub fn sub(&self, a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        let mut out = a.clone();
        for (x, &y) in out.entries.iter_mut().zip(&b.entries) {
            *x = self.field.sub(*x, y);
        }
        out
    }

    pub fn scale(&self, c: FieldElem, a: &SquareMatrix) -> SquareMatrix {
        let mut out = a.clone();
        for x in out.entries.iter_mut() {
            *x = self.field.mul(c, *x);
        }
        out
    }

    pub fn transpose(&self, a: &SquareMatrix) -> SquareMatrix {
        let mut out = a.clone();
        for i in 0..self.d {
            for j in 0..self.d {
                out.set(i, j, a.get(j, i));
            }
        }
        out
    }

    pub fn trace(&self, a: &SquareMatrix) -> FieldElem {
        (0..self.d).fold(FieldElem::ZERO, |acc, i| self.field.add(acc, a.get(i, i)))
    }

    pub fn det(&self, a: &SquareMatrix) -> FieldElem {
        let k = &self.field;
        let d = self.d;
        if d == 2 {
            return k.sub(
                k.mul(a.get(0, 0), a.get(1, 1)),
                k.mul(a.get(0, 1), a.get(1, 0)),
            );
        }
        let mut m = a.clone();
        let mut det = FieldElem::ONE;
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !m.get(r, col).is_zero()) else {
                return FieldElem::ZERO;
            };
            if piv != col {
                for j in 0..d {
                    let t = m.get(piv, j);
                    m.set(piv, j, m.get(col, j));
                    m.set(col, j, t);
                }
                det = k.neg(det);
            }
            let pv = m.get(col, col);
            det = k.mul(det, pv);
            let inv = k.inv(pv);
            for r in col + 1..d {
                let f = k.mul(m.get(r, col), inv);
                if f.is_zero() {
                    continue;
                }
                for j in col..d {
                    let v = k.sub(m.get(r, j), k.mul(f, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, a: &SquareMatrix) -> Result<SquareMatrix> {
        let k = &self.field;
        let d = self.d;
        if d == 2 {
            let det = self.det(a);
            if det.is_zero() {
                return Err(Error::Singular);
            }
            let inv = k.inv(det);
            let e = [
                k.mul(inv, a.get(1, 1)),
                k.neg(k.mul(inv, a.get(0, 1))),
                k.neg(k.mul(inv, a.get(1, 0))),
                k.mul(inv, a.get(0, 0)),
            ];
            return SquareMatrix::from_entries(2, e.to_vec());
        }
        let mut m = a.clone();
        let mut out = self.identity();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !m.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if piv != col {
                for j in 0..d {
                    let t = m.get(piv, j);
                    m.set(piv, j, m.get(col, j));
                    m.set(col, j, t);
                    let t = out.get(piv, j);
                    out.set(piv, j, out.get(col, j));
                    out.set(col, j, t);
                }
            }
            let inv = k.inv(m.get(col, col));
            for j in 0..d {
                m.set(col, j, k.mul(inv, m.get(col, j)));
                out.set(col, j, k.mul(inv, out.get(col, j)));
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let f = m.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..d {
                    m.set(r, j, k.sub(m.get(r, j), k.mul(f, m.get(col, j))));
                    out.set(r, j, k.sub(out.get(r, j), k.mul(f, out.get(col, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &SquareMatrix, mut e: u128) -> SquareMatrix {
        let mut acc = self.identity();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_identity(&self, a: &SquareMatrix) -> bool {
        self.is_scalar(a) && a.get(0, 0) == FieldElem::ONE
    }

    pub fn is_scalar(&self, a: &SquareMatrix) -> bool {
        let c = a.get(0, 0);
        (0..self.d)
            .all(|i| (0..self.d).all(|j| a.get(i, j) == if i == j { c } else { FieldElem::ZERO }))
    }

    /// `a^-1 b^-1 a b`; panics on singular input.
    pub fn commutator(&self, a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        let ai = self.inverse(a).expect("invertible");
        let bi = self.inverse(b).expect("invertible");
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: &SquareMatrix, g: &SquareMatrix) -> SquareMatrix {
        let gi = self.inverse(g).expect("invertible");
        self.mul(&self.mul(&gi, x), g)
    }

    /// Characteristic polynomial `det(tI - a)`, lowest coefficient first
    /// (monic, length `d + 1`). Division-free (Berkowitz).
    pub fn char_poly(&self, a: &SquareMatrix) -> Vec<FieldElem> {
        let k = &self.field;
        let d = self.d;
        // c holds the char poly of the leading r x r block, highest first
        let mut c: Vec<FieldElem> = vec![FieldElem::ONE];
        for r in 0..d {
            let arr = a.get(r, r);
            // Toeplitz column [1, -a_rr, -R C, -R A C, ...] of the bordered block
            let mut col = vec![FieldElem::ONE, k.neg(arr)];
            let mut v: Vec<FieldElem> = (0..r).map(|i| a.get(i, r)).collect();
            for _ in 0..r {
                let rv = (0..r).fold(FieldElem::ZERO, |acc, j| {
                    k.add(acc, k.mul(a.get(r, j), v[j]))
                });
                col.push(k.neg(rv));
                let next: Vec<FieldElem> = (0..r)
                    .map(|i| {
                        (0..r).fold(FieldElem::ZERO, |acc, j| {
                            k.add(acc, k.mul(a.get(i, j), v[j]))
                        })
                    })
                    .collect();
                v = next;
            }
            // new = T * c where T is lower-triangular Toeplitz with first column `col`
            let mut next = vec![FieldElem::ZERO; r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = FieldElem::ZERO;
                for (j, &cj) in c.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        acc = k.add(acc, k.mul(col[i - j], cj));
                    }
                }
                *slot = acc;
            }
            c = next;
        }
        c.reverse();
        c
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> SquareMatrix {
        SquareMatrix {
            d: self.d,
            entries: (0..self.d * self.d)
                .map(|_| self.field.random(rng))
                .collect(),
        }
    }

    /// Row-major text: rows separated by `;`, entries by whitespace, each
    /// entry a comma-separated coefficient list.
    pub fn format(&self, m: &SquareMatrix) -> String {
        let mut out = String::new();
        for i in 0..self.d {
            if i > 0 {
                out.push(';');
            }
            for j in 0..self.d {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self.field.format_elem(m.get(i, j)));
            }
        }
        out
    }

    pub fn parse(&self, s: &str) -> Result<SquareMatrix> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != self.d {
            return Err(Error::parse(format!("expected {} rows in {s:?}", self.d)));
        }
        let mut entries = Vec::with_capacity(self.d * self.d);
        for row in rows {
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != self.d {
                return Err(Error::parse(format!(
                    "expected {} entries in row {row:?}",
                    self.d
                )));
            }
            for c in cells {
                entries.push(self.field.parse_elem(c)?);
            }
        }
        SquareMatrix::from_entries(self.d, entries)
    }
}
