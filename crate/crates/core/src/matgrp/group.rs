use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use super::matrix::{MatrixSpace, SquareMatrix};
use crate::arith;
use crate::error::{Error, Result};
use crate::ffield::{FieldElem, FiniteField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SL2,
    SL3,
    Sp4,
}

impl Family {
    pub fn dim(self) -> usize {
        match self {
            Family::SL2 => 2,
            Family::SL3 => 3,
            Family::Sp4 => 4,
        }
    }

    pub fn is_symplectic(self) -> bool {
        self == Family::Sp4
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::SL2 => "SL2",
            Family::SL3 => "SL3",
            Family::Sp4 => "Sp4",
        }
    }

    /// Parses `SL2`, `PSL2`, `SL3`, `PSL3`, `Sp4`, `PSp4` (case-insensitive);
    /// the flag is true for the central quotients.
    pub fn parse(name: &str) -> Result<(Family, bool)> {
        let upper = name.trim().to_ascii_uppercase();
        let (quotient, base) = match upper.strip_prefix('P') {
            Some(rest) if rest.starts_with("SL") || rest.starts_with("SP") => (true, rest),
            _ => (false, upper.as_str()),
        };
        let fam = match base {
            "SL2" => Family::SL2,
            "SL3" => Family::SL3,
            "SP4" => Family::Sp4,
            _ => return Err(Error::invalid(format!("unknown group family {name:?}"))),
        };
        Ok((fam, quotient))
    }
}

/// Packed entry indices of a matrix, used as a hash key.
pub type MatKey = SmallVec<[u64; 2]>;

/// One of the supported groups `G(q)`, optionally modulo its centre.
#[derive(Clone)]
pub struct GroupSpec {
    inner: Arc<SpecInner>,
}

struct SpecInner {
    family: Family,
    quotient: bool,
    space: MatrixSpace,
    form: Option<SquareMatrix>,
    center: Vec<FieldElem>,
    bits: u32,
    per_word: usize,
    order_factors: OnceLock<Option<Vec<(u128, u32)>>>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.family() == other.family()
            && self.quotient() == other.quotient()
            && self.field() == other.field()
    }
}

impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.field().order())
    }
}

impl GroupSpec {
    pub fn new(family: Family, field: FiniteField, quotient: bool) -> Self {
        let d = family.dim();
        let space = MatrixSpace::new(field.clone(), d).expect("family dimensions are in range");
        let form = family.is_symplectic().then(|| {
            let mut j = space.zero();
            for i in 0..d {
                let v = if i < d / 2 {
                    field.one()
                } else {
                    field.from_int(-1)
                };
                j.set(i, d - 1 - i, v);
            }
            j
        });
        let center: Vec<FieldElem> = if family.is_symplectic() {
            let mut c = vec![field.one(), field.from_int(-1)];
            c.dedup();
            c
        } else {
            let g = arith::gcd_u64(d as u64, field.order() - 1);
            let zeta = field.pow(field.primitive_element(), ((field.order() - 1) / g) as u128);
            (0..g).map(|i| field.pow(zeta, i as u128)).collect()
        };
        let bits = (64 - (field.order() - 1).leading_zeros()).max(1);
        let per_word = (64 / bits) as usize;
        GroupSpec {
            inner: Arc::new(SpecInner {
                family,
                quotient,
                space,
                form,
                center,
                bits,
                per_word,
                order_factors: OnceLock::new(),
            }),
        }
    }

    /// `name` as accepted by [`Family::parse`].
    pub fn parse(name: &str, field: FiniteField) -> Result<Self> {
        let (fam, quotient) = Family::parse(name)?;
        Ok(GroupSpec::new(fam, field, quotient))
    }

    /// `name` over the field of order `q`.
    pub fn from_q(name: &str, q: u64) -> Result<Self> {
        let (p, a) = crate::ffield::prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        GroupSpec::parse(name, FiniteField::new(p, a)?)
    }

    pub fn name(&self) -> String {
        format!(
            "{}{}",
            if self.quotient() { "P" } else { "" },
            self.family().name()
        )
    }

    pub fn family(&self) -> Family {
        self.inner.family
    }

    pub fn quotient(&self) -> bool {
        self.inner.quotient
    }

    pub fn field(&self) -> &FiniteField {
        self.inner.space.field()
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.inner.space
    }

    pub fn dim(&self) -> usize {
        self.inner.family.dim()
    }

    /// The alternating form `J` preserved by `Sp4`.
    pub fn form(&self) -> Option<&SquareMatrix> {
        self.inner.form.as_ref()
    }

    /// Scalars `z` with `zI` in the simply connected group.
    pub fn center(&self) -> &[FieldElem] {
        &self.inner.center
    }

    /// The same family without the central quotient.
    pub fn lift(&self) -> GroupSpec {
        if self.quotient() {
            GroupSpec::new(self.family(), self.field().clone(), false)
        } else {
            self.clone()
        }
    }

    /// The order of the simply connected group, or `Overflow` past `u128`.
    pub fn lift_order(&self) -> Result<u128> {
        let q = self.field().order() as u128;
        let ov = || Error::Overflow { cap: u128::MAX };
        let pw = |e: u32| q.checked_pow(e).ok_or_else(ov);
        let prod = |xs: &[u128]| {
            xs.iter()
                .try_fold(1u128, |acc, &x| acc.checked_mul(x))
                .ok_or_else(ov)
        };
        match self.family() {
            Family::SL2 => prod(&[q, pw(2)? - 1]),
            Family::SL3 => prod(&[pw(3)?, pw(3)? - 1, pw(2)? - 1]),
            Family::Sp4 => prod(&[pw(4)?, pw(2)? - 1, pw(4)? - 1]),
        }
    }

    pub fn order(&self) -> Result<u128> {
        let n = self.lift_order()?;
        Ok(if self.quotient() {
            n / self.center().len() as u128
        } else {
            n
        })
    }

    pub fn identity(&self) -> SquareMatrix {
        self.space().identity()
    }

    pub fn contains(&self, m: &SquareMatrix) -> Result<bool> {
        let sp = self.space();
        sp.check(m)?;
        if sp.det(m) != FieldElem::ONE {
            return Ok(false);
        }
        if let Some(j) = self.form() {
            let t = sp.mul(&sp.mul(&sp.transpose(m), j), m);
            return Ok(&t == j);
        }
        Ok(true)
    }

    /// Representative of `m Z` with the least entry vector; `m` itself when
    /// not working modulo the centre.
    pub fn canonical(&self, m: &SquareMatrix) -> SquareMatrix {
        if !self.quotient() || self.center().len() == 1 {
            return m.clone();
        }
        let k = self.field();
        let first = *m
            .entries()
            .iter()
            .find(|x| !x.is_zero())
            .expect("invertible matrices are nonzero");
        let z = *self
            .center()
            .iter()
            .min_by_key(|&&z| k.mul(z, first))
            .expect("centre contains 1");
        if z == FieldElem::ONE {
            m.clone()
        } else {
            self.space().scale(z, m)
        }
    }

    pub fn mul(&self, a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
        self.canonical(&self.space().mul(a, b))
    }

    pub fn inverse(&self, a: &SquareMatrix) -> SquareMatrix {
        self.canonical(
            &self
                .space()
                .inverse(a)
                .expect("group elements are invertible"),
        )
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: &SquareMatrix, g: &SquareMatrix) -> SquareMatrix {
        self.canonical(&self.space().conjugate(x, g))
    }

    /// True for the identity of this group (any central scalar in the quotient).
    pub fn is_identity(&self, m: &SquareMatrix) -> bool {
        if self.quotient() {
            self.space().is_scalar(m)
        } else {
            self.space().is_identity(m)
        }
    }

    /// Prime factorisation of `p^e * prod_{j <= d} Phi_j(q)`, a multiple of
    /// every element order in `GL_d(q)`.
    fn order_factors(&self) -> Result<&[(u128, u32)]> {
        let f = self
            .inner
            .order_factors
            .get_or_init(|| order_bound_factors(self.field(), self.dim()));
        f.as_deref().ok_or_else(|| {
            Error::Unsupported(format!(
                "element orders in {self}: order bound does not fit in 128 bits"
            ))
        })
    }

    /// Order of `m` in this group (modulo the centre for quotients).
    pub fn element_order(&self, m: &SquareMatrix, cap: u128) -> Result<u128> {
        let sp = self.space();
        sp.check(m)?;
        if sp.det(m).is_zero() {
            return Err(Error::Singular);
        }
        let factors = self.order_factors()?;
        let n = order_by_descent(sp, m, factors, |x| self.is_identity(x))?;
        if n > cap {
            return Err(Error::Overflow { cap });
        }
        Ok(n)
    }

    /// Root-subgroup generators: transvections `I + t E_ij` for SL and
    /// symplectic transvections `I + t v v^T J` (`v = e_i` or `e_i + e_j`)
    /// for Sp4, with `t` running over the `F_p`-basis `1, x, .., x^(a-1)`.
    pub fn standard_generators(&self) -> Vec<SquareMatrix> {
        let k = self.field();
        let sp = self.space();
        let d = self.dim();
        let basis: Vec<FieldElem> = (0..k.a())
            .map(|i| k.elem(k.p().pow(i)).expect("basis element"))
            .collect();
        let mut gens = Vec::new();
        match self.form() {
            None => {
                for i in 0..d {
                    for j in 0..d {
                        if i == j {
                            continue;
                        }
                        for &t in &basis {
                            let mut m = sp.identity();
                            m.set(i, j, t);
                            gens.push(m);
                        }
                    }
                }
            }
            Some(jf) => {
                let mut vs: Vec<Vec<FieldElem>> = Vec::new();
                for i in 0..d {
                    let mut v = vec![FieldElem::ZERO; d];
                    v[i] = FieldElem::ONE;
                    vs.push(v);
                }
                for i in 0..d {
                    for j in i + 1..d {
                        let mut v = vec![FieldElem::ZERO; d];
                        v[i] = FieldElem::ONE;
                        v[j] = FieldElem::ONE;
                        vs.push(v);
                    }
                }
                for v in &vs {
                    let mut outer = sp.zero();
                    for r in 0..d {
                        for c in 0..d {
                            outer.set(r, c, k.mul(v[r], v[c]));
                        }
                    }
                    let vvj = sp.mul(&outer, jf);
                    for &t in &basis {
                        gens.push(sp.add(&sp.identity(), &sp.scale(t, &vvj)));
                    }
                }
            }
        }
        gens.into_iter().map(|g| self.canonical(&g)).collect()
    }

    pub fn key(&self, m: &SquareMatrix) -> MatKey {
        let bits = self.inner.bits;
        let per = self.inner.per_word;
        let mut out = MatKey::new();
        for chunk in m.entries().chunks(per) {
            let mut w = 0u64;
            for (i, x) in chunk.iter().enumerate() {
                w |= x.index() << (bits as usize * i);
            }
            out.push(w);
        }
        out
    }

    pub fn from_key(&self, key: &MatKey) -> SquareMatrix {
        let bits = self.inner.bits;
        let per = self.inner.per_word;
        let d = self.dim();
        let mask = if bits == 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        };
        let entries = (0..d * d)
            .map(|i| {
                let w = key[i / per];
                let idx = (w >> (bits as usize * (i % per))) & mask;
                self.field().elem(idx).expect("key holds valid indices")
            })
            .collect();
        SquareMatrix::from_entries(d, entries).expect("key length")
    }

    /// Little-endian bytes of [`key`](Self::key).
    pub fn encode(&self, m: &SquareMatrix) -> Vec<u8> {
        self.key(m).iter().flat_map(|w| w.to_le_bytes()).collect()
    }
}

fn order_bound_factors(k: &FiniteField, d: usize) -> Option<Vec<(u128, u32)>> {
    let p = k.p() as u128;
    let q = k.order() as u128;
    let mut e = 0u32;
    while p.pow(e) < d as u128 {
        e += 1;
    }
    let mut merged: Vec<(u128, u32)> = Vec::new();
    if e > 0 {
        merged.push((p, e));
    }
    for j in 1..=d as u32 {
        let phi = arith::cyclotomic_eval(j, q)?;
        for (r, m) in arith::factor(phi) {
            match merged.iter_mut().find(|(x, _)| *x == r) {
                Some((_, em)) => *em += m,
                None => merged.push((r, m)),
            }
        }
    }
    merged.sort_unstable();
    Some(merged)
}

/// Least `n` with `is_one(m^n)`, given a factored multiple of the order.
pub(crate) fn order_by_descent(
    sp: &MatrixSpace,
    m: &SquareMatrix,
    factors: &[(u128, u32)],
    is_one: impl Fn(&SquareMatrix) -> bool,
) -> Result<u128> {
    let mut order = 1u128;
    for (i, &(r, e)) in factors.iter().enumerate() {
        // strip every other prime from the bound
        let mut y = m.clone();
        for (j, &(r2, e2)) in factors.iter().enumerate() {
            if j != i {
                for _ in 0..e2 {
                    y = sp.pow(&y, r2);
                }
            }
        }
        let mut f = 0;
        while !is_one(&y) {
            if f == e {
                return Err(Error::invalid(
                    "element order does not divide the group exponent bound",
                ));
            }
            y = sp.pow(&y, r);
            f += 1;
        }
        order = order
            .checked_mul(r.pow(f))
            .ok_or(Error::Overflow { cap: u128::MAX })?;
    }
    Ok(order)
}

impl MatrixSpace {
    /// Multiplicative order of an invertible matrix.
    pub fn element_order(&self, m: &SquareMatrix, cap: u128) -> Result<u128> {
        self.check(m)?;
        if self.det(m).is_zero() {
            return Err(Error::Singular);
        }
        let factors = order_bound_factors(self.field(), self.dim())
            .ok_or_else(|| Error::Unsupported("order bound does not fit in 128 bits".into()))?;
        let n = order_by_descent(self, m, &factors, |x| self.is_identity(x))?;
        if n > cap {
            return Err(Error::Overflow { cap });
        }
        Ok(n)
    }
}
