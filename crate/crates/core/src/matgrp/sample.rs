use rand::Rng;

use super::classes::ClassSpec;
use super::group::{Family, GroupSpec};
use super::linalg;
use super::matrix::SquareMatrix;
use crate::ffield::{FieldElem, FiniteField};

/// A uniformly random element of the group (canonical representative in
/// the quotient).
pub fn sample_uniform<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> SquareMatrix {
    let m = sample_lift(spec, rng);
    spec.canonical(&m)
}

/// Uniform element of the simply connected group.
pub fn sample_lift<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> SquareMatrix {
    match spec.family() {
        Family::SL2 => sample_sl2(spec, rng),
        Family::SL3 => sample_sl3(spec, rng),
        Family::Sp4 => sample_sp4(spec, rng),
    }
}

/// `rep^g` for a uniform `g`.
pub fn sample_class<R: Rng + ?Sized>(cls: &ClassSpec, rng: &mut R) -> SquareMatrix {
    let g = sample_lift(&cls.group, rng);
    cls.group.conjugate(&cls.representative, &g)
}

fn sample_sl2<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> SquareMatrix {
    let k = spec.field();
    let (a, b) = loop {
        let a = k.random(rng);
        let b = k.random(rng);
        if !(a.is_zero() && b.is_zero()) {
            break (a, b);
        }
    };
    // ad - bc = 1
    let (c, d) = if !a.is_zero() {
        let c = k.random(rng);
        (c, k.div(k.add(k.one(), k.mul(b, c)), a))
    } else {
        let d = k.random(rng);
        (k.neg(k.inv(b)), d)
    };
    SquareMatrix::from_entries(2, vec![a, b, c, d]).expect("2x2")
}

fn sample_sl3<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> SquareMatrix {
    let sp = spec.space();
    let k = spec.field();
    let mut m = loop {
        let m = sp.random(rng);
        if !sp.det(&m).is_zero() {
            break m;
        }
    };
    let s = k.inv(sp.det(&m));
    for j in 0..3 {
        let v = k.mul(s, m.get(0, j));
        m.set(0, j, v);
    }
    m
}

/// Uniform point of `{x : a x = b}`, or of its nonzero points when
/// `nonzero` (callers only ask when the solution set is a nonzero subspace).
fn affine_point<R: Rng + ?Sized>(
    k: &FiniteField,
    a: &[Vec<FieldElem>],
    b: &[FieldElem],
    n: usize,
    nonzero: bool,
    rng: &mut R,
) -> Vec<FieldElem> {
    let (part, ker) = linalg::solve_affine(k, a, b, n).expect("form relations are consistent");
    loop {
        let mut x = part.clone();
        for v in &ker {
            let c = k.random(rng);
            for (xi, &vi) in x.iter_mut().zip(v) {
                *xi = k.add(*xi, k.mul(c, vi));
            }
        }
        if !nonzero || x.iter().any(|c| !c.is_zero()) {
            return x;
        }
    }
}

/// Columns chosen in the order 0, 3, 1, 2 so that each is uniform over the
/// vectors meeting its form relations with the earlier ones.
fn sample_sp4<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> SquareMatrix {
    let k = spec.field();
    let sp = spec.space();
    let j = spec.form().expect("Sp4 has a form");
    // the functional u -> omega(c, u) = c^T J u
    let functional = |c: &[FieldElem]| -> Vec<FieldElem> {
        (0..4)
            .map(|col| {
                (0..4).fold(FieldElem::ZERO, |acc, r| {
                    k.add(acc, k.mul(c[r], j.get(r, col)))
                })
            })
            .collect()
    };
    let c0 = affine_point(k, &[], &[], 4, true, rng);
    let c3 = affine_point(k, &[functional(&c0)], &[k.one()], 4, false, rng);
    let f0 = functional(&c0);
    let f3 = functional(&c3);
    let c1 = affine_point(
        k,
        &[f0.clone(), f3.clone()],
        &[k.zero(), k.zero()],
        4,
        true,
        rng,
    );
    let c2 = affine_point(
        k,
        &[f0, f3, functional(&c1)],
        &[k.zero(), k.zero(), k.one()],
        4,
        false,
        rng,
    );
    let mut m = sp.zero();
    for (col, c) in [(0, &c0), (1, &c1), (2, &c2), (3, &c3)] {
        for r in 0..4 {
            m.set(r, col, c[r]);
        }
    }
    m
}
