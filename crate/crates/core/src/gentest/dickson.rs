use super::span::{algebra_span, conjugation_action, trace_field_unchecked};
use super::verdict::{GenVerdict, Method, Witness};
use crate::error::{Error, Result};
use crate::ffield::poly;
use crate::matgrp::{close, linalg, Family, GroupSpec, MatrixSpace, SquareMatrix};

/// Exact generation test for a pair in `SL2(q)`, `q >= 4`, following the
/// subgroup list of `PSL2(q)`: reducible, subfield (traces), dihedral (two
/// of `tr x`, `tr y`, `tr xy` vanish), the small groups `A4`, `S4`, `A5`
/// (projective closure of at most 60 elements), `PGL2(q0)` (traces on the
/// adjoint module, odd `p`); anything else generates.
pub fn dickson_kind(spec: &GroupSpec, x: &SquareMatrix, y: &SquareMatrix) -> Result<GenVerdict> {
    if spec.family() != Family::SL2 {
        return Err(Error::invalid(format!(
            "dickson_kind needs SL2 or PSL2, not {spec}"
        )));
    }
    let k = spec.field();
    if k.order() < 4 {
        return Err(Error::Unsupported(format!("{spec}: q < 4, use closure")));
    }
    for m in [x, y] {
        if !spec.contains(m)? {
            return Err(Error::NotInGroup(spec.space().format(m)));
        }
    }
    let sp = spec.space();
    let pair = [x.clone(), y.clone()];
    if algebra_span(sp, &pair)?.dim < 4 {
        let w = if common_eigenvector(sp, x, y) {
            Witness::Borel
        } else {
            Witness::Reducible
        };
        return Ok(GenVerdict::proper(w, Method::AlgebraSpan));
    }
    // tr x, tr y, tr xy generate every word trace in SL2
    let traces = [sp.trace(x), sp.trace(y), sp.trace(&sp.mul(x, y))];
    let a = k.a();
    if a > 1 {
        let b = k.field_generated(traces);
        if b < a {
            return Ok(GenVerdict::proper(
                Witness::SubfieldDegree(b),
                Method::TraceField,
            ));
        }
    }
    if traces.iter().filter(|t| t.is_zero()).count() >= 2 {
        return Ok(GenVerdict::proper(Witness::Dihedral, Method::Dickson));
    }
    let proj = GroupSpec::new(Family::SL2, k.clone(), true);
    let c = close(&proj, &pair, usize::MAX, Some(60))?;
    if c.complete {
        let n = c.size() as u128;
        if n == proj.order()? {
            return Ok(GenVerdict::generates(Method::Closure));
        }
        let w = if matches!(n, 12 | 24 | 60) {
            Witness::ExceptionalA4S4A5
        } else {
            Witness::ClosureSize(n)
        };
        return Ok(GenVerdict::proper(w, Method::Closure));
    }
    if k.p() != 2 && a > 1 {
        let (big, ax) = conjugation_action(sp, x)?;
        let (_, ay) = conjugation_action(sp, y)?;
        let b = trace_field_unchecked(&big, &[ax, ay])?;
        if b < a {
            return Ok(GenVerdict::proper(
                Witness::SubfieldDegree(b),
                Method::AdjointTraceField,
            ));
        }
    }
    Ok(GenVerdict::generates(Method::Dickson))
}

/// Whether `x` and `y` share an eigenvector over the field of definition.
fn common_eigenvector(sp: &MatrixSpace, x: &SquareMatrix, y: &SquareMatrix) -> bool {
    let k = sp.field();
    let (a, b) = if sp.is_scalar(x) { (y, x) } else { (x, y) };
    if sp.is_scalar(a) {
        return true;
    }
    let d = sp.dim();
    for lambda in poly::roots(k, &sp.char_poly(a)) {
        let m = sp.sub(a, &sp.scalar(lambda));
        let rows: Vec<Vec<_>> = (0..d).map(|i| m.row(i).to_vec()).collect();
        for v in linalg::kernel(k, &rows, d) {
            let bv: Vec<_> = (0..d).map(|i| linalg::dot(k, b.row(i), &v)).collect();
            if k.sub(k.mul(bv[0], v[1]), k.mul(bv[1], v[0])).is_zero() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::gentest::subgroup_closure;
    use crate::gentest::verdict::Outcome;
    use crate::matgrp::sample_uniform;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2(p: u64, a: u32) -> GroupSpec {
        GroupSpec::new(Family::SL2, FiniteField::new(p, a).unwrap(), false)
    }

    #[test]
    fn identities_are_reducible() {
        let s = sl2(5, 1);
        let v = dickson_kind(&s, &s.identity(), &s.identity()).unwrap();
        assert_eq!(v.outcome, Outcome::Proper);
        assert!(matches!(v.witness, Some(Witness::Borel)));
        assert!(dickson_kind(&sl2(3, 1), &s.identity(), &s.identity()).is_err());
    }

    #[test]
    fn hurwitz_pair_of_psl2_7() {
        // an involution and an element of order 3 in PSL2(7) whose product
        // has order 7
        let s = GroupSpec::new(Family::SL2, FiniteField::new(7, 1).unwrap(), true);
        let sp = s.space();
        let x = sp.from_ints(&[0, 1, -1, 0]).unwrap();
        let y = sp.from_ints(&[0, 1, -1, -1]).unwrap();
        assert_eq!(s.element_order(&x, 100).unwrap(), 2);
        assert_eq!(s.element_order(&y, 100).unwrap(), 3);
        let v = dickson_kind(&s, &x, &y).unwrap();
        let size = subgroup_closure(&s, &[x, y], 1000).unwrap();
        // Hurwitz generation of PSL2(7) by a (2,3,7) triple
        assert_eq!(size, 168);
        assert!(v.is_generating());
    }

    #[test]
    fn prime_field_pair_over_f49() {
        let s = sl2(7, 2);
        let sp = s.space();
        let x = sp.from_ints(&[1, 1, 0, 1]).unwrap();
        let y = sp.from_ints(&[1, 0, 1, 1]).unwrap();
        let v = dickson_kind(&s, &x, &y).unwrap();
        assert_eq!(
            v,
            GenVerdict::proper(Witness::SubfieldDegree(1), Method::TraceField)
        );
    }

    #[test]
    fn agrees_with_closure_on_small_fields() {
        // includes q = 4, 8, 9 so the subfield, adjoint and small-order
        // branches all fire
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, a) in [(2, 2), (5, 1), (2, 3), (3, 2), (7, 1), (5, 2)] {
            let s = sl2(p, a);
            let order = s.order().unwrap();
            for _ in 0..300 {
                let x = sample_uniform(&s, &mut rng);
                let y = sample_uniform(&s, &mut rng);
                let v = dickson_kind(&s, &x, &y).unwrap();
                let n = subgroup_closure(&s, &[x, y], 1_000_000).unwrap();
                assert_eq!(v.is_generating(), n == order, "{s}: {v:?} closure {n}");
            }
        }
    }

    #[test]
    fn pgl2_subgroups_are_caught() {
        // PGL2(3) sits in PSL2(9): elements of GL2(3) with non-square
        // determinant, rescaled into SL2(9)
        let s = sl2(3, 2);
        let k = s.field().clone();
        let sp = s.space();
        let lift = |m: [i64; 4]| {
            let g = sp.from_ints(&m).unwrap();
            let det = sp.det(&g);
            // lambda^2 = det^-1
            let lam = k
                .elements()
                .find(|&l| k.mul(k.mul(l, l), det) == k.one())
                .unwrap();
            sp.scale(lam, &g)
        };
        let x = lift([0, 1, 1, 0]);
        let y = lift([1, 1, 0, -1]);
        let v = dickson_kind(&s, &x, &y).unwrap();
        let n = subgroup_closure(
            &GroupSpec::new(Family::SL2, k.clone(), true),
            &[x.clone(), y.clone()],
            10_000,
        )
        .unwrap();
        assert!(n < 360);
        assert_eq!(
            v.outcome,
            Outcome::Proper,
            "{v:?} with projective closure {n}"
        );
    }
}
