use super::words::{eval_word, WordIterator};
use crate::error::{Error, Result};
use crate::ffield::{FieldElem, FiniteField};
use crate::matgrp::linalg::Echelon;
use crate::matgrp::{MatrixSpace, SquareMatrix};

/// Dimension of the algebra spanned by words in `S`, and the word length at
/// which the span stopped growing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanInfo {
    pub dim: usize,
    pub steps: usize,
}

fn check_inputs(space: &MatrixSpace, s: &[SquareMatrix]) -> Result<()> {
    for m in s {
        space.check(m)?;
        if space.det(m).is_zero() {
            return Err(Error::Singular);
        }
    }
    Ok(())
}

/// Grows `V_0 = <I>`, `V_{i+1} = V_i + V_i S` until it stabilises. `embed`
/// maps a matrix to a coordinate vector over `base`.
fn grow(
    space: &MatrixSpace,
    s: &[SquareMatrix],
    base: &FiniteField,
    len: usize,
    embed: impl Fn(&SquareMatrix) -> Vec<FieldElem>,
) -> Result<(Echelon, Vec<SquareMatrix>, usize)> {
    let mut ech = Echelon::new(base.clone(), len);
    let id = space.identity();
    ech.insert(&embed(&id));
    let mut basis = vec![id];
    let mut frontier = vec![0usize];
    let mut steps = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in s {
                let m = space.mul(&basis[i], g);
                if ech.insert(&embed(&m)) {
                    basis.push(m);
                    next.push(basis.len() - 1);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        steps += 1;
        frontier = next;
    }
    Ok((ech, basis, steps))
}

/// Span of all words in `S` over the matrix field.
pub fn algebra_span(space: &MatrixSpace, s: &[SquareMatrix]) -> Result<SpanInfo> {
    check_inputs(space, s)?;
    let n = space.dim();
    let (ech, _, steps) = grow(space, s, space.field(), n * n, |m| m.entries().to_vec())?;
    if steps > n * n {
        return Err(Error::invalid(format!(
            "span grew for {steps} steps, beyond the bound {}",
            n * n
        )));
    }
    Ok(SpanInfo {
        dim: ech.dim(),
        steps,
    })
}

/// True when `S` acts irreducibly over the algebraic closure.
pub fn is_irreducible(space: &MatrixSpace, s: &[SquareMatrix]) -> Result<bool> {
    let n = space.dim();
    Ok(algebra_span(space, s)?.dim == n * n)
}

/// Degree over `F_p` of the field generated by traces of words in `S`,
/// computed from an `F_p`-basis of the algebra `F_p[S]` (traces are linear,
/// so the traces of a basis generate the same field). Requires `S`
/// irreducible.
pub fn trace_field(space: &MatrixSpace, s: &[SquareMatrix]) -> Result<u32> {
    if !is_irreducible(space, s)? {
        return Err(Error::invalid("trace field requires an irreducible set"));
    }
    trace_field_unchecked(space, s)
}

/// [`trace_field`] without the irreducibility hypothesis. The result is
/// still the degree of the field generated by all word traces.
pub fn trace_field_unchecked(space: &MatrixSpace, s: &[SquareMatrix]) -> Result<u32> {
    check_inputs(space, s)?;
    let k = space.field();
    let prime = FiniteField::new(k.p(), 1)?;
    let n = space.dim();
    let a = k.a() as usize;
    let embed = |m: &SquareMatrix| -> Vec<FieldElem> {
        m.entries()
            .iter()
            .flat_map(|&x| k.coeffs(x).into_iter().map(|c| prime.from_int(c as i64)))
            .collect::<Vec<_>>()
    };
    let (_, basis, _) = grow(space, s, &prime, n * n * a, |m| {
        let mut v = embed(m);
        v.resize(n * n * a, FieldElem::ZERO);
        v
    })?;
    Ok(k.field_generated(basis.iter().map(|m| space.trace(m))))
}

/// Trace field by enumerating reduced words of length at most `max_len` in
/// `S` and its inverses, stopping once the full field is reached.
pub fn trace_field_words(space: &MatrixSpace, s: &[SquareMatrix], max_len: usize) -> Result<u32> {
    check_inputs(space, s)?;
    let k = space.field();
    let inverses: Vec<SquareMatrix> = s.iter().map(|m| space.inverse(m)).collect::<Result<_>>()?;
    let mut deg = 1;
    for w in WordIterator::new(s.len(), max_len) {
        let t = space.trace(&eval_word(space, s, &inverses, &w));
        deg = crate::arith::lcm(deg as u128, k.minimal_degree(t) as u128) as u32;
        if deg == k.a() {
            break;
        }
    }
    Ok(deg)
}

/// Matrix of `X -> g X g^-1` on `M_d` (basis `E_ij`, row-major).
pub fn conjugation_action(
    space: &MatrixSpace,
    g: &SquareMatrix,
) -> Result<(MatrixSpace, SquareMatrix)> {
    let d = space.dim();
    let big = MatrixSpace::new(space.field().clone(), d * d)?;
    let gi = space.inverse(g)?;
    let mut out = big.zero();
    for col in 0..d * d {
        let mut e = space.zero();
        e.set(col / d, col % d, FieldElem::ONE);
        let img = space.mul(&space.mul(g, &e), &gi);
        for (row, &x) in img.entries().iter().enumerate() {
            out.set(row, col, x);
        }
    }
    Ok((big, out))
}

/// Matrix of `g` on the exterior square (basis `e_i ^ e_j`, `i < j`).
pub fn exterior_square(
    space: &MatrixSpace,
    g: &SquareMatrix,
) -> Result<(MatrixSpace, SquareMatrix)> {
    let k = space.field();
    let d = space.dim();
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    let big = MatrixSpace::new(k.clone(), pairs.len())?;
    let mut out = big.zero();
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for (row, &(a, b)) in pairs.iter().enumerate() {
            let v = k.sub(
                k.mul(g.get(a, i), g.get(b, j)),
                k.mul(g.get(b, i), g.get(a, j)),
            );
            out.set(row, col, v);
        }
    }
    Ok((big, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::{sample_uniform, Family, GroupSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(p: u64, a: u32, d: usize) -> MatrixSpace {
        MatrixSpace::new(FiniteField::new(p, a).unwrap(), d).unwrap()
    }

    #[test]
    fn span_examples() {
        let sp = space(7, 1, 2);
        assert_eq!(algebra_span(&sp, &[sp.identity()]).unwrap().dim, 1);
        // diagonal with distinct eigenvalues and lambda I + J
        let d = sp.from_ints(&[2, 0, 0, 3]).unwrap();
        let lj = sp.from_ints(&[2, 1, 1, 2]).unwrap();
        let info = algebra_span(&sp, &[d, lj]).unwrap();
        assert_eq!(info.dim, 4);
        assert!(info.steps <= 4);
        let sing = sp.from_ints(&[1, 1, 1, 1]).unwrap();
        assert!(matches!(algebra_span(&sp, &[sing]), Err(Error::Singular)));
    }

    #[test]
    fn upper_triangular_pairs_never_span() {
        // every pair of upper unitriangular-times-diagonal matrices in SL2(5)
        let sp = space(5, 1, 2);
        let k = sp.field().clone();
        let mut uppers = Vec::new();
        for a in 1..5 {
            for b in 0..5 {
                let ai = k.inv(k.from_int(a));
                uppers.push(
                    SquareMatrix::from_entries(2, vec![k.from_int(a), k.from_int(b), k.zero(), ai])
                        .unwrap(),
                );
            }
        }
        for x in &uppers {
            for y in &uppers {
                let info = algebra_span(&sp, &[x.clone(), y.clone()]).unwrap();
                assert!(info.dim <= 3);
                assert!(!is_irreducible(&sp, &[x.clone(), y.clone()]).unwrap());
            }
        }
    }

    /// Brute-force search for a proper nonzero invariant subspace spanned
    /// by at most two vectors (enough for n <= 3).
    fn has_invariant_subspace(sp: &MatrixSpace, s: &[SquareMatrix]) -> bool {
        let k = sp.field();
        let n = sp.dim();
        let vectors: Vec<Vec<FieldElem>> = (1..k.order().pow(n as u32))
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let x = k.elem(i % k.order()).unwrap();
                        i /= k.order();
                        x
                    })
                    .collect()
            })
            .collect();
        let apply = |m: &SquareMatrix, v: &[FieldElem]| -> Vec<FieldElem> {
            (0..n)
                .map(|r| (0..n).fold(k.zero(), |acc, c| k.add(acc, k.mul(m.get(r, c), v[c]))))
                .collect()
        };
        let invariant = |basis: &[&Vec<FieldElem>]| -> bool {
            let mut e = Echelon::new(k.clone(), n);
            for b in basis {
                e.insert(b);
            }
            let dim = e.dim();
            dim > 0
                && dim < n
                && s.iter()
                    .all(|m| basis.iter().all(|b| e.contains(&apply(m, b))))
        };
        for v in &vectors {
            if invariant(&[v]) {
                return true;
            }
        }
        if n == 3 {
            for v in &vectors {
                for w in &vectors {
                    if invariant(&[v, w]) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn irreducibility_agrees_with_subspace_search() {
        // a rational invariant subspace forces reducibility; otherwise a
        // reducible tuple must show it over a splitting extension
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (p, a, d, trials) in [
            (2, 1, 2, 2000),
            (3, 1, 2, 2000),
            (2, 2, 2, 2000),
            (2, 1, 3, 2000),
            (3, 1, 3, 2000),
        ] {
            let spec = GroupSpec::new(
                if d == 2 { Family::SL2 } else { Family::SL3 },
                FiniteField::new(p, a).unwrap(),
                false,
            );
            let sp = spec.space();
            for _ in 0..trials {
                let s = vec![
                    sample_uniform(&spec, &mut rng),
                    sample_uniform(&spec, &mut rng),
                ];
                let irr = is_irreducible(sp, &s).unwrap();
                if has_invariant_subspace(sp, &s) {
                    assert!(!irr);
                } else if irr {
                    continue;
                } else {
                    // no rational invariant subspace but reducible over the
                    // closure: then a common eigenvector exists over an
                    // extension of degree <= d, checked there
                    let ext = FiniteField::new(p, a * (d as u32) * (d as u32 - 1)).unwrap();
                    let emb = ext.embedding_of(sp.field()).unwrap();
                    let esp = MatrixSpace::new(ext.clone(), d).unwrap();
                    let lift = |m: &SquareMatrix| {
                        SquareMatrix::from_entries(
                            d,
                            m.entries().iter().map(|&x| emb.apply(x)).collect(),
                        )
                        .unwrap()
                    };
                    let es: Vec<SquareMatrix> = s.iter().map(lift).collect();
                    assert!(!is_irreducible(&esp, &es).unwrap());
                }
            }
        }
    }

    #[test]
    fn trace_field_matches_word_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (p, a) in [(3, 2), (2, 4), (5, 2), (2, 3)] {
            let spec = GroupSpec::new(Family::SL2, FiniteField::new(p, a).unwrap(), false);
            let sp = spec.space();
            for _ in 0..40 {
                let s = vec![
                    sample_uniform(&spec, &mut rng),
                    sample_uniform(&spec, &mut rng),
                ];
                if !is_irreducible(sp, &s).unwrap() {
                    continue;
                }
                assert_eq!(
                    trace_field(sp, &s).unwrap(),
                    trace_field_words(sp, &s, 8).unwrap()
                );
            }
        }
    }

    #[test]
    fn prime_field_pairs_have_trace_field_one() {
        let spec = GroupSpec::new(Family::SL2, FiniteField::new(7, 2).unwrap(), false);
        let sp = spec.space();
        let x = sp.from_ints(&[1, 1, 0, 1]).unwrap();
        let y = sp.from_ints(&[1, 0, 3, 1]).unwrap();
        assert!(is_irreducible(sp, &[x.clone(), y.clone()]).unwrap());
        assert_eq!(trace_field(sp, &[x.clone(), y.clone()]).unwrap(), 1);
        let red = sp.from_ints(&[1, 1, 0, 1]).unwrap();
        assert!(trace_field(sp, &[red]).is_err());
    }

    #[test]
    fn induced_actions_are_homomorphisms() {
        let spec = GroupSpec::new(Family::Sp4, FiniteField::new(5, 1).unwrap(), false);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let a = sample_uniform(&spec, &mut rng);
            let b = sample_uniform(&spec, &mut rng);
            let ab = spec.space().mul(&a, &b);
            let (big, ea) = exterior_square(spec.space(), &a).unwrap();
            let (_, eb) = exterior_square(spec.space(), &b).unwrap();
            assert_eq!(
                exterior_square(spec.space(), &ab).unwrap().1,
                big.mul(&ea, &eb)
            );
        }
        // the adjoint action is only built for 2x2 matrices, d^2 <= MAX_DIM
        let spec = GroupSpec::new(Family::SL2, FiniteField::new(5, 2).unwrap(), false);
        for _ in 0..20 {
            let a = sample_uniform(&spec, &mut rng);
            let b = sample_uniform(&spec, &mut rng);
            let ab = spec.space().mul(&a, &b);
            let (big, ca) = conjugation_action(spec.space(), &a).unwrap();
            let (_, cb) = conjugation_action(spec.space(), &b).unwrap();
            assert_eq!(
                conjugation_action(spec.space(), &ab).unwrap().1,
                big.mul(&ca, &cb)
            );
            let three = MatrixSpace::new(spec.field().clone(), 3).unwrap();
            assert!(conjugation_action(&three, &three.identity()).is_err());
        }
    }
}
