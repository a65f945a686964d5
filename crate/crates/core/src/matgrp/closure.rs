use std::collections::HashSet;

use super::group::{GroupSpec, MatKey};
use super::matrix::SquareMatrix;
use crate::error::{Error, Result};

/// Result of a breadth-first closure.
#[derive(Clone, Debug)]
pub struct Closure {
    /// Elements found, identity first.
    pub elements: Vec<SquareMatrix>,
    /// False when the search stopped early at `stop_above`.
    pub complete: bool,
}

impl Closure {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Breadth-first closure of `gens` under right multiplication, starting at
/// the identity. Fails with `Overflow` once more than `cap` elements are
/// found; returns an incomplete closure as soon as the count exceeds
/// `stop_above`.
pub fn close(
    spec: &GroupSpec,
    gens: &[SquareMatrix],
    cap: usize,
    stop_above: Option<usize>,
) -> Result<Closure> {
    let gens: Vec<SquareMatrix> = gens
        .iter()
        .map(|g| spec.canonical(g))
        .filter(|g| !spec.is_identity(g))
        .collect();
    let id = spec.identity();
    let mut seen: HashSet<MatKey> = HashSet::new();
    seen.insert(spec.key(&id));
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        for g in &gens {
            let z = spec.mul(&elements[head], g);
            if seen.insert(spec.key(&z)) {
                elements.push(z);
                if elements.len() > cap {
                    return Err(Error::Overflow { cap: cap as u128 });
                }
                if stop_above.is_some_and(|s| elements.len() > s) {
                    return Ok(Closure {
                        elements,
                        complete: false,
                    });
                }
            }
        }
        head += 1;
    }
    Ok(Closure {
        elements,
        complete: true,
    })
}

/// All elements of the group, by closure over the standard generators.
pub fn enumerate_group(spec: &GroupSpec, cap: u128) -> Result<Vec<SquareMatrix>> {
    let order = spec.order()?;
    if order > cap {
        return Err(Error::Overflow { cap });
    }
    let c = close(spec, &spec.standard_generators(), order as usize, None)?;
    debug_assert_eq!(c.size() as u128, order);
    Ok(c.elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::matgrp::Family;

    #[test]
    fn closure_sizes_match_order_formulas() {
        for (fam, p, a, quotient) in [
            (Family::SL2, 2, 1, false),
            (Family::SL2, 5, 1, false),
            (Family::SL2, 5, 1, true),
            (Family::SL2, 2, 3, false),
            (Family::SL2, 3, 2, true),
            (Family::SL3, 2, 1, false),
            (Family::SL3, 2, 2, true),
            (Family::SL3, 2, 2, false),
            (Family::Sp4, 2, 1, false),
            (Family::Sp4, 3, 1, false),
            (Family::Sp4, 3, 1, true),
        ] {
            let spec = GroupSpec::new(fam, FiniteField::new(p, a).unwrap(), quotient);
            let c = close(&spec, &spec.standard_generators(), 10_000_000, None).unwrap();
            assert_eq!(c.size() as u128, spec.order().unwrap(), "{spec}");
            for g in c.elements.iter().step_by(97) {
                assert!(spec.contains(g).unwrap());
            }
        }
    }

    #[test]
    fn overflow_and_early_stop() {
        let spec = GroupSpec::new(Family::SL2, FiniteField::new(7, 1).unwrap(), false);
        assert!(matches!(
            enumerate_group(&spec, 100),
            Err(Error::Overflow { cap: 100 })
        ));
        assert!(matches!(
            close(&spec, &spec.standard_generators(), 100, None),
            Err(Error::Overflow { .. })
        ));
        let c = close(&spec, &spec.standard_generators(), 1000, Some(168)).unwrap();
        assert!(!c.complete);
        assert_eq!(c.size(), 169);
        assert_eq!(
            close(&spec, &[spec.identity()], 10, None).unwrap().size(),
            1
        );
    }
}
