use num_rational::Ratio;
use rayon::prelude::*;

use super::Source;
use crate::error::{Error, Result};
use crate::matgrp::{all_classes, close, conjugacy_class, ClassSpec, GroupSpec, SquareMatrix};

/// An exact proportion of generating pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub spec: GroupSpec,
    pub source: Source,
    pub numerator: u128,
    /// `|C| |D|`, or `|G|^2`; zero when a class is empty.
    pub denominator: u128,
}

impl ExactResult {
    /// Enumeration strategy: one representative per class of the first
    /// coordinate, all partners in the second.
    pub const METHOD: &'static str = "representative_fixing";

    /// The proportion, or zero for an empty class.
    pub fn value(&self) -> Ratio<u128> {
        if self.denominator == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(self.numerator, self.denominator)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.denominator == 0
    }

    pub fn to_f64(&self) -> f64 {
        if self.denominator == 0 {
            0.0
        } else {
            self.numerator as f64 / self.denominator as f64
        }
    }
}

/// Whether `x` and `y` generate the group, by closure. The search stops
/// once it passes half the group order, since no proper subgroup is that
/// large.
pub fn generates_by_closure(spec: &GroupSpec, x: &SquareMatrix, y: &SquareMatrix) -> Result<bool> {
    let order = spec.order()?;
    let half = usize::try_from(order / 2).map_err(|_| Error::Overflow {
        cap: usize::MAX as u128,
    })?;
    let c = close(spec, &[x.clone(), y.clone()], usize::MAX, Some(half))?;
    Ok(!c.complete || c.size() as u128 == order)
}

fn check_cap(spec: &GroupSpec, cap: u128) -> Result<()> {
    if spec.order()? > cap {
        return Err(Error::Overflow { cap });
    }
    Ok(())
}

/// Partners of `x` that generate with it.
fn count_partners(spec: &GroupSpec, x: &SquareMatrix, ys: &[SquareMatrix]) -> Result<u128> {
    ys.par_iter()
        .map(|y| generates_by_closure(spec, x, y).map(u128::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Exact proportion of generating pairs `(x, y)` with `|x| = r`, `|y| = s`.
/// The count for `x` depends only on its class, so one representative per
/// class is checked against every `y`.
pub fn exact_p(spec: &GroupSpec, r: u128, s: u128, cap: u128) -> Result<ExactResult> {
    check_cap(spec, cap)?;
    let classes = all_classes(spec, cap)?;
    let ys: Vec<SquareMatrix> = classes
        .iter()
        .filter(|c| c.class.order == s)
        .flat_map(|c| c.members.iter().cloned())
        .collect();
    let mut numerator = 0;
    let mut n_r = 0;
    for c in classes.iter().filter(|c| c.class.order == r) {
        let size = c.members.len() as u128;
        n_r += size;
        numerator += size * count_partners(spec, &c.class.representative, &ys)?;
    }
    Ok(ExactResult {
        spec: spec.clone(),
        source: Source::Orders { r, s },
        numerator,
        denominator: n_r * ys.len() as u128,
    })
}

/// Exact proportion of generating pairs in `C x D`.
pub fn exact_p_classes(
    spec: &GroupSpec,
    c: &ClassSpec,
    d: &ClassSpec,
    cap: u128,
) -> Result<ExactResult> {
    check_cap(spec, cap)?;
    for k in [c, d] {
        if &k.group != spec {
            return Err(Error::invalid(format!(
                "class {} belongs to {}, not {spec}",
                k.label, k.group
            )));
        }
    }
    let cap_usize = usize::try_from(cap).unwrap_or(usize::MAX);
    let c_size = conjugacy_class(spec, &c.representative, cap_usize)?.len() as u128;
    let ds = conjugacy_class(spec, &d.representative, cap_usize)?;
    let count = count_partners(spec, &c.representative, &ds)?;
    Ok(ExactResult {
        spec: spec.clone(),
        source: Source::Classes {
            r: c.order,
            s: d.order,
            c: c.label.clone(),
            d: d.label.clone(),
        },
        numerator: c_size * count,
        denominator: c_size * ds.len() as u128,
    })
}

/// Exact proportion of generating pairs in `G x G`.
pub fn exact_whole(spec: &GroupSpec, cap: u128) -> Result<ExactResult> {
    check_cap(spec, cap)?;
    let classes = all_classes(spec, cap)?;
    let all: Vec<SquareMatrix> = classes
        .iter()
        .flat_map(|c| c.members.iter().cloned())
        .collect();
    let mut numerator = 0;
    for c in &classes {
        numerator += c.members.len() as u128 * count_partners(spec, &c.class.representative, &all)?;
    }
    let n = all.len() as u128;
    Ok(ExactResult {
        spec: spec.clone(),
        source: Source::Whole,
        numerator,
        denominator: n * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::matgrp::{elements_of_order, enumerate_group, Family};

    fn spec(fam: Family, p: u64, a: u32, quotient: bool) -> GroupSpec {
        GroupSpec::new(fam, FiniteField::new(p, a).unwrap(), quotient)
    }

    /// Double loop over every pair, independent of representative fixing.
    fn brute_force(s: &GroupSpec, xs: &[SquareMatrix], ys: &[SquareMatrix]) -> (u128, u128) {
        let order = s.order().unwrap();
        let mut hits = 0;
        for x in xs {
            for y in ys {
                let c = close(s, &[x.clone(), y.clone()], usize::MAX, None).unwrap();
                if c.size() as u128 == order {
                    hits += 1;
                }
            }
        }
        (hits, (xs.len() * ys.len()) as u128)
    }

    fn of_order(s: &GroupSpec, r: u128) -> Vec<SquareMatrix> {
        elements_of_order(s, r, 1_000_000)
            .unwrap()
            .into_iter()
            .flat_map(|c| c.members)
            .collect()
    }

    #[test]
    fn psl2_7_two_three() {
        let s = spec(Family::SL2, 7, 1, true);
        let e = exact_p(&s, 2, 3, 1_000_000).unwrap();
        assert_eq!((e.numerator, e.denominator), (336, 1176));
        assert_eq!(
            (e.numerator, e.denominator),
            brute_force(&s, &of_order(&s, 2), &of_order(&s, 3))
        );
        assert_eq!(e.value(), Ratio::new(2, 7));
    }

    #[test]
    fn psl2_5_two_three() {
        let s = spec(Family::SL2, 5, 1, true);
        let e = exact_p(&s, 2, 3, 1_000_000).unwrap();
        assert_eq!((e.numerator, e.denominator), (120, 300));
        assert_eq!(
            (e.numerator, e.denominator),
            brute_force(&s, &of_order(&s, 2), &of_order(&s, 3))
        );
    }

    #[test]
    fn psl2_9_two_three_is_zero() {
        // A6 is not generated by an involution and an element of order 3
        let s = spec(Family::SL2, 3, 2, true);
        let e = exact_p(&s, 2, 3, 1_000_000).unwrap();
        assert_eq!((e.numerator, e.denominator), (0, 3600));
        // each class pair on its own
        let inv = elements_of_order(&s, 2, 1_000_000).unwrap();
        let thr = elements_of_order(&s, 3, 1_000_000).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(thr.len(), 2);
        for d in &thr {
            let e = exact_p_classes(&s, &inv[0].class, &d.class, 1_000_000).unwrap();
            assert_eq!(e.numerator, 0);
            assert_eq!(e.denominator, 45 * 40);
        }
    }

    #[test]
    fn sl2_5_four_three() {
        let s = spec(Family::SL2, 5, 1, false);
        let four = elements_of_order(&s, 4, 1000).unwrap();
        let three = elements_of_order(&s, 3, 1000).unwrap();
        assert_eq!((four.len(), three.len()), (1, 1));
        let e = exact_p_classes(&s, &four[0].class, &three[0].class, 1000).unwrap();
        assert_eq!((e.numerator, e.denominator), (240, 600));
        assert_eq!(
            (e.numerator, e.denominator),
            brute_force(&s, &four[0].members, &three[0].members)
        );
    }

    #[test]
    fn sl2_5_whole_group() {
        let s = spec(Family::SL2, 5, 1, false);
        let e = exact_whole(&s, 1000).unwrap();
        assert_eq!((e.numerator, e.denominator), (9120, 14400));
        let all = enumerate_group(&s, 1000).unwrap();
        assert_eq!((e.numerator, e.denominator), brute_force(&s, &all, &all));
    }

    #[test]
    fn degenerate_cases() {
        let s = spec(Family::SL2, 7, 1, true);
        let e = exact_p(&s, 1, 3, 1000).unwrap();
        assert_eq!(e.numerator, 0);
        assert_eq!(e.denominator, 56);
        // no elements of order 5 in PSL2(7)
        let e = exact_p(&s, 5, 3, 1000).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.value(), Ratio::from_integer(0));
        let minus = ClassSpec::new(
            spec(Family::SL2, 5, 1, false),
            spec(Family::SL2, 5, 1, false)
                .space()
                .from_ints(&[-1, 0, 0, -1])
                .unwrap(),
            "2A",
        )
        .unwrap();
        let e = exact_p_classes(&minus.group.clone(), &minus, &minus, 1000).unwrap();
        assert_eq!((e.numerator, e.denominator), (0, 1));
        assert!(matches!(
            exact_p(&spec(Family::SL2, 7, 1, true), 2, 3, 100),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn class_restriction_is_consistent() {
        // the order-restricted value is the size-weighted mean of the class
        // pair values
        for s in [spec(Family::SL2, 5, 1, true), spec(Family::SL2, 7, 1, true)] {
            for (r, t) in [(2, 3), (3, 3), (2, 7), (5, 5), (3, 4)] {
                let total = exact_p(&s, r, t, 1000).unwrap();
                let cs = elements_of_order(&s, r, 1000).unwrap();
                let ds = elements_of_order(&s, t, 1000).unwrap();
                let mut num = 0;
                let mut den = 0;
                for c in &cs {
                    for d in &ds {
                        let e = exact_p_classes(&s, &c.class, &d.class, 1000).unwrap();
                        num += e.numerator;
                        den += e.denominator;
                    }
                }
                assert_eq!(
                    (num, den),
                    (total.numerator, total.denominator),
                    "{s} ({r},{t})"
                );
            }
        }
    }
}
