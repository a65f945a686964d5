//! Generation tests: algebra spans, trace fields, the `SL2` subgroup test
//! and subgroup closure.

mod dickson;
mod span;
mod verdict;
mod words;

pub use dickson::dickson_kind;
pub use span::{
    algebra_span, conjugation_action, exterior_square, is_irreducible, trace_field,
    trace_field_unchecked, trace_field_words, SpanInfo,
};
pub use verdict::{GenVerdict, Method, Outcome, Witness};
pub use words::{eval_word, WordIterator};

use crate::error::{Error, Result};
use crate::matgrp::{close, Family, GroupSpec, SquareMatrix, DEFAULT_CAP};

/// Limits for [`generation_verdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Groups of at most this order are decided by closure.
    pub closure_cap: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            closure_cap: DEFAULT_CAP,
        }
    }
}

/// Order of the subgroup generated by `s`, by breadth-first closure.
pub fn subgroup_closure(spec: &GroupSpec, s: &[SquareMatrix], cap: u128) -> Result<u128> {
    let cap = usize::try_from(cap).unwrap_or(usize::MAX);
    Ok(close(spec, s, cap, None)?.size() as u128)
}

/// Decides whether `tuple` generates the group. `Generates` only comes from
/// a complete method: the `SL2` subgroup test or a closure. Past the
/// closure cap only proper-subgroup certificates are tried.
pub fn generation_verdict(
    spec: &GroupSpec,
    tuple: &[SquareMatrix],
    budget: &Budget,
) -> Result<GenVerdict> {
    for m in tuple {
        if !spec.contains(m)? {
            return Err(Error::NotInGroup(spec.space().format(m)));
        }
    }
    if spec.family() == Family::SL2 && spec.field().order() >= 4 && tuple.len() == 2 {
        return dickson_kind(spec, &tuple[0], &tuple[1]);
    }
    let order = spec.order()?;
    if order <= budget.closure_cap {
        // a proper subgroup has at most half the elements
        let c = close(spec, tuple, usize::MAX, Some((order / 2) as usize))?;
        let n = c.size() as u128;
        if !c.complete || n == order {
            return Ok(GenVerdict::generates(Method::Closure));
        }
        return Ok(GenVerdict::proper(Witness::ClosureSize(n), Method::Closure));
    }
    certificates(spec, tuple)
}

/// Sound proper-subgroup certificates; `Inconclusive` when none applies.
fn certificates(spec: &GroupSpec, tuple: &[SquareMatrix]) -> Result<GenVerdict> {
    let sp = spec.space();
    let n = sp.dim();
    if algebra_span(sp, tuple)?.dim < n * n {
        return Ok(GenVerdict::proper(Witness::Reducible, Method::AlgebraSpan));
    }
    let b = trace_field_unchecked(sp, tuple)?;
    if b < spec.field().a() {
        return Ok(GenVerdict::proper(
            Witness::SubfieldDegree(b),
            Method::TraceField,
        ));
    }
    // for odd p the exterior square of Sp4 is the trivial module plus an
    // absolutely irreducible 5-dimensional one, spanning 1 + 25 dimensions
    if spec.family() == Family::Sp4 && spec.field().p() != 2 {
        let images: Vec<SquareMatrix> = tuple
            .iter()
            .map(|m| Ok(exterior_square(sp, m)?.1))
            .collect::<Result<_>>()?;
        let (big, _) = exterior_square(sp, &sp.identity())?;
        if algebra_span(&big, &images)?.dim < 26 {
            return Ok(GenVerdict::proper(
                Witness::Reducible,
                Method::ExteriorSquare,
            ));
        }
    }
    Ok(GenVerdict::inconclusive())
}

#[cfg(test)]
mod tests;
