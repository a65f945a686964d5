use rayon::prelude::*;

use super::monte::in_pool;
use super::stats::{sub_seed, trial_rng, wilson, Interval, Z95};
use crate::error::{Error, Result};
use crate::ffield::FiniteField;
use crate::gentest::eval_word;
use crate::matgrp::{
    enumerate_group, sample_uniform, Family, GroupSpec, MatrixSpace, SquareMatrix,
};

/// The commutator `x^-1 y^-1 x y` in the letters of [`eval_word`].
pub const COMMUTATOR: [usize; 4] = [1, 3, 0, 2];

/// Writes a two-letter word with `x`, `y` for the generators and `X`, `Y`
/// for their inverses; the empty word is `1`.
pub fn format_word(w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&l| ['x', 'X', 'y', 'Y'][l]).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| match c {
            'x' => Ok(0),
            'X' => Ok(1),
            'y' => Ok(2),
            'Y' => Ok(3),
            _ => Err(Error::parse(format!("word {s:?}: letters are x, X, y, Y"))),
        })
        .collect()
}

/// One row of the decay table.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayRow {
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub word: String,
    pub trials: u64,
    /// Pairs whose word trace lies in a proper subfield.
    pub proper_subfield: u64,
}

impl DecayRow {
    pub fn fraction(&self) -> f64 {
        self.proper_subfield as f64 / self.trials as f64
    }

    /// `fraction * q^(1/2)`.
    pub fn scaled_fraction(&self) -> f64 {
        self.fraction() * (self.q as f64).sqrt()
    }

    pub fn wilson95(&self) -> Interval {
        wilson(self.proper_subfield, self.trials, Z95)
    }
}

fn in_proper_subfield(
    space: &MatrixSpace,
    x: &SquareMatrix,
    y: &SquareMatrix,
    word: &[usize],
) -> Result<bool> {
    let k = space.field();
    let gens = [x.clone(), y.clone()];
    let inv = [space.inverse(x)?, space.inverse(y)?];
    let t = space.trace(&eval_word(space, &gens, &inv, word));
    Ok(k.minimal_degree(t) < k.a())
}

fn check_degree(a: u32) -> Result<()> {
    if a < 2 {
        return Err(Error::invalid("degree 1 has no proper subfield"));
    }
    Ok(())
}

/// For each `q = p^a`, the fraction of uniform pairs in `SL2(q)^2` whose
/// word trace lies in a proper subfield of `F_q`. Each `q` uses the seed
/// `sub_seed(seed, q, "decay")`.
pub fn subfield_trace_decay(
    p: u64,
    degrees: &[u32],
    word: &[usize],
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<DecayRow>> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let mut rows = Vec::new();
    for &a in degrees {
        check_degree(a)?;
        let spec = GroupSpec::new(Family::SL2, FiniteField::new(p, a)?, false);
        let q = spec.field().order();
        let s = sub_seed(seed, q, "decay");
        let count = in_pool(threads, || {
            (0..trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = trial_rng(s, i);
                    let x = sample_uniform(&spec, &mut rng);
                    let y = sample_uniform(&spec, &mut rng);
                    in_proper_subfield(spec.space(), &x, &y, word).map(u64::from)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))
        })??;
        rows.push(DecayRow {
            p,
            a,
            q,
            word: format_word(word),
            trials,
            proper_subfield: count,
        });
    }
    Ok(rows)
}

/// The same fraction over all of `SL2(q)^2`.
pub fn decay_exact(p: u64, a: u32, word: &[usize], cap: u128) -> Result<DecayRow> {
    check_degree(a)?;
    let spec = GroupSpec::new(Family::SL2, FiniteField::new(p, a)?, false);
    let elems = enumerate_group(&spec, cap)?;
    let count: u64 = elems
        .par_iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| in_proper_subfield(spec.space(), x, y, word).map(u64::from))
                .sum::<Result<u64>>()
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let n = elems.len() as u64;
    Ok(DecayRow {
        p,
        a,
        q: spec.field().order(),
        word: format_word(word),
        trials: n * n,
        proper_subfield: count,
    })
}
