use super::exact::{exact_p, exact_whole};
use super::monte::{monte_carlo_p, McOptions, PairSource};
use super::stats::sub_seed;
use super::Record;
use crate::error::{Error, Result};
use crate::gentest::Budget;
use crate::matgrp::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exact,
    MonteCarlo,
}

/// One experiment across a list of field orders.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Experiment name, part of every sub-seed.
    pub name: String,
    /// Family name such as `PSp4`.
    pub family: String,
    pub qs: Vec<u64>,
    pub mode: SweepMode,
    /// `None` for whole-group pairs, else the element orders `(r, s)`.
    pub orders: Option<(u128, u128)>,
    pub trials: u64,
    pub seed: u64,
    /// Enumeration cap for exact runs and closure cap for Monte Carlo.
    pub closure_cap: u128,
    pub threads: Option<usize>,
}

/// Runs the experiment for each `q`. Monte Carlo rows use the seed
/// `sub_seed(seed, q, name)`, which is also what the row records.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<Record>> {
    if spec.qs.is_empty() {
        return Err(Error::invalid("sweep needs at least one q"));
    }
    let mut out = Vec::with_capacity(spec.qs.len());
    for &q in &spec.qs {
        let g = GroupSpec::from_q(&spec.family, q)?;
        let rec = match spec.mode {
            SweepMode::Exact => Record::Exact(match spec.orders {
                Some((r, s)) => exact_p(&g, r, s, spec.closure_cap)?,
                None => exact_whole(&g, spec.closure_cap)?,
            }),
            SweepMode::MonteCarlo => {
                let source = match spec.orders {
                    Some((r, s)) => PairSource::Orders { r, s },
                    None => PairSource::WholeGroup,
                };
                let opts = McOptions {
                    trials: spec.trials,
                    seed: sub_seed(spec.seed, q, &spec.name),
                    threads: spec.threads,
                    budget: Budget {
                        closure_cap: spec.closure_cap,
                    },
                    class_cap: spec.closure_cap,
                };
                Record::Estimate(monte_carlo_p(&g, &source, &opts)?)
            }
        };
        out.push(rec);
    }
    Ok(out)
}
