use rand::Rng;
use rayon::prelude::*;

use super::stats::{trial_rng, wilson, Interval, Z95};
use super::Source;
use crate::error::{Error, Result};
use crate::gentest::{generation_verdict, Budget, Outcome, Witness};
use crate::matgrp::{
    classes_of_order, sample_class, sample_uniform, ClassSpec, GroupSpec, SquareMatrix, DEFAULT_CAP,
};

/// Where the two coordinates of a random pair come from.
#[derive(Clone, Debug)]
pub enum PairSource {
    WholeGroup,
    Classes(ClassSpec, ClassSpec),
    /// All elements of the given orders: a class is picked with probability
    /// proportional to its size, then a uniform member.
    Orders {
        r: u128,
        s: u128,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct McOptions {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub budget: Budget,
    /// Groups up to this order get their classes by enumeration.
    pub class_cap: u128,
}

impl McOptions {
    pub fn new(trials: u64, seed: u64) -> Self {
        McOptions {
            trials,
            seed,
            threads: None,
            budget: Budget::default(),
            class_cap: DEFAULT_CAP,
        }
    }
}

/// Proper verdicts grouped by witness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProperCounts {
    /// `Reducible` or `Borel`.
    pub reducible: u64,
    /// `SubfieldDegree`.
    pub subfield: u64,
    /// `Dihedral`, `ExceptionalA4S4A5` or `ClosureSize`.
    pub other: u64,
}

impl ProperCounts {
    pub fn total(&self) -> u64 {
        self.reducible + self.subfield + self.other
    }
}

/// Outcome of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    pub spec: GroupSpec,
    pub source: Source,
    pub trials: u64,
    pub generates: u64,
    pub proper: ProperCounts,
    pub inconclusive: u64,
    pub point: f64,
    pub wilson95: Interval,
    pub seed: u64,
}

impl EstimateReport {
    /// Builds the report, deriving the point estimate and interval.
    pub fn from_counts(
        spec: GroupSpec,
        source: Source,
        seed: u64,
        generates: u64,
        proper: ProperCounts,
        inconclusive: u64,
    ) -> Self {
        let trials = generates + proper.total() + inconclusive;
        EstimateReport {
            spec,
            source,
            trials,
            generates,
            proper,
            inconclusive,
            point: if trials == 0 {
                0.0
            } else {
                generates as f64 / trials as f64
            },
            wilson95: wilson(generates, trials, Z95),
            seed,
        }
    }

    /// Intervals with every inconclusive trial counted as proper, and as
    /// generating.
    pub fn bracket95(&self) -> (Interval, Interval) {
        (
            wilson(self.generates, self.trials, Z95),
            wilson(self.generates + self.inconclusive, self.trials, Z95),
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Counts {
    generates: u64,
    proper: ProperCounts,
    inconclusive: u64,
}

impl Counts {
    fn add(mut self, o: Counts) -> Counts {
        self.generates += o.generates;
        self.proper.reducible += o.proper.reducible;
        self.proper.subfield += o.proper.subfield;
        self.proper.other += o.proper.other;
        self.inconclusive += o.inconclusive;
        self
    }
}

/// Size-weighted mixture of classes.
struct Mixture {
    classes: Vec<ClassSpec>,
    cumulative: Vec<u128>,
}

impl Mixture {
    fn new(classes: Vec<ClassSpec>) -> Result<Self> {
        let mut cumulative = Vec::with_capacity(classes.len());
        let mut total = 0u128;
        for c in &classes {
            let size = c
                .size
                .ok_or_else(|| Error::invalid(format!("class {} has no size", c.label)))?;
            total += size;
            cumulative.push(total);
        }
        Ok(Mixture {
            classes,
            cumulative,
        })
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SquareMatrix {
        let total = *self.cumulative.last().expect("mixture is non-empty");
        let t = rng.gen_range(0..total);
        let i = self.cumulative.partition_point(|&c| c <= t);
        sample_class(&self.classes[i], rng)
    }
}

enum Sampler {
    Whole,
    Pair(Mixture, Mixture),
}

impl Sampler {
    fn draw<R: Rng + ?Sized>(&self, spec: &GroupSpec, rng: &mut R) -> [SquareMatrix; 2] {
        match self {
            Sampler::Whole => [sample_uniform(spec, rng), sample_uniform(spec, rng)],
            Sampler::Pair(c, d) => [c.sample(rng), d.sample(rng)],
        }
    }
}

fn build_sampler(
    spec: &GroupSpec,
    source: &PairSource,
    class_cap: u128,
) -> Result<(Sampler, Source)> {
    match source {
        PairSource::WholeGroup => Ok((Sampler::Whole, Source::Whole)),
        PairSource::Classes(c, d) => {
            for k in [c, d] {
                if &k.group != spec {
                    return Err(Error::invalid(format!(
                        "class {} belongs to {}, not {spec}",
                        k.label, k.group
                    )));
                }
            }
            // a single class needs no weight
            let one = |k: &ClassSpec| Mixture::new(vec![k.clone().with_size(1)]);
            let label = Source::Classes {
                r: c.order,
                s: d.order,
                c: c.label.clone(),
                d: d.label.clone(),
            };
            Ok((Sampler::Pair(one(c)?, one(d)?), label))
        }
        &PairSource::Orders { r, s } => {
            let mix = |t: u128| -> Result<Mixture> {
                let cls = classes_of_order(spec, t, class_cap)?;
                if cls.is_empty() {
                    return Err(Error::invalid(format!(
                        "{spec} has no elements of order {t}"
                    )));
                }
                Mixture::new(cls)
            };
            Ok((Sampler::Pair(mix(r)?, mix(s)?), Source::Orders { r, s }))
        }
    }
}

fn classify(spec: &GroupSpec, pair: &[SquareMatrix; 2], budget: &Budget) -> Result<Counts> {
    let v = generation_verdict(spec, pair, budget)?;
    let mut c = Counts::default();
    match (v.outcome, v.witness) {
        (Outcome::Generates, _) => c.generates = 1,
        (Outcome::Inconclusive, _) => c.inconclusive = 1,
        (Outcome::Proper, Some(Witness::Reducible | Witness::Borel)) => c.proper.reducible = 1,
        (Outcome::Proper, Some(Witness::SubfieldDegree(_))) => c.proper.subfield = 1,
        (Outcome::Proper, _) => c.proper.other = 1,
    }
    Ok(c)
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Estimates the probability that a random pair from `source` generates
/// the group. Trial `i` draws from its own stream (see [`trial_rng`]) and
/// counts are summed, so the report does not depend on the thread count.
pub fn monte_carlo_p(
    spec: &GroupSpec,
    source: &PairSource,
    opts: &McOptions,
) -> Result<EstimateReport> {
    if opts.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let (sampler, label) = build_sampler(spec, source, opts.class_cap)?;
    let counts = in_pool(opts.threads, || {
        (0..opts.trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(opts.seed, i);
                let pair = sampler.draw(spec, &mut rng);
                classify(spec, &pair, &opts.budget)
            })
            .try_reduce(Counts::default, |a, b| Ok(a.add(b)))
    })??;
    Ok(EstimateReport::from_counts(
        spec.clone(),
        label,
        opts.seed,
        counts.generates,
        counts.proper,
        counts.inconclusive,
    ))
}
