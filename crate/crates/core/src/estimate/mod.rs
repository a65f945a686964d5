//! Exact and Monte Carlo generation probabilities, and the subfield trace
//! decay experiment.

mod decay;
mod exact;
mod monte;
mod stats;
mod sweep;

pub use decay::{decay_exact, format_word, parse_word, subfield_trace_decay, DecayRow, COMMUTATOR};
pub use exact::{exact_p, exact_p_classes, exact_whole, generates_by_closure, ExactResult};
pub use monte::{monte_carlo_p, EstimateReport, McOptions, PairSource, ProperCounts};
pub use stats::{rate_constant, sub_seed, trial_rng, wilson, Interval, Z95};
pub use sweep::{sweep, SweepMode, SweepSpec};

/// Which pairs a probability refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Whole,
    /// All elements of orders `r` and `s`.
    Orders {
        r: u128,
        s: u128,
    },
    /// Single classes, by label.
    Classes {
        r: u128,
        s: u128,
        c: String,
        d: String,
    },
}

impl Source {
    pub fn orders(&self) -> Option<(u128, u128)> {
        match self {
            Source::Whole => None,
            Source::Orders { r, s } | Source::Classes { r, s, .. } => Some((*r, *s)),
        }
    }
}

/// An exact or estimated probability, one CSV row.
#[derive(Clone, Debug, PartialEq)]
pub enum Record {
    Exact(ExactResult),
    Estimate(EstimateReport),
}

impl Record {
    /// Field order and point probability; `None` for an empty exact row.
    pub fn q_point(&self) -> Option<(u64, f64)> {
        match self {
            Record::Exact(e) if e.is_empty() => None,
            Record::Exact(e) => Some((e.spec.field().order(), e.to_f64())),
            Record::Estimate(e) => Some((e.spec.field().order(), e.point)),
        }
    }
}
