use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// A closed interval in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }
}

/// Wilson score interval for `k` successes in `n` trials; `[0, 1]` when
/// `n = 0`.
pub fn wilson(k: u64, n: u64, z: f64) -> Interval {
    if n == 0 {
        return Interval { lo: 0.0, hi: 1.0 };
    }
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    // pin the ends exactly at the extremes so the point is always inside
    let lo = if k == 0 {
        0.0
    } else {
        (centre - half).clamp(0.0, p)
    };
    let hi = if k == n {
        1.0
    } else {
        (centre + half).clamp(p, 1.0)
    };
    Interval { lo, hi }
}

/// Seed for one value of `q` in a named experiment: the first eight bytes
/// (little endian) of SHA-256 over `genprob/subseed/v1`, the master seed
/// and `q` as little-endian `u64`, and the experiment name.
pub fn sub_seed(master: u64, q: u64, experiment: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(b"genprob/subseed/v1");
    h.update(master.to_le_bytes());
    h.update(q.to_le_bytes());
    h.update(experiment.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest has 32 bytes"))
}

/// The random stream of trial `i`: ChaCha8 keyed by `seed`, stream `i`.
/// Trials never share state, so any partition of the index range gives
/// the same draws.
pub fn trial_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Least-squares `c` in `1 - p = c / sqrt(q)` over `(q, p)` points, the
/// fitted constant of the `1 - O(q^(-1/2))` approach to 1. `None` without
/// points.
pub fn rate_constant(points: &[(u64, f64)]) -> Option<f64> {
    if points.is_empty() {
        return None;
    }
    let (num, den) = points.iter().fold((0.0, 0.0), |(n, d), &(q, p)| {
        let x = 1.0 / (q as f64).sqrt();
        (n + x * (1.0 - p), d + x * x)
    });
    Some(num / den)
}
