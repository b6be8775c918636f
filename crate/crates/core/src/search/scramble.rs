use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Target;

/// Arrangements per trial before the trial is abandoned.
pub const ARRANGEMENT_CAP: u32 = 10_000;

const WORDS: usize = 16;
const ALL_PAIRS: u128 = (1u128 << (WORDS * (WORDS - 1) / 2)) - 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantileSummary {
    pub median: u32,
    pub p10: u32,
    pub p90: u32,
    pub mean: f64,
    pub min: u32,
    pub max: u32,
}

impl QuantileSummary {
    fn of(sorted: &[u32]) -> Self {
        let rank = |q: f64| {
            let idx = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
            sorted[idx]
        };
        Self {
            median: rank(0.5),
            p10: rank(0.1),
            p90: rank(0.9),
            mean: sorted.iter().map(|&c| c as f64).sum::<f64>() / sorted.len() as f64,
            min: sorted[0],
            max: sorted[sorted.len() - 1],
        }
    }
}

/// Arrangements of a 4x4 grid needed until every pair of the 16 labels has
/// been adjacent at least once.
///
/// The top-level quantiles and histogram count the initial arrangement as
/// arrangement 1; `scrambles_only` counts scrambles after it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScrambleStats {
    pub trials: u64,
    pub rng_seed: u64,
    pub median: u32,
    pub p10: u32,
    pub p90: u32,
    pub completion_counts: BTreeMap<u32, u64>,
    pub include_initial: QuantileSummary,
    pub scrambles_only: QuantileSummary,
    pub cap_hits: u64,
}

fn pair_bit(a: usize, b: usize) -> u128 {
    let (a, b) = (a.min(b), a.max(b));
    1u128 << (a * (2 * WORDS - a - 1) / 2 + (b - a - 1))
}

fn run_trial(pairs: &[(usize, usize)], seed: u64, trial: u64) -> u32 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut labels: Vec<usize> = (0..WORDS).collect();
    let mut seen = 0u128;
    for count in 1..=ARRANGEMENT_CAP {
        labels.shuffle(&mut rng);
        for &(x, y) in pairs {
            seen |= pair_bit(labels[x], labels[y]);
        }
        if seen == ALL_PAIRS {
            return count;
        }
    }
    ARRANGEMENT_CAP
}

/// Runs `trials` independent trials. Trial t draws from the ChaCha8 stream
/// t of `rng_seed`, so results do not depend on scheduling.
pub fn scramble_simulation(trials: u64, rng_seed: u64) -> Result<ScrambleStats> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let pairs = Target::path(4, 4).position_edges();
    let mut counts: Vec<u32> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(&pairs, rng_seed, t))
        .collect();
    let cap_hits = counts.iter().filter(|&&c| c == ARRANGEMENT_CAP).count() as u64;
    let mut completion_counts = BTreeMap::new();
    for &c in &counts {
        *completion_counts.entry(c).or_insert(0u64) += 1;
    }
    counts.sort_unstable();
    let include_initial = QuantileSummary::of(&counts);
    let scrambles: Vec<u32> = counts.iter().map(|&c| c - 1).collect();
    Ok(ScrambleStats {
        trials,
        rng_seed,
        median: include_initial.median,
        p10: include_initial.p10,
        p90: include_initial.p90,
        completion_counts,
        include_initial,
        scrambles_only: QuantileSummary::of(&scrambles),
        cap_hits,
    })
}
