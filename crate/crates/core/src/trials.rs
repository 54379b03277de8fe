//! Seeded Monte Carlo trials.
//!
//! Trial `i` of a run with master seed `s` draws from ChaCha8 seeded with `s`
//! on stream `i`, so results do not depend on how trials are scheduled.
//! Per-trial measurements are integers and are reduced as exact sums.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::baselines::{classical_multiply, csd_recode};
use crate::bitnum::BitNum;
use crate::costmodel::{self, Rational};
use crate::folding::{multiply, FoldError};

/// Default master seed.
pub const DEFAULT_SEED: u64 = 0x5EED;

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Exact running sums of integer samples.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub count: u64,
    pub sum: u128,
    pub sum_sq: u128,
}

impl Summary {
    pub fn push(&mut self, x: u64) {
        self.count += 1;
        self.sum += u128::from(x);
        self.sum_sq += u128::from(x) * u128::from(x);
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let centered = self.sum_sq as f64 - (self.sum as f64) * (self.sum as f64) / n;
        (centered / (n - 1.0)).max(0.0)
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        (self.variance() / self.count as f64).sqrt()
    }

    /// `|mean - expected| <= sigmas · stderr`.
    pub fn within(&self, expected: f64, sigmas: f64) -> bool {
        (self.mean() - expected).abs() <= sigmas * self.stderr()
    }
}

impl FromIterator<u64> for Summary {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut s = Summary::default();
        for x in iter {
            s.push(x);
        }
        s
    }
}

/// Runs `f` on trials `0..trials` in parallel and sums the results.
pub fn run_trials<F>(trials: u64, seed: u64, f: F) -> Summary
where
    F: Fn(&mut ChaCha8Rng) -> u64 + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut s = Summary::default();
            s.push(f(&mut trial_rng(seed, i)));
            s
        })
        .reduce(Summary::default, Summary::merge)
}

/// Measured versus predicted cost for one `(m, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: u64,
    pub k: u32,
    pub n: u64,
    pub f_avg: Rational,
    pub f_wst: u128,
    pub measured: Summary,
    pub seed: u64,
}

/// Folded-multiplier ledger totals over random `m`-bit operand pairs.
pub fn bench_folded(m: u64, k: u32, trials: u64, seed: u64) -> Result<BenchRow, FoldError> {
    multiply(&BitNum::zero(), &BitNum::zero(), m as usize, k)?;
    let row = costmodel::CostModelRow::new(m, k).expect("degree already validated");
    let width = m as usize;
    let measured = run_trials(trials, seed, |rng| {
        let a = BitNum::random(width, rng);
        let b = BitNum::random(width, rng);
        multiply(&a, &b, width, k).expect("validated").1.total()
    });
    Ok(BenchRow {
        m,
        k,
        n: row.n,
        f_avg: row.f_avg,
        f_wst: row.f_wst,
        measured,
        seed,
    })
}

/// Classical accumulate-and-add addition counts over random `m`-bit operands.
pub fn bench_classical(m: u64, trials: u64, seed: u64) -> Summary {
    run_trials(trials, seed, |rng| {
        let a = BitNum::random(m as usize, rng);
        let b = BitNum::random(m as usize, rng);
        classical_multiply(&a, &b).1
    })
}

/// NAF nonzero-digit counts of random `m`-bit values.
pub fn bench_csd_weight(m: u64, trials: u64, seed: u64) -> Summary {
    run_trials(trials, seed, |rng| {
        csd_recode(&BitNum::random(m as usize, rng)).nonzero_count()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_statistics() {
        let s: Summary = [2u64, 4, 4, 4, 5, 5, 7, 9].into_iter().collect();
        assert_eq!(s.mean(), 5.0);
        assert!((s.variance() - 32.0 / 7.0).abs() < 1e-12);
        assert!((s.stderr() - (32.0 / 7.0 / 8.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn streams_are_independent_of_schedule() {
        let a = run_trials(64, 9, |rng| BitNum::random(40, rng).weight());
        let b: Summary = (0..64)
            .map(|i| BitNum::random(40, &mut trial_rng(9, i)).weight())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn bench_is_reproducible() {
        let r1 = bench_folded(64, 3, 20, 5).unwrap();
        let r2 = bench_folded(64, 3, 20, 5).unwrap();
        assert_eq!(r1, r2);
        assert!(bench_folded(64, 0, 1, 5).is_err());
    }
}
