//! Density dynamics of repeated halving splits.
//!
//! Splitting a block of length `b` and density `δ` into its high and low
//! halves yields three blocks of length `b/2`: `B_(10)` and `B_(01)` with
//! density `δ(1-δ)`, and `B_(11)` with density `δ²`. Since `B_(11)` is
//! counted once instead of twice, the split saves `weight(B_(11))`
//! additions, on average `δ²b/2`.
//!
//! Iterating the split on the `B_(10)`/`B_(01)` nodes only follows the
//! logistic recursion `δ_{i+1} = δ_i(1-δ_i)` and saves
//! `(b/2)·Σ δ_i² = (b/2)(δ_0 - δ_j)` after `j` levels. Splitting every block,
//! leaves included, covers the complete ternary tree.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitnum::BitNum;
use crate::folding::{characteristic_vector, Decomposition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityError {
    #[error("density {0} outside [{1}, {2}]")]
    OutOfRange(f64, f64, f64),
    #[error("block length {0} must be even to split")]
    OddLength(usize),
    #[error("block has {bits} significant bits but length {b}")]
    TooWide { bits: usize, b: usize },
    #[error("depth {depth} needs blocks of length divisible by 2^{depth}; got b = {b}")]
    TooDeep { depth: u32, b: usize },
}

/// Density of a block of given length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityState {
    delta: f64,
    length_b: usize,
}

impl DensityState {
    pub fn new(delta: f64, length_b: usize) -> Result<Self, DensityError> {
        if !(0.0..=0.5).contains(&delta) {
            return Err(DensityError::OutOfRange(delta, 0.0, 0.5));
        }
        Ok(Self { delta, length_b })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn length(&self) -> usize {
        self.length_b
    }

    /// State of the `B_(10)` / `B_(01)` children.
    pub fn step(&self) -> Self {
        Self {
            delta: self.delta * (1.0 - self.delta),
            length_b: self.length_b / 2,
        }
    }

    pub fn split_gain(&self) -> f64 {
        split_gain(self.delta, self.length_b)
    }
}

pub fn logistic_step(delta: f64) -> Result<f64, DensityError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(DensityError::OutOfRange(delta, 0.0, 1.0));
    }
    Ok(delta * (1.0 - delta))
}

/// `δ_0, δ_1, …, δ_n`.
pub fn logistic_orbit(delta0: f64, n: usize) -> Result<Vec<f64>, DensityError> {
    let mut out = Vec::with_capacity(n + 1);
    let mut d = delta0;
    logistic_step(d)?;
    out.push(d);
    for _ in 0..n {
        d = d * (1.0 - d);
        out.push(d);
    }
    Ok(out)
}

/// `Σ_{i<n} δ_i²` by direct summation; telescopes to `δ_0 - δ_n`.
pub fn telescoping_sum(delta0: f64, n: usize) -> Result<f64, DensityError> {
    if !(0.0..=0.5).contains(&delta0) {
        return Err(DensityError::OutOfRange(delta0, 0.0, 0.5));
    }
    let orbit = logistic_orbit(delta0, n)?;
    Ok(orbit[..n].iter().map(|d| d * d).sum())
}

/// Expected weight of `B_(11)`: `δ²b/2`.
pub fn split_gain(delta: f64, b: usize) -> f64 {
    delta * delta * b as f64 / 2.0
}

/// Expected saving of `j` node-only split levels: `(b/2)(δ_0 - δ_j)`.
pub fn tree_gain(delta0: f64, b: usize, j: usize) -> Result<f64, DensityError> {
    let mut d = logistic_step(delta0).map(|_| delta0)?;
    for _ in 0..j {
        d *= 1.0 - d;
    }
    Ok(b as f64 / 2.0 * (delta0 - d))
}

/// Expected residual weight after splitting every block `depth` times,
/// `R_d(δ) = R_{d-1}(δ(1-δ)) + R_{d-1}(δ²)/2` with `R_0(δ) = δ`, times `b`.
pub fn expected_full_residual(delta0: f64, b: usize, depth: u32) -> f64 {
    fn per_bit(d: u32, x: f64) -> f64 {
        if d == 0 {
            x
        } else {
            per_bit(d - 1, x * (1.0 - x)) + 0.5 * per_bit(d - 1, x * x)
        }
    }
    per_bit(depth, delta0) * b as f64
}

/// Result of halving one block.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitOutcome {
    pub b10: BitNum,
    pub b01: BitNum,
    pub b11: BitNum,
    pub half_length: usize,
}

impl SplitOutcome {
    /// Densities of `(b10, b01, b11)`.
    pub fn densities(&self) -> (f64, f64, f64) {
        let len = self.half_length as f64;
        (
            self.b10.weight() as f64 / len,
            self.b01.weight() as f64 / len,
            self.b11.weight() as f64 / len,
        )
    }

    /// Additions saved by the split.
    pub fn gain(&self) -> u64 {
        self.b11.weight()
    }
}

/// Halves `parent` (length `b`) via the degree-2 decomposition.
pub fn simulate_split(parent: &BitNum, b: usize) -> Result<SplitOutcome, DensityError> {
    if !b.is_multiple_of(2) || b == 0 {
        return Err(DensityError::OddLength(b));
    }
    if parent.bit_length() > b {
        return Err(DensityError::TooWide {
            bits: parent.bit_length(),
            b,
        });
    }
    let d = Decomposition::split(parent, b, 2).expect("validated width and degree");
    Ok(SplitOutcome {
        b10: characteristic_vector(&d, 0b10),
        b01: characteristic_vector(&d, 0b01),
        b11: characteristic_vector(&d, 0b11),
        half_length: b / 2,
    })
}

/// Which blocks get split again.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeMode {
    /// Only `B_(10)` and `B_(01)`; `B_(11)` stays a leaf.
    NodesOnly,
    /// All three children, building the complete ternary tree.
    FullRecursive,
}

/// Per-depth totals of a split tree.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelStats {
    pub depth: u32,
    /// Weight still to be processed: live blocks plus retired leaves.
    pub residual: u64,
    /// Cumulative additions saved.
    pub gain: u64,
    /// Summed weight of the blocks that are split at this depth.
    pub node_weight: u64,
    /// Summed length of those blocks.
    pub node_bits: u64,
}

impl LevelStats {
    /// Mean density of the blocks live at this depth.
    pub fn node_density(&self) -> f64 {
        self.node_weight as f64 / self.node_bits as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainReport {
    pub initial_weight: u64,
    pub levels: Vec<LevelStats>,
}

impl GainReport {
    pub fn gain(&self) -> u64 {
        self.levels.last().map_or(0, |l| l.gain)
    }

    pub fn residual(&self) -> u64 {
        self.levels.last().map_or(self.initial_weight, |l| l.residual)
    }
}

/// Splits `block` (length `b`) `depth` levels deep and reports per-level
/// residual weight and gain.
pub fn simulate_tree(block: &BitNum, b: usize, depth: u32, mode: TreeMode) -> Result<GainReport, DensityError> {
    if block.bit_length() > b {
        return Err(DensityError::TooWide {
            bits: block.bit_length(),
            b,
        });
    }
    if depth > 0 && (depth >= usize::BITS || !b.is_multiple_of(1usize << depth)) {
        return Err(DensityError::TooDeep { depth, b });
    }
    let levels = depth as usize + 1;
    let mut saved = vec![0u64; levels];
    let mut node_weight = vec![0u64; levels];
    let mut node_bits = vec![0u64; levels];

    fn visit(
        block: BitNum,
        len: usize,
        level: usize,
        mode: TreeMode,
        saved: &mut [u64],
        node_weight: &mut [u64],
        node_bits: &mut [u64],
    ) {
        node_weight[level] += block.weight();
        node_bits[level] += len as u64;
        if level + 1 == saved.len() {
            return;
        }
        let s = simulate_split(&block, len).expect("length divisible by 2^depth");
        saved[level + 1] += s.gain();
        let half = s.half_length;
        visit(s.b10, half, level + 1, mode, saved, node_weight, node_bits);
        visit(s.b01, half, level + 1, mode, saved, node_weight, node_bits);
        if mode == TreeMode::FullRecursive {
            visit(s.b11, half, level + 1, mode, saved, node_weight, node_bits);
        }
    }

    visit(block.clone(), b, 0, mode, &mut saved, &mut node_weight, &mut node_bits);

    let initial_weight = block.weight();
    let mut gain = 0;
    let levels = (0..levels)
        .map(|d| {
            gain += saved[d];
            LevelStats {
                depth: d as u32,
                residual: initial_weight - gain,
                gain,
                node_weight: node_weight[d],
                node_bits: node_bits[d],
            }
        })
        .collect();
    Ok(GainReport { initial_weight, levels })
}

/// How random blocks of a target density are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Independent Bernoulli(δ) bits.
    #[default]
    Bernoulli,
    /// Exactly `round(δb)` set bits at uniformly chosen positions.
    ExactWeight,
}

pub fn random_block(b: usize, delta: f64, sampling: Sampling, rng: &mut ChaCha8Rng) -> BitNum {
    match sampling {
        Sampling::Bernoulli => BitNum::from_bits((0..b).map(|_| rng.gen_bool(delta))),
        Sampling::ExactWeight => {
            let w = ((delta * b as f64).round() as usize).min(b);
            let mut bits = vec![false; b];
            for i in sample(rng, b, w) {
                bits[i] = true;
            }
            BitNum::from_bits(bits)
        }
    }
}

/// Which quantity a density series tracks against depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Mean node density per level versus `δ_i`.
    Iteration,
    /// Cumulative node-only gain versus `(b/2)(δ_0 - δ_d)`.
    NodesGain,
    /// Residual weight of the full ternary tree versus its expected value.
    FullResidual,
}

/// One CSV row: `depth_or_iter, predicted, measured, stderr, trials, seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub depth_or_iter: u32,
    pub predicted: f64,
    pub measured: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams {
    pub kind: SeriesKind,
    pub delta0: f64,
    pub b: usize,
    pub depth: u32,
    pub trials: u64,
    pub seed: u64,
    pub sampling: Sampling,
}

/// Monte Carlo series for `params`, one point per depth `0..=depth`.
pub fn density_series(params: &SeriesParams) -> Result<Vec<SeriesPoint>, DensityError> {
    use crate::trials::{trial_rng, Summary};
    use rayon::prelude::*;

    DensityState::new(params.delta0, params.b)?;
    let mode = match params.kind {
        SeriesKind::FullResidual => TreeMode::FullRecursive,
        _ => TreeMode::NodesOnly,
    };
    // validate depth/length once up front
    simulate_tree(&BitNum::zero(), params.b, params.depth, mode)?;

    let levels = params.depth as usize + 1;
    let per_level: Vec<Summary> = (0..params.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(params.seed, i);
            let block = random_block(params.b, params.delta0, params.sampling, &mut rng);
            let report = simulate_tree(&block, params.b, params.depth, mode).expect("validated");
            report
                .levels
                .iter()
                .map(|l| {
                    let mut s = Summary::default();
                    s.push(match params.kind {
                        SeriesKind::Iteration => l.node_weight,
                        SeriesKind::NodesGain => l.gain,
                        SeriesKind::FullResidual => l.residual,
                    });
                    s
                })
                .collect::<Vec<_>>()
        })
        .reduce(
            || vec![Summary::default(); levels],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        );

    let orbit = logistic_orbit(params.delta0, params.depth as usize)?;
    let b = params.b as f64;
    Ok(per_level
        .iter()
        .enumerate()
        .map(|(d, s)| {
            let (predicted, scale) = match params.kind {
                SeriesKind::Iteration => (orbit[d], b),
                SeriesKind::NodesGain => (b / 2.0 * (params.delta0 - orbit[d]), 1.0),
                SeriesKind::FullResidual => (expected_full_residual(params.delta0, params.b, d as u32), 1.0),
            };
            SeriesPoint {
                depth_or_iter: d as u32,
                predicted,
                measured: s.mean() / scale,
                stderr: s.stderr() / scale,
                trials: params.trials,
                seed: params.seed,
            }
        })
        .collect())
}
