//! Closed-form addition counts for the folded multiplier, optimal-degree
//! selection, and the optimal-k table.
//!
//! Average cost with part width `n = ⌈m/k⌉`:
//!
//! ```text
//! F_avg(m, k) = (2^k - 1)/2^k · n + 2^{k+1} - k - 3
//! F_wst(m, k) = n + 2^{k+1} - k - 3
//! ```
//!
//! The first term is the expected number of nonzero columns, the constant is
//! the combination cost `2^{k+1} - 2k - 2` plus the `k - 1` Horner additions.
//! All values are kept as exact rationals.

use std::fmt;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use thiserror::Error;

pub type Rational = Ratio<u128>;

/// Largest degree the closed forms accept; keeps `2^{k+1}` inside `u128`.
pub const MAX_MODEL_DEGREE: u32 = 60;

/// Default upper bound for optimal-degree searches.
pub const DEFAULT_K_MAX: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostModelError {
    #[error("operand width m must be at least 1")]
    InvalidWidth,
    #[error("degree k must satisfy 1 <= k <= {MAX_MODEL_DEGREE}, got {0}")]
    InvalidDegree(u32),
}

fn check(m: u64, k: u32) -> Result<(), CostModelError> {
    if m < 1 {
        return Err(CostModelError::InvalidWidth);
    }
    if !(1..=MAX_MODEL_DEGREE).contains(&k) {
        return Err(CostModelError::InvalidDegree(k));
    }
    Ok(())
}

fn part_width(m: u64, k: u32) -> u64 {
    m.div_ceil(u64::from(k))
}

/// Fixed part of the cost: combination plus Horner additions.
fn fixed_cost(k: u32) -> u128 {
    (1u128 << (k + 1)) - u128::from(k) - 3
}

fn column_density(k: u32) -> Rational {
    Rational::new((1u128 << k) - 1, 1u128 << k)
}

pub fn f_avg(m: u64, k: u32) -> Result<Rational, CostModelError> {
    check(m, k)?;
    Ok(column_density(k) * u128::from(part_width(m, k)) + fixed_cost(k))
}

/// Exact expected total for uniformly random `m`-bit multipliers.
///
/// Differs from [`f_avg`] only when `k` does not divide `m`. Column `r` then
/// holds `c_r < k` real bits, the rest being zero padding, and is nonzero
/// with probability `1 - 2^{-c_r}`.
pub fn expected_total(m: u64, k: u32) -> Result<Rational, CostModelError> {
    check(m, k)?;
    let n = part_width(m, k);
    let columns = (0..n)
        .map(|r| {
            let real = (0..u64::from(k)).filter(|j| j * n + r < m).count() as u32;
            if real == 0 {
                Rational::from(0)
            } else {
                column_density(real)
            }
        })
        .fold(Rational::from(0), |acc, p| acc + p);
    Ok(columns + fixed_cost(k))
}

pub fn f_wst(m: u64, k: u32) -> Result<u128, CostModelError> {
    check(m, k)?;
    Ok(u128::from(part_width(m, k)) + fixed_cost(k))
}

/// `F_avg` with the ceiling dropped: `(2^k - 1)/(k 2^k) · m + 2^{k+1} - k - 3`.
///
/// This is the affine form tabulated per degree; unlike [`f_avg`] it is
/// smooth in `m`, so the optimal degree is monotone.
pub fn f_avg_affine(m: u64, k: u32) -> Result<Rational, CostModelError> {
    check(m, k)?;
    Ok(avg_coefficient(k) * u128::from(m) + fixed_cost(k))
}

/// Slope of the average-cost affine form, `(2^k - 1)/(k 2^k)`.
pub fn avg_coefficient(k: u32) -> Rational {
    column_density(k) / u128::from(k)
}

/// Slope of the worst-case affine form, `1/k`.
pub fn worst_coefficient(k: u32) -> Rational {
    Rational::new(1, u128::from(k))
}

/// Degree in `1..=k_max` minimizing the affine average cost.
///
/// Ties go to the larger degree; at a tie the two affine forms cross and the
/// larger degree is strictly better for every larger `m`.
pub fn optimal_k(m: u64, k_max: u32) -> u32 {
    let k_max = k_max.clamp(1, MAX_MODEL_DEGREE);
    let m = m.max(1);
    (1..=k_max)
        .map(|k| (f_avg_affine(m, k).unwrap(), k))
        .min_by(|(a, ka), (b, kb)| a.cmp(b).then(kb.cmp(ka)))
        .map(|(_, k)| k)
        .unwrap()
}

/// Degree in `1..=k_max` minimizing the exact (ceiling) `F_avg`, ties toward
/// the smaller degree.
///
/// Near each crossover the ceiling makes this oscillate between neighbours.
pub fn optimal_k_exact(m: u64, k_max: u32) -> u32 {
    let k_max = k_max.clamp(1, MAX_MODEL_DEGREE);
    let m = m.max(1);
    (1..=k_max)
        .map(|k| (f_avg(m, k).unwrap(), k))
        .min()
        .map(|(_, k)| k)
        .unwrap()
}

/// Limit of `F_avg(m,1)/F_avg(m,k)` as `m → ∞`: `k 2^{k-1} / (2^k - 1)`.
pub fn asymptotic_ratio(k: u32) -> Rational {
    assert!((1..=MAX_MODEL_DEGREE).contains(&k));
    Rational::new(u128::from(k) << (k - 1), (1u128 << k) - 1)
}

/// Decremental combination cost `2^{k+1} - 2k - 2`.
pub fn combine_cost(k: u32) -> u128 {
    assert!((1..=MAX_MODEL_DEGREE).contains(&k));
    (1u128 << (k + 1)) - 2 * u128::from(k) - 2
}

/// Combination cost of the earlier per-part method, `k(2^{k-1} - 1)`.
pub fn yen_cost(k: u32) -> u128 {
    assert!((1..=MAX_MODEL_DEGREE).contains(&k));
    u128::from(k) * ((1u128 << (k - 1)) - 1)
}

/// Accumulator footprint `(2^k - 1)(m + n)` in bits.
pub fn memory_bits(m: u64, k: u32) -> Result<u128, CostModelError> {
    check(m, k)?;
    Ok(((1u128 << k) - 1) * u128::from(m + part_width(m, k)))
}

/// Closed-form data for one `(m, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModelRow {
    pub m: u64,
    pub k: u32,
    pub n: u64,
    pub f_avg: Rational,
    pub f_wst: u128,
    pub combine_cost: u128,
    pub yen_cost: u128,
    pub memory_bits: u128,
}

impl CostModelRow {
    pub fn new(m: u64, k: u32) -> Result<Self, CostModelError> {
        Ok(Self {
            m,
            k,
            n: part_width(m, k),
            f_avg: f_avg(m, k)?,
            f_wst: f_wst(m, k)?,
            combine_cost: combine_cost(k),
            yen_cost: yen_cost(k),
            memory_bits: memory_bits(m, k)?,
        })
    }
}

/// One row of the optimal-k table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub k: u32,
    pub m_range: RangeInclusive<u64>,
    pub avg_coefficient: Rational,
    pub worst_coefficient: Rational,
    pub constant: u128,
}

impl Table1Row {
    pub fn avg_form(&self) -> String {
        format!("{}m+{}", fixed3(&self.avg_coefficient), self.constant)
    }

    pub fn worst_form(&self) -> String {
        format!("{}m+{}", fixed3(&self.worst_coefficient), self.constant)
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} {}<=m<={} avg {} worst {}",
            self.k,
            self.m_range.start(),
            self.m_range.end(),
            self.avg_form(),
            self.worst_form()
        )
    }
}

/// Three-decimal rendering with round-half-up, done in integers.
pub fn fixed3(r: &Rational) -> String {
    let scaled = (r.numer() * 2000 + r.denom()) / (2 * r.denom());
    format!("{}.{:03}", scaled / 1000, scaled % 1000)
}

/// Optimal-k table for degrees 2 through 5, ranges found by scanning
/// `m = 1..=4096` with [`optimal_k`] and `k_max = 8`.
pub fn table1() -> Vec<Table1Row> {
    let optimal: Vec<(u64, u32)> = (1..=4096).map(|m| (m, optimal_k(m, DEFAULT_K_MAX))).collect();
    (2..=5)
        .map(|k| {
            let ms: Vec<u64> = optimal.iter().filter(|(_, o)| *o == k).map(|(m, _)| *m).collect();
            Table1Row {
                k,
                m_range: ms[0]..=*ms.last().unwrap(),
                avg_coefficient: avg_coefficient(k),
                worst_coefficient: worst_coefficient(k),
                constant: fixed_cost(k),
            }
        })
        .collect()
}

/// `F_avg(m,1) / F_avg(m,k)`: improvement over classical accumulate-and-add.
pub fn classical_improvement(m: u64, k: u32) -> Result<Rational, CostModelError> {
    Ok(f_avg(m, 1)? / f_avg(m, k)?)
}

/// `(m/3) / F_avg(m,k)`: improvement over canonical signed-digit
/// multiplication, whose average weight is `m/3`.
pub fn csd_improvement(m: u64, k: u32) -> Result<Rational, CostModelError> {
    Ok(Rational::new(u128::from(m), 3) / f_avg(m, k)?)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
