//! Operand-folding accumulate-and-add multiplication.
//!
//! The multiplier `B` (width `m`) is cut into `k` parts `B_k ‖ … ‖ B_1` of
//! `n = ⌈m/k⌉` bits each. Reading the parts as the rows of a `k × n` bit
//! array, every column is a pattern `(i_k … i_1)`. A single pass over the `n`
//! columns adds the shifted multiplicand into the accumulator named by the
//! column pattern, so cell `v` ends up holding `A × B_(v)` where `B_(v)` is the
//! characteristic vector of pattern `v`. A decremental combination then
//! recovers every `A × B_j`, and a Horner pass reassembles `A × B`.
//!
//! Every addition between multi-bit values is counted in a [`CostLedger`].
//! Shifts are tallied separately and never enter the total.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bitnum::BitNum;

/// Largest supported decomposition degree; the bank holds `2^k - 1` cells.
pub const MAX_DEGREE: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("decomposition degree k must satisfy 1 <= k <= {max}, got {k}")]
    InvalidDegree { k: u32, max: u32 },
    #[error("operand width m must be at least 1")]
    InvalidWidth,
    #[error("operand has {bits} significant bits but the declared width is m = {m}")]
    OperandTooWide { bits: usize, m: usize },
}

/// `B` split into `k` zero-padded parts of `n` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    m: usize,
    k: u32,
    n: usize,
    parts: Vec<BitNum>,
}

impl Decomposition {
    pub fn split(b: &BitNum, m: usize, k: u32) -> Result<Self, FoldError> {
        if k < 1 {
            return Err(FoldError::InvalidDegree { k, max: MAX_DEGREE });
        }
        if m < 1 {
            return Err(FoldError::InvalidWidth);
        }
        if b.bit_length() > m {
            return Err(FoldError::OperandTooWide {
                bits: b.bit_length(),
                m,
            });
        }
        let n = m.div_ceil(k as usize);
        let parts = (0..k as usize).map(|i| b.extract(i * n, n)).collect();
        Ok(Self { m, k, n, parts })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Part width `⌈m/k⌉`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero bits carried at the top of `B_k`.
    pub fn padding(&self) -> usize {
        self.n * self.k as usize - self.m
    }

    /// `B_j` for `1 <= j <= k`.
    pub fn part(&self, j: u32) -> &BitNum {
        &self.parts[j as usize - 1]
    }

    pub fn parts(&self) -> &[BitNum] {
        &self.parts
    }

    /// Pattern `(b_r^k … b_r^1)` of column `r`.
    pub fn column(&self, r: usize) -> usize {
        self.parts
            .iter()
            .enumerate()
            .fold(0, |acc, (j, p)| acc | (usize::from(p.bit(r)) << j))
    }

    /// `Σ 2^{n(j-1)} B_j`.
    pub fn reassemble(&self) -> BitNum {
        self.parts
            .iter()
            .enumerate()
            .fold(BitNum::zero(), |acc, (j, p)| acc + (p << (j * self.n)))
    }
}

/// Nonzero column pattern `(i_k … i_1)` read as an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharacteristicIndex(usize);

impl CharacteristicIndex {
    pub fn new(value: usize, k: u32) -> Option<Self> {
        (value != 0 && value < (1usize << k)).then_some(Self(value))
    }

    pub fn value(self) -> usize {
        self.0
    }

    /// `i_j`, the coordinate for part `j` (1-based).
    pub fn has_part(self, j: u32) -> bool {
        (self.0 >> (j - 1)) & 1 == 1
    }
}

impl fmt::Display for CharacteristicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic vector of `pattern` (zero allowed): bit `r` is set iff
/// column `r` equals `pattern`.
pub fn characteristic_vector(d: &Decomposition, pattern: usize) -> BitNum {
    d.parts.iter().enumerate().fold(BitNum::ones(d.n), |acc, (j, part)| {
        if (pattern >> j) & 1 == 1 {
            &acc & part
        } else {
            acc.and_not(part)
        }
    })
}

/// All nonzero characteristic vectors. Inspection only; the multiply path
/// never builds them.
pub fn characteristic_vectors(d: &Decomposition) -> BTreeMap<CharacteristicIndex, BitNum> {
    (1..1usize << d.k)
        .map(|v| (CharacteristicIndex(v), characteristic_vector(d, v)))
        .collect()
}

/// The `2^k - 1` working values `C_(1) … C_(2^k-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccumulatorBank {
    k: u32,
    cells: Vec<BitNum>,
}

impl AccumulatorBank {
    pub fn new(k: u32) -> Self {
        Self {
            k,
            cells: vec![BitNum::zero(); (1usize << k) - 1],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, index: CharacteristicIndex) -> &BitNum {
        &self.cells[index.0 - 1]
    }

    /// `C_(value)`; panics for `value == 0` or out of range.
    pub fn cell(&self, value: usize) -> &BitNum {
        assert!(value != 0, "C_(0) is never stored");
        &self.cells[value - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (CharacteristicIndex, &BitNum)> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| (CharacteristicIndex(i + 1), c))
    }

    pub fn max_cell_bits(&self) -> usize {
        self.cells.iter().map(BitNum::bit_length).max().unwrap_or(0)
    }

    pub fn total_bits(&self) -> usize {
        self.cells.iter().map(BitNum::bit_length).sum()
    }

    fn add_into(&mut self, target: usize, value: &BitNum) -> &BitNum {
        let cell = &mut self.cells[target - 1];
        *cell += value;
        cell
    }

    fn fold_into(&mut self, target: usize, source: usize) -> &BitNum {
        let src = self.cells[source - 1].clone();
        self.add_into(target, &src)
    }
}

/// Addition counts for one multiplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostLedger {
    /// Step 2: one per nonzero column.
    pub accumulate_adds: u64,
    /// Step 3: `2^{k+1} - 2k - 2`.
    pub combine_adds: u64,
    /// Step 4: `k - 1`.
    pub horner_adds: u64,
    /// Diagnostic only: shifts of `A` in step 2 plus the Horner shifts.
    pub shifts: u64,
    /// Diagnostic only: widest accumulator cell seen.
    pub peak_cell_bits: usize,
    /// Diagnostic only: largest summed width of the bank.
    pub peak_bank_bits: usize,
}

impl CostLedger {
    pub fn total(&self) -> u64 {
        self.accumulate_adds + self.combine_adds + self.horner_adds
    }
}

impl fmt::Display for CostLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "accumulate {}, combine {}, horner {}, total {} (shifts {})",
            self.accumulate_adds,
            self.combine_adds,
            self.horner_adds,
            self.total(),
            self.shifts
        )
    }
}

/// One recorded state change of the multiply path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Column `column` had pattern `index`; `value` is the cell after the add.
    Accumulate { column: usize, index: usize, value: BitNum },
    /// `C_(target) += C_(source)`.
    Combine {
        target: usize,
        source: usize,
        value: BitNum,
    },
    /// Running Horner value after a shift-and-add.
    Horner { value: BitNum },
}

fn accumulate_inner(a: &BitNum, d: &Decomposition, mut steps: Option<&mut Vec<Step>>) -> (AccumulatorBank, u64) {
    let mut bank = AccumulatorBank::new(d.k);
    let mut shifted = a.clone();
    let mut adds = 0;
    for r in 0..d.n {
        let col = d.column(r);
        if col != 0 {
            let value = bank.add_into(col, &shifted);
            adds += 1;
            if let Some(s) = steps.as_deref_mut() {
                s.push(Step::Accumulate {
                    column: r,
                    index: col,
                    value: value.clone(),
                });
            }
        }
        shifted = &shifted << 1;
    }
    (bank, adds)
}

/// Steps 1–2: a single pass over the columns.
///
/// Returns the bank (cell `v` = `A × B_(v)`) and the number of additions.
pub fn accumulate(a: &BitNum, d: &Decomposition) -> (AccumulatorBank, u64) {
    accumulate_inner(a, d, None)
}

fn combine_inner(bank: &mut AccumulatorBank, mut steps: Option<&mut Vec<Step>>) -> (u64, usize) {
    let mut adds = 0;
    let mut peak = 0;
    for i in (1..=bank.k).rev() {
        let head = 1usize << (i - 1);
        for j in 1..head {
            for target in [head, j] {
                let value = bank.fold_into(target, head + j);
                peak = peak.max(value.bit_length());
                adds += 1;
                if let Some(s) = steps.as_deref_mut() {
                    s.push(Step::Combine {
                        target,
                        source: head + j,
                        value: value.clone(),
                    });
                }
            }
        }
    }
    (adds, peak)
}

/// Step 3, decremental combination. Afterwards `C_(2^{j-1}) = A × B_j`.
///
/// All `2^{k+1} - 2k - 2` additions run, zero operands included.
pub fn combine(mut bank: AccumulatorBank) -> (AccumulatorBank, u64) {
    let (adds, _) = combine_inner(&mut bank, None);
    (bank, adds)
}

fn horner_inner(bank: &AccumulatorBank, n: usize, mut steps: Option<&mut Vec<Step>>) -> (BitNum, u64, u64) {
    let k = bank.k;
    let mut acc = bank.cell(1 << (k - 1)).clone();
    let (mut adds, mut shifts) = (0, 0);
    for i in (1..k).rev() {
        acc = &acc << n;
        acc += bank.cell(1 << (i - 1));
        shifts += 1;
        adds += 1;
        if let Some(s) = steps.as_deref_mut() {
            s.push(Step::Horner { value: acc.clone() });
        }
    }
    (acc, adds, shifts)
}

/// Step 4: `2^n(…(2^n C_(2^{k-1}) + C_(2^{k-2}))…) + C_(1)`.
///
/// Returns the product and the number of additions (`k - 1`).
pub fn horner_assemble(bank: &AccumulatorBank, n: usize) -> (BitNum, u64) {
    let (c, adds, _) = horner_inner(bank, n, None);
    (c, adds)
}

fn check_degree(k: u32) -> Result<(), FoldError> {
    if (1..=MAX_DEGREE).contains(&k) {
        Ok(())
    } else {
        Err(FoldError::InvalidDegree { k, max: MAX_DEGREE })
    }
}

fn multiply_inner(
    a: &BitNum,
    b: &BitNum,
    m: usize,
    k: u32,
    mut steps: Option<&mut Vec<Step>>,
) -> Result<(BitNum, CostLedger, Decomposition, AccumulatorBank, AccumulatorBank), FoldError> {
    check_degree(k)?;
    if a.bit_length() > m {
        return Err(FoldError::OperandTooWide {
            bits: a.bit_length(),
            m,
        });
    }
    let d = Decomposition::split(b, m, k)?;
    let (mut bank, accumulate_adds) = accumulate_inner(a, &d, steps.as_deref_mut());
    let after_accumulate = bank.clone();
    let accumulate_peak = bank.max_cell_bits();
    let (combine_adds, combine_peak) = combine_inner(&mut bank, steps.as_deref_mut());
    let (product, horner_adds, horner_shifts) = horner_inner(&bank, d.n, steps);
    let ledger = CostLedger {
        accumulate_adds,
        combine_adds,
        horner_adds,
        shifts: d.n as u64 + horner_shifts,
        peak_cell_bits: accumulate_peak.max(combine_peak),
        peak_bank_bits: bank.total_bits(),
    };
    Ok((product, ledger, d, after_accumulate, bank))
}

/// `A × B` by operand folding of degree `k`.
///
/// `k = 2` is the fold-in-half case; `k = 1` degenerates to classical
/// accumulate-and-add with ledger `(weight(B), 0, 0)`.
pub fn multiply(a: &BitNum, b: &BitNum, m: usize, k: u32) -> Result<(BitNum, CostLedger), FoldError> {
    multiply_inner(a, b, m, k, None).map(|(p, l, ..)| (p, l))
}

/// Same as [`multiply`] but also returns every state change in order.
pub fn multiply_steps(a: &BitNum, b: &BitNum, m: usize, k: u32) -> Result<(BitNum, CostLedger, Vec<Step>), FoldError> {
    let mut steps = Vec::new();
    let (p, l, ..) = multiply_inner(a, b, m, k, Some(&mut steps))?;
    Ok((p, l, steps))
}

/// Full record of one multiplication for display.
#[derive(Debug, Clone)]
pub struct Trace {
    pub a: BitNum,
    pub b: BitNum,
    pub decomposition: Decomposition,
    pub vectors: BTreeMap<CharacteristicIndex, BitNum>,
    pub zero_columns: BitNum,
    pub after_accumulate: AccumulatorBank,
    pub after_combine: AccumulatorBank,
    pub product: BitNum,
    pub ledger: CostLedger,
}

pub fn trace(a: &BitNum, b: &BitNum, m: usize, k: u32) -> Result<Trace, FoldError> {
    let (product, ledger, decomposition, after_accumulate, after_combine) = multiply_inner(a, b, m, k, None)?;
    Ok(Trace {
        a: a.clone(),
        b: b.clone(),
        vectors: characteristic_vectors(&decomposition),
        zero_columns: characteristic_vector(&decomposition, 0),
        decomposition,
        after_accumulate,
        after_combine,
        product,
        ledger,
    })
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.decomposition;
        let (k, n) = (d.k, d.n);
        let pattern = |v: usize| -> String {
            (0..k)
                .rev()
                .map(|j| if (v >> j) & 1 == 1 { '1' } else { '0' })
                .collect()
        };
        writeln!(f, "A = {:#b}", self.a)?;
        writeln!(f, "B = {:#b}", self.b)?;
        writeln!(f, "m = {}, k = {}, n = {}, padding = {}", d.m, k, n, d.padding())?;
        writeln!(f, "parts:")?;
        for j in (1..=k).rev() {
            writeln!(f, "  B_{j} = {}", d.part(j).to_binary_padded(n))?;
        }
        writeln!(f, "characteristic vectors:")?;
        writeln!(f, "  B_({}) = {}", pattern(0), self.zero_columns.to_binary_padded(n))?;
        for (idx, v) in &self.vectors {
            writeln!(f, "  B_({}) = {}", pattern(idx.value()), v.to_binary_padded(n))?;
        }
        writeln!(f, "bank after accumulate:")?;
        for (idx, c) in self.after_accumulate.iter() {
            writeln!(f, "  C_({}) = {:#b}", pattern(idx.value()), c)?;
        }
        writeln!(f, "bank after combine:")?;
        for (idx, c) in self.after_combine.iter() {
            writeln!(f, "  C_({}) = {:#b}", pattern(idx.value()), c)?;
        }
        writeln!(f, "product = {:#b} ({})", self.product, self.product)?;
        write!(f, "ledger: {}", self.ledger)
    }
}
