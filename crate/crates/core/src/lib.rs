//! Software model of operand-folding accumulate-and-add multipliers.
//!
//! - [`bitnum`]: unsigned big integers with bit addressing.
//! - [`folding`]: the folded multiplier with per-phase addition counts.
//! - [`baselines`]: classical and canonical signed-digit multipliers.
//! - [`costmodel`]: closed-form costs and the optimal-degree table.
//! - [`density`]: density recursion and split-tree simulation.
//! - [`hdlgen`]: VHDL emission.
//! - [`trials`]: seeded Monte Carlo runs.
//! - [`cli`]: the `foldmul` command line.

pub mod baselines;
pub mod bitnum;
pub mod cli;
pub mod costmodel;
pub mod density;
pub mod folding;
pub mod hdlgen;
pub mod trials;

pub use bitnum::{random_bitnum, BitNum, BitNumError};
pub use folding::{multiply, CostLedger, Decomposition, FoldError};
