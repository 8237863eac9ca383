//! Integer families whose S-parts are scanned (sparse-digit integers, linear
//! recurrences, power sums, polynomial and binary-form values), a bounded
//! S-unit equation solver and the almost-power frontier.

mod recurrence;
mod scans;
mod sparse;
mod sunit;

use thiserror::Error;

use crate::arith::ArithError;

pub use recurrence::{
    companion_value, dominant_root, rational_roots, recurrence_values, srl_delta, DeltaOutcome,
    Dominance, DominantRootReport, RecurrenceSpec,
};
pub use scans::{
    almost_power_frontier, binary_form_scan, poly_value_scan, power_sum_grid, spart_series,
    t_unit_sum_scan, FormRow, FrontierRow, PolyRow, PowerSumCase, PowerSumPoint, TUnitSum,
};
pub use sparse::{sparse_digit_sequence, sparse_digits_below, SparseDigitSpec};
pub use sunit::{sunit_solve, SUnitReport, SUnitSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
