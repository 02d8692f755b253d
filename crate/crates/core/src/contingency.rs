//! 2×2 contingency tables: raw counts, normalized rates and their margins.
//!
//! Rows are predictions, columns are real classes:
//!
//! ```text
//!          +R    -R
//!   +P     tp    fp  | pp
//!   -P     fn    tn  | pn
//!          rp    rn  | 1
//! ```
//!
//! `rp` is the Prevalence of real positives and `pp` the label Bias of the
//! predictor. Counts are exact integers; rates are floating point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};
use crate::scalar::Scalar;

/// Raw cell counts `A` (TP), `B` (FP), `C` (FN), `D` (TN).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContingencyCounts {
    tp_count: u64,
    fp_count: u64,
    fn_count: u64,
    tn_count: u64,
}

impl ContingencyCounts {
    /// Builds a table from the four cells. At least one cell must be nonzero.
    pub fn from_counts(a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        if a == 0 && b == 0 && c == 0 && d == 0 {
            return Err(EvalError::EmptyTable);
        }
        Ok(Self {
            tp_count: a,
            fp_count: b,
            fn_count: c,
            tn_count: d,
        })
    }

    /// Like [`from_counts`](Self::from_counts) but accepts signed input,
    /// rejecting negative cells.
    pub fn from_signed(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let check = |cell: &'static str, value: i64| {
            u64::try_from(value).map_err(|_| EvalError::NegativeCount { cell, value })
        };
        Self::from_counts(check("A", a)?, check("B", b)?, check("C", c)?, check("D", d)?)
    }

    /// Cross-tabulates paired gold and predicted labels (`true` is positive).
    pub fn from_labels(gold: &[bool], pred: &[bool]) -> Result<Self> {
        if gold.len() != pred.len() {
            return Err(EvalError::LengthMismatch {
                gold: gold.len(),
                other: pred.len(),
            });
        }
        if gold.is_empty() {
            return Err(EvalError::EmptyInput);
        }
        let mut cells = [0u64; 4];
        for (&g, &p) in gold.iter().zip(pred) {
            let idx = match (g, p) {
                (true, true) => 0,
                (false, true) => 1,
                (true, false) => 2,
                (false, false) => 3,
            };
            cells[idx] += 1;
        }
        Self::from_counts(cells[0], cells[1], cells[2], cells[3])
    }

    pub fn tp(&self) -> u64 {
        self.tp_count
    }

    pub fn fp(&self) -> u64 {
        self.fp_count
    }

    pub fn fn_(&self) -> u64 {
        self.fn_count
    }

    pub fn tn(&self) -> u64 {
        self.tn_count
    }

    /// Total number of instances `N`.
    pub fn total(&self) -> u64 {
        self.tp_count + self.fp_count + self.fn_count + self.tn_count
    }

    pub fn real_positives(&self) -> u64 {
        self.tp_count + self.fn_count
    }

    pub fn real_negatives(&self) -> u64 {
        self.fp_count + self.tn_count
    }

    pub fn predicted_positives(&self) -> u64 {
        self.tp_count + self.fp_count
    }

    pub fn predicted_negatives(&self) -> u64 {
        self.fn_count + self.tn_count
    }

    /// Cells as `[A, B, C, D]`.
    pub fn cells(&self) -> [u64; 4] {
        [self.tp_count, self.fp_count, self.fn_count, self.tn_count]
    }

    pub fn triviality(&self) -> Triviality {
        Triviality::from_margins(
            self.real_positives() == 0,
            self.real_negatives() == 0,
            self.predicted_positives() == 0,
            self.predicted_negatives() == 0,
        )
    }

    /// Divides every cell by `N`.
    pub fn normalize<T: Scalar>(&self) -> ContingencyRates<T> {
        let n = T::from_count(self.total());
        ContingencyRates::with_margins(
            T::from_count(self.tp_count) / n,
            T::from_count(self.fp_count) / n,
            T::from_count(self.fn_count) / n,
            T::from_count(self.tn_count) / n,
        )
    }
}

/// Free-function form of [`ContingencyCounts::normalize`].
pub fn normalize<T: Scalar>(counts: &ContingencyCounts) -> ContingencyRates<T> {
    counts.normalize()
}

/// The four margins of a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Margin {
    RealPositive,
    RealNegative,
    PredictedPositive,
    PredictedNegative,
}

impl fmt::Display for Margin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Margin::RealPositive => "real-positive (rp)",
            Margin::RealNegative => "real-negative (rn)",
            Margin::PredictedPositive => "predicted-positive (pp)",
            Margin::PredictedNegative => "predicted-negative (pn)",
        })
    }
}

/// Whether every margin is populated. When several margins are zero the
/// first in the order rp, rn, pp, pn is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Triviality {
    NonTrivial,
    ZeroRealPositive,
    ZeroRealNegative,
    ZeroPredictedPositive,
    ZeroPredictedNegative,
}

impl Triviality {
    fn from_margins(rp_zero: bool, rn_zero: bool, pp_zero: bool, pn_zero: bool) -> Self {
        if rp_zero {
            Triviality::ZeroRealPositive
        } else if rn_zero {
            Triviality::ZeroRealNegative
        } else if pp_zero {
            Triviality::ZeroPredictedPositive
        } else if pn_zero {
            Triviality::ZeroPredictedNegative
        } else {
            Triviality::NonTrivial
        }
    }

    pub fn is_trivial(&self) -> bool {
        !matches!(self, Triviality::NonTrivial)
    }

    pub fn zero_margin(&self) -> Option<Margin> {
        match self {
            Triviality::NonTrivial => None,
            Triviality::ZeroRealPositive => Some(Margin::RealPositive),
            Triviality::ZeroRealNegative => Some(Margin::RealNegative),
            Triviality::ZeroPredictedPositive => Some(Margin::PredictedPositive),
            Triviality::ZeroPredictedNegative => Some(Margin::PredictedNegative),
        }
    }
}

/// Normalized table: joint probabilities of the four cells plus margins.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContingencyRates<T> {
    tp: T,
    fp: T,
    fn_: T,
    tn: T,
    rp: T,
    rn: T,
    pp: T,
    pn: T,
}

impl<T: Scalar> ContingencyRates<T> {
    fn with_margins(tp: T, fp: T, fn_: T, tn: T) -> Self {
        Self {
            tp,
            fp,
            fn_,
            tn,
            rp: tp + fn_,
            rn: fp + tn,
            pp: tp + fp,
            pn: fn_ + tn,
        }
    }

    /// Builds rates from four cell probabilities. Each must lie in `[0, 1]`
    /// and together they must sum to one within
    /// [`Scalar::identity_tolerance`].
    pub fn from_cells(tp: T, fp: T, fn_: T, tn: T) -> Result<Self> {
        for (name, v) in [("tp", tp), ("fp", fp), ("fn", fn_), ("tn", tn)] {
            if !(v >= T::zero() && v <= T::one()) {
                return Err(EvalError::InvalidRates(format!(
                    "{name} = {v} is not a probability"
                )));
            }
        }
        let sum = tp + fp + fn_ + tn;
        if (sum - T::one()).abs() > T::identity_tolerance() {
            return Err(EvalError::InvalidRates(format!(
                "cells sum to {sum}, expected 1"
            )));
        }
        Ok(Self::with_margins(tp, fp, fn_, tn))
    }

    pub fn tp(&self) -> T {
        self.tp
    }

    pub fn fp(&self) -> T {
        self.fp
    }

    pub fn fn_(&self) -> T {
        self.fn_
    }

    pub fn tn(&self) -> T {
        self.tn
    }

    /// Prevalence of real positives.
    pub fn rp(&self) -> T {
        self.rp
    }

    pub fn rn(&self) -> T {
        self.rn
    }

    /// Label bias: proportion of positive predictions.
    pub fn pp(&self) -> T {
        self.pp
    }

    pub fn pn(&self) -> T {
        self.pn
    }

    pub fn prevalence(&self) -> T {
        self.rp
    }

    pub fn bias(&self) -> T {
        self.pp
    }

    pub fn margin(&self, margin: Margin) -> T {
        match margin {
            Margin::RealPositive => self.rp,
            Margin::RealNegative => self.rn,
            Margin::PredictedPositive => self.pp,
            Margin::PredictedNegative => self.pn,
        }
    }

    pub fn triviality(&self) -> Triviality {
        let z = T::zero();
        Triviality::from_margins(self.rp == z, self.rn == z, self.pp == z, self.pn == z)
    }

    /// Returns `Ok(())` when the listed margins are strictly positive,
    /// otherwise a [`EvalError::ZeroMargin`] naming the first empty one.
    pub(crate) fn require(&self, measure: &'static str, margins: &[Margin]) -> Result<()> {
        match margins.iter().find(|&&m| self.margin(m) <= T::zero()) {
            Some(&margin) => Err(EvalError::ZeroMargin { measure, margin }),
            None => Ok(()),
        }
    }

    /// The Inverse problem: positive and negative interchanged for both
    /// real classes and predictions.
    pub fn flip_inverse(&self) -> Self {
        Self {
            tp: self.tn,
            fp: self.fn_,
            fn_: self.fp,
            tn: self.tp,
            rp: self.rn,
            rn: self.rp,
            pp: self.pn,
            pn: self.pp,
        }
    }

    /// Interchanges the prediction rows only (`tp↔fn`, `fp↔tn`), i.e. a
    /// predictor that always says the opposite.
    pub fn swap_predictions(&self) -> Self {
        Self::with_margins(self.fn_, self.tn, self.tp, self.fp)
    }

    /// Class ratio `c_s = rn / rp`.
    pub fn skew(&self) -> Result<T> {
        if self.rp <= T::zero() {
            return Err(EvalError::Undefined {
                measure: "skew",
                reason: "no real positives",
            });
        }
        Ok(self.rn / self.rp)
    }
}

/// Free-function form of [`ContingencyRates::flip_inverse`].
pub fn flip_inverse<T: Scalar>(rates: &ContingencyRates<T>) -> ContingencyRates<T> {
    rates.flip_inverse()
}

/// Free-function form of [`ContingencyRates::skew`].
pub fn skew<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    rates.skew()
}
