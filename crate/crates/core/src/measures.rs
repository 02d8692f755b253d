//! Biased surface measures: Recall, Precision, their inverses, error rates,
//! Accuracy, Jaccard and the arithmetic/geometric/harmonic means of Recall
//! and Precision.
//!
//! Each measure divides by one margin (or, for Jaccard, by `1 - tn`), and
//! reports [`EvalError::ZeroMargin`] when that denominator is empty.

use serde::{Deserialize, Serialize};

use crate::contingency::{ContingencyRates, Margin};
use crate::error::{EvalError, Result};
use crate::scalar::Scalar;

fn ratio<T: Scalar>(
    rates: &ContingencyRates<T>,
    measure: &'static str,
    numerator: T,
    margin: Margin,
) -> Result<T> {
    rates.require(measure, &[margin])?;
    Ok(numerator / rates.margin(margin))
}

/// Recall, Sensitivity, true positive rate: `tp / rp`.
pub fn recall<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "recall", rates.tp(), Margin::RealPositive)
}

/// Precision, Confidence, true positive accuracy: `tp / pp`.
pub fn precision<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "precision", rates.tp(), Margin::PredictedPositive)
}

/// Inverse Recall, Specificity, true negative rate: `tn / rn`.
pub fn inverse_recall<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "inverse recall", rates.tn(), Margin::RealNegative)
}

/// Inverse Precision, true negative accuracy: `tn / pn`.
pub fn inverse_precision<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "inverse precision", rates.tn(), Margin::PredictedNegative)
}

/// Fallout, false positive rate: `fp / rn = B / (B + D)`.
pub fn fallout<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "fallout", rates.fp(), Margin::RealNegative)
}

/// Miss rate, false negative rate: `fn / rp = C / (A + C)`.
pub fn miss_rate<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "miss rate", rates.fn_(), Margin::RealPositive)
}

/// Proportion of predicted positives that are wrong: `fp / pp`.
pub fn false_pos_accuracy<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "false positive accuracy", rates.fp(), Margin::PredictedPositive)
}

/// Proportion of predicted negatives that are wrong: `fn / pn`.
pub fn false_neg_accuracy<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    ratio(rates, "false negative accuracy", rates.fn_(), Margin::PredictedNegative)
}

/// Rand accuracy `tp + tn`. Always defined.
pub fn accuracy<T: Scalar>(rates: &ContingencyRates<T>) -> T {
    rates.tp() + rates.tn()
}

/// `tp / (tp + fn + fp)`; undefined when every instance is a true negative.
pub fn jaccard<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    let denom = rates.tp() + rates.fn_() + rates.fp();
    if denom <= T::zero() {
        return Err(EvalError::Undefined {
            measure: "jaccard",
            reason: "every instance is a true negative",
        });
    }
    Ok(rates.tp() / denom)
}

/// Arithmetic (A), geometric (G) and harmonic (F) means of Recall and
/// Precision. `F = G² / A`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrMeans<T> {
    pub arithmetic: T,
    pub geometric: T,
    pub f_measure: T,
}

impl<T: Scalar> PrMeans<T> {
    /// Means of an explicit (recall, precision) pair. F is zero when both are.
    pub fn of(recall: T, precision: T) -> Self {
        let sum = recall + precision;
        let f_measure = if sum > T::zero() {
            T::two() * recall * precision / sum
        } else {
            T::zero()
        };
        Self {
            arithmetic: sum * T::half(),
            geometric: (recall * precision).sqrt(),
            f_measure,
        }
    }
}

pub fn pr_means<T: Scalar>(rates: &ContingencyRates<T>) -> Result<PrMeans<T>> {
    Ok(PrMeans::of(recall(rates)?, precision(rates)?))
}

/// Every surface measure of one table. `None` marks a measure whose
/// denominator is empty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMeasures<T> {
    pub recall: Option<T>,
    pub precision: Option<T>,
    pub inverse_recall: Option<T>,
    pub inverse_precision: Option<T>,
    pub fallout: Option<T>,
    pub miss_rate: Option<T>,
    pub false_pos_accuracy: Option<T>,
    pub false_neg_accuracy: Option<T>,
    pub accuracy: T,
    pub jaccard: Option<T>,
    pub mean_arith: Option<T>,
    pub mean_geom: Option<T>,
    pub f_measure: Option<T>,
}

pub fn surface_report<T: Scalar>(rates: &ContingencyRates<T>) -> SurfaceMeasures<T> {
    let means = pr_means(rates).ok();
    SurfaceMeasures {
        recall: recall(rates).ok(),
        precision: precision(rates).ok(),
        inverse_recall: inverse_recall(rates).ok(),
        inverse_precision: inverse_precision(rates).ok(),
        fallout: fallout(rates).ok(),
        miss_rate: miss_rate(rates).ok(),
        false_pos_accuracy: false_pos_accuracy(rates).ok(),
        false_neg_accuracy: false_neg_accuracy(rates).ok(),
        accuracy: accuracy(rates),
        jaccard: jaccard(rates).ok(),
        mean_arith: means.map(|m| m.arithmetic),
        mean_geom: means.map(|m| m.geometric),
        f_measure: means.map(|m| m.f_measure),
    }
}
