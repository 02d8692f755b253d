//! ROC-space quantities for a single classifier, plus a threshold sweep for
//! score-valued classifiers.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::contingency::{ContingencyRates, Margin};
use crate::error::{EvalError, Result};
use crate::measures::{fallout, recall};
use crate::scalar::Scalar;

/// A classifier's position in ROC space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RocPoint<T> {
    pub fpr: T,
    pub tpr: T,
}

impl<T: Scalar> RocPoint<T> {
    pub fn new(fpr: T, tpr: T) -> Result<Self> {
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !(unit(fpr) && unit(tpr)) {
            return Err(EvalError::InvalidParameter(format!(
                "ROC point ({fpr}, {tpr}) lies outside the unit square"
            )));
        }
        Ok(Self { fpr, tpr })
    }
}

/// Class skew, value ratio and their product, the single cost factor `c`
/// that sets the slope of isocost lines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModel<T> {
    class_skew: T,
    value_ratio: T,
}

impl<T: Scalar> CostModel<T> {
    /// `class_skew = rn/rp`, `value_ratio = cn/cp`; both positive.
    pub fn new(class_skew: T, value_ratio: T) -> Result<Self> {
        for (name, v) in [("class skew", class_skew), ("value ratio", value_ratio)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(EvalError::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            class_skew,
            value_ratio,
        })
    }

    /// The skew- and cost-insensitive model, `c = 1`.
    pub fn insensitive() -> Self {
        Self {
            class_skew: T::one(),
            value_ratio: T::one(),
        }
    }

    /// Takes the skew from the table's real margins.
    pub fn from_rates(rates: &ContingencyRates<T>, value_ratio: T) -> Result<Self> {
        rates.require("class skew", &[Margin::RealPositive, Margin::RealNegative])?;
        Self::new(rates.skew()?, value_ratio)
    }

    /// Value ratio from separate negative and positive costs, `cn / cp`.
    pub fn from_costs(class_skew: T, positive_cost: T, negative_cost: T) -> Result<Self> {
        if positive_cost.is_nan() || positive_cost <= T::zero() {
            return Err(EvalError::InvalidParameter(format!(
                "positive cost must be positive, got {positive_cost}"
            )));
        }
        Self::new(class_skew, negative_cost / positive_cost)
    }

    pub fn class_skew(&self) -> T {
        self.class_skew
    }

    pub fn value_ratio(&self) -> T {
        self.value_ratio
    }

    /// `c = c_v · c_s`.
    pub fn combined(&self) -> T {
        self.value_ratio * self.class_skew
    }
}

/// `(fpr, tpr)` of a table; needs both real classes.
pub fn roc_point<T: Scalar>(rates: &ContingencyRates<T>) -> Result<RocPoint<T>> {
    Ok(RocPoint {
        fpr: fallout(rates)?,
        tpr: recall(rates)?,
    })
}

/// Area under the two-segment curve `(0,0) → p → (1,1)`:
/// `(tpr − fpr + 1) / 2`.
pub fn auc_single<T: Scalar>(p: RocPoint<T>) -> T {
    (p.tpr - p.fpr + T::one()) * T::half()
}

/// Height of the isocost line of slope `c` through `p`: `tpr − c·fpr`.
/// With `c = 1` this is Informedness.
pub fn cost_gain<T: Scalar>(p: RocPoint<T>, cost: &CostModel<T>) -> T {
    p.tpr - cost.combined() * p.fpr
}

/// Euclidean distance to the perfect corner `(0, 1)`.
pub fn distance_to_optimum<T: Scalar>(p: RocPoint<T>) -> T {
    p.fpr.hypot(T::one() - p.tpr)
}

/// One operating point of a score sweep. Instances scoring at or above
/// `threshold` are predicted positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint<T> {
    pub threshold: T,
    pub point: RocPoint<T>,
    pub auc: T,
}

/// Sweeps every distinct score from highest to lowest.
///
/// The first entry uses an infinite threshold (nothing predicted positive,
/// the `(0,0)` corner); the last uses the lowest score and lands on `(1,1)`.
/// Tied scores move together, so the result has one entry per distinct
/// score plus the leading corner.
pub fn sweep<T: Scalar>(gold: &[bool], scores: &[T]) -> Result<Vec<SweepPoint<T>>> {
    if gold.len() != scores.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            other: scores.len(),
        });
    }
    if gold.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    if let Some(index) = scores.iter().position(|s| !s.is_finite()) {
        return Err(EvalError::NonFiniteScore { index });
    }
    let positives = gold.iter().filter(|&&g| g).count();
    let negatives = gold.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(EvalError::SingleClass);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap_or(Ordering::Equal));

    let pos_total = T::from_count(positives as u64);
    let neg_total = T::from_count(negatives as u64);
    let make = |threshold: T, tp: usize, fp: usize| {
        let point = RocPoint {
            fpr: T::from_count(fp as u64) / neg_total,
            tpr: T::from_count(tp as u64) / pos_total,
        };
        SweepPoint {
            threshold,
            point,
            auc: auc_single(point),
        }
    };

    let mut curve = vec![make(T::infinity(), 0, 0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let threshold = scores[order[i]];
        while i < order.len() && scores[order[i]] == threshold {
            if gold[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        curve.push(make(threshold, tp, fp));
    }
    Ok(curve)
}

/// Trapezoidal area under a curve ordered by non-decreasing `fpr`.
pub fn curve_auc<T: Scalar>(curve: &[SweepPoint<T>]) -> T {
    curve
        .windows(2)
        .map(|w| {
            let (left, right) = (w[0].point, w[1].point);
            (right.fpr - left.fpr) * (left.tpr + right.tpr) * T::half()
        })
        .fold(T::zero(), |acc, area| acc + area)
}
