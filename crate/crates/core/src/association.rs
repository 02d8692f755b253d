//! Unbiased association measures of a 2×2 table.
//!
//! All of them share the discriminant `dp = tp·tn − fp·fn` as numerator and
//! differ only in how it is normalized by the margins:
//!
//! | measure       | value                         | needs margins   |
//! |---------------|-------------------------------|-----------------|
//! | informedness  | `dp / (rp·rn)`                | rp, rn          |
//! | markedness    | `dp / (pp·pn)`                | pp, pn          |
//! | correlation   | `dp / √(rp·rn·pp·pn)`         | all four        |
//! | kappa         | `dp / (dp + (fp+fn)/2)`       | all four        |
//!
//! Informedness (DeltaP′, Bookmaker) is the regression slope predicting the
//! prediction from the real class; Markedness (DeltaP) the slope predicting
//! the real class from the prediction. Correlation is their signed geometric
//! mean.

use serde::{Deserialize, Serialize};

use crate::contingency::{ContingencyRates, Margin};
use crate::error::{EvalError, Result};
use crate::measures::{inverse_precision, inverse_recall, precision, recall};
use crate::scalar::Scalar;

const ALL_MARGINS: [Margin; 4] = [
    Margin::RealPositive,
    Margin::RealNegative,
    Margin::PredictedPositive,
    Margin::PredictedNegative,
];

/// Recall + Inverse Recall − 1 (`tpr − fpr`).
pub fn informedness<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    rates.require("informedness", &[Margin::RealPositive, Margin::RealNegative])?;
    Ok(recall(rates)? + inverse_recall(rates)? - T::one())
}

/// Precision + Inverse Precision − 1 (`tpa − fna`).
pub fn markedness<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    rates.require("markedness", &[Margin::PredictedPositive, Margin::PredictedNegative])?;
    Ok(precision(rates)? + inverse_precision(rates)? - T::one())
}

/// Matthews correlation. Its sign is the sign of `dp`.
pub fn correlation<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    rates.require("correlation", &ALL_MARGINS)?;
    let norm = (rates.rp() * rates.rn() * rates.pp() * rates.pn()).sqrt();
    Ok(discriminant(rates) / norm)
}

/// Cohen's kappa, `(po − pe) / (1 − pe)` with `pe` the dot product of the
/// Biases and Prevalences.
pub fn kappa<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    rates.require("kappa", &ALL_MARGINS)?;
    let observed = rates.tp() + rates.tn();
    let expected = rates.pp() * rates.rp() + rates.pn() * rates.rn();
    let headroom = T::one() - expected;
    if headroom <= T::zero() {
        return Err(EvalError::Undefined {
            measure: "kappa",
            reason: "expected agreement is 1",
        });
    }
    Ok((observed - expected) / headroom)
}

/// Small-error approximation `1 − mean(fp, fn) / dp`.
///
/// Only asymptotically equal to [`kappa`] as `fp, fn → 0`; not a substitute.
pub fn kappa_small_error_approximation<T: Scalar>(rates: &ContingencyRates<T>) -> Result<T> {
    let dp = discriminant(rates);
    if dp <= T::zero() {
        return Err(EvalError::Undefined {
            measure: "kappa approximation",
            reason: "discriminant is not positive",
        });
    }
    Ok(T::one() - (rates.fp() + rates.fn_()) * T::half() / dp)
}

/// `tp·tn − fp·fn`, in `[−0.25, 0.25]`.
pub fn discriminant<T: Scalar>(rates: &ContingencyRates<T>) -> T {
    rates.tp() * rates.tn() - rates.fp() * rates.fn_()
}

fn check_probability<T: Scalar>(quantity: &'static str, value: T) -> Result<T> {
    let tol = T::identity_tolerance();
    if value.is_nan() || value < -tol || value > T::one() + tol {
        return Err(EvalError::Infeasible {
            quantity,
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value)
}

fn check_open_unit<T: Scalar>(measure: &'static str, reason: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value < T::one() {
        Ok(())
    } else {
        Err(EvalError::Undefined { measure, reason })
    }
}

/// `Recall = Informedness·(1 − Prevalence) + Bias`.
pub fn recall_from_informedness<T: Scalar>(informedness: T, prevalence: T, bias: T) -> Result<T> {
    check_open_unit("recall", "prevalence must lie strictly between 0 and 1", prevalence)?;
    check_probability("recall", informedness * (T::one() - prevalence) + bias)
}

/// `Informedness = (Recall − Bias) / (1 − Prevalence)`.
pub fn informedness_from_recall<T: Scalar>(recall: T, prevalence: T, bias: T) -> Result<T> {
    if prevalence.is_nan() || prevalence >= T::one() {
        return Err(EvalError::Undefined {
            measure: "informedness",
            reason: "prevalence is 1",
        });
    }
    Ok((recall - bias) / (T::one() - prevalence))
}

/// `Precision = Markedness·(1 − Bias) + Prevalence`.
pub fn precision_from_markedness<T: Scalar>(markedness: T, bias: T, prevalence: T) -> Result<T> {
    check_open_unit("precision", "bias must lie strictly between 0 and 1", bias)?;
    check_probability("precision", markedness * (T::one() - bias) + prevalence)
}

/// `Markedness = (Precision − Prevalence) / (1 − Bias)`.
pub fn markedness_from_precision<T: Scalar>(precision: T, bias: T, prevalence: T) -> Result<T> {
    if bias.is_nan() || bias >= T::one() {
        return Err(EvalError::Undefined {
            measure: "markedness",
            reason: "bias is 1",
        });
    }
    Ok((precision - prevalence) / (T::one() - bias))
}

/// Least-squares slopes for the 0/1 coded variables `R` (real class) and `P`
/// (prediction), weighting each coded point by its cell probability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionSlopes<T> {
    /// Regressing `R` on `P`; equals markedness.
    pub real_from_pred: T,
    /// Regressing `P` on `R`; equals informedness.
    pub pred_from_real: T,
}

/// Evaluates `r = (n Σxy − Σx Σy) / (n Σx² − (Σx)²)` for both directions.
pub fn regression_slopes<T: Scalar>(rates: &ContingencyRates<T>) -> Result<RegressionSlopes<T>> {
    rates.require("regression slope", &ALL_MARGINS)?;
    // with n = 1, x,y ∈ {0,1}: Σxy = tp, Σx² = Σx
    let n = T::one();
    let sum_rp = rates.tp() + rates.fn_();
    let sum_pp = rates.tp() + rates.fp();
    let sum_xy = rates.tp();
    let slope = |sum_x: T, sum_y: T| {
        let var = n * sum_x - sum_x * sum_x;
        (n * sum_xy - sum_x * sum_y) / var
    };
    Ok(RegressionSlopes {
        real_from_pred: slope(sum_pp, sum_rp),
        pred_from_real: slope(sum_rp, sum_pp),
    })
}

/// The association family for one table; `None` where a margin is empty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssociationMeasures<T> {
    pub informedness: Option<T>,
    pub markedness: Option<T>,
    pub correlation: Option<T>,
    pub kappa: Option<T>,
    pub discriminant: T,
}

pub fn association_report<T: Scalar>(rates: &ContingencyRates<T>) -> AssociationMeasures<T> {
    AssociationMeasures {
        informedness: informedness(rates).ok(),
        markedness: markedness(rates).ok(),
        correlation: correlation(rates).ok(),
        kappa: kappa(rates).ok(),
        discriminant: discriminant(rates),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contingency::ContingencyCounts;

    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn rates(a: u64, b: u64, c: u64, d: u64) -> ContingencyRates<f64> {
        ContingencyCounts::from_counts(a, b, c, d).unwrap().normalize()
    }

    fn worked() -> ContingencyRates<f64> {
        rates(40, 10, 20, 30)
    }

    fn perfect() -> ContingencyRates<f64> {
        rates(50, 0, 0, 50)
    }

    /// Independent margins: every cell is the product of its margins.
    fn chance() -> ContingencyRates<f64> {
        let (rp, pp) = (0.3, 0.6);
        ContingencyRates::from_cells(rp * pp, (1.0 - rp) * pp, rp * (1.0 - pp), (1.0 - rp) * (1.0 - pp)).unwrap()
    }

    fn assert_close(actual: f64, expected: f64) {
        assert!((actual - expected).abs() <= TOL, "expected {expected}, got {actual}");
    }

    #[test]
    fn informedness_cases() {
        assert_close(informedness(&worked()).unwrap(), 2.0 / 3.0 + 0.75 - 1.0);
        assert_eq!(informedness(&perfect()).unwrap(), 1.0);
        assert_eq!(informedness(&rates(0, 40, 60, 0)).unwrap(), -1.0);
        assert_close(informedness(&chance()).unwrap(), 0.0);
        assert!(matches!(
            informedness(&rates(0, 10, 0, 90)),
            Err(EvalError::ZeroMargin { margin: Margin::RealPositive, .. })
        ));
    }

    #[test]
    fn markedness_cases() {
        assert_close(markedness(&worked()).unwrap(), 0.8 + 0.6 - 1.0);
        assert_eq!(markedness(&perfect()).unwrap(), 1.0);
        assert_close(markedness(&chance()).unwrap(), 0.0);
        assert!(markedness(&rates(0, 0, 60, 40)).is_err());
    }

    #[test]
    fn correlation_cases() {
        let expected = ((2.0 / 3.0 + 0.75 - 1.0) * 0.4f64).sqrt();
        assert_close(correlation(&worked()).unwrap(), expected);
        assert!((expected - 0.4082).abs() < 1e-4);
        assert_eq!(correlation(&perfect()).unwrap(), 1.0);
        assert_close(correlation(&rates(0, 40, 60, 0)).unwrap(), -1.0);
        assert!(correlation(&rates(10, 0, 5, 0)).is_err());
    }

    #[test]
    fn kappa_cases() {
        let r = worked();
        assert_close(kappa(&r).unwrap(), 0.4);
        // discriminant form: 0.10 / (0.10 + 0.15)
        assert_close(discriminant(&r) / (discriminant(&r) + (r.fp() + r.fn_()) / 2.0), 0.4);
        assert_eq!(kappa(&perfect()).unwrap(), 1.0);
        assert_close(kappa(&chance()).unwrap(), 0.0);
        assert!(kappa(&rates(60, 40, 0, 0)).is_err());
    }

    #[test]
    fn discriminant_cases() {
        assert_close(discriminant(&worked()), 0.10);
        assert_close(discriminant(&chance()), 0.0);
        assert_eq!(discriminant(&perfect()), 0.25);
    }

    #[test]
    fn decomposition_worked() {
        let b = informedness(&worked()).unwrap();
        assert_close(recall_from_informedness(b, 0.6, 0.5).unwrap(), 40.0 / 60.0);
        assert_close(informedness_from_recall(40.0 / 60.0, 0.6, 0.5).unwrap(), b);
        assert_close(precision_from_markedness(0.4, 0.5, 0.6).unwrap(), 0.8);
        assert_close(markedness_from_precision(0.8, 0.5, 0.6).unwrap(), 0.4);
    }

    #[test]
    fn decomposition_chance_and_perfect() {
        assert_eq!(recall_from_informedness(0.0, 0.3, 0.45).unwrap(), 0.45);
        assert_close(recall_from_informedness(1.0, 0.3, 0.3).unwrap(), 1.0);
        assert_eq!(informedness_from_recall(0.45, 0.3, 0.45).unwrap(), 0.0);
        assert_close(informedness_from_recall(1.0, 0.3, 0.3).unwrap(), 1.0);
        assert_eq!(precision_from_markedness(0.0, 0.45, 0.3).unwrap(), 0.3);
        assert_eq!(markedness_from_precision(0.3, 0.45, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn decomposition_errors() {
        assert!(matches!(
            recall_from_informedness(1.0, 0.2, 0.9),
            Err(EvalError::Infeasible { quantity: "recall", .. })
        ));
        assert!(matches!(
            precision_from_markedness(-1.0, 0.2, 0.3),
            Err(EvalError::Infeasible { quantity: "precision", .. })
        ));
        assert!(informedness_from_recall(0.5, 1.0, 0.5).is_err());
        assert!(markedness_from_precision(0.5, 0.5, 1.0).is_ok());
        assert!(markedness_from_precision(0.5, 1.0, 0.5).is_err());
        assert!(recall_from_informedness(0.5, 1.0, 0.5).is_err());
    }

    /// Evaluates the least-squares slope over explicitly enumerated 0/1
    /// points, one per instance.
    fn brute_force_slopes(t: &ContingencyCounts) -> (f64, f64) {
        let mut points = Vec::new();
        for (count, real, pred) in [(t.tp(), 1.0, 1.0), (t.fp(), 0.0, 1.0), (t.fn_(), 1.0, 0.0), (t.tn(), 0.0, 0.0)] {
            points.extend(std::iter::repeat_n((real, pred), count as usize));
        }
        let slope = |pairs: &[(f64, f64)]| {
            let n = pairs.len() as f64;
            let sx: f64 = pairs.iter().map(|p| p.0).sum();
            let sy: f64 = pairs.iter().map(|p| p.1).sum();
            let sxy: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
            let sxx: f64 = pairs.iter().map(|p| p.0 * p.0).sum();
            (n * sxy - sx * sy) / (n * sxx - sx * sx)
        };
        let pred_on_x: Vec<_> = points.iter().map(|&(r, p)| (p, r)).collect();
        (slope(&pred_on_x), slope(&points))
    }

    #[test]
    fn slopes_worked_against_enumeration() {
        let t = ContingencyCounts::from_counts(40, 10, 20, 30).unwrap();
        let (real_from_pred, pred_from_real) = brute_force_slopes(&t);
        assert_close(real_from_pred, 0.40);
        assert_close(pred_from_real, 5.0 / 12.0);
        let s = regression_slopes(&worked()).unwrap();
        assert_close(s.real_from_pred, real_from_pred);
        assert_close(s.pred_from_real, pred_from_real);
    }

    #[test]
    fn slopes_extremes() {
        let s = regression_slopes(&perfect()).unwrap();
        assert_close(s.real_from_pred, 1.0);
        assert_close(s.pred_from_real, 1.0);
        let s = regression_slopes(&chance()).unwrap();
        assert_close(s.real_from_pred, 0.0);
        assert_close(s.pred_from_real, 0.0);
        assert!(regression_slopes(&rates(0, 0, 60, 40)).is_err());
    }

    #[test]
    fn kappa_approximation_converges() {
        let mut last = f64::INFINITY;
        for err in [100u64, 10, 1] {
            let r = rates(10_000, err, err, 10_000);
            let gap = (kappa_small_error_approximation(&r).unwrap() - kappa(&r).unwrap()).abs();
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-6);
        assert!(kappa_small_error_approximation(&chance()).is_err());
    }

    #[test]
    fn report_absent_on_degenerate_margin() {
        let a = association_report(&rates(0, 0, 60, 40));
        assert_eq!(a.informedness, Some(0.0));
        assert_eq!(a.markedness, None);
        assert_eq!(a.correlation, None);
        assert_eq!(a.kappa, None);
        assert_eq!(a.discriminant, 0.0);
    }

    fn nondegenerate() -> impl Strategy<Value = ContingencyRates<f64>> {
        (1u64..5000, 1u64..5000, 1u64..5000, 1u64..5000).prop_map(|(a, b, c, d)| rates(a, b, c, d))
    }

    fn sign(v: f64) -> i8 {
        if v.abs() <= TOL { 0 } else if v > 0.0 { 1 } else { -1 }
    }

    proptest! {
        #[test]
        fn discriminant_normalizations(r in nondegenerate()) {
            let dp = discriminant(&r);
            prop_assert!((informedness(&r).unwrap() - dp / (r.rp() * r.rn())).abs() <= TOL);
            prop_assert!((markedness(&r).unwrap() - dp / (r.pp() * r.pn())).abs() <= TOL);
            let c = correlation(&r).unwrap();
            prop_assert!((c * c - informedness(&r).unwrap() * markedness(&r).unwrap()).abs() <= TOL);
            prop_assert!((-0.25..=0.25).contains(&dp));
        }

        #[test]
        fn signs_agree_with_discriminant(r in nondegenerate()) {
            let s = sign(discriminant(&r));
            let a = association_report(&r);
            for v in [a.informedness, a.markedness, a.correlation, a.kappa] {
                prop_assert_eq!(sign(v.unwrap()), s);
            }
        }

        #[test]
        fn inverse_problem_invariance(r in nondegenerate()) {
            let f = r.flip_inverse();
            let (a, b) = (association_report(&r), association_report(&f));
            for (x, y) in [(a.informedness, b.informedness), (a.markedness, b.markedness),
                           (a.correlation, b.correlation), (a.kappa, b.kappa)] {
                prop_assert!((x.unwrap() - y.unwrap()).abs() <= TOL);
            }
            prop_assert!((a.discriminant - b.discriminant).abs() <= TOL);
        }

        #[test]
        fn row_swap_negates(r in nondegenerate()) {
            let s = r.swap_predictions();
            prop_assert!((informedness(&r).unwrap() + informedness(&s).unwrap()).abs() <= TOL);
            prop_assert!((markedness(&r).unwrap() + markedness(&s).unwrap()).abs() <= TOL);
            prop_assert!((correlation(&r).unwrap() + correlation(&s).unwrap()).abs() <= TOL);
        }

        #[test]
        fn bounded(a in 0u64..500, b in 0u64..500, c in 0u64..500, d in 0u64..500) {
            prop_assume!(a + b + c + d > 0);
            let rep = association_report(&rates(a, b, c, d));
            for v in [rep.informedness, rep.markedness, rep.correlation, rep.kappa].into_iter().flatten() {
                prop_assert!((-1.0 - TOL..=1.0 + TOL).contains(&v));
            }
        }

        #[test]
        fn bias_equal_prevalence_collapses(a in 1u64..5000, off in 1u64..5000, d in 1u64..5000) {
            let r = rates(a, off, off, d);
            let i = informedness(&r).unwrap();
            prop_assert!((i - markedness(&r).unwrap()).abs() <= TOL);
            prop_assert!((i - correlation(&r).unwrap()).abs() <= TOL);
        }

        #[test]
        fn single_precision_identities(a in 1u64..500, b in 1u64..500, c in 1u64..500, d in 1u64..500) {
            let r: ContingencyRates<f32> = ContingencyCounts::from_counts(a, b, c, d).unwrap().normalize();
            let dp = discriminant(&r);
            let tol = 1e-4f32;
            let k = kappa(&r).unwrap();
            prop_assert!((k - dp / (dp + (r.fp() + r.fn_()) / 2.0)).abs() <= tol);
            prop_assert!((informedness(&r).unwrap() - dp / (r.rp() * r.rn())).abs() <= tol);
        }
    }
}
