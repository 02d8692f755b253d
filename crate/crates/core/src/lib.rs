//! Evaluation of dichotomous classifiers from their 2×2 contingency table.
//!
//! The crate covers the biased surface measures (Recall, Precision,
//! Accuracy, F, ...), single-point ROC quantities, and the unbiased family
//! built on the discriminant `tp·tn − fp·fn`: Informedness, Markedness,
//! Matthews correlation and Cohen's kappa. A seeded Monte Carlo engine
//! ([`simulate`]) compares how well each measure tracks a known level of
//! informedness.
//!
//! Measures are generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the common double-precision case.
//!
//! ```
//! use unbiased_eval::{association, ContingencyCounts, Rates};
//!
//! let table = ContingencyCounts::from_counts(40, 10, 20, 30)?;
//! let rates: Rates = table.normalize();
//! let kappa = association::kappa(&rates)?;
//! assert!((kappa - 0.4).abs() < 1e-12);
//! # Ok::<(), unbiased_eval::EvalError>(())
//! ```

pub mod association;
pub mod contingency;
pub mod error;
pub mod input;
pub mod measures;
pub mod report;
pub mod roc;
pub mod scalar;
pub mod simulate;

pub use contingency::{ContingencyCounts, ContingencyRates, Margin, Triviality};
pub use error::{EvalError, Result};
pub use scalar::Scalar;

/// Double-precision rates.
pub type Rates = ContingencyRates<f64>;
/// Single-precision rates.
pub type Rates32 = ContingencyRates<f32>;
pub type Surface = measures::SurfaceMeasures<f64>;
pub type Association = association::AssociationMeasures<f64>;
pub type Point = roc::RocPoint<f64>;
pub type Costs = roc::CostModel<f64>;
