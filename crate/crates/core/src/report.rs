//! Everything computable from one table, in a serializable record.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::association::{association_report, AssociationMeasures};
use crate::contingency::{ContingencyCounts, Triviality};
use crate::error::Result;
use crate::measures::{surface_report, SurfaceMeasures};
use crate::roc::{auc_single, distance_to_optimum, roc_point, RocPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsView {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub n: u64,
}

impl From<&ContingencyCounts> for CountsView {
    fn from(c: &ContingencyCounts) -> Self {
        Self {
            tp: c.tp(),
            fp: c.fp(),
            fn_: c.fn_(),
            tn: c.tn(),
            n: c.total(),
        }
    }
}

/// Prevalence and Bias, which are also the chance levels of Precision and
/// Recall respectively.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub prevalence: f64,
    pub bias: f64,
    pub chance_recall: f64,
    pub chance_precision: f64,
    pub skew: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub counts: CountsView,
    pub triviality: Triviality,
    pub surface: SurfaceMeasures<f64>,
    pub association: AssociationMeasures<f64>,
    pub roc: Option<RocPoint<f64>>,
    pub auc: Option<f64>,
    pub distance_to_optimum: Option<f64>,
    pub decomposition: Decomposition,
}

impl Report {
    pub fn from_counts(counts: &ContingencyCounts) -> Self {
        let rates = counts.normalize::<f64>();
        let roc = roc_point(&rates).ok();
        Self {
            counts: counts.into(),
            triviality: counts.triviality(),
            surface: surface_report(&rates),
            association: association_report(&rates),
            roc,
            auc: roc.map(auc_single),
            distance_to_optimum: roc.map(distance_to_optimum),
            decomposition: Decomposition {
                prevalence: rates.prevalence(),
                bias: rates.bias(),
                chance_recall: rates.bias(),
                chance_precision: rates.prevalence(),
                skew: rates.skew().ok(),
            },
        }
    }

    /// Flat `(name, value)` view of every numeric field, in CSV column order.
    pub fn fields(&self) -> Vec<(&'static str, Option<f64>)> {
        let c = &self.counts;
        let s = &self.surface;
        let a = &self.association;
        let d = &self.decomposition;
        vec![
            ("tp", Some(c.tp as f64)),
            ("fp", Some(c.fp as f64)),
            ("fn", Some(c.fn_ as f64)),
            ("tn", Some(c.tn as f64)),
            ("n", Some(c.n as f64)),
            ("recall", s.recall),
            ("precision", s.precision),
            ("inverse_recall", s.inverse_recall),
            ("inverse_precision", s.inverse_precision),
            ("fallout", s.fallout),
            ("miss_rate", s.miss_rate),
            ("false_pos_accuracy", s.false_pos_accuracy),
            ("false_neg_accuracy", s.false_neg_accuracy),
            ("accuracy", Some(s.accuracy)),
            ("jaccard", s.jaccard),
            ("mean_arith", s.mean_arith),
            ("mean_geom", s.mean_geom),
            ("f_measure", s.f_measure),
            ("informedness", a.informedness),
            ("markedness", a.markedness),
            ("correlation", a.correlation),
            ("kappa", a.kappa),
            ("discriminant", Some(a.discriminant)),
            ("fpr", self.roc.map(|p| p.fpr)),
            ("tpr", self.roc.map(|p| p.tpr)),
            ("auc", self.auc),
            ("distance_to_optimum", self.distance_to_optimum),
            ("prevalence", Some(d.prevalence)),
            ("bias", Some(d.bias)),
            ("chance_recall", Some(d.chance_recall)),
            ("chance_precision", Some(d.chance_precision)),
            ("skew", d.skew),
        ]
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self).map_err(std::io::Error::from)?;
        writeln!(out)?;
        Ok(())
    }

    /// Header row and one value row; counts print as integers, absent
    /// measures as empty fields.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let fields = self.fields();
        let header: Vec<&str> = fields.iter().map(|f| f.0).collect();
        let c = &self.counts;
        let mut values: Vec<String> = [c.tp, c.fp, c.fn_, c.tn, c.n].iter().map(u64::to_string).collect();
        values.extend(
            fields[5..]
                .iter()
                .map(|(_, v)| v.map(|x| x.to_string()).unwrap_or_default()),
        );
        writeln!(out, "{}", header.join(","))?;
        writeln!(out, "{}", values.join(","))?;
        Ok(())
    }
}
