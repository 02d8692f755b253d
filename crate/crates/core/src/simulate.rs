//! Seeded Monte Carlo study of biased versus unbiased measures.
//!
//! Each run draws a prevalence and a guessing bias, then generates `n`
//! instances. An instance's real class is positive with probability
//! `prevalence`; with probability `b` the prediction copies the real class,
//! otherwise it is a coin flip that comes up positive with probability
//! `guess_bias`. Expected informedness is therefore exactly `b`.
//!
//! # Random stream contract
//!
//! Every run owns a ChaCha8 stream keyed by `(seed, level, run)`: the key is
//! expanded from `seed` by [`SeedableRng::seed_from_u64`] and the 64-bit
//! stream id is `level << 32 | run`. Uniform reals take the top 53 bits of
//! a `u64` output, scaled by 2⁻⁵³. Runs share no state, so the record stream
//! is identical regardless of thread count or scheduling.

use std::io::Write;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::association::{correlation, informedness, kappa, markedness};
use crate::contingency::ContingencyCounts;
use crate::error::{EvalError, Result};
use crate::measures::pr_means;

/// Per-run random stream.
#[derive(Clone, Debug)]
pub struct StudyRng {
    inner: ChaCha8Rng,
}

impl StudyRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent substream for one `(level, run)` cell of a study.
    pub fn for_run(seed: u64, level: u32, run: u32) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream((u64::from(level) << 32) | u64::from(run));
        Self { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

fn check_unit(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(EvalError::InvalidParameter(format!(
            "{name} must lie in [0, 1], got {value}"
        )))
    }
}

/// Simulates `n` instances of a classifier that is informed with
/// probability `b` and otherwise guesses positive with probability
/// `guess_bias`.
pub fn generate_table(
    b: f64,
    prevalence: f64,
    guess_bias: f64,
    n: u64,
    rng: &mut StudyRng,
) -> Result<ContingencyCounts> {
    check_unit("informedness", b)?;
    check_unit("prevalence", prevalence)?;
    check_unit("guess bias", guess_bias)?;
    if n == 0 {
        return Err(EvalError::EmptyInput);
    }
    let mut cells = [0u64; 4];
    for _ in 0..n {
        let real = rng.bernoulli(prevalence);
        let pred = if rng.bernoulli(b) {
            real
        } else {
            rng.bernoulli(guess_bias)
        };
        let idx = match (real, pred) {
            (true, true) => 0,
            (false, true) => 1,
            (true, false) => 2,
            (false, false) => 3,
        };
        cells[idx] += 1;
    }
    ContingencyCounts::from_counts(cells[0], cells[1], cells[2], cells[3])
}

/// Shape of a study: `levels` evenly spaced informedness targets from 0 to 1,
/// `runs_per_level` tables each.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyConfig {
    pub levels: u32,
    pub runs_per_level: u32,
    pub instances_per_run: u64,
    pub prevalence_range: (f64, f64),
    pub guess_bias_range: (f64, f64),
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 2008;

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            levels: 11,
            runs_per_level: 10,
            instances_per_run: 1000,
            prevalence_range: (0.05, 0.95),
            guess_bias_range: (0.05, 0.95),
            seed: DEFAULT_SEED,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(EvalError::InvalidConfig(msg));
        if self.levels < 2 {
            return bad(format!("levels must be at least 2, got {}", self.levels));
        }
        if self.runs_per_level < 1 {
            return bad("runs per level must be at least 1".into());
        }
        if self.instances_per_run < 10 {
            return bad(format!(
                "instances per run must be at least 10, got {}",
                self.instances_per_run
            ));
        }
        for (name, (lo, hi)) in [
            ("prevalence", self.prevalence_range),
            ("guess bias", self.guess_bias_range),
        ] {
            if !(lo > 0.0 && hi < 1.0 && lo <= hi) {
                return bad(format!(
                    "{name} range [{lo}, {hi}] must satisfy 0 < lo <= hi < 1"
                ));
            }
        }
        Ok(())
    }

    pub fn target(&self, level: u32) -> f64 {
        f64::from(level) / f64::from(self.levels - 1)
    }

    pub fn record_count(&self) -> usize {
        self.levels as usize * self.runs_per_level as usize
    }
}

/// One simulated table and what was measured on it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyRecord {
    pub level: u32,
    pub run: u32,
    pub target_b: f64,
    pub prevalence: f64,
    pub guess_bias: f64,
    pub counts: ContingencyCounts,
    pub informedness: Option<f64>,
    pub markedness: Option<f64>,
    pub correlation: Option<f64>,
    pub kappa: Option<f64>,
    pub f_measure: Option<f64>,
    pub g_measure: Option<f64>,
    pub a_measure: Option<f64>,
}

impl StudyRecord {
    fn measure(level: u32, run: u32, target_b: f64, prevalence: f64, guess_bias: f64, counts: ContingencyCounts) -> Self {
        let rates = counts.normalize::<f64>();
        let means = pr_means(&rates).ok();
        Self {
            level,
            run,
            target_b,
            prevalence,
            guess_bias,
            counts,
            informedness: informedness(&rates).ok(),
            markedness: markedness(&rates).ok(),
            correlation: correlation(&rates).ok(),
            kappa: kappa(&rates).ok(),
            f_measure: means.map(|m| m.f_measure),
            g_measure: means.map(|m| m.geometric),
            a_measure: means.map(|m| m.arithmetic),
        }
    }

    pub fn value(&self, measure: StudyMeasure) -> Option<f64> {
        match measure {
            StudyMeasure::Informedness => self.informedness,
            StudyMeasure::Markedness => self.markedness,
            StudyMeasure::Correlation => self.correlation,
            StudyMeasure::Kappa => self.kappa,
            StudyMeasure::F => self.f_measure,
            StudyMeasure::G => self.g_measure,
            StudyMeasure::A => self.a_measure,
        }
    }
}

/// Simulates every `(level, run)` cell in parallel. Output order is level
/// major, run minor.
pub fn run_study(cfg: &StudyConfig) -> Result<Vec<StudyRecord>> {
    cfg.validate()?;
    let runs = cfg.runs_per_level;
    (0..cfg.levels * runs)
        .into_par_iter()
        .map(|idx| {
            let (level, run) = (idx / runs, idx % runs);
            let mut rng = StudyRng::for_run(cfg.seed, level, run);
            let (plo, phi) = cfg.prevalence_range;
            let (glo, ghi) = cfg.guess_bias_range;
            let prevalence = rng.uniform(plo, phi);
            let guess_bias = rng.uniform(glo, ghi);
            let target = cfg.target(level);
            let counts = generate_table(target, prevalence, guess_bias, cfg.instances_per_run, &mut rng)?;
            Ok(StudyRecord::measure(level, run, target, prevalence, guess_bias, counts))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StudyMeasure {
    Informedness,
    Markedness,
    Correlation,
    Kappa,
    F,
    G,
    A,
}

impl StudyMeasure {
    pub const ALL: [StudyMeasure; 7] = [
        StudyMeasure::Informedness,
        StudyMeasure::Markedness,
        StudyMeasure::Correlation,
        StudyMeasure::Kappa,
        StudyMeasure::F,
        StudyMeasure::G,
        StudyMeasure::A,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StudyMeasure::Informedness => "informedness",
            StudyMeasure::Markedness => "markedness",
            StudyMeasure::Correlation => "correlation",
            StudyMeasure::Kappa => "kappa",
            StudyMeasure::F => "f",
            StudyMeasure::G => "g",
            StudyMeasure::A => "a",
        }
    }
}

/// Fidelity of one measure across a study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureSummary {
    pub measure: StudyMeasure,
    pub mae_vs_target: Option<f64>,
    pub mae_vs_correlation: Option<f64>,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudySummary {
    pub measures: Vec<MeasureSummary>,
}

impl StudySummary {
    pub fn get(&self, measure: StudyMeasure) -> &MeasureSummary {
        self.measures
            .iter()
            .find(|m| m.measure == measure)
            .expect("summary covers every measure")
    }
}

fn mean_abs_diff(pairs: &[(f64, f64)]) -> Option<f64> {
    if pairs.is_empty() {
        return None;
    }
    Some(pairs.iter().map(|(x, y)| (x - y).abs()).sum::<f64>() / pairs.len() as f64)
}

/// Ordinary least squares `y = intercept + slope·x`.
pub fn least_squares(pairs: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = pairs.len() as f64;
    if pairs.len() < 2 {
        return None;
    }
    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pairs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = pairs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    Some((slope, mean_y - slope * mean_x))
}

/// Per-measure error against the target and against measured correlation,
/// and the regression line of the measure on the target. Records where a
/// measure is absent are skipped for that measure only.
pub fn summarize(records: &[StudyRecord]) -> Result<StudySummary> {
    if records.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let measures = StudyMeasure::ALL
        .iter()
        .map(|&measure| {
            let vs_target: Vec<(f64, f64)> = records
                .iter()
                .filter_map(|r| r.value(measure).map(|v| (r.target_b, v)))
                .collect();
            let vs_corr: Vec<(f64, f64)> = records
                .iter()
                .filter_map(|r| Some((r.correlation?, r.value(measure)?)))
                .collect();
            let fit = least_squares(&vs_target);
            MeasureSummary {
                measure,
                mae_vs_target: mean_abs_diff(&vs_target),
                mae_vs_correlation: mean_abs_diff(&vs_corr),
                slope: fit.map(|f| f.0),
                intercept: fit.map(|f| f.1),
            }
        })
        .collect();
    Ok(StudySummary { measures })
}

/// Mean and standard error of one measure within a level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelStat {
    pub level: u32,
    pub target: f64,
    pub count: usize,
    pub mean: f64,
    pub std_err: f64,
}

pub fn level_stats(records: &[StudyRecord], measure: StudyMeasure) -> Vec<LevelStat> {
    let mut levels: Vec<u32> = records.iter().map(|r| r.level).collect();
    levels.sort_unstable();
    levels.dedup();
    levels
        .into_iter()
        .filter_map(|level| {
            let group: Vec<&StudyRecord> = records.iter().filter(|r| r.level == level).collect();
            let values: Vec<f64> = group.iter().filter_map(|r| r.value(measure)).collect();
            if values.is_empty() {
                return None;
            }
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let std_err = if values.len() > 1 {
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
                (var / n).sqrt()
            } else {
                0.0
            };
            Some(LevelStat {
                level,
                target: group[0].target_b,
                count: values.len(),
                mean,
                std_err,
            })
        })
        .collect()
}

pub const STUDY_CSV_HEADER: &str =
    "level,run,target_b,prevalence,guess_bias,tp,fp,fn,tn,informedness,markedness,correlation,kappa,f,g,a";

pub const SUMMARY_CSV_HEADER: &str = "measure,mae_vs_target,mae_vs_correlation,slope,intercept";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per record; absent measures are empty fields. Floats use the
/// shortest representation that round-trips.
pub fn write_study_csv<W: Write>(records: &[StudyRecord], mut out: W) -> Result<()> {
    writeln!(out, "{STUDY_CSV_HEADER}")?;
    for r in records {
        let c = &r.counts;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.level,
            r.run,
            r.target_b,
            r.prevalence,
            r.guess_bias,
            c.tp(),
            c.fp(),
            c.fn_(),
            c.tn(),
            opt(r.informedness),
            opt(r.markedness),
            opt(r.correlation),
            opt(r.kappa),
            opt(r.f_measure),
            opt(r.g_measure),
            opt(r.a_measure),
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(summary: &StudySummary, mut out: W) -> Result<()> {
    writeln!(out, "{SUMMARY_CSV_HEADER}")?;
    for m in &summary.measures {
        writeln!(
            out,
            "{},{},{},{},{}",
            m.measure.name(),
            opt(m.mae_vs_target),
            opt(m.mae_vs_correlation),
            opt(m.slope),
            opt(m.intercept),
        )?;
    }
    out.flush()?;
    Ok(())
}
