//! Readers for label files (`gold,pred`) and score files (`gold,score`).
//!
//! Both are comma-separated with a mandatory header. Gold and predicted
//! labels must be `0` or `1`; scores must be finite reals. Errors carry the
//! 1-based line number of the offending row.

use std::io::Read;

use crate::error::{EvalError, Result};

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: [&str; 2]) -> Result<()> {
    let header = rdr.headers()?.clone();
    if header.len() != 2 || header.get(0) != Some(expected[0]) || header.get(1) != Some(expected[1]) {
        return Err(EvalError::Parse {
            line: 1,
            message: format!(
                "expected header `{},{}`, found `{}`",
                expected[0],
                expected[1],
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    Ok(())
}

fn binary(field: &str, column: &str, line: u64) -> Result<bool> {
    match field {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(EvalError::Parse {
            line,
            message: format!("{column} must be 0 or 1, found `{other}`"),
        }),
    }
}

fn rows<R: Read>(mut rdr: csv::Reader<R>) -> impl Iterator<Item = Result<(u64, csv::StringRecord)>> {
    let mut record = csv::StringRecord::new();
    std::iter::from_fn(move || match rdr.read_record(&mut record) {
        Ok(true) => {
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            Some(Ok((line, record.clone())))
        }
        Ok(false) => None,
        Err(e) => Some(Err(e.into())),
    })
}

/// Reads paired gold/predicted labels.
pub fn read_labels<R: Read>(input: R) -> Result<(Vec<bool>, Vec<bool>)> {
    let mut rdr = reader(input);
    check_header(&mut rdr, ["gold", "pred"])?;
    let mut gold = Vec::new();
    let mut pred = Vec::new();
    for row in rows(rdr) {
        let (line, rec) = row?;
        gold.push(binary(&rec[0], "gold", line)?);
        pred.push(binary(&rec[1], "pred", line)?);
    }
    if gold.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    Ok((gold, pred))
}

/// Reads gold labels with real-valued classifier scores.
pub fn read_scores<R: Read>(input: R) -> Result<(Vec<bool>, Vec<f64>)> {
    let mut rdr = reader(input);
    check_header(&mut rdr, ["gold", "score"])?;
    let mut gold = Vec::new();
    let mut scores = Vec::new();
    for row in rows(rdr) {
        let (line, rec) = row?;
        gold.push(binary(&rec[0], "gold", line)?);
        let score = rec[1]
            .parse::<f64>()
            .ok()
            .filter(|s| s.is_finite())
            .ok_or_else(|| EvalError::Parse {
                line,
                message: format!("score must be a finite number, found `{}`", &rec[1]),
            })?;
        scores.push(score);
    }
    if gold.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    Ok((gold, scores))
}
