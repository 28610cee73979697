//! Training-set file loading.
//!
//! One example per line: comma-separated sign values with the target last,
//! so `1,-1,1,-1,1` is the input (+1, -1, +1, -1) labelled +1. Lines
//! starting with `#` and blank lines are skipped. Field errors report the
//! 1-based line number of the offending row.

use std::path::Path;

use qperc_core::perceptron::{InputVector, TrainingSet};

use crate::HarnessError;

pub fn load_training_set(path: &Path) -> Result<TrainingSet, HarnessError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        // Row widths are checked here so the error can carry a line number.
        .flexible(true)
        .from_path(path)?;
    let mut inputs = Vec::new();
    let mut targets = Vec::new();
    let mut width: Option<usize> = None;
    for result in reader.records() {
        let record = result?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() < 2 {
            return Err(HarnessError::Dataset {
                line,
                message: format!(
                    "need at least one input and a target, got {} field(s)",
                    record.len()
                ),
            });
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(HarnessError::Dataset {
                    line,
                    message: format!("expected {w} fields, got {}", record.len()),
                });
            }
            Some(_) => {}
        }
        let mut values = Vec::with_capacity(record.len());
        for (i, field) in record.iter().enumerate() {
            let value: i8 = field.parse().map_err(|_| HarnessError::Dataset {
                line,
                message: format!("field {} is not an integer: {field:?}", i + 1),
            })?;
            if value != 1 && value != -1 {
                return Err(HarnessError::Dataset {
                    line,
                    message: format!("field {} must be 1 or -1, got {value}", i + 1),
                });
            }
            values.push(value);
        }
        let target = values.pop().expect("checked at least two fields");
        inputs.push(InputVector::new(values)?);
        targets.push(target);
    }
    Ok(TrainingSet::new(inputs, targets)?)
}
