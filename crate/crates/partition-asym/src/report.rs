//! Table serialization for convergence reports.
//!
//! Numeric columns are carried as decimal strings at full working precision;
//! parsing an emitted table and re-serializing it reproduces it byte for
//! byte. CSV uses a comma separator, a fixed header row, and LF line endings.

use serde::{Deserialize, Serialize};

use crate::asym::RatioRow;
use crate::error::{Error, Result};

pub const RATIO_TABLE_HEADER: &str = "n,exact,estimate,ratio,abs_err_ratio";

/// A convergence-table row with every numeric field rendered to text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRowRaw {
    pub n: u64,
    pub exact: String,
    pub estimate: String,
    pub ratio: String,
    pub abs_err_ratio: String,
}

impl From<&RatioRow> for RatioRowRaw {
    fn from(r: &RatioRow) -> Self {
        RatioRowRaw {
            n: r.n,
            exact: r.exact.to_string(),
            estimate: r.estimate.to_decimal_string(),
            ratio: r.ratio.to_decimal_string(),
            abs_err_ratio: r.abs_err_ratio.to_decimal_string(),
        }
    }
}

pub fn raw_rows(rows: &[RatioRow]) -> Vec<RatioRowRaw> {
    rows.iter().map(RatioRowRaw::from).collect()
}

pub fn ratio_table_to_csv(rows: &[RatioRowRaw]) -> String {
    let mut out = String::from(RATIO_TABLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.exact, r.estimate, r.ratio, r.abs_err_ratio
        ));
    }
    out
}

pub fn ratio_table_from_csv(text: &str) -> Result<Vec<RatioRowRaw>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == RATIO_TABLE_HEADER => {}
        other => {
            return Err(Error::domain(format!(
                "expected header {RATIO_TABLE_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::domain(format!(
                "row {} has {} fields, expected 5",
                i + 1,
                fields.len()
            )));
        }
        rows.push(RatioRowRaw {
            n: fields[0]
                .parse()
                .map_err(|_| Error::domain(format!("bad n in row {}", i + 1)))?,
            exact: fields[1].to_string(),
            estimate: fields[2].to_string(),
            ratio: fields[3].to_string(),
            abs_err_ratio: fields[4].to_string(),
        });
    }
    Ok(rows)
}

pub fn ratio_table_to_json(rows: &[RatioRowRaw]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("serializable");
    s.push('\n');
    s
}

pub fn ratio_table_from_json(text: &str) -> Result<Vec<RatioRowRaw>> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("bad table JSON: {e}")))
}
