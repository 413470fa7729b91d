//! CSV and JSON serialization of class sums and verification reports.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::aggregate::{ClassSum, VerificationReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parameter(format!("unknown format {s:?}"))),
        }
    }
}

pub const REPORT_COLUMNS: [&str; 9] = ["claim_id", "n", "p", "q", "statistic", "status", "lhs", "rhs", "witness"];
pub const SUM_COLUMNS: [&str; 6] = ["n", "p", "q", "statistic", "value", "witness"];

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_table<const N: usize>(columns: [&str; N], rows: impl Iterator<Item = [String; N]>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(columns).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    generated_at_unix: u64,
    rows: &'a [T],
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn render<T: Serialize, const N: usize>(
    rows: &[T],
    format: Format,
    deterministic: bool,
    columns: [&str; N],
    cells: impl Fn(&T) -> [String; N],
) -> Result<String> {
    match format {
        Format::Csv => {
            let body = csv_table(columns, rows.iter().map(cells))?;
            Ok(if deterministic { body } else { format!("# generated_at_unix={}\n{body}", timestamp()) })
        }
        Format::Json => {
            let text = if deterministic {
                serde_json::to_string_pretty(rows)
            } else {
                serde_json::to_string_pretty(&Stamped { generated_at_unix: timestamp(), rows })
            }
            .map_err(|e| Error::Format(e.to_string()))?;
            Ok(text + "\n")
        }
    }
}

/// Rows in the fixed column order of [`REPORT_COLUMNS`].
pub fn render_reports(rows: &[VerificationReport], format: Format, deterministic: bool) -> Result<String> {
    render(rows, format, deterministic, REPORT_COLUMNS, |r| {
        [
            r.claim_id.clone(),
            r.n.to_string(),
            opt(r.p),
            opt(r.q),
            r.statistic.clone(),
            r.status.to_string(),
            r.lhs.clone(),
            r.rhs.clone(),
            r.witness.clone(),
        ]
    })
}

/// Rows in the fixed column order of [`SUM_COLUMNS`].
pub fn render_sums(rows: &[ClassSum], format: Format, deterministic: bool) -> Result<String> {
    render(rows, format, deterministic, SUM_COLUMNS, |s| {
        [
            s.n.to_string(),
            s.p.to_string(),
            opt(s.q),
            s.statistic.to_string(),
            s.value.to_string(),
            s.witness.clone().unwrap_or_default(),
        ]
    })
}
