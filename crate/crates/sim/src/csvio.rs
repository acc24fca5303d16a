//! Deterministic CSV emission of metrics records.
//!
//! Rows are sorted by (scenario, algorithm, ascending SNR), fields are
//! quoted RFC-4180 style when they need it, floats print in Rust's
//! shortest round-trip form, and the decimal separator is always a dot, so
//! two runs with the same seed produce byte-identical files.

use std::fs;
use std::path::Path;

use crate::metrics::MetricsRecord;
use crate::{Result, SimError};

pub const HEADER: &str =
    "scenario,algorithm,ebn0_db,trials,failed_trials,bits,bit_errors,ber,nmse,mean_runtime_ns,seed";

fn escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn format_record(r: &MetricsRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        escape(&r.scenario),
        escape(&r.algorithm),
        r.ebn0_db,
        r.trials,
        r.failed_trials,
        r.bits,
        r.bit_errors,
        r.ber,
        r.nmse,
        r.mean_runtime_ns,
        r.seed
    )
}

/// Serializes records in deterministic order.
pub fn render_csv(records: &[MetricsRecord]) -> String {
    let mut sorted: Vec<&MetricsRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.scenario, &a.algorithm)
            .cmp(&(&b.scenario, &b.algorithm))
            .then(a.ebn0_db.partial_cmp(&b.ebn0_db).unwrap())
    });
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in sorted {
        out.push_str(&format_record(r));
        out.push('\n');
    }
    out
}

/// Writes records to `path`, creating parent directories as needed.
pub fn emit_csv(records: &[MetricsRecord], path: &Path) -> Result<()> {
    let text = render_csv(records);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|source| SimError::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
    }
    fs::write(path, text).map_err(|source| SimError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn split_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => {
                fields.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

/// Parses a file produced by [`emit_csv`] back into records.
pub fn parse_csv(text: &str) -> Result<Vec<MetricsRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        _ => {
            return Err(SimError::Parse {
                line: 1,
                message: "missing or unexpected header".into(),
            })
        }
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let f = split_line(line);
        if f.len() != 11 {
            return Err(SimError::Parse {
                line: idx + 1,
                message: format!("expected 11 fields, found {}", f.len()),
            });
        }
        let err = |message: String| SimError::Parse {
            line: idx + 1,
            message,
        };
        records.push(MetricsRecord {
            scenario: f[0].clone(),
            algorithm: f[1].clone(),
            ebn0_db: f[2].parse().map_err(|e| err(format!("ebn0_db: {e}")))?,
            trials: f[3].parse().map_err(|e| err(format!("trials: {e}")))?,
            failed_trials: f[4].parse().map_err(|e| err(format!("failed_trials: {e}")))?,
            bits: f[5].parse().map_err(|e| err(format!("bits: {e}")))?,
            bit_errors: f[6].parse().map_err(|e| err(format!("bit_errors: {e}")))?,
            ber: f[7].parse().map_err(|e| err(format!("ber: {e}")))?,
            nmse: f[8].parse().map_err(|e| err(format!("nmse: {e}")))?,
            mean_runtime_ns: f[9].parse().map_err(|e| err(format!("mean_runtime_ns: {e}")))?,
            seed: f[10].parse().map_err(|e| err(format!("seed: {e}")))?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(scenario: &str, algorithm: &str, ebn0: f64) -> MetricsRecord {
        MetricsRecord {
            scenario: scenario.into(),
            algorithm: algorithm.into(),
            ebn0_db: ebn0,
            trials: 1000,
            failed_trials: 0,
            bits: 32_000,
            bit_errors: 17,
            ber: 17.0 / 32_000.0,
            nmse: 4.25e-4,
            mean_runtime_ns: 0,
            seed: 7,
        }
    }

    #[test]
    fn header_only_for_empty_input() {
        assert_eq!(render_csv(&[]), format!("{HEADER}\n"));
    }

    #[test]
    fn rows_are_sorted_and_round_trip() {
        let records = vec![
            record("b", "mmse", 4.0),
            record("a", "p-ns-admm", 8.0),
            record("a", "p-ns-admm", 0.0),
            record("a", "i-ns-admm", 12.0),
        ];
        let text = render_csv(&records);
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed.len(), 4);
        assert_eq!(parsed[0].algorithm, "i-ns-admm");
        assert_eq!(parsed[1].ebn0_db, 0.0);
        assert_eq!(parsed[2].ebn0_db, 8.0);
        assert_eq!(parsed[3].scenario, "b");
        // exact values survive
        assert_eq!(parsed[1].ber, 17.0 / 32_000.0);
        assert_eq!(parsed[1].nmse, 4.25e-4);
    }

    #[test]
    fn quoting_survives_round_trip() {
        let mut r = record("weird, \"label\"", "mmse", 1.0);
        r.nmse = 0.0;
        let text = render_csv(&[r.clone()]);
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed[0], r);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_csv("nope\n").is_err());
        let text = format!("{HEADER}\nonly,three,fields\n");
        assert!(parse_csv(&text).is_err());
    }
}
