//! Measurement records: excitation-number counts from a fixed number of
//! shots, read and written as CSV or JSON lines.
//!
//! CSV layout, one bin per row, missing bins counting zero:
//! ```text
//! # N=100 shots=1000
//! r,count
//! 50,560
//! ```
//! JSONL layout: a metadata object then one object per bin:
//! ```text
//! {"N":100,"shots":1000}
//! {"r":50,"count":560}
//! ```

use crate::error::{CliError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::BufRead;

/// Counted excitation outcomes of `shots` projective measurements on an
/// N-particle system. Bins absent from `counts` were never observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub n: u64,
    pub shots: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl MeasurementRecord {
    /// Validated constructor: every bin in 0..=n, no duplicate bins, and the
    /// counts must not exceed the number of shots.
    pub fn new(n: u64, shots: u64, counts: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (r, count) in counts {
            if r > n {
                return Err(CliError::Validation(format!("bin r={r} exceeds N={n}")));
            }
            if map.insert(r, count).is_some() {
                return Err(CliError::Validation(format!("duplicate bin r={r}")));
            }
        }
        let record = Self {
            n,
            shots,
            counts: map,
        };
        record.check_total()?;
        Ok(record)
    }

    fn check_total(&self) -> Result<()> {
        let total: u64 = self.counts.values().sum();
        if total > self.shots {
            return Err(CliError::Validation(format!(
                "counts sum to {total}, more than {} shots",
                self.shots
            )));
        }
        Ok(())
    }

    /// Total counts falling in the given excitation bins.
    pub fn population(&self, bins: &[u64]) -> u64 {
        bins.iter()
            .map(|r| self.counts.get(r).copied().unwrap_or(0))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RecordFormat {
    Csv,
    Jsonl,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetaLine {
    #[serde(rename = "N")]
    n: u64,
    shots: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowLine {
    r: u64,
    count: u64,
}

fn parse_err(line: usize, column: usize, reason: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        column,
        reason: reason.into(),
    }
}

/// Lines with 1-based numbers, blank lines skipped, CR stripped.
fn significant_lines<R: BufRead>(reader: R) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CliError::Io {
            path: "<input>".into(),
            source: e,
        })?;
        let line = line.trim_end_matches('\r');
        if !line.trim().is_empty() {
            out.push((idx + 1, line.to_string()));
        }
    }
    Ok(out)
}

fn parse_meta_csv(lineno: usize, line: &str) -> Result<(u64, u64)> {
    let rest = line
        .strip_prefix('#')
        .ok_or_else(|| parse_err(lineno, 1, "metadata line must start with '#'"))?;
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_err(
            lineno,
            1,
            format!(
                "expected '# N=<int> shots=<int>', got {} fields",
                tokens.len()
            ),
        ));
    }
    let n = tokens[0]
        .strip_prefix("N=")
        .and_then(|v| v.parse::<u64>().ok())
        .ok_or_else(|| parse_err(lineno, 1, format!("bad N token '{}'", tokens[0])))?;
    let shots = tokens[1]
        .strip_prefix("shots=")
        .and_then(|v| v.parse::<u64>().ok())
        .ok_or_else(|| parse_err(lineno, 2, format!("bad shots token '{}'", tokens[1])))?;
    Ok((n, shots))
}

fn parse_csv<R: BufRead>(reader: R) -> Result<MeasurementRecord> {
    let lines = significant_lines(reader)?;
    let mut it = lines.into_iter();
    let (meta_no, meta) = it
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing metadata line"))?;
    let (n, shots) = parse_meta_csv(meta_no, &meta)?;
    let (header_no, header) = it
        .next()
        .ok_or_else(|| parse_err(meta_no + 1, 1, "missing 'r,count' header"))?;
    if header.trim() != "r,count" {
        return Err(parse_err(
            header_no,
            1,
            format!("expected header 'r,count', got '{}'", header.trim()),
        ));
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for (lineno, line) in it {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            return Err(parse_err(
                lineno,
                1,
                format!("expected 2 comma-separated fields, got {}", fields.len()),
            ));
        }
        let r: u64 = fields[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, 1, format!("bad excitation count '{}'", fields[0])))?;
        let count: u64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, 2, format!("bad count '{}'", fields[1])))?;
        if r > n {
            return Err(parse_err(lineno, 1, format!("bin r={r} exceeds N={n}")));
        }
        if counts.insert(r, count).is_some() {
            return Err(parse_err(lineno, 1, format!("duplicate bin r={r}")));
        }
    }
    let record = MeasurementRecord { n, shots, counts };
    record.check_total()?;
    Ok(record)
}

fn parse_jsonl<R: BufRead>(reader: R) -> Result<MeasurementRecord> {
    let lines = significant_lines(reader)?;
    let mut it = lines.into_iter();
    let (meta_no, meta) = it
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing metadata line"))?;
    let meta: MetaLine = serde_json::from_str(&meta)
        .map_err(|e| parse_err(meta_no, e.column().max(1), e.to_string()))?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for (lineno, line) in it {
        let row: RowLine = serde_json::from_str(&line)
            .map_err(|e| parse_err(lineno, e.column().max(1), e.to_string()))?;
        if row.r > meta.n {
            return Err(parse_err(
                lineno,
                1,
                format!("bin r={} exceeds N={}", row.r, meta.n),
            ));
        }
        if counts.insert(row.r, row.count).is_some() {
            return Err(parse_err(lineno, 1, format!("duplicate bin r={}", row.r)));
        }
    }
    let record = MeasurementRecord {
        n: meta.n,
        shots: meta.shots,
        counts,
    };
    record.check_total()?;
    Ok(record)
}

pub fn parse_record<R: BufRead>(reader: R, format: RecordFormat) -> Result<MeasurementRecord> {
    match format {
        RecordFormat::Csv => parse_csv(reader),
        RecordFormat::Jsonl => parse_jsonl(reader),
    }
}

pub fn read_record_file(path: &std::path::Path, format: RecordFormat) -> Result<MeasurementRecord> {
    let file = std::fs::File::open(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_record(std::io::BufReader::new(file), format)
}

pub fn emit_csv(record: &MeasurementRecord) -> String {
    let mut out = format!("# N={} shots={}\nr,count\n", record.n, record.shots);
    for (r, count) in &record.counts {
        out.push_str(&format!("{r},{count}\n"));
    }
    out
}

pub fn emit_jsonl(record: &MeasurementRecord) -> String {
    let mut out = format!(
        "{}\n",
        serde_json::json!({"N": record.n, "shots": record.shots})
    );
    for (&r, &count) in &record.counts {
        out.push_str(&serde_json::to_string(&RowLine { r, count }).unwrap());
        out.push('\n');
    }
    out
}

pub fn emit_record(record: &MeasurementRecord, format: RecordFormat) -> String {
    match format {
        RecordFormat::Csv => emit_csv(record),
        RecordFormat::Jsonl => emit_jsonl(record),
    }
}
