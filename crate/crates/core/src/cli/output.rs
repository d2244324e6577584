//! Table, CSV and JSON renderings of profile rows and checker reports.

use std::io::{self, Write};
use std::time::Duration;

use serde::Serialize;
use serde_json::json;

use crate::profile::IterProfile;
use crate::report::CheckReport;

/// Version of the JSON layout, bumped on any incompatible change.
pub const SCHEMA: u32 = 1;

/// The functions of one `n`, as printed by `profile`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub n: u32,
    #[serde(rename = "E")]
    pub max_mult: u64,
    pub e: u64,
    #[serde(rename = "Delta")]
    pub delta: u64,
    #[serde(rename = "M")]
    pub max_deg: u64,
    pub m: u64,
    #[serde(rename = "N")]
    pub count: u64,
    /// Exact average degree, `"Delta/N"`.
    #[serde(rename = "A")]
    pub average: String,
    #[serde(rename = "A_decimal")]
    pub average_decimal: String,
    /// `degree:multiplicity:count` entries.
    pub census: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<String>,
}

impl ResultRow {
    pub fn new(p: &IterProfile, elapsed: Option<Duration>) -> Self {
        ResultRow {
            n: p.n,
            max_mult: p.max_mult,
            e: p.min_mult,
            delta: p.delta,
            max_deg: p.max_deg,
            m: p.min_deg,
            count: p.count,
            average: format!("{}/{}", p.delta, p.count),
            average_decimal: decimal(p.delta, p.count),
            census: p.census.digest(),
            time_ms: elapsed.map(|d| format!("{:.3}", d.as_secs_f64() * 1e3)),
        }
    }

    fn cells(&self) -> Vec<String> {
        let mut v = vec![
            self.n.to_string(),
            self.max_mult.to_string(),
            self.e.to_string(),
            self.delta.to_string(),
            self.max_deg.to_string(),
            self.m.to_string(),
            self.count.to_string(),
            self.average.clone(),
            self.average_decimal.clone(),
            self.census.clone(),
        ];
        v.extend(self.time_ms.clone());
        v
    }
}

/// `a / b` rounded to six decimals, computed in integers so the text never
/// depends on float formatting.
pub(crate) fn decimal(a: u64, b: u64) -> String {
    let scaled = (a as u128 * 1_000_000 * 2 + b as u128) / (2 * b as u128);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

const HEADER: [&str; 10] = ["n", "E", "e", "Delta", "M", "m", "N", "A", "A_decimal", "census"];

fn header(rows: &[ResultRow]) -> Vec<&'static str> {
    let mut h = HEADER.to_vec();
    if rows.first().is_some_and(|r| r.time_ms.is_some()) {
        h.push("time_ms");
    }
    h
}

pub fn write_table(out: &mut dyn Write, rows: &[ResultRow]) -> io::Result<()> {
    let head = header(rows);
    let cells: Vec<Vec<String>> = rows.iter().map(ResultRow::cells).collect();
    let widths: Vec<usize> =
        (0..head.len()).map(|i| cells.iter().map(|c| c[i].len()).chain([head[i].len()]).max().unwrap_or(0)).collect();
    let line = |out: &mut dyn Write, items: &[&str]| -> io::Result<()> {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end())
    };
    line(out, &head)?;
    for c in &cells {
        line(out, &c.iter().map(String::as_str).collect::<Vec<_>>())?;
    }
    Ok(())
}

pub fn write_csv(out: &mut dyn Write, rows: &[ResultRow]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(rows))?;
    for r in rows {
        w.write_record(r.cells())?;
    }
    w.flush()
}

pub fn write_json(out: &mut dyn Write, rows: &[ResultRow]) -> io::Result<()> {
    for r in rows {
        let mut v = serde_json::to_value(r).map_err(io::Error::other)?;
        v.as_object_mut().expect("row is an object").insert("schema".into(), json!(SCHEMA));
        writeln!(out, "{}", v)?;
    }
    Ok(())
}

pub fn write_report(out: &mut dyn Write, r: &CheckReport) -> io::Result<()> {
    let mut v = serde_json::to_value(r).map_err(io::Error::other)?;
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("pass".into(), json!(r.passed()));
    writeln!(out, "{}", v)
}
