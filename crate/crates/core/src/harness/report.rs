//! Gap records, reports and their CSV/JSON serialization.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rate::{Branch, Scheme};

/// Float slack on every asserted threshold.
pub const GAP_SLACK: f64 = 1e-9;

pub const FLAG_PRINTED: &str = "printed-form discrepancy";
pub const FLAG_OUTSIDE: &str = "outside claimed regime";
pub const FLAG_LOW_POWER: &str = "low-power regime";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub theorem: String,
    pub p: f64,
    pub c2: f64,
    pub a: Option<Vec<f64>>,
    pub rho: Option<f64>,
    pub q: Option<f64>,
    pub m: Option<usize>,
    pub gamma: Option<f64>,
    pub inner: f64,
    pub outer: f64,
    pub gap: f64,
    pub branch_in: Branch,
    pub branch_out: Branch,
    pub scheme: Option<Scheme>,
    /// Whether this point gates pass/fail.
    pub asserted: bool,
    pub printed_outer: Option<f64>,
    pub printed_gap: Option<f64>,
    pub flag: Option<String>,
}

impl GapRecord {
    pub(crate) fn new(theorem: &str, p: f64, c2: f64) -> Self {
        GapRecord {
            theorem: theorem.to_string(),
            p,
            c2,
            a: None,
            rho: None,
            q: None,
            m: None,
            gamma: None,
            inner: 0.0,
            outer: 0.0,
            gap: 0.0,
            branch_in: Branch::Single,
            branch_out: Branch::Single,
            scheme: None,
            asserted: true,
            printed_outer: None,
            printed_gap: None,
            flag: None,
        }
    }

    pub(crate) fn with_printed(mut self, printed: f64, threshold: f64) -> Self {
        let pg = printed - self.inner;
        self.printed_outer = Some(printed);
        self.printed_gap = Some(pg);
        if pg > threshold + GAP_SLACK || printed < self.inner - GAP_SLACK {
            self.flag = Some(FLAG_PRINTED.into());
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub theorem: String,
    pub grid: String,
    pub threshold: Option<f64>,
    pub records: Vec<GapRecord>,
    /// Largest gap among asserted records.
    pub max_gap: Option<f64>,
    pub argmax: Option<usize>,
    pub flagged: usize,
    pub pass: bool,
}

impl GapReport {
    /// `threshold` may vary per record (strong-fading sweeps); `None` here means
    /// each record is judged against its own `per_record` threshold.
    pub(crate) fn assemble(
        theorem: &str,
        grid: String,
        threshold: Option<f64>,
        records: Vec<GapRecord>,
        per_record: impl Fn(&GapRecord) -> f64,
    ) -> Self {
        let mut max_gap: Option<f64> = None;
        let mut argmax = None;
        let mut pass = true;
        for (i, r) in records.iter().enumerate() {
            if !r.asserted {
                continue;
            }
            if !(r.gap <= per_record(r) + GAP_SLACK) {
                pass = false;
            }
            if max_gap.is_none_or(|g| r.gap > g) {
                max_gap = Some(r.gap);
                argmax = Some(i);
            }
        }
        let flagged = records.iter().filter(|r| r.flag.is_some()).count();
        GapReport {
            theorem: theorem.to_string(),
            grid,
            threshold,
            records,
            max_gap,
            argmax,
            flagged,
            pass,
        }
    }

    pub fn worst(&self) -> Option<&GapRecord> {
        self.argmax.map(|i| &self.records[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// Ten significant digits, shortest form that reproduces them.
pub fn sig10(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

fn num(x: f64) -> String {
    format!("{}", sig10(x))
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 13] = [
    "theorem", "P", "c2", "a", "rho", "Q", "M", "inner", "outer", "gap", "branch_in", "branch_out", "scheme",
];

pub fn write_csv<W: Write>(reports: &[GapReport], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in reports.iter().flat_map(|r| &r.records) {
        let a = r
            .a
            .as_ref()
            .map(|v| v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        out.write_record([
            r.theorem.clone(),
            num(r.p),
            num(r.c2),
            a,
            opt(r.rho),
            opt(r.q),
            r.m.map(|m| m.to_string()).unwrap_or_default(),
            num(r.inner),
            num(r.outer),
            num(r.gap),
            r.branch_in.as_str().to_string(),
            r.branch_out.as_str().to_string(),
            r.scheme.map(|s| s.as_str().to_string()).unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Compact JSON at full precision, so a re-parse gives back equal reports.
pub fn write_json<W: Write>(reports: &[GapReport], mut w: W) -> Result<()> {
    if let [one] = reports {
        serde_json::to_writer(&mut w, one)?;
    } else {
        serde_json::to_writer(&mut w, reports)?;
    }
    w.write_all(b"\n")?;
    Ok(())
}

pub fn render(reports: &[GapReport], format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(reports, &mut buf)?,
        Format::Json => write_json(reports, &mut buf)?,
    }
    Ok(buf)
}

pub fn emit_report(reports: &[GapReport], format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = render(reports, format)?;
    std::fs::write(path, bytes).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}
