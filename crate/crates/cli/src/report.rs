use std::io::Write;

use serde::Serialize;
use serde_json::Value;

/// Output format chosen on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub source: String,
    pub n: usize,
    pub edges: usize,
    pub pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CapFlags {
    pub linear: usize,
    pub circular: usize,
    pub patterns: usize,
    pub budget_secs: u64,
    pub i_have_time: bool,
}

/// Everything one command produced. Rationals appear as "p/q" strings;
/// Monte Carlo frequencies are floats and carry their sample count.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<String>,
    pub result: Value,
    pub status: &'static str,
    pub caps: CapFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timing_ms: u128,
}

/// A report together with its human summary and CSV table.
pub struct Rendered {
    pub report: RunReport,
    pub human: Vec<String>,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Rendered {
    pub fn emit(&self, format: Format) -> anyhow::Result<()> {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match format {
            Format::Human => {
                for line in &self.human {
                    writeln!(out, "{line}")?;
                }
                writeln!(out, "status: {}", self.report.status)?;
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.report)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
