//! CSV and JSON emission.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;

pub const SPECTRUM_HEADER: &str =
    "n,l,E_wkb,E_closed,E_oracle,r1,r2,rel_err_wkb_vs_oracle,rel_err_wkb_vs_closed,phase_residual";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct SpectrumRow {
    pub n: u32,
    pub l: u32,
    pub E_wkb: Option<f64>,
    pub E_closed: Option<f64>,
    pub E_oracle: Option<f64>,
    pub r1: f64,
    pub r2: f64,
    pub rel_err_wkb_vs_oracle: Option<f64>,
    pub rel_err_wkb_vs_closed: Option<f64>,
    pub phase_residual: f64,
}

/// Twelve significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

fn cell(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

#[derive(Serialize)]
struct Document<'a, R: Serialize> {
    meta: &'a RunConfig,
    rows: &'a [R],
}

pub fn emit_spectrum<W: Write>(
    rows: &[SpectrumRow],
    config: &RunConfig,
    format: OutputFormat,
    out: &mut W,
) -> Result<(), CliError> {
    if rows.is_empty() {
        return Err(CliError::Usage("no rows to emit".into()));
    }
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{SPECTRUM_HEADER}")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.l,
                    cell(r.E_wkb),
                    cell(r.E_closed),
                    cell(r.E_oracle),
                    format_number(r.r1),
                    format_number(r.r2),
                    cell(r.rel_err_wkb_vs_oracle),
                    cell(r.rel_err_wkb_vs_closed),
                    format_number(r.phase_residual),
                )?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &Document { meta: config, rows })?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Column-oriented table used by the phase, wavefunction and field commands.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn emit<W: Write>(
        &self,
        config: &RunConfig,
        format: OutputFormat,
        out: &mut W,
    ) -> Result<(), CliError> {
        if self.rows.is_empty() {
            return Err(CliError::Usage("no rows to emit".into()));
        }
        match format {
            OutputFormat::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(|v| cell(*v)).collect();
                    writeln!(out, "{}", line.join(","))?;
                }
            }
            OutputFormat::Json => {
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.columns
                            .iter()
                            .zip(row)
                            .map(|(k, v)| ((*k).to_string(), serde_json::json!(v)))
                            .collect()
                    })
                    .collect();
                serde_json::to_writer_pretty(
                    &mut *out,
                    &Document {
                        meta: config,
                        rows: &rows,
                    },
                )?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
