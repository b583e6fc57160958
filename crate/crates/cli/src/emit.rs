//! Long-format output rows.
//!
//! Every numeric fact becomes one row carrying its own provenance:
//! the computation method, the seed, the sample count, and the tool
//! version. The same `Vec<Row>` serializes as RFC 4180 CSV (the
//! default) or as JSON lines. Formatting is deterministic, so two runs
//! with identical configuration produce byte-identical files.
//!
//! Non-finite values survive the trip in CSV (`inf`, `NaN`); JSON has
//! no spelling for them, so they come out as `null` there.

use std::path::Path;

use kappa_core::{Error, Result};
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub command: &'static str,
    pub spec: String,
    pub quantity: &'static str,
    pub n0: Option<u64>,
    pub n: Option<u64>,
    pub param: Option<f64>,
    pub value: f64,
    pub std_error: f64,
    pub method: String,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub version: &'static str,
}

impl Row {
    pub fn new(command: &'static str, spec: String, quantity: &'static str) -> Self {
        Row {
            command,
            spec,
            quantity,
            n0: None,
            n: None,
            param: None,
            value: f64::NAN,
            std_error: 0.0,
            method: String::new(),
            seed: None,
            samples: None,
            version: VERSION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn render(rows: &[Row], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer
                    .serialize(row)
                    .map_err(|e| Error::InvalidConfig(format!("CSV encoding: {e}")))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::InvalidConfig(format!("CSV encoding: {e}")))?;
            String::from_utf8(bytes)
                .map_err(|e| Error::InvalidConfig(format!("CSV encoding: {e}")))
        }
        Format::Json => {
            let mut out = String::new();
            for row in rows {
                let line = serde_json::to_string(row)
                    .map_err(|e| Error::InvalidConfig(format!("JSON encoding: {e}")))?;
                out.push_str(&line);
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn emit(rows: &[Row], format: Format, out: Option<&Path>) -> Result<()> {
    let text = render(rows, format)?;
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidConfig(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_rendering() {
        let mut row = Row::new("kappa", "gaussian:mu=0,sigma=1".into(), "kappa");
        row.n0 = Some(1);
        row.n = Some(2);
        row.value = 0.25;
        row.method = "closed_form".into();
        row.seed = Some(7);

        let csv_text = render(std::slice::from_ref(&row), Format::Csv).unwrap();
        let mut lines = csv_text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "command,spec,quantity,n0,n,param,value,std_error,method,seed,samples,version"
        );
        assert_eq!(
            lines.next().unwrap(),
            format!("kappa,\"gaussian:mu=0,sigma=1\",kappa,1,2,,0.25,0.0,closed_form,7,,{VERSION}")
        );

        let json_text = render(&[row], Format::Json).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(json_text.trim()).unwrap();
        assert_eq!(parsed["quantity"], "kappa");
        assert_eq!(parsed["param"], serde_json::Value::Null);
        assert_eq!(parsed["value"], 0.25);
    }

    #[test]
    fn non_finite_values_serialize() {
        let mut row = Row::new("plan", "pareto:alpha=1.1,xmin=1".into(), "min_runs");
        row.value = f64::INFINITY;
        row.method = "closed_form".into();
        let csv_text = render(std::slice::from_ref(&row), Format::Csv).unwrap();
        assert!(csv_text.lines().nth(1).unwrap().contains("inf"));
        let json_text = render(&[row], Format::Json).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(json_text.trim()).unwrap();
        assert!(parsed["value"].is_null());
    }

    #[test]
    fn rendering_is_deterministic() {
        let mut row = Row::new("mad", "exponential:lambda=1".into(), "mad");
        row.n = Some(5);
        row.value = 1.7546736976785068;
        row.std_error = 3.2e-4;
        row.method = "monte_carlo".into();
        row.seed = Some(1);
        row.samples = Some(1_000_000);
        let rows = vec![row.clone(), row];
        let a = render(&rows, Format::Csv).unwrap();
        let b = render(&rows, Format::Csv).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().nth(1), a.lines().nth(2));
    }
}
