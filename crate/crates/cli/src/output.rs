//! JSON and CSV emission.

use std::io::Write;

use anyhow::{Context, Result};
use serde_json::Value;

use classalg::report::Report;

use crate::config::{Format, RunConfig};

pub struct Table {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Table { json, header: header.iter().map(|s| s.to_string()).collect(), rows }
    }
}

pub enum Output {
    /// Reports with their wall time in milliseconds.
    Reports(Vec<(Report, f64)>),
    Table(Table),
    Text(String),
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Reports(rs) => rs.iter().all(|(r, _)| r.passed()),
            _ => true,
        }
    }
}

fn report_json(r: &Report, ms: f64, timing: bool) -> Result<Value> {
    let mut v = serde_json::to_value(r)?;
    if timing {
        v["wall_time_ms"] = serde_json::json!((ms * 1000.0).round() / 1000.0);
    }
    Ok(v)
}

fn render(out: &Output, cfg: &RunConfig) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match (out, cfg.format) {
        (Output::Text(s), _) => writeln!(buf, "{s}")?,
        (Output::Reports(rs), Format::Json) => {
            let v: Vec<Value> = rs.iter().map(|(r, t)| report_json(r, *t, cfg.timing)).collect::<Result<_>>()?;
            serde_json::to_writer_pretty(&mut buf, &v)?;
            buf.push(b'\n');
        }
        (Output::Table(t), Format::Json) => {
            serde_json::to_writer_pretty(&mut buf, &t.json)?;
            buf.push(b'\n');
        }
        (Output::Reports(rs), Format::Csv) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            let mut header = vec!["identity", "status", "parameters", "cells", "mismatches"];
            if cfg.timing {
                header.push("wall_time_ms");
            }
            w.write_record(&header)?;
            for (r, t) in rs {
                let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut rec = vec![
                    r.identity.clone(),
                    if r.passed() { "pass".into() } else { "fail".into() },
                    params.join(" "),
                    r.cells_compared.to_string(),
                    r.mismatch_count.to_string(),
                ];
                if cfg.timing {
                    rec.push(format!("{t:.3}"));
                }
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        (Output::Table(t), Format::Csv) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&t.header)?;
            for row in &t.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(buf)
}

pub fn emit(out: &Output, cfg: &RunConfig) -> Result<()> {
    let bytes = render(out, cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(&bytes)?;
            Ok(())
        }
    }
}
