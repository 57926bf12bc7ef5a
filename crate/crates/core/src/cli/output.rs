use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::config::{Format, Loaded};
use super::CliError;
use crate::experiments::{ExperimentResult, Row, Schema};

pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

fn io(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Creates `<output>/<experiment>-<timestamp>`, suffixing a counter if the
/// name is taken.
pub fn run_directory(output: &Path, experiment: &str, stamp: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(output).map_err(|e| io(output, e))?;
    let base = format!("{experiment}-{stamp}");
    for n in 0.. {
        let name = if n == 0 {
            base.clone()
        } else {
            format!("{base}-{n}")
        };
        let dir = output.join(name);
        match std::fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(io(&dir, e)),
        }
    }
    unreachable!()
}

pub fn write_csv(path: &Path, schema: &Schema, rows: &[Row]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io(path, e))?;
    w.write_record(schema.columns()).map_err(|e| io(path, e))?;
    for row in rows {
        w.write_record(schema.record(row))
            .map_err(|e| io(path, e))?;
    }
    w.flush().map_err(|e| io(path, e))
}

/// `{"columns": [...], "rows": [[...], ...]}` with typed cells.
pub fn rows_json(schema: &Schema, rows: &[Row]) -> Value {
    let cells = |row: &Row| -> Vec<Value> {
        let mut out: Vec<Value> = (0..schema.labels.len())
            .map(|i| Value::from(row.labels.get(i).cloned().unwrap_or_default()))
            .collect();
        let num = |v: Option<&f64>| v.map(|&x| json!(x)).unwrap_or(Value::Null);
        out.extend(schema.inputs.iter().map(|k| num(row.inputs.get(k))));
        out.extend(schema.extra.iter().map(|k| num(row.extra.get(k))));
        out.push(json!(row.measured));
        out.push(json!(row.predicted));
        out.push(json!(row.abs_error));
        if schema.errors == crate::experiments::ErrorColumns::Full {
            out.push(json!(row.rel_error));
            out.push(json!(row.tolerance.value()));
            out.push(json!(row.passed));
        }
        out
    };
    json!({
        "columns": schema.columns(),
        "rows": rows.iter().map(cells).collect::<Vec<_>>(),
    })
}

pub fn meta_json(loaded: &Loaded, result: &ExperimentResult, stamp: &str) -> Value {
    let worst = result.worst_row().map(|i| {
        let r = &result.rows[i];
        json!({
            "index": i,
            "labels": r.labels,
            "measured": r.measured,
            "predicted": r.predicted,
            "abs_error": r.abs_error,
            "rel_error": r.rel_error,
            "tolerance": r.tolerance,
            "passed": r.passed,
        })
    });
    json!({
        "artifact_version": ARTIFACT_VERSION,
        "experiment": result.name,
        "timestamp": stamp,
        "resolved_config": loaded.config,
        "defaulted_fields": loaded.defaulted,
        "tolerances": result.tolerances(),
        "passed": result.passed,
        "worst_row": worst,
        "rows": result.rows.len(),
        "columns": result.schema.columns(),
        "parameters": result.parameters,
        "runtime_seconds": result.runtime,
    })
}

/// Writes the rows and `meta.json` into a fresh run directory.
pub fn persist(loaded: &Loaded, result: &ExperimentResult) -> Result<PathBuf, CliError> {
    let now = chrono::Utc::now();
    let stamp = now.format("%Y%m%dT%H%M%S%.3fZ").to_string();
    let dir = run_directory(
        &loaded.config.output,
        loaded.config.experiment.as_str(),
        &stamp,
    )?;
    match loaded.config.format {
        Format::Csv => write_csv(&dir.join("rows.csv"), &result.schema, &result.rows)?,
        Format::Json => {
            let path = dir.join("rows.json");
            let text = serde_json::to_string_pretty(&rows_json(&result.schema, &result.rows))
                .expect("rows serialize");
            std::fs::write(&path, text).map_err(|e| io(&path, e))?;
        }
    }
    let path = dir.join("meta.json");
    let text = serde_json::to_string_pretty(&meta_json(loaded, result, &now.to_rfc3339()))
        .expect("meta serializes");
    std::fs::write(&path, text).map_err(|e| io(&path, e))?;
    Ok(dir)
}
