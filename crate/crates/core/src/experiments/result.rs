use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Acceptance band for one row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tolerance {
    /// `|measured - predicted| <= value`.
    Absolute { value: f64 },
    /// `|measured - predicted| <= max(rel |predicted|, floor)`.
    Relative { rel: f64, floor: f64 },
}

impl Tolerance {
    pub fn abs(value: f64) -> Self {
        Tolerance::Absolute { value }
    }

    pub fn rel(rel: f64, floor: f64) -> Self {
        Tolerance::Relative { rel, floor }
    }

    pub fn allows(&self, measured: f64, predicted: f64) -> bool {
        let err = (measured - predicted).abs();
        match *self {
            Tolerance::Absolute { value } => err <= value,
            Tolerance::Relative { rel, floor } => err <= (rel * predicted.abs()).max(floor),
        }
    }

    /// Same band shape with its headline number replaced by `value`.
    pub fn with_value(&self, value: f64) -> Self {
        match *self {
            Tolerance::Absolute { .. } => Tolerance::Absolute { value },
            Tolerance::Relative { rel, floor } => Tolerance::Relative {
                rel: value,
                floor: if rel > 0.0 {
                    floor * value / rel
                } else {
                    floor
                },
            },
        }
    }

    /// Headline number: the absolute bound or the relative factor.
    pub fn value(&self) -> f64 {
        match *self {
            Tolerance::Absolute { value } => value,
            Tolerance::Relative { rel, .. } => rel,
        }
    }
}

impl std::fmt::Display for Tolerance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tolerance::Absolute { value } => write!(f, "abs {value:e}"),
            Tolerance::Relative { rel, floor } => write!(f, "rel {rel:e} floor {floor:e}"),
        }
    }
}

/// One measured-versus-predicted comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    /// Identifying text, one per label column of the schema.
    pub labels: Vec<String>,
    /// Numeric inputs by column name.
    pub inputs: BTreeMap<String, f64>,
    /// Auxiliary outputs by column name.
    pub extra: BTreeMap<String, f64>,
    pub measured: f64,
    pub predicted: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: Tolerance,
    pub passed: bool,
}

impl Row {
    pub fn new(labels: &[&str], measured: f64, predicted: f64, tolerance: Tolerance) -> Self {
        let abs_error = (measured - predicted).abs();
        let rel_error = if predicted != 0.0 {
            abs_error / predicted.abs()
        } else if abs_error == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            inputs: BTreeMap::new(),
            extra: BTreeMap::new(),
            measured,
            predicted,
            abs_error,
            rel_error,
            tolerance,
            passed: tolerance.allows(measured, predicted) && measured.is_finite(),
        }
    }

    /// Compares two phases modulo `2 pi`.
    pub fn phase(labels: &[&str], measured: f64, predicted: f64, tolerance: Tolerance) -> Self {
        let diff = crate::hilbert::principal(measured - predicted);
        let mut row = Self::new(labels, predicted + diff, predicted, tolerance);
        row.measured = measured;
        row
    }

    pub fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_string(), value);
        self
    }

    pub fn extra(mut self, name: &str, value: f64) -> Self {
        self.extra.insert(name.to_string(), value);
        self
    }

    /// How far outside its band the row sits; below one means inside.
    pub fn severity(&self) -> f64 {
        let band = match self.tolerance {
            Tolerance::Absolute { value } => value,
            Tolerance::Relative { rel, floor } => (rel * self.predicted.abs()).max(floor),
        };
        if band > 0.0 {
            self.abs_error / band
        } else if self.abs_error == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Which error columns a table shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorColumns {
    /// `abs_error` only.
    Absolute,
    /// `abs_error, rel_error, tolerance, passed`.
    Full,
}

/// Fixed column layout of an experiment's table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    pub labels: Vec<String>,
    pub inputs: Vec<String>,
    pub extra: Vec<String>,
    pub measured: String,
    pub predicted: String,
    pub errors: ErrorColumns,
}

impl Schema {
    pub fn new(
        labels: &[&str],
        inputs: &[&str],
        extra: &[&str],
        measured: &str,
        predicted: &str,
        errors: ErrorColumns,
    ) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        Self {
            labels: own(labels),
            inputs: own(inputs),
            extra: own(extra),
            measured: measured.into(),
            predicted: predicted.into(),
            errors,
        }
    }

    pub fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = self
            .labels
            .iter()
            .chain(&self.inputs)
            .chain(&self.extra)
            .cloned()
            .collect();
        cols.push(self.measured.clone());
        cols.push(self.predicted.clone());
        cols.push("abs_error".into());
        if self.errors == ErrorColumns::Full {
            cols.extend(["rel_error", "tolerance", "passed"].map(String::from));
        }
        cols
    }

    /// Cells of `row` in column order; floats with 17 significant digits,
    /// absent values empty.
    pub fn record(&self, row: &Row) -> Vec<String> {
        let num = |v: f64| format!("{v:.16e}");
        let lookup = |map: &BTreeMap<String, f64>, key: &String| {
            map.get(key).map(|&v| num(v)).unwrap_or_default()
        };
        let mut cells: Vec<String> = (0..self.labels.len())
            .map(|i| row.labels.get(i).cloned().unwrap_or_default())
            .collect();
        cells.extend(self.inputs.iter().map(|k| lookup(&row.inputs, k)));
        cells.extend(self.extra.iter().map(|k| lookup(&row.extra, k)));
        cells.push(num(row.measured));
        cells.push(num(row.predicted));
        cells.push(num(row.abs_error));
        if self.errors == ErrorColumns::Full {
            cells.push(num(row.rel_error));
            cells.push(num(row.tolerance.value()));
            cells.push(row.passed.to_string());
        }
        cells
    }
}

/// Outcome of one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub name: String,
    /// Every parameter the run used, after defaults.
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub schema: Schema,
    pub rows: Vec<Row>,
    pub passed: bool,
    /// Wall-clock seconds.
    pub runtime: f64,
}

impl ExperimentResult {
    pub fn new(
        name: &str,
        parameters: BTreeMap<String, serde_json::Value>,
        schema: Schema,
        rows: Vec<Row>,
        runtime: f64,
    ) -> Self {
        let passed = !rows.is_empty() && rows.iter().all(|r| r.passed);
        Self {
            name: name.into(),
            parameters,
            schema,
            rows,
            passed,
            runtime,
        }
    }

    /// Index of the row furthest outside (or closest to) its band.
    pub fn worst_row(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.severity().total_cmp(&b.1.severity()))
            .map(|(i, _)| i)
    }

    pub fn find(&self, labels: &[&str]) -> Option<&Row> {
        self.rows.iter().find(|r| {
            r.labels.len() >= labels.len() && labels.iter().zip(&r.labels).all(|(a, b)| a == b)
        })
    }

    /// Distinct tolerances in row order.
    pub fn tolerances(&self) -> Vec<Tolerance> {
        let mut out: Vec<Tolerance> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.tolerance) {
                out.push(r.tolerance);
            }
        }
        out
    }
}

/// Serializable parameter record of `value`.
pub(crate) fn parameter_map<T: Serialize>(
    value: &T,
    ctx: &super::Context,
) -> BTreeMap<String, serde_json::Value> {
    let mut map = BTreeMap::new();
    if let Ok(serde_json::Value::Object(obj)) = serde_json::to_value(value) {
        map.extend(obj);
    }
    map.insert("hbar".into(), ctx.hbar.into());
    map.insert("c".into(), ctx.c.into());
    map.insert("e0".into(), ctx.e0().into());
    map
}
