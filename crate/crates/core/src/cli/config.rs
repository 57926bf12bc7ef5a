use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::CliError;
use crate::experiments::{Context, ExperimentName, ExperimentParams};
use crate::hilbert::{GridSpec, InternalSpace, PhysicalParams, Potential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSection {
    pub hbar: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InternalSection {
    pub e0: f64,
    pub levels: Vec<f64>,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: ExperimentName,
    pub output: PathBuf,
    pub format: Format,
    /// Replaces every row tolerance when set.
    pub tolerance: Option<f64>,
    /// Reserved; nothing in the core draws random numbers.
    pub seed: u64,
    pub physical: PhysicalSection,
    pub grid: GridSection,
    pub internal: InternalSection,
    pub params: ExperimentParams,
}

impl RunConfig {
    /// Documented defaults for `experiment`.
    pub fn defaults(experiment: ExperimentName) -> Self {
        Self {
            experiment,
            output: PathBuf::from("results"),
            format: Format::Csv,
            tolerance: None,
            seed: 0,
            physical: PhysicalSection { hbar: 1.0, c: 10.0 },
            grid: GridSection {
                x_min: -40.0,
                x_max: 40.0,
                n_points: 2048,
            },
            internal: InternalSection {
                e0: 100.0,
                levels: vec![0.0, 10.0],
            },
            params: ExperimentParams::default_for(experiment),
        }
    }

    /// Rebuilds and re-checks the physical objects the run needs.
    pub fn context(&self) -> Result<Context, CliError> {
        let grid = GridSpec::new(self.grid.x_min, self.grid.x_max, self.grid.n_points)
            .map_err(|e| CliError::Config(format!("grid: {e}")))?;
        let internal =
            InternalSpace::new(self.internal.e0, self.internal.levels.clone()).map_err(|e| {
                CliError::Config(format!("internal.{}", strip_category(&e.to_string())))
            })?;
        PhysicalParams::new(
            self.physical.hbar,
            self.physical.c,
            &internal,
            Potential::None,
        )
        .map_err(|e| CliError::Config(format!("physical: {e}")))?;
        Context::new(self.physical.hbar, self.physical.c, grid, internal)
            .map(|ctx| ctx.with_tolerance(self.tolerance))
            .map_err(|e| CliError::Config(e.to_string()))
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Config(format!(
                    "tolerance = {t} must be a non-negative number"
                )));
            }
        }
        if self.output.as_os_str().is_empty() {
            return Err(CliError::Config("output must name a directory".into()));
        }
        self.context()?;
        self.params
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

fn strip_category(msg: &str) -> &str {
    msg.split_once(": ").map(|(_, rest)| rest).unwrap_or(msg)
}

/// A validated configuration and the fields that fell back to defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub config: RunConfig,
    pub defaulted: Vec<String>,
}

/// Where a run's settings come from, lowest precedence first.
#[derive(Debug, Clone, Default)]
pub struct Sources<'a> {
    pub file: Option<&'a Path>,
    /// Experiment named on the command line.
    pub experiment: Option<&'a str>,
    /// `key.path=value` overrides.
    pub sets: &'a [String],
    pub output: Option<&'a Path>,
    pub format: Option<Format>,
}

/// Reads, merges and validates a run configuration.
pub fn parse_config(src: &Sources<'_>) -> Result<Loaded, CliError> {
    let mut tree = match src.file {
        Some(path) => read_tree(path)?,
        None => Value::Object(Map::new()),
    };
    for set in src.sets {
        let (key, raw) = set
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects key=value, got {set:?}")))?;
        insert_path(&mut tree, key.trim(), parse_scalar(raw.trim()))?;
    }
    if let Some(out) = src.output {
        insert_path(
            &mut tree,
            "output",
            Value::String(out.to_string_lossy().into_owned()),
        )?;
    }
    if let Some(fmt) = src.format {
        insert_path(
            &mut tree,
            "format",
            serde_json::to_value(fmt).expect("format serializes"),
        )?;
    }

    let from_tree = tree.get("experiment").map(|v| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    });
    let name = match (src.experiment, from_tree.as_deref()) {
        (Some(cli), Some(file)) if parse_name(cli)? != parse_name(file)? => {
            return Err(CliError::Config(format!(
                "config names experiment {file:?} but the command line names {cli:?}"
            )))
        }
        (Some(cli), _) => parse_name(cli)?,
        (None, Some(file)) => parse_name(file)?,
        (None, None) => return Err(CliError::Config("missing key: experiment".into())),
    };
    insert_path(&mut tree, "experiment", Value::String(name.as_str().into()))?;

    let defaults = serde_json::to_value(RunConfig::defaults(name)).expect("defaults serialize");
    let mut defaulted = Vec::new();
    let merged = merge(&defaults, &tree, "", &mut defaulted)?;
    let config = decode(name, merged)?;
    config.validate()?;
    Ok(Loaded { config, defaulted })
}

fn parse_name(s: &str) -> Result<ExperimentName, CliError> {
    s.parse::<ExperimentName>().map_err(|_| {
        let names: Vec<&str> = ExperimentName::ALL.iter().map(|e| e.as_str()).collect();
        CliError::Config(format!("unknown experiment {s:?}{}", suggestion(s, &names)))
    })
}

fn read_tree(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let is_json = path
        .extension()
        .is_some_and(|x| x.eq_ignore_ascii_case("json"));
    let tree = if is_json {
        serde_json::from_str::<Value>(&text)
            .map_err(|e| CliError::Config(format!("malformed JSON in {}: {e}", path.display())))?
    } else {
        let table: toml::Table = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("malformed TOML in {}: {e}", path.display())))?;
        serde_json::to_value(table)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
    };
    if !tree.is_object() {
        return Err(CliError::Config(format!(
            "{}: top level must be a table",
            path.display()
        )));
    }
    Ok(tree)
}

/// Reads an override value as a TOML literal, falling back to a bare string.
fn parse_scalar(raw: &str) -> Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .and_then(|v| serde_json::to_value(v).ok())
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

fn insert_path(tree: &mut Value, key: &str, value: Value) -> Result<(), CliError> {
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("malformed key {key:?}")));
    }
    let mut node = tree;
    for part in &parts[..parts.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::Config(format!("{key}: {part} is not a table")))?;
        node = obj
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    node.as_object_mut()
        .ok_or_else(|| CliError::Config(format!("{key}: parent is not a table")))?
        .insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn suggestion(key: &str, candidates: &[&str]) -> String {
    candidates
        .iter()
        .map(|c| (strsim::jaro_winkler(key, c), *c))
        .filter(|(score, _)| *score > 0.7)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| format!(" (did you mean {c:?}?)"))
        .unwrap_or_default()
}

/// Overlays `user` on `defaults`, rejecting keys the defaults do not have and
/// recording every leaf the user left out.
fn merge(
    defaults: &Value,
    user: &Value,
    prefix: &str,
    defaulted: &mut Vec<String>,
) -> Result<Value, CliError> {
    match (defaults, user) {
        (Value::Object(d), Value::Object(u)) => {
            let known: Vec<&str> = d.keys().map(String::as_str).collect();
            for key in u.keys() {
                if !d.contains_key(key) {
                    let path = join(prefix, key);
                    return Err(CliError::Config(format!(
                        "unknown key {path:?}{}",
                        suggestion(key, &known)
                    )));
                }
            }
            let mut out = Map::new();
            for (key, dv) in d {
                let path = join(prefix, key);
                let merged = match u.get(key) {
                    Some(uv) => merge(dv, uv, &path, defaulted)?,
                    None => {
                        record_leaves(dv, &path, defaulted);
                        dv.clone()
                    }
                };
                out.insert(key.clone(), merged);
            }
            Ok(Value::Object(out))
        }
        (Value::Object(_), other) => Err(CliError::Config(format!(
            "{prefix} must be a table, got {}",
            other
        ))),
        (_, uv) => Ok(uv.clone()),
    }
}

fn record_leaves(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, child) in m {
                record_leaves(child, &join(path, k), out);
            }
        }
        _ => out.push(path.to_string()),
    }
}

fn section<T: for<'de> Deserialize<'de>>(
    tree: &mut Map<String, Value>,
    key: &str,
) -> Result<T, CliError> {
    let v = tree.remove(key).unwrap_or(Value::Null);
    serde_json::from_value(v).map_err(|e| CliError::Config(format!("{key}: {e}")))
}

fn decode(name: ExperimentName, merged: Value) -> Result<RunConfig, CliError> {
    let Value::Object(mut tree) = merged else {
        return Err(CliError::Config("top level must be a table".into()));
    };
    let params = tree.remove("params").unwrap_or(Value::Null);
    let params = ExperimentParams::from_value(name, params)
        .map_err(|e| CliError::Config(format!("params: {e}")))?;
    Ok(RunConfig {
        experiment: name,
        output: section(&mut tree, "output")?,
        format: section(&mut tree, "format")?,
        tolerance: section(&mut tree, "tolerance")?,
        seed: section(&mut tree, "seed")?,
        physical: section(&mut tree, "physical")?,
        grid: section(&mut tree, "grid")?,
        internal: section(&mut tree, "internal")?,
        params,
    })
}
