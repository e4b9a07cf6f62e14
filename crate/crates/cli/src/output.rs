//! Table and metadata writers.
//!
//! Every table goes to `<dir>/<name>.csv` (or `.json`) with a companion
//! `<name>.meta.json`. Nothing time-dependent is written, so identical
//! configurations produce identical files.

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use serde_json::{json, Map, Value};
use std::fs;
use std::path::{Path, PathBuf};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits: enough to round-trip every f64.
            Self::Num(x) => format!("{x:.16e}"),
            Self::Int(n) => n.to_string(),
            Self::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Num(x) => json!(x),
            Self::Int(n) => json!(n),
            Self::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Self::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Self::Int(n)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Self::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Self::Text(s.into())
    }
}

/// A named table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width of {}", self.name);
        self.rows.push(row);
    }
}

/// Writes tables and their metadata for one command.
#[derive(Debug, Clone)]
pub struct Writer {
    directory: PathBuf,
    format: Format,
    base: Map<String, Value>,
    written: Vec<PathBuf>,
}

impl Writer {
    pub fn new(directory: &Path, format: Format, command: &str, config: &RunConfig, seed: Option<u64>) -> Result<Self, CliError> {
        fs::create_dir_all(directory)?;
        let mut base = Map::new();
        base.insert("command".into(), json!(command));
        base.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        base.insert("config".into(), serde_json::to_value(&config.file)?);
        base.insert("resolved".into(), resolved(config));
        base.insert(
            "tolerances".into(),
            json!({
                "relative": config.quadrature.relative_tolerance,
                "absolute": config.quadrature.absolute_tolerance,
                "max_subdivisions": config.quadrature.max_subdivisions,
            }),
        );
        base.insert(
            "grid".into(),
            json!({
                "min_rad_per_s": config.grid.min,
                "max_rad_per_s": config.grid.max,
                "points": config.grid.points,
                "spacing_rad_per_s": config.grid.spacing(),
            }),
        );
        base.insert("seed".into(), json!(seed));
        Ok(Self {
            directory: directory.to_path_buf(),
            format,
            base,
            written: Vec::new(),
        })
    }

    /// Writes `table` and its sidecar; `extra` is merged into the metadata.
    pub fn write(&mut self, table: &Table, extra: Value) -> Result<PathBuf, CliError> {
        let path = match self.format {
            Format::Csv => {
                let path = self.directory.join(format!("{}.csv", table.name));
                let mut w = csv::Writer::from_path(&path)?;
                w.write_record(&table.columns)?;
                for row in &table.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()?;
                path
            }
            Format::Json => {
                let path = self.directory.join(format!("{}.json", table.name));
                let records: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            table
                                .columns
                                .iter()
                                .cloned()
                                .zip(row.iter().map(Cell::json))
                                .collect(),
                        )
                    })
                    .collect();
                fs::write(&path, serde_json::to_string_pretty(&records)? + "\n")?;
                path
            }
        };
        let mut meta = self.base.clone();
        meta.insert("table".into(), json!(table.name));
        meta.insert("columns".into(), json!(table.columns));
        meta.insert("rows".into(), json!(table.rows.len()));
        if let Value::Object(extra) = extra {
            meta.extend(extra);
        }
        let meta_path = self.directory.join(format!("{}.meta.json", table.name));
        fs::write(&meta_path, serde_json::to_string_pretty(&Value::Object(meta))? + "\n")?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

/// Every physical value in SI units, as used by the computation.
fn resolved(config: &RunConfig) -> Value {
    let f = &config.fiber;
    json!({
        "core_index": f.core_index(),
        "cladding_index": f.cladding_index(),
        "core_radius_m": f.core_radius() * 1e-6,
        "omega1_rad_per_s": config.pump.omega1(),
        "omega2_rad_per_s": config.pump.omega2(),
        "length_m": config.pump.length,
        "gratings": config.gratings.iter().map(|g| json!({
            "photon": format!("{:?}", g.photon).to_lowercase(),
            "from": g.from.to_string(),
            "to": g.to.to_string(),
            "delta_eps0": g.delta_eps0,
            "design_omega_rad_per_s": g.omega_t,
            "period_m": g.period,
        })).collect::<Vec<_>>(),
        "channels": config.channels.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "interpolation_nodes": config.file.numerics.interpolation_nodes,
        "z_integration": config.file.numerics.z_integration,
        "envelope_carrier": config.file.numerics.envelope_carrier,
    })
}
