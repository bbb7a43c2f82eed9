// SPDX-License-Identifier: Apache-2.0

//! Two-axis parameter sweeps of `E_N` or `t_s` and their CSV/JSON output.
//!
//! A sweep binds each model parameter exactly once, either to one of the two
//! axes or to a fixed value. `E_N` sweeps need `t, r, c_th, n`; survival-time
//! sweeps need `r, c_th, n` and must not bind `t`. `lambda`, `m` and `omega`
//! may be fixed as well and default to 1.
//!
//! The CSV schema is a header `axis1,axis2,value` followed by one row per
//! cell in row-major order (axis 1 outer). Numbers are written with 17
//! significant digits so they parse back bit-identically; an infinite survival
//! time is written as `inf`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{BathParams, DriftConvention, Trajectory};
use crate::entanglement::log_negativity_from_gap;
use crate::error::{Error, Result};
use crate::states::SqueezedThermalSpec;
use crate::survival::{survival_time_numeric, survival_time_symmetric, ScanOptions, SurvivalResult};

pub const DEFAULT_STEPS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Custom,
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_owned()))
            .map_err(|_| format!("unknown preset `{s}` (expected fig1a, fig1b, fig2a, fig2b or custom)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    #[serde(rename = "t")]
    Time,
    #[serde(rename = "r")]
    Squeezing,
    #[serde(rename = "c_th")]
    Coth,
    #[serde(rename = "n")]
    PhotonNumber,
}

impl Param {
    const ALL: [Param; 4] = [Param::Time, Param::Squeezing, Param::Coth, Param::PhotonNumber];

    pub fn key(self) -> &'static str {
        match self {
            Param::Time => "t",
            Param::Squeezing => "r",
            Param::Coth => "c_th",
            Param::PhotonNumber => "n",
        }
    }

    fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.key() == key)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

const BATH_KEYS: [&str; 3] = ["lambda", "m", "omega"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    LogNegativity,
    SurvivalTime,
}

impl Quantity {
    fn required(self) -> &'static [Param] {
        match self {
            Quantity::LogNegativity => &Param::ALL,
            Quantity::SurvivalTime => &[Param::Squeezing, Param::Coth, Param::PhotonNumber],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: Param,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: Param, min: f64, max: f64, steps: usize) -> Self {
        Self { name, min, max, steps }
    }

    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (k as f64 / last as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub preset: Preset,
    pub quantity: Quantity,
    pub axis1: Axis,
    pub axis2: Axis,
    pub fixed: BTreeMap<String, f64>,
    #[serde(default)]
    pub drift_convention: DriftConvention,
    #[serde(default)]
    pub output_path: Option<String>,
}

/// Partially specified configuration as read from JSON; missing fields of a
/// named preset are filled from its defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    preset: Option<Preset>,
    quantity: Option<Quantity>,
    axis1: Option<Axis>,
    axis2: Option<Axis>,
    fixed: Option<BTreeMap<String, f64>>,
    drift_convention: Option<DriftConvention>,
    output_path: Option<String>,
}

fn fixed(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_owned(), v)).collect()
}

impl SweepConfig {
    /// Figure presets at `steps × steps` resolution.
    pub fn preset(preset: Preset, steps: usize) -> Result<Self> {
        let unit_bath = [("lambda", 1.0), ("m", 1.0), ("omega", 1.0)];
        let with_bath = |pairs: &[(&str, f64)]| {
            let mut all = pairs.to_vec();
            all.extend_from_slice(&unit_bath);
            fixed(&all)
        };
        let (quantity, axis1, axis2, bound) = match preset {
            Preset::Fig1a => (
                Quantity::LogNegativity,
                Axis::new(Param::Time, 0.0, 1.5, steps),
                Axis::new(Param::Squeezing, 0.0, 2.0, steps),
                with_bath(&[("n", 0.0), ("c_th", 2.0)]),
            ),
            Preset::Fig1b => (
                Quantity::LogNegativity,
                Axis::new(Param::Time, 0.0, 1.5, steps),
                Axis::new(Param::Coth, 1.0, 4.0, steps),
                with_bath(&[("n", 0.0), ("r", 2.0)]),
            ),
            Preset::Fig2a => (
                Quantity::SurvivalTime,
                Axis::new(Param::Squeezing, 0.0, 3.0, steps),
                Axis::new(Param::Coth, 1.0, 4.0, steps),
                with_bath(&[("n", 1.0)]),
            ),
            Preset::Fig2b => (
                Quantity::SurvivalTime,
                Axis::new(Param::Squeezing, 0.0, 3.0, steps),
                Axis::new(Param::PhotonNumber, 0.0, 3.0, steps),
                with_bath(&[("c_th", 2.0)]),
            ),
            Preset::Custom => {
                return Err(Error::Config("the custom preset has no defaults; supply a config file".into()))
            }
        };
        let cfg = Self {
            preset,
            quantity,
            axis1,
            axis2,
            fixed: bound,
            drift_convention: DriftConvention::default(),
            output_path: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text)?;
        let preset = file.preset.unwrap_or(Preset::Custom);
        let cfg = if preset == Preset::Custom {
            let missing = |what: &str| Error::Config(format!("custom sweep requires `{what}`"));
            Self {
                preset,
                quantity: file.quantity.ok_or_else(|| missing("quantity"))?,
                axis1: file.axis1.ok_or_else(|| missing("axis1"))?,
                axis2: file.axis2.ok_or_else(|| missing("axis2"))?,
                fixed: file.fixed.unwrap_or_default(),
                drift_convention: file.drift_convention.unwrap_or_default(),
                output_path: file.output_path,
            }
        } else {
            let mut cfg = Self::preset(preset, DEFAULT_STEPS)?;
            if let Some(q) = file.quantity {
                cfg.quantity = q;
            }
            if let Some(a) = file.axis1 {
                cfg.axis1 = a;
            }
            if let Some(a) = file.axis2 {
                cfg.axis2 = a;
            }
            if let Some(f) = file.fixed {
                cfg.fixed = f;
            }
            if let Some(c) = file.drift_convention {
                cfg.drift_convention = c;
            }
            cfg.output_path = file.output_path;
            cfg
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.axis1.steps = steps;
        self.axis2.steps = steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(Error::Config(msg));
        if self.axis1.name == self.axis2.name {
            return err(format!("both axes sweep `{}`", self.axis1.name));
        }
        for (label, axis) in [("axis1", &self.axis1), ("axis2", &self.axis2)] {
            if !(axis.min.is_finite() && axis.max.is_finite() && axis.min < axis.max) {
                return err(format!("{label}: need finite min < max, got [{}, {}]", axis.min, axis.max));
            }
            if axis.steps < 2 {
                return err(format!("{label}: steps must be >= 2, got {}", axis.steps));
            }
        }
        for (key, value) in &self.fixed {
            let known = Param::from_key(key).is_some() || BATH_KEYS.contains(&key.as_str());
            if !known {
                return err(format!("unknown fixed parameter `{key}`"));
            }
            if !value.is_finite() {
                return err(format!("fixed parameter `{key}` must be finite"));
            }
            if let Some(p) = Param::from_key(key) {
                if p == self.axis1.name || p == self.axis2.name {
                    return err(format!("`{key}` is bound both as an axis and as a fixed value"));
                }
            }
        }
        let required = self.quantity.required();
        for axis in [&self.axis1, &self.axis2] {
            if !required.contains(&axis.name) {
                return err(format!("`{}` is not a parameter of {:?}", axis.name, self.quantity));
            }
        }
        for p in required {
            let on_axis = self.axis1.name == *p || self.axis2.name == *p;
            if !on_axis && !self.fixed.contains_key(p.key()) {
                return err(format!("parameter `{p}` is unbound"));
            }
        }
        for key in self.fixed.keys() {
            if let Some(p) = Param::from_key(key) {
                if !required.contains(&p) {
                    return err(format!("`{key}` is not a parameter of {:?}", self.quantity));
                }
            }
        }
        Ok(())
    }

    fn bath_value(&self, key: &str) -> f64 {
        self.fixed.get(key).copied().unwrap_or(1.0)
    }

    fn value_of(&self, p: Param, x1: f64, x2: f64) -> f64 {
        if self.axis1.name == p {
            x1
        } else if self.axis2.name == p {
            x2
        } else {
            self.fixed[p.key()]
        }
    }
}

/// One grid value; `Infinite` marks a survival time that never ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum CellValue {
    Finite(f64),
    Infinite,
}

impl CellValue {
    pub fn as_f64(self) -> f64 {
        match self {
            CellValue::Finite(v) => v,
            CellValue::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub config: SweepConfig,
    pub version: &'static str,
    pub temperature_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    /// Row-major, `axis1` outer.
    pub values: Vec<CellValue>,
    pub metadata: SweepMetadata,
}

impl SweepGrid {
    pub fn get(&self, i: usize, j: usize) -> CellValue {
        self.values[i * self.axis2_values.len() + j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

fn evaluate_cell(cfg: &SweepConfig, x1: f64, x2: f64) -> Result<CellValue> {
    let value = |p| cfg.value_of(p, x1, x2);
    let (lambda, m, omega) = (cfg.bath_value("lambda"), cfg.bath_value("m"), cfg.bath_value("omega"));
    let params = BathParams::symmetric(lambda, m, omega, value(Param::Coth))?;
    let spec = SqueezedThermalSpec::symmetric(value(Param::PhotonNumber), value(Param::Squeezing))?;
    let cell = match cfg.quantity {
        Quantity::LogNegativity => {
            let traj = Trajectory::new(&spec.covariance(), &params, cfg.drift_convention)?;
            CellValue::Finite(log_negativity_from_gap(traj.pt_gap(value(Param::Time))?))
        }
        Quantity::SurvivalTime => {
            let unit = lambda == 1.0 && m == 1.0 && omega == 1.0;
            let result = if unit {
                survival_time_symmetric(spec.n1, spec.r, params.c_th1())?
            } else {
                survival_time_numeric(
                    &spec.covariance(),
                    &params,
                    cfg.drift_convention,
                    ScanOptions::for_params(&params),
                )?
            };
            match result {
                SurvivalResult::FiniteDeath { t_s } => CellValue::Finite(t_s),
                SurvivalResult::NeverEntangled | SurvivalResult::ImmediateBoundary => CellValue::Finite(0.0),
                SurvivalResult::EntangledForAllFiniteTimes => CellValue::Infinite,
            }
        }
    };
    if let CellValue::Finite(v) = cell {
        if !v.is_finite() {
            return Err(Error::NonFinite { axis1: x1, axis2: x2, value: v });
        }
    }
    Ok(cell)
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepGrid> {
    run_sweep_with(cfg, Execution::Parallel)
}

pub fn run_sweep_with(cfg: &SweepConfig, exec: Execution) -> Result<SweepGrid> {
    cfg.validate()?;
    let xs = cfg.axis1.values();
    let ys = cfg.axis2.values();
    let cells: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    let values = match exec {
        Execution::Serial => cells.iter().map(|&(x, y)| evaluate_cell(cfg, x, y)).collect::<Result<Vec<_>>>()?,
        Execution::Parallel => cells
            .par_iter()
            .map(|&(x, y)| evaluate_cell(cfg, x, y))
            .collect::<Result<Vec<_>>>()?,
    };
    let omega = cfg.bath_value("omega");
    let c_th_values: Vec<f64> = if cfg.axis1.name == Param::Coth {
        xs.clone()
    } else if cfg.axis2.name == Param::Coth {
        ys.clone()
    } else {
        vec![cfg.fixed["c_th"]]
    };
    let temperature_consistent = c_th_values.iter().all(|&c| {
        BathParams::new(cfg.bath_value("lambda"), cfg.bath_value("m"), omega, omega, c, c)
            .map(|p| p.temperature_consistent())
            .unwrap_or(false)
    });
    Ok(SweepGrid {
        axis1_values: xs,
        axis2_values: ys,
        values,
        metadata: SweepMetadata {
            config: cfg.clone(),
            version: env!("CARGO_PKG_VERSION"),
            temperature_consistent,
        },
    })
}

fn format_number(x: f64) -> String {
    if x.is_infinite() && x > 0.0 {
        "inf".to_owned()
    } else {
        format!("{x:.16e}")
    }
}

pub fn write_csv_to<W: Write>(grid: &SweepGrid, mut w: W) -> std::io::Result<()> {
    w.write_all(b"axis1,axis2,value\n")?;
    let n2 = grid.axis2_values.len();
    for (idx, cell) in grid.values.iter().enumerate() {
        let (x, y) = (grid.axis1_values[idx / n2], grid.axis2_values[idx % n2]);
        writeln!(w, "{},{},{}", format_number(x), format_number(y), format_number(cell.as_f64()))?;
    }
    w.flush()
}

pub fn write_csv(grid: &SweepGrid, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io { path: path.to_owned(), source };
    let file = std::fs::File::create(path).map_err(io_err)?;
    write_csv_to(grid, std::io::BufWriter::new(file)).map_err(io_err)
}

pub fn write_metadata(grid: &SweepGrid, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&grid.metadata)?;
    std::fs::write(path, text + "\n").map_err(|source| Error::Io { path: path.to_owned(), source })
}

/// One parsed row of a grid CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub axis1: f64,
    pub axis2: f64,
    pub value: CellValue,
}

fn parse_field(field: &str, line: usize) -> Result<f64> {
    match field {
        "inf" => Ok(f64::INFINITY),
        _ => field
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Csv(format!("line {line}: bad number `{field}`"))),
    }
}

/// Parses the `axis1,axis2,value` schema.
pub fn read_csv<R: BufRead>(reader: R) -> Result<Vec<CsvRow>> {
    let mut lines = reader.lines().enumerate();
    let header = lines
        .next()
        .ok_or_else(|| Error::Csv("empty input".into()))?
        .1
        .map_err(|e| Error::Csv(e.to_string()))?;
    if header != "axis1,axis2,value" {
        return Err(Error::Csv(format!("unexpected header `{header}`")));
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| Error::Csv(e.to_string()))?;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Csv(format!("line {}: expected 3 fields", i + 1)));
        }
        let value = match fields[2] {
            "inf" => CellValue::Infinite,
            v => CellValue::Finite(parse_field(v, i + 1)?),
        };
        rows.push(CsvRow {
            axis1: parse_field(fields[0], i + 1)?,
            axis2: parse_field(fields[1], i + 1)?,
            value,
        });
    }
    Ok(rows)
}
