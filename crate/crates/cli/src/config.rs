//! Scenario configuration.
//!
//! The format is flat `key = value` text. Keys are dotted (`time.dt`), and a
//! `[section]` header prefixes the keys that follow it. `#` starts a comment.
//!
//! ```text
//! model = jaynes-cummings
//!
//! [time]
//! t_end = 10
//! dt = 0.01
//!
//! [jc]
//! lambda = 1
//! alpha = 5
//! epsilon = 0.2
//! n_max = 80
//! ```
//!
//! Matrices are written row by row, rows separated by `;` and entries by
//! whitespace; entries may be complex (`0.5`, `0.1-0.2i`, `i`). Single-qubit
//! states also accept the names `zero`, `one`, `plus`, `minus` and `mixed`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use qdiscord::correlations::{DiscordOptions, LogBase};
use qdiscord::dynamics::{CustomModel, DephasingModel, HadamardDemo, JcModel, TimeGrid, ENVIRONMENT, SYSTEM};
use qdiscord::linalg::CMatrix;
use qdiscord::state::{DensityMatrix, Factors};
use qdiscord::tol::Tolerances;
use qdiscord::witness::Thresholds;

use crate::error::{CliError, CliResult};

/// Unvalidated key/value pairs, later layers overriding earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        let mut section = String::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::config(format!("line {}: unterminated section header", lineno + 1)))?
                    .trim();
                section = if name.is_empty() {
                    String::new()
                } else {
                    format!("{name}.")
                };
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("line {}: expected `key = value`", lineno + 1)))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::config(format!("line {}: empty key", lineno + 1)));
            }
            entries.insert(format!("{section}{key}"), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn preset(name: &str) -> CliResult<Self> {
        let text = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| {
                CliError::config(format!(
                    "unknown preset `{name}` (available: {})",
                    preset_names().join(", ")
                ))
            })?;
        Self::parse(text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), value.into());
    }

    /// Applies a `key=value` override as given on the command line.
    pub fn set_pair(&mut self, pair: &str) -> CliResult<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("override `{pair}` is not of the form key=value")))?;
        self.set(k.trim(), v.trim());
        Ok(())
    }

    pub fn merge(&mut self, other: &RawConfig) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

const PRESETS: &[(&str, &str)] = &[
    (
        "example1",
        "model = jaynes-cummings
         time.t_end = 10
         time.dt = 0.01
         analysis.tau = 10
         jc.lambda = 1
         jc.alpha = 5
         jc.epsilon = 0.2
         jc.n_max = 80",
    ),
    (
        "example2",
        "model = dephasing
         time.t_end = 10
         time.dt = 0.05
         analysis.record_discord = true
         dephasing.p0 = 0.5
         dephasing.rho_s = plus",
    ),
    (
        "dephasing",
        "model = dephasing
         time.t_end = 10
         time.dt = 0.05
         analysis.record_discord = true
         dephasing.p0 = 0.5
         dephasing.rho_s = zero",
    ),
    (
        "hadamard-demo",
        "model = hadamard-demo
         time.t_end = 3
         time.dt = 0.01
         analysis.record_discord = true
         hadamard.rate = 1",
    ),
    (
        "non-interacting",
        "model = custom-hamiltonian
         time.t_end = 5
         time.dt = 0.05
         analysis.record_discord = true
         custom.h_s = 0.5 0; 0 -0.5
         custom.h_e = 0 0.5; 0.5 0
         custom.h_int = 1 0 0 0; 0 -1 0 0; 0 0 -1 0; 0 0 0 1
         custom.lambda = 0
         custom.rho_s = plus
         custom.rho_e = mixed
         sweep.lambda = 0",
    ),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioModel {
    JaynesCummings(JcModel),
    Dephasing(DephasingModel),
    HadamardDemo(HadamardDemo),
    Custom(CustomModel),
}

impl ScenarioModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::JaynesCummings(_) => "jaynes-cummings",
            Self::Dephasing(_) => "dephasing",
            Self::HadamardDemo(_) => "hadamard-demo",
            Self::Custom(_) => "custom-hamiltonian",
        }
    }

    /// Same model with its coupling constant replaced; the Hadamard demo's
    /// coupling is its rate.
    pub fn with_coupling(&self, lambda: f64) -> Option<Self> {
        match self {
            Self::JaynesCummings(m) => Some(Self::JaynesCummings(JcModel {
                coupling: lambda,
                ..m.clone()
            })),
            Self::Custom(m) => Some(Self::Custom(m.with_coupling(lambda))),
            Self::HadamardDemo(m) => Some(Self::HadamardDemo(HadamardDemo {
                rate: lambda,
                ..m.clone()
            })),
            Self::Dephasing(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputPaths {
    pub dir: PathBuf,
    pub series: String,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: ScenarioModel,
    pub t_end: f64,
    pub dt: f64,
    pub tau: f64,
    pub log_base: LogBase,
    pub record_discord: bool,
    /// Rerun Jaynes-Cummings scenarios at `n_max + 20` and compare.
    pub convergence_check: bool,
    pub output: OutputPaths,
    pub sweep: Option<Vec<f64>>,
    pub tolerances: Tolerances,
    pub thresholds: Thresholds,
    pub discord: DiscordOptions,
}

impl ScenarioConfig {
    pub fn from_raw(raw: &RawConfig) -> CliResult<Self> {
        let mut r = Reader { raw, used: Vec::new() };
        let model_name = r.required("model")?;

        let mut tolerances = Tolerances::default();
        tolerances.coherent_tail = r.positive("tolerance.coherent_tail", tolerances.coherent_tail)?;
        tolerances.rank_cutoff = r.positive("tolerance.rank_cutoff", tolerances.rank_cutoff)?;
        tolerances.purity = r.positive("tolerance.purity", tolerances.purity)?;
        tolerances.truncation_convergence =
            r.positive("tolerance.truncation_convergence", tolerances.truncation_convergence)?;
        tolerances.detection_threshold = r.positive("tolerance.detection_threshold", tolerances.detection_threshold)?;
        let thresholds = Thresholds {
            detection: tolerances.detection_threshold,
            discord: r.positive("tolerance.discord_threshold", Thresholds::default().discord)?,
        };

        let model = match model_name.as_str() {
            "jaynes-cummings" => {
                let defaults = JcModel::default();
                let m = JcModel {
                    coupling: r.finite("jc.lambda", defaults.coupling)?,
                    alpha: r.complex("jc.alpha", defaults.alpha)?,
                    epsilon: r.probability("jc.epsilon", defaults.epsilon)?,
                    n_max: r.usize("jc.n_max", defaults.n_max)?,
                    tail_tolerance: tolerances.coherent_tail,
                };
                if m.n_max == 0 {
                    return Err(CliError::config("jc.n_max must be at least 1"));
                }
                ScenarioModel::JaynesCummings(m)
            }
            "dephasing" => {
                let p0 = r.probability("dephasing.p0", 0.5)?;
                let rho_s = r.state("dephasing.rho_s", SYSTEM, "plus")?;
                ScenarioModel::Dephasing(
                    DephasingModel::new(p0, rho_s).map_err(|e| CliError::config(format!("dephasing: {e}")))?,
                )
            }
            "hadamard-demo" => ScenarioModel::HadamardDemo(HadamardDemo {
                rate: r.finite("hadamard.rate", 1.0)?,
                ..HadamardDemo::default()
            }),
            "custom-hamiltonian" => {
                let h_s = r.required_matrix("custom.h_s")?;
                let h_e = r.required_matrix("custom.h_e")?;
                let h_int = r.required_matrix("custom.h_int")?;
                let coupling = r.finite("custom.lambda", 1.0)?;
                let rho_s = r.state("custom.rho_s", SYSTEM, "")?;
                let rho_e = r.state("custom.rho_e", ENVIRONMENT, "")?;
                ScenarioModel::Custom(
                    CustomModel::new(h_s, h_e, h_int, coupling, rho_s, rho_e)
                        .map_err(|e| CliError::config(format!("custom-hamiltonian: {e}")))?,
                )
            }
            other => {
                return Err(CliError::config(format!(
                    "unknown model `{other}` (expected jaynes-cummings, dephasing, hadamard-demo or custom-hamiltonian)"
                )))
            }
        };

        let t_end = r.positive("time.t_end", 10.0)?;
        let dt = r.positive("time.dt", 0.01)?;
        let grid = TimeGrid::new(t_end, dt).map_err(|e| CliError::config(e.to_string()))?;
        let tau = r.positive("analysis.tau", t_end)?;
        let on_grid = grid.times().iter().any(|&t| (t - tau).abs() <= 1e-9 * tau.max(1.0));
        if !on_grid {
            return Err(CliError::config(format!(
                "analysis.tau = {tau} is not a grid time of [0, {t_end}] with dt = {dt}"
            )));
        }

        let log_base = match r.optional("entropy.log_base") {
            Some(s) => {
                LogBase::from_str(&s).map_err(|_| CliError::config(format!("entropy.log_base: `{s}` is not 2 or e")))?
            }
            None => LogBase::Two,
        };
        let record_discord = r.boolean("analysis.record_discord", false)?;
        let convergence_check = r.boolean("jc.convergence_check", true)?;

        let mut discord = DiscordOptions::with_base(log_base);
        discord.grid_theta = r.usize("discord.grid_theta", discord.grid_theta)?;
        discord.grid_phi = r.usize("discord.grid_phi", discord.grid_phi)?;
        if discord.grid_theta < 2 || discord.grid_phi < 1 {
            return Err(CliError::config(
                "discord.grid_theta must be >= 2 and discord.grid_phi >= 1",
            ));
        }

        let sweep = match r.optional("sweep.lambda") {
            Some(list) => {
                let values = list
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_finite("sweep.lambda", s))
                    .collect::<CliResult<Vec<f64>>>()?;
                if values.is_empty() {
                    return Err(CliError::config("sweep.lambda is empty"));
                }
                if model.with_coupling(0.0).is_none() {
                    return Err(CliError::config(format!(
                        "model {} has no coupling constant to sweep",
                        model.name()
                    )));
                }
                Some(values)
            }
            None => None,
        };

        let output = OutputPaths {
            dir: PathBuf::from(r.optional("output.dir").unwrap_or_else(|| "out".into())),
            series: r.optional("output.series").unwrap_or_else(|| "series.csv".into()),
            summary: r.optional("output.summary").unwrap_or_else(|| "summary.json".into()),
        };

        r.finish()?;
        Ok(Self {
            model,
            t_end,
            dt,
            tau,
            log_base,
            record_discord,
            convergence_check,
            output,
            sweep,
            tolerances,
            thresholds,
            discord,
        })
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid::new(self.t_end, self.dt).expect("validated on construction")
    }
}

struct Reader<'a> {
    raw: &'a RawConfig,
    used: Vec<String>,
}

impl Reader<'_> {
    fn optional(&mut self, key: &str) -> Option<String> {
        self.used.push(key.to_string());
        self.raw.get(key).map(str::to_string)
    }

    fn required(&mut self, key: &str) -> CliResult<String> {
        self.optional(key)
            .ok_or_else(|| CliError::config(format!("missing required key `{key}`")))
    }

    fn finite(&mut self, key: &str, default: f64) -> CliResult<f64> {
        self.optional(key).map_or(Ok(default), |s| parse_finite(key, &s))
    }

    fn positive(&mut self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.finite(key, default)?;
        if v <= 0.0 {
            return Err(CliError::config(format!("{key} must be positive, got {v}")));
        }
        Ok(v)
    }

    fn probability(&mut self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.finite(key, default)?;
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::config(format!("{key} must lie in [0, 1], got {v}")));
        }
        Ok(v)
    }

    fn usize(&mut self, key: &str, default: usize) -> CliResult<usize> {
        self.optional(key).map_or(Ok(default), |s| {
            s.parse()
                .map_err(|_| CliError::config(format!("{key}: `{s}` is not a non-negative integer")))
        })
    }

    fn boolean(&mut self, key: &str, default: bool) -> CliResult<bool> {
        match self.optional(key).as_deref() {
            None => Ok(default),
            Some("true" | "yes" | "on" | "1") => Ok(true),
            Some("false" | "no" | "off" | "0") => Ok(false),
            Some(s) => Err(CliError::config(format!("{key}: `{s}` is not a boolean"))),
        }
    }

    fn complex(&mut self, key: &str, default: Complex64) -> CliResult<Complex64> {
        self.optional(key).map_or(Ok(default), |s| parse_complex(key, &s))
    }

    fn required_matrix(&mut self, key: &str) -> CliResult<CMatrix> {
        let s = self.required(key)?;
        parse_matrix(key, &s)
    }

    /// A density matrix given by preset name or explicit entries; an empty
    /// default makes the key mandatory.
    fn state(&mut self, key: &str, label: &str, default: &str) -> CliResult<DensityMatrix> {
        let s = match self.optional(key) {
            Some(s) => s,
            None if !default.is_empty() => default.to_string(),
            None => return Err(CliError::config(format!("missing required key `{key}`"))),
        };
        let m = match named_state(&s) {
            Some(m) => m,
            None => parse_matrix(key, &s)?,
        };
        if m.nrows() != m.ncols() {
            return Err(CliError::config(format!("{key} must be square")));
        }
        let factors = Factors::single(label, m.nrows()).map_err(|e| CliError::config(format!("{key}: {e}")))?;
        DensityMatrix::new(m, factors).map_err(|e| CliError::config(format!("{key}: {e}")))
    }

    /// Rejects keys nobody asked for, which catches typos and parameters of
    /// a model other than the selected one.
    fn finish(self) -> CliResult<()> {
        let unknown: Vec<&str> = self
            .raw
            .entries
            .keys()
            .filter(|k| !self.used.iter().any(|u| u == *k))
            .map(String::as_str)
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(CliError::config(format!(
                "unknown or inapplicable keys: {}",
                unknown.join(", ")
            )))
        }
    }
}

fn parse_finite(key: &str, s: &str) -> CliResult<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::config(format!("{key}: `{s}` is not a finite number"))),
    }
}

pub fn parse_complex(key: &str, s: &str) -> CliResult<Complex64> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let z = match compact.as_str() {
        "i" | "+i" => Ok(Complex64::new(0.0, 1.0)),
        "-i" => Ok(Complex64::new(0.0, -1.0)),
        other => Complex64::from_str(other),
    };
    match z {
        Ok(z) if z.re.is_finite() && z.im.is_finite() => Ok(z),
        _ => Err(CliError::config(format!("{key}: `{s}` is not a complex number"))),
    }
}

pub fn parse_matrix(key: &str, s: &str) -> CliResult<CMatrix> {
    let rows: Vec<Vec<Complex64>> = s
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|e| parse_complex(key, e))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<_>>()?;
    let ncols = rows.first().map_or(0, Vec::len);
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(CliError::config(format!(
            "{key}: rows must be non-empty and of equal length"
        )));
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

fn named_state(name: &str) -> Option<CMatrix> {
    let r =
        |a: f64, b: f64, c: f64, d: f64| CMatrix::from_row_slice(2, 2, &[a, b, c, d].map(|x| Complex64::new(x, 0.0)));
    match name {
        "zero" => Some(r(1.0, 0.0, 0.0, 0.0)),
        "one" => Some(r(0.0, 0.0, 0.0, 1.0)),
        "plus" => Some(r(0.5, 0.5, 0.5, 0.5)),
        "minus" => Some(r(0.5, -0.5, -0.5, 0.5)),
        "mixed" => Some(r(0.5, 0.0, 0.0, 0.5)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_prefix_keys() {
        let raw = RawConfig::parse("model = dephasing\n[time]\ndt = 0.1 # step\n\n[dephasing]\np0=0.3\n").unwrap();
        assert_eq!(raw.get("time.dt"), Some("0.1"));
        assert_eq!(raw.get("dephasing.p0"), Some("0.3"));
        assert_eq!(raw.get("model"), Some("dephasing"));
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(RawConfig::parse("model dephasing").is_err());
        assert!(RawConfig::parse("[time\ndt = 1").is_err());
        assert!(RawConfig::parse(" = 3").is_err());
    }

    #[test]
    fn every_preset_validates() {
        for name in preset_names() {
            ScenarioConfig::from_raw(&RawConfig::preset(name).unwrap()).unwrap();
        }
    }

    #[test]
    fn example_one_defaults() {
        let cfg = ScenarioConfig::from_raw(&RawConfig::preset("example1").unwrap()).unwrap();
        let ScenarioModel::JaynesCummings(m) = &cfg.model else {
            panic!("wrong model")
        };
        assert_eq!((m.coupling, m.epsilon, m.n_max), (1.0, 0.2, 80));
        assert_eq!(m.alpha, Complex64::new(5.0, 0.0));
        assert_eq!((cfg.t_end, cfg.dt, cfg.tau), (10.0, 0.01, 10.0));
        assert_eq!(cfg.log_base, LogBase::Two);
        assert!(!cfg.record_discord);
    }

    #[test]
    fn complex_entries() {
        assert_eq!(parse_complex("k", "0.5+0.1i").unwrap(), Complex64::new(0.5, 0.1));
        assert_eq!(parse_complex("k", "-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("k", "i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("k", "3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("k", "abc").is_err());
        assert!(parse_complex("k", "inf").is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("k", "0.5 0.1-0.2i; 0.1+0.2i 0.5").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.1, -0.2));
        assert_eq!(m[(1, 0)], Complex64::new(0.1, 0.2));
        assert!(parse_matrix("k", "1 0; 0").is_err());
        assert!(parse_matrix("k", "").is_err());
    }

    fn with(preset: &str, key: &str, value: &str) -> CliResult<ScenarioConfig> {
        let mut raw = RawConfig::preset(preset).unwrap();
        raw.set(key, value);
        ScenarioConfig::from_raw(&raw)
    }

    #[test]
    fn validation_errors() {
        assert!(with("example2", "dephasing.p0", "1.5").is_err());
        assert!(with("example2", "time.dt", "0").is_err());
        assert!(with("example2", "time.t_end", "-1").is_err());
        assert!(with("example2", "analysis.tau", "3.33").is_err());
        assert!(with("example2", "entropy.log_base", "10").is_err());
        assert!(with("example2", "dephasing.rho_s", "1 0; 0 1").is_err());
        assert!(with("example2", "jc.n_max", "40").is_err());
        assert!(with("example2", "sweep.lambda", "0, 1").is_err());
        assert!(with("example2", "model", "lindblad").is_err());
        assert!(with("example1", "sweep.lambda", "0, nan").is_err());
        assert!(with("example1", "time.dtt", "0.1").is_err());
        assert!(with("non-interacting", "custom.h_s", "1 i; i 1").is_err());
    }

    #[test]
    fn overrides_apply() {
        let cfg = with("example2", "entropy.log_base", "e").unwrap();
        assert_eq!(cfg.log_base, LogBase::E);
        assert_eq!(cfg.discord.log_base, LogBase::E);
        let cfg = with("example1", "sweep.lambda", "0, 0.5 1").unwrap();
        assert_eq!(cfg.sweep, Some(vec![0.0, 0.5, 1.0]));
        let mut raw = RawConfig::preset("example2").unwrap();
        raw.set_pair("dephasing.rho_s = 0.5 0.5i; -0.5i 0.5").unwrap();
        let cfg = ScenarioConfig::from_raw(&raw).unwrap();
        let ScenarioModel::Dephasing(m) = cfg.model else {
            panic!("wrong model")
        };
        assert_eq!(m.initial_system.data()[(0, 1)], Complex64::new(0.0, 0.5));
    }
}
