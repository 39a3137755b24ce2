//! Scenario execution and artifact writing.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use qdiscord::correlations::LogBase;
use qdiscord::dynamics::{run_hadamard_demo, run_trajectory, Model, Trajectory, TrajectoryOptions};
use qdiscord::tol::Tolerances;
use qdiscord::witness::{assemble_report, ReportSettings, Thresholds};

use crate::config::{ScenarioConfig, ScenarioModel};
use crate::error::{CliError, CliResult};

/// Fock cutoff increase used by the Jaynes-Cummings convergence guard.
pub const CONVERGENCE_STEP: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationDiagnostics {
    pub n_max: usize,
    pub coherent_tail: f64,
    pub check_n_max: Option<usize>,
    pub check_p_nm_tilde: Option<f64>,
    pub relative_change: Option<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub log_base: LogBase,
    pub t_end: f64,
    pub dt: f64,
    pub tau: f64,
    pub samples: usize,
    pub record_discord: bool,
    /// Which bipartition the discord and commutator columns refer to.
    pub discord_partition: &'static str,
    pub discord_grid: [usize; 2],
    pub thresholds: Thresholds,
    pub tolerances: Tolerances,
    pub model_parameters: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub model: &'static str,
    pub verdict: String,
    pub discord_verdict: Option<String>,
    pub p_nm_tilde: f64,
    pub p_nm: Option<f64>,
    pub first_detection_time: Option<f64>,
    pub max_discord: Option<f64>,
    pub ancilla_dim: usize,
    pub settings: Settings,
    pub truncation: Option<TruncationDiagnostics>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub lambda: f64,
    pub dir: String,
    pub verdict: String,
    pub discord_verdict: Option<String>,
    pub p_nm_tilde: f64,
    pub p_nm: Option<f64>,
    pub max_discord: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Artifact {
    pub series: PathBuf,
    pub summary_path: PathBuf,
    pub summary: Summary,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub artifacts: Vec<Artifact>,
    /// Index file listing every sweep entry, when sweeping.
    pub sweep_index: Option<PathBuf>,
}

fn trajectory_options(cfg: &ScenarioConfig) -> TrajectoryOptions {
    TrajectoryOptions {
        log_base: cfg.log_base,
        record_discord: cfg.record_discord,
        discord: cfg.discord,
        tolerances: cfg.tolerances,
        keep_states: false,
    }
}

fn as_model(model: &ScenarioModel) -> Option<&dyn Model> {
    match model {
        ScenarioModel::JaynesCummings(m) => Some(m),
        ScenarioModel::Dephasing(m) => Some(m),
        ScenarioModel::Custom(m) => Some(m),
        ScenarioModel::HadamardDemo(_) => None,
    }
}

fn describe(model: &ScenarioModel) -> Vec<(String, String)> {
    match model {
        ScenarioModel::HadamardDemo(d) => d.describe(),
        other => as_model(other).map(Model::describe).unwrap_or_default(),
    }
}

fn trajectory_for(model: &ScenarioModel, cfg: &ScenarioConfig, opts: &TrajectoryOptions) -> CliResult<Trajectory> {
    let grid = cfg.grid();
    Ok(match model {
        ScenarioModel::HadamardDemo(d) => run_hadamard_demo(d, &grid, opts)?,
        other => run_trajectory(as_model(other).expect("non-demo models implement Model"), &grid, opts)?,
    })
}

/// Runs one model instance and returns its trajectory and summary.
pub fn simulate(model: &ScenarioModel, cfg: &ScenarioConfig) -> CliResult<(Trajectory, Summary)> {
    let opts = trajectory_options(cfg);
    let trajectory = trajectory_for(model, cfg, &opts)?;
    let settings = ReportSettings {
        log_base: cfg.log_base,
        dt: cfg.dt,
        tau: cfg.tau,
        thresholds: cfg.thresholds,
        model: describe(model),
    };
    let report = assemble_report(&trajectory, cfg.tau, cfg.thresholds, settings)?;

    let truncation = match model {
        ScenarioModel::JaynesCummings(m) => {
            let coherent_tail = m.coherent()?.tail;
            let mut diag = TruncationDiagnostics {
                n_max: m.n_max,
                coherent_tail,
                check_n_max: None,
                check_p_nm_tilde: None,
                relative_change: None,
                tolerance: cfg.tolerances.truncation_convergence,
            };
            if cfg.convergence_check {
                let bigger = ScenarioModel::JaynesCummings(m.with_n_max(m.n_max + CONVERGENCE_STEP));
                let check_opts = TrajectoryOptions {
                    record_discord: false,
                    ..opts
                };
                let check = trajectory_for(&bigger, cfg, &check_opts)?;
                let check_settings = ReportSettings {
                    log_base: cfg.log_base,
                    dt: cfg.dt,
                    tau: cfg.tau,
                    thresholds: cfg.thresholds,
                    model: Vec::new(),
                };
                let p_check = assemble_report(&check, cfg.tau, cfg.thresholds, check_settings)?.p_nm_tilde;
                let scale = report.p_nm_tilde.abs();
                let diff = (p_check - report.p_nm_tilde).abs();
                let relative = if scale > 1e-12 { diff / scale } else { diff };
                diag.check_n_max = Some(m.n_max + CONVERGENCE_STEP);
                diag.check_p_nm_tilde = Some(p_check);
                diag.relative_change = Some(relative);
                if relative > cfg.tolerances.truncation_convergence {
                    return Err(qdiscord::Error::Convergence(format!(
                        "P~_NM changes by {relative:.3e} (relative) when n_max goes from {} to {}; increase jc.n_max",
                        m.n_max,
                        m.n_max + CONVERGENCE_STEP
                    ))
                    .into());
                }
            }
            Some(diag)
        }
        _ => None,
    };

    let max_discord = trajectory
        .discord_series()
        .map(|d| d.into_iter().fold(0.0_f64, f64::max));
    let summary = Summary {
        model: model.name(),
        verdict: report.verdict,
        discord_verdict: report.discord_verdict,
        p_nm_tilde: report.p_nm_tilde,
        p_nm: report.p_nm,
        first_detection_time: report.first_detection_time,
        max_discord,
        ancilla_dim: trajectory.ancilla_dim,
        settings: Settings {
            log_base: cfg.log_base,
            t_end: cfg.t_end,
            dt: cfg.dt,
            tau: cfg.tau,
            samples: trajectory.times.len(),
            record_discord: cfg.record_discord,
            discord_partition: if matches!(model, ScenarioModel::HadamardDemo(_)) {
                "S|A"
            } else {
                "S|E"
            },
            discord_grid: [cfg.discord.grid_theta, cfg.discord.grid_phi],
            thresholds: cfg.thresholds,
            tolerances: cfg.tolerances,
            model_parameters: describe(model).into_iter().collect(),
        },
        truncation,
    };
    Ok((trajectory, summary))
}

fn number(v: f64) -> String {
    format!("{v:.11e}")
}

fn optional(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), number)
}

/// Series table with twelve significant digits per value.
pub fn series_csv(trajectory: &Trajectory, record_discord: bool) -> String {
    let mut out = String::from("t,S_S,S_A,delta_SA,concurrence_SA");
    if record_discord {
        out.push_str(",discord_S,witness_comm");
    }
    out.push('\n');
    for s in &trajectory.samples {
        let _ = write!(
            out,
            "{},{},{},{},{}",
            number(s.t),
            number(s.entropy_system),
            number(s.entropy_ancilla),
            number(s.delta_sa),
            optional(s.concurrence_sa)
        );
        if record_discord {
            let _ = write!(out, ",{},{}", optional(s.discord_s), optional(s.witness));
        }
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let fail = |e: std::io::Error| CliError::Output {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(fail)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("summary types serialize");
    bytes.push(b'\n');
    bytes
}

fn emit(model: &ScenarioModel, cfg: &ScenarioConfig, dir: &Path) -> CliResult<Artifact> {
    let (trajectory, summary) = simulate(model, cfg)?;
    let series = dir.join(&cfg.output.series);
    let summary_path = dir.join(&cfg.output.summary);
    write_atomic(&series, series_csv(&trajectory, cfg.record_discord).as_bytes())?;
    write_atomic(&summary_path, &to_json(&summary))?;
    Ok(Artifact {
        series,
        summary_path,
        summary,
    })
}

/// Runs the scenario, or every entry of its coupling sweep, and writes the
/// series and summary files.
pub fn run(cfg: &ScenarioConfig) -> CliResult<RunOutcome> {
    let Some(lambdas) = &cfg.sweep else {
        let artifact = emit(&cfg.model, cfg, &cfg.output.dir)?;
        return Ok(RunOutcome {
            artifacts: vec![artifact],
            sweep_index: None,
        });
    };
    let artifacts = lambdas
        .par_iter()
        .enumerate()
        .map(|(k, &lambda)| {
            let model = cfg.model.with_coupling(lambda).ok_or_else(|| {
                CliError::config(format!("model {} has no coupling constant to sweep", cfg.model.name()))
            })?;
            emit(&model, cfg, &cfg.output.dir.join(format!("sweep-{k}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let entries: Vec<SweepEntry> = lambdas
        .iter()
        .zip(&artifacts)
        .enumerate()
        .map(|(k, (&lambda, a))| SweepEntry {
            lambda,
            dir: format!("sweep-{k}"),
            verdict: a.summary.verdict.clone(),
            discord_verdict: a.summary.discord_verdict.clone(),
            p_nm_tilde: a.summary.p_nm_tilde,
            p_nm: a.summary.p_nm,
            max_discord: a.summary.max_discord,
        })
        .collect();
    let index = cfg.output.dir.join("sweep.json");
    write_atomic(&index, &to_json(&entries))?;
    Ok(RunOutcome {
        artifacts,
        sweep_index: Some(index),
    })
}
