//! Non-Markovianity quantifiers built on a sampled trajectory.
//!
//! `Delta_SA = S[rho_S] - S[rho_A]` bounds the system-environment discord from
//! below, so any strictly positive value certifies non-Markovian dynamics.
//! `P_NM(tau)` is the time-averaged discord and `P~_NM(tau)` the time average of
//! the positive part of `Delta_SA`; both use composite trapezoid quadrature.

use serde::Serialize;

use crate::correlations::LogBase;
use crate::dynamics::{Trajectory, TrajectorySample};
use crate::error::{Error, Result};
use crate::tol;

pub const VERDICT_WITNESSED: &str = "non-Markovian (witnessed)";
pub const VERDICT_UNWITNESSED: &str = "no non-Markovianity witnessed";
pub const DISCORD_NONZERO: &str = "non-Markovian (discord)";
pub const DISCORD_ZERO: &str = "consistent with Markovian";

pub fn delta_sa(sample: &TrajectorySample) -> f64 {
    sample.entropy_system - sample.entropy_ancilla
}

/// Composite trapezoid rule on a possibly non-uniform grid.
pub fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

/// Index of the last sample at `tau`, checking that the series spans `[0, tau]`.
fn coverage(times: &[f64], values: &[f64], tau: f64) -> Result<usize> {
    let fail = |reason: String| Error::Coverage { tau, reason };
    if !(tau.is_finite() && tau > 0.0) {
        return Err(fail("tau must be positive".into()));
    }
    if times.len() != values.len() {
        return Err(fail(format!("{} times but {} values", times.len(), values.len())));
    }
    if times.len() < 2 || times[0].abs() > 1e-12 {
        return Err(fail("series must start at t = 0".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(fail("times must be strictly increasing".into()));
    }
    let slack = 1e-9 * tau.max(1.0);
    times.iter().position(|&t| (t - tau).abs() <= slack).ok_or_else(|| {
        fail(format!(
            "no sample at t = {tau} (last sample at {})",
            times[times.len() - 1]
        ))
    })
}

/// `(1/tau) * integral_0^tau D_S dt`.
pub fn p_nm(times: &[f64], discord: &[f64], tau: f64) -> Result<f64> {
    let end = coverage(times, discord, tau)?;
    Ok(trapezoid(&times[..=end], &discord[..=end]) / tau)
}

/// `(1/(2 tau)) * integral_0^tau (|Delta| + Delta) dt`.
pub fn p_nm_tilde(times: &[f64], delta: &[f64], tau: f64) -> Result<f64> {
    let end = coverage(times, delta, tau)?;
    let integrand: Vec<f64> = delta[..=end].iter().map(|&d| 0.5 * (d.abs() + d)).collect();
    Ok(trapezoid(&times[..=end], &integrand) / tau)
}

pub fn first_detection_time(times: &[f64], delta: &[f64], threshold: f64) -> Option<f64> {
    times.iter().zip(delta).find(|(_, &d)| d > threshold).map(|(&t, _)| t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// `Delta_SA` must exceed this to count as a detection.
    pub detection: f64,
    /// Discord above this counts as nonzero.
    pub discord: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            detection: tol::DETECTION_THRESHOLD,
            discord: tol::DETECTION_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportSettings {
    pub log_base: LogBase,
    pub dt: f64,
    pub tau: f64,
    pub thresholds: Thresholds,
    pub model: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub p_nm: Option<f64>,
    pub p_nm_tilde: f64,
    pub first_detection_time: Option<f64>,
    /// Verdict from `Delta_SA` alone; never claims Markovianity.
    pub verdict: String,
    /// Verdict from the recorded discord series, when present.
    pub discord_verdict: Option<String>,
    pub series: Vec<TrajectorySample>,
    pub settings: ReportSettings,
}

pub fn assemble_report(
    trajectory: &Trajectory,
    tau: f64,
    thresholds: Thresholds,
    settings: ReportSettings,
) -> Result<WitnessReport> {
    let times = &trajectory.times;
    let delta = trajectory.delta_series();
    let p_nm_tilde = p_nm_tilde(times, &delta, tau)?;
    let end = coverage(times, &delta, tau)?;
    let first = first_detection_time(&times[..=end], &delta[..=end], thresholds.detection);
    let discord = trajectory.discord_series();
    let p_nm = discord.as_ref().map(|d| p_nm(times, d, tau)).transpose()?;
    let discord_verdict = discord.as_ref().map(|d| {
        if d[..=end].iter().any(|&v| v > thresholds.discord) {
            DISCORD_NONZERO
        } else {
            DISCORD_ZERO
        }
        .to_string()
    });
    Ok(WitnessReport {
        p_nm,
        p_nm_tilde,
        first_detection_time: first,
        verdict: if first.is_some() {
            VERDICT_WITNESSED
        } else {
            VERDICT_UNWITNESSED
        }
        .to_string(),
        discord_verdict,
        series: trajectory.samples[..=end].to_vec(),
        settings: ReportSettings {
            tau,
            thresholds,
            ..settings
        },
    })
}
