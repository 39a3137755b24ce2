use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::{concurrence, discord, von_neumann_entropy, zero_discord_witness, DiscordOptions, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::state::{purify, PureState};
use crate::tol::Tolerances;

use super::{Model, TimeGrid, ANCILLA, ENVIRONMENT, SYSTEM};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryOptions {
    pub log_base: LogBase,
    /// Record `D_S[rho_SE]` and the commutator witness at every grid time.
    pub record_discord: bool,
    pub discord: DiscordOptions,
    pub tolerances: Tolerances,
    /// Keep the global state `|psi(t)>_SEA` for every grid time.
    pub keep_states: bool,
}

impl Default for TrajectoryOptions {
    fn default() -> Self {
        Self {
            log_base: LogBase::Two,
            record_discord: false,
            discord: DiscordOptions::default(),
            tolerances: Tolerances::default(),
            keep_states: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub entropy_system: f64,
    pub entropy_ancilla: f64,
    pub delta_sa: f64,
    /// Only defined when both S and A are qubits.
    pub concurrence_sa: Option<f64>,
    pub discord_s: Option<f64>,
    pub witness: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub samples: Vec<TrajectorySample>,
    /// `|psi(t)>_SEA` per grid time; empty unless requested.
    pub states: Vec<PureState>,
    pub ancilla_dim: usize,
}

impl Trajectory {
    pub fn delta_series(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.delta_sa).collect()
    }

    pub fn discord_series(&self) -> Option<Vec<f64>> {
        self.samples.iter().map(|s| s.discord_s).collect()
    }
}

/// Purifies `rho_SE(0)` with an ancilla, evolves `U_SE(t) (x) I_A` over the grid
/// and records the entropic quantities of every sample.
pub fn run_trajectory(model: &dyn Model, grid: &TimeGrid, opts: &TrajectoryOptions) -> Result<Trajectory> {
    let base = opts.log_base;
    let discord_opts = DiscordOptions {
        log_base: base,
        ..opts.discord
    };
    let rho0 = model.initial_state()?;
    let psi0 = purify(&rho0, ANCILLA, opts.tolerances.rank_cutoff)?;
    let factors = psi0.factors().clone();
    let ancilla_dim = factors.dim_of(ANCILLA)?;
    let system_dim = factors.dim_of(SYSTEM)?;
    let se_dim = rho0.dim();
    // amplitudes as a (SE index) x (A index) block so that U (x) I acts by left multiplication
    let block0 = CMatrix::from_fn(se_dim, ancilla_dim, |r, a| psi0.amplitudes()[r * ancilla_dim + a]);
    let propagator = model.propagator()?;

    let results = grid
        .times()
        .par_iter()
        .map(|&t| -> Result<(TrajectorySample, Option<PureState>)> {
            let block = propagator.evolve(t, &block0);
            let amps = CVector::from_fn(se_dim * ancilla_dim, |k, _| block[(k / ancilla_dim, k % ancilla_dim)]);
            let purity = amps.norm_squared().powi(2);
            if (purity - 1.0).abs() > opts.tolerances.purity {
                return Err(Error::PurityViolation { t, purity });
            }
            let psi = PureState::from_parts(amps, factors.clone());
            let rho_s = psi.reduced(&[SYSTEM])?;
            let rho_a = psi.reduced(&[ANCILLA])?;
            let entropy_system = von_neumann_entropy(&rho_s, base);
            let entropy_ancilla = von_neumann_entropy(&rho_a, base);
            let concurrence_sa = if system_dim == 2 && ancilla_dim == 2 {
                Some(concurrence(&psi.reduced(&[SYSTEM, ANCILLA])?)?)
            } else {
                None
            };
            let (discord_s, witness) = if opts.record_discord {
                let rho_se = psi.reduced(&[SYSTEM, ENVIRONMENT])?;
                (
                    Some(discord(&rho_se, SYSTEM, &discord_opts)?.value),
                    Some(zero_discord_witness(&rho_se, SYSTEM)?),
                )
            } else {
                (None, None)
            };
            let sample = TrajectorySample {
                t,
                entropy_system,
                entropy_ancilla,
                delta_sa: entropy_system - entropy_ancilla,
                concurrence_sa,
                discord_s,
                witness,
            };
            Ok((sample, opts.keep_states.then_some(psi)))
        })
        .collect::<Result<Vec<_>>>()?;

    let (samples, states): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(Trajectory {
        times: grid.times().to_vec(),
        samples,
        states: states.into_iter().flatten().collect(),
        ancilla_dim,
    })
}
