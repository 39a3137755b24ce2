use rayon::prelude::*;

use crate::correlations::{concurrence, discord, von_neumann_entropy, zero_discord_witness};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::{DensityMatrix, Factors};

use super::trajectory::{Trajectory, TrajectoryOptions, TrajectorySample};
use super::{TimeGrid, ANCILLA, SYSTEM};

/// `(X + Z) / sqrt 2`.
pub fn hadamard_gate() -> CMatrix {
    (linalg::pauli_x() + linalg::pauli_z()).scale(std::f64::consts::FRAC_1_SQRT_2)
}

/// `(1 - p) rho + p H rho H` with `H` acting on the qubit factor `target`.
pub fn hadamard_channel(rho: &DensityMatrix, p: f64, target: &str) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if rho.factors().dim_of(target)? != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Hadamard channel target `{target}` must be a qubit"
        )));
    }
    let h = rho.embed(target, &hadamard_gate())?;
    let data = rho.data().scale(1.0 - p) + (&h * rho.data() * &h).scale(p);
    DensityMatrix::new(data, rho.factors().clone())
}

/// Local Hadamard channel on `S` applied to the classical-quantum state
/// `(|0><0| (x) w1 + |1><1| (x) w2) / 2`. The mixing probability follows the
/// dilation `H_SE = rate * H (x) Y` with the environment in `|0>`, which gives
/// `p(tau) = sin^2(rate * tau)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardDemo {
    pub rate: f64,
    pub w1: DensityMatrix,
    pub w2: DensityMatrix,
}

impl Default for HadamardDemo {
    fn default() -> Self {
        Self {
            rate: 1.0,
            w1: DensityMatrix::diagonal(ANCILLA, &[1.0, 0.0]).unwrap(),
            w2: DensityMatrix::diagonal(ANCILLA, &[0.0, 1.0]).unwrap(),
        }
    }
}

impl HadamardDemo {
    pub fn probability(&self, tau: f64) -> f64 {
        (self.rate * tau).sin().powi(2)
    }

    pub fn initial_state(&self) -> Result<DensityMatrix> {
        if self.w1.dim() != self.w2.dim() {
            return Err(Error::DimensionMismatch("w1 and w2 must have equal dimension".into()));
        }
        let zero = DensityMatrix::diagonal(SYSTEM, &[1.0, 0.0])?;
        let one = DensityMatrix::diagonal(SYSTEM, &[0.0, 1.0])?;
        let factors = Factors::new(&[(SYSTEM, 2), (ANCILLA, self.w1.dim())])?;
        let w1 = DensityMatrix::new(self.w1.data().clone(), Factors::single(ANCILLA, self.w1.dim())?)?;
        let w2 = DensityMatrix::new(self.w2.data().clone(), Factors::single(ANCILLA, self.w2.dim())?)?;
        let data = (zero.tensor(&w1)?.data() + one.tensor(&w2)?.data()).scale(0.5);
        DensityMatrix::new(data, factors)
    }

    pub fn state_at(&self, tau: f64) -> Result<DensityMatrix> {
        hadamard_channel(&self.initial_state()?, self.probability(tau), SYSTEM)
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        vec![("rate".into(), self.rate.to_string())]
    }
}

/// Samples the demo on a grid. Here `A` is the untouched partner of the
/// channel, so the discord and commutator columns refer to `rho_SA`.
pub fn run_hadamard_demo(demo: &HadamardDemo, grid: &TimeGrid, opts: &TrajectoryOptions) -> Result<Trajectory> {
    let base = opts.log_base;
    let discord_opts = crate::correlations::DiscordOptions {
        log_base: base,
        ..opts.discord
    };
    let initial = demo.initial_state()?;
    let samples = grid
        .times()
        .par_iter()
        .map(|&t| {
            let sa = hadamard_channel(&initial, demo.probability(t), SYSTEM)?;
            let entropy_system = von_neumann_entropy(&sa.partial_trace(&[SYSTEM])?, base);
            let entropy_ancilla = von_neumann_entropy(&sa.partial_trace(&[ANCILLA])?, base);
            let concurrence_sa = if sa.factors().dims() == [2, 2] {
                Some(concurrence(&sa)?)
            } else {
                None
            };
            let (discord_s, witness) = if opts.record_discord {
                (
                    Some(discord(&sa, SYSTEM, &discord_opts)?.value),
                    Some(zero_discord_witness(&sa, SYSTEM)?),
                )
            } else {
                (None, None)
            };
            Ok(TrajectorySample {
                t,
                entropy_system,
                entropy_ancilla,
                delta_sa: entropy_system - entropy_ancilla,
                concurrence_sa,
                discord_s,
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        times: grid.times().to_vec(),
        samples,
        states: Vec::new(),
        ancilla_dim: demo.w1.dim(),
    })
}
