//! Exactly solvable system-environment models and trajectory generation.

mod custom;
mod dephasing;
mod grid;
mod hadamard;
mod jc;
mod trajectory;

pub use custom::CustomModel;
pub use dephasing::DephasingModel;
pub use grid::TimeGrid;
pub use hadamard::{hadamard_channel, hadamard_gate, run_hadamard_demo, HadamardDemo};
pub use jc::JcModel;
pub use trajectory::{run_trajectory, Trajectory, TrajectoryOptions, TrajectorySample};

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{eig_hermitian, CMatrix};
use crate::state::DensityMatrix;

pub const SYSTEM: &str = "S";
pub const ENVIRONMENT: &str = "E";
pub const ANCILLA: &str = "A";

/// A time-independent unitary family `U_SE(t)` acting on the system and environment.
pub trait Propagator: Send + Sync {
    fn dim(&self) -> usize;

    fn unitary(&self, t: f64) -> CMatrix;

    /// `U(t) * block`, where `block` has one row per system-environment index.
    fn evolve(&self, t: f64, block: &CMatrix) -> CMatrix {
        self.unitary(t) * block
    }
}

/// `exp(-i H t)` from a one-time spectral decomposition of `H`.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    energies: Vec<f64>,
    vectors: CMatrix,
}

impl SpectralPropagator {
    pub fn new(hamiltonian: &CMatrix) -> Result<Self> {
        let eig = eig_hermitian(hamiltonian)?;
        Ok(Self {
            energies: eig.values,
            vectors: eig.vectors,
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    fn phases(&self, t: f64) -> Vec<Complex64> {
        self.energies
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * t))
            .collect()
    }
}

impl Propagator for SpectralPropagator {
    fn dim(&self) -> usize {
        self.energies.len()
    }

    fn unitary(&self, t: f64) -> CMatrix {
        let phases = self.phases(t);
        let mut scaled = self.vectors.clone();
        for (k, ph) in phases.iter().enumerate() {
            for r in 0..scaled.nrows() {
                scaled[(r, k)] *= ph;
            }
        }
        scaled * self.vectors.adjoint()
    }

    fn evolve(&self, t: f64, block: &CMatrix) -> CMatrix {
        let mut coeffs = self.vectors.adjoint() * block;
        for (k, ph) in self.phases(t).iter().enumerate() {
            for c in 0..coeffs.ncols() {
                coeffs[(k, c)] *= ph;
            }
        }
        &self.vectors * coeffs
    }
}

/// A system-environment dilation: an initial `rho_SE(0)` with factors
/// [`SYSTEM`], [`ENVIRONMENT`] and the unitary family that evolves it.
pub trait Model: Sync {
    fn name(&self) -> &'static str;

    fn initial_state(&self) -> Result<DensityMatrix>;

    fn propagator(&self) -> Result<Box<dyn Propagator>>;

    /// Parameter echo for reports.
    fn describe(&self) -> Vec<(String, String)>;
}
