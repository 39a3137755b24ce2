use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::{coherent_state, CoherentState, DensityMatrix};
use crate::tol;

use super::{Model, Propagator, SpectralPropagator, ENVIRONMENT, SYSTEM};

/// Two-level atom coupled to one truncated cavity mode,
/// `H = lambda (sigma_- (x) a^dagger + sigma_+ (x) a)` with `sigma_+ = |1><0|`.
///
/// The atom starts in `epsilon |0><0| + (1 - epsilon) |1><1|` and the mode in
/// the coherent state `|alpha>`.
#[derive(Debug, Clone, PartialEq)]
pub struct JcModel {
    pub coupling: f64,
    pub alpha: Complex64,
    pub epsilon: f64,
    pub n_max: usize,
    pub tail_tolerance: f64,
}

impl Default for JcModel {
    fn default() -> Self {
        Self {
            coupling: 1.0,
            alpha: Complex64::new(5.0, 0.0),
            epsilon: 0.2,
            n_max: 80,
            tail_tolerance: tol::COHERENT_TAIL,
        }
    }
}

impl JcModel {
    pub fn with_n_max(&self, n_max: usize) -> Self {
        Self { n_max, ..self.clone() }
    }

    pub fn mode_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn annihilation(&self) -> CMatrix {
        let d = self.mode_dim();
        CMatrix::from_fn(d, d, |r, c| {
            if c == r + 1 {
                linalg::c((c as f64).sqrt(), 0.0)
            } else {
                linalg::ZERO
            }
        })
    }

    pub fn raising() -> CMatrix {
        linalg::real_matrix(2, 2, &[0.0, 0.0, 1.0, 0.0])
    }

    pub fn hamiltonian(&self) -> CMatrix {
        let a = self.annihilation();
        let sp = Self::raising();
        let sm = sp.adjoint();
        (linalg::kron(&sm, &a.adjoint()) + linalg::kron(&sp, &a)).scale(self.coupling)
    }

    /// `sigma_+ sigma_- (x) I + I (x) a^dagger a`; commutes with the Hamiltonian.
    pub fn excitation_number(&self) -> CMatrix {
        let a = self.annihilation();
        let sp = Self::raising();
        linalg::kron(&(&sp * sp.adjoint()), &linalg::identity(self.mode_dim()))
            + linalg::kron(&linalg::identity(2), &(a.adjoint() * a))
    }

    pub fn coherent(&self) -> Result<CoherentState> {
        coherent_state(self.alpha, self.n_max, ENVIRONMENT, self.tail_tolerance)
    }

    pub fn spectral_propagator(&self) -> Result<SpectralPropagator> {
        SpectralPropagator::new(&self.hamiltonian())
    }
}

impl Model for JcModel {
    fn name(&self) -> &'static str {
        "jaynes-cummings"
    }

    fn initial_state(&self) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::InvalidProbability(self.epsilon));
        }
        let atom = DensityMatrix::diagonal(SYSTEM, &[self.epsilon, 1.0 - self.epsilon])?;
        atom.tensor(&self.coherent()?.state.to_density())
    }

    fn propagator(&self) -> Result<Box<dyn Propagator>> {
        Ok(Box::new(self.spectral_propagator()?))
    }

    fn describe(&self) -> Vec<(String, String)> {
        vec![
            ("lambda".into(), self.coupling.to_string()),
            ("alpha".into(), self.alpha.to_string()),
            ("epsilon".into(), self.epsilon.to_string()),
            ("n_max".into(), self.n_max.to_string()),
        ]
    }
}
