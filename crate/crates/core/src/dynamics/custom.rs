use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::{DensityMatrix, Factors};
use crate::tol;

use super::{Model, Propagator, SpectralPropagator, ENVIRONMENT, SYSTEM};

/// `H = H_S (x) I + I (x) H_E + coupling * H_int` with a product initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomModel {
    pub h_system: CMatrix,
    pub h_environment: CMatrix,
    pub h_interaction: CMatrix,
    pub coupling: f64,
    pub rho_system: DensityMatrix,
    pub rho_environment: DensityMatrix,
}

impl CustomModel {
    pub fn new(
        h_system: CMatrix,
        h_environment: CMatrix,
        h_interaction: CMatrix,
        coupling: f64,
        rho_system: DensityMatrix,
        rho_environment: DensityMatrix,
    ) -> Result<Self> {
        let ds = rho_system.dim();
        let de = rho_environment.dim();
        let square = |m: &CMatrix, d: usize, what: &str| -> Result<()> {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "{what} is {}x{}, expected {d}x{d}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let r = linalg::hermiticity_residual(m);
            if r > tol::STATE_VALIDATION {
                return Err(Error::NotHermitian(r));
            }
            Ok(())
        };
        square(&h_system, ds, "H_S")?;
        square(&h_environment, de, "H_E")?;
        square(&h_interaction, ds * de, "H_int")?;
        if !coupling.is_finite() {
            return Err(Error::DimensionMismatch(format!(
                "coupling must be finite, got {coupling}"
            )));
        }
        let rho_system = DensityMatrix::new(rho_system.data().clone(), Factors::single(SYSTEM, ds)?)?;
        let rho_environment = DensityMatrix::new(rho_environment.data().clone(), Factors::single(ENVIRONMENT, de)?)?;
        Ok(Self {
            h_system,
            h_environment,
            h_interaction,
            coupling,
            rho_system,
            rho_environment,
        })
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        Self {
            coupling,
            ..self.clone()
        }
    }

    pub fn hamiltonian(&self) -> CMatrix {
        let ds = self.h_system.nrows();
        let de = self.h_environment.nrows();
        linalg::kron(&self.h_system, &linalg::identity(de))
            + linalg::kron(&linalg::identity(ds), &self.h_environment)
            + self.h_interaction.scale(self.coupling)
    }
}

impl Model for CustomModel {
    fn name(&self) -> &'static str {
        "custom-hamiltonian"
    }

    fn initial_state(&self) -> Result<DensityMatrix> {
        self.rho_system.tensor(&self.rho_environment)
    }

    fn propagator(&self) -> Result<Box<dyn Propagator>> {
        Ok(Box::new(SpectralPropagator::new(&self.hamiltonian())?))
    }

    fn describe(&self) -> Vec<(String, String)> {
        vec![
            ("lambda".into(), self.coupling.to_string()),
            ("dim_s".into(), self.h_system.nrows().to_string()),
            ("dim_e".into(), self.h_environment.nrows().to_string()),
        ]
    }
}
