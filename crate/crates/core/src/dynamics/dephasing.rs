use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::{DensityMatrix, Factors};

use super::{Model, Propagator, ENVIRONMENT, SYSTEM};

/// Qubit system controlled-phase coupled to a qubit environment,
/// `H = (1 + Z (x) I + I (x) Z - Z (x) Z) / 4`, so that
/// `U(t) = e^{-it/2} I (x) |0><0| + e^{-itZ/2} (x) |1><1|`.
///
/// The environment starts diagonal, `p0 |0><0| + p1 |1><1|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DephasingModel {
    pub p0: f64,
    pub p1: f64,
    pub initial_system: DensityMatrix,
}

impl Default for DephasingModel {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = linalg::real_matrix(2, 2, &[h * h, h * h, h * h, h * h]);
        Self {
            p0: 0.5,
            p1: 0.5,
            initial_system: DensityMatrix::new(plus, Factors::single(SYSTEM, 2).unwrap()).unwrap(),
        }
    }
}

fn z_rotation(t: f64) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::from_polar(1.0, -0.5 * t);
    m[(1, 1)] = Complex64::from_polar(1.0, 0.5 * t);
    m
}

fn projector(k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(k, k)] = linalg::ONE;
    m
}

impl DephasingModel {
    pub fn new(p0: f64, initial_system: DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(Error::InvalidProbability(p0));
        }
        if initial_system.factors().dims() != [2] {
            return Err(Error::DimensionMismatch(
                "dephasing model needs a single-qubit system state".into(),
            ));
        }
        let initial_system = DensityMatrix::new(initial_system.data().clone(), Factors::single(SYSTEM, 2)?)?;
        Ok(Self {
            p0,
            p1: 1.0 - p0,
            initial_system,
        })
    }

    pub fn hamiltonian() -> CMatrix {
        let z = linalg::pauli_z();
        let id = linalg::identity(2);
        (linalg::identity(4) + linalg::kron(&z, &id) + linalg::kron(&id, &z) - linalg::kron(&z, &z)).scale(0.25)
    }

    /// Closed-form `U_SE(t)`.
    pub fn unitary(t: f64) -> CMatrix {
        let global = linalg::identity(2) * Complex64::from_polar(1.0, -0.5 * t);
        linalg::kron(&global, &projector(0)) + linalg::kron(&z_rotation(t), &projector(1))
    }

    /// Kraus pair of the reduced dynamics: `sqrt(p0) I`, `sqrt(p1) e^{-itZ/2}`.
    pub fn kraus(&self, t: f64) -> [CMatrix; 2] {
        [
            linalg::identity(2).scale(self.p0.sqrt()),
            z_rotation(t).scale(self.p1.sqrt()),
        ]
    }

    pub fn apply_kraus(&self, rho_s: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        let out = self
            .kraus(t)
            .iter()
            .fold(CMatrix::zeros(2, 2), |acc, k| acc + k * rho_s.data() * k.adjoint());
        DensityMatrix::new(out, rho_s.factors().clone())
    }

    pub fn initial_environment(&self) -> Result<DensityMatrix> {
        DensityMatrix::diagonal(ENVIRONMENT, &[self.p0, self.p1])
    }

    /// `rho_SE(t) = sum_j p_j V_j rho_S(0) V_j^dagger (x) |j><j|`, assembled
    /// directly from the branch rotations.
    pub fn closed_form_state(&self, t: f64) -> Result<DensityMatrix> {
        let branches = [
            linalg::identity(2) * Complex64::from_polar(1.0, -0.5 * t),
            z_rotation(t),
        ];
        let mut data = CMatrix::zeros(4, 4);
        for (j, (v, p)) in branches.iter().zip([self.p0, self.p1]).enumerate() {
            let rotated = v * self.initial_system.data() * v.adjoint();
            data += linalg::kron(&rotated.scale(p), &projector(j));
        }
        DensityMatrix::new(data, Factors::new(&[(SYSTEM, 2), (ENVIRONMENT, 2)])?)
    }
}

struct ControlledPhase;

impl Propagator for ControlledPhase {
    fn dim(&self) -> usize {
        4
    }

    fn unitary(&self, t: f64) -> CMatrix {
        DephasingModel::unitary(t)
    }
}

impl Model for DephasingModel {
    fn name(&self) -> &'static str {
        "dephasing"
    }

    fn initial_state(&self) -> Result<DensityMatrix> {
        self.initial_system.tensor(&self.initial_environment()?)
    }

    fn propagator(&self) -> Result<Box<dyn Propagator>> {
        Ok(Box::new(ControlledPhase))
    }

    fn describe(&self) -> Vec<(String, String)> {
        let r = self.initial_system.data();
        vec![
            ("p0".into(), self.p0.to_string()),
            ("p1".into(), self.p1.to_string()),
            (
                "rho_s".into(),
                format!("{} {}; {} {}", r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]),
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::SpectralPropagator;
    use crate::linalg::{max_abs, unitarity_residual};

    #[test]
    fn identity_at_time_zero() {
        assert!(max_abs(&(DephasingModel::unitary(0.0) - linalg::identity(4))) < 1e-15);
    }

    #[test]
    fn closed_form_matches_hamiltonian_exponential() {
        let spectral = SpectralPropagator::new(&DephasingModel::hamiltonian()).unwrap();
        for &t in &[0.1, 1.0, 3.3, 7.9] {
            let u = DephasingModel::unitary(t);
            assert!(unitarity_residual(&u) < 1e-12);
            assert!(max_abs(&(u - spectral.unitary(t))) < 1e-12);
        }
    }

    #[test]
    fn kraus_matches_dilation() {
        let m = DephasingModel::default();
        let se = m.initial_state().unwrap();
        for &t in &[0.0, 0.5, 1.0, 4.0] {
            let evolved = se.conjugated(&DephasingModel::unitary(t)).unwrap();
            let reduced = evolved.partial_trace(&[SYSTEM]).unwrap();
            let kraus = m.apply_kraus(&m.initial_system, t).unwrap();
            assert!(max_abs(&(reduced.data() - kraus.data())) < 1e-12);
        }
    }

    #[test]
    fn evolution_matches_closed_form_state() {
        let m = DephasingModel::default();
        let evolved = m
            .initial_state()
            .unwrap()
            .conjugated(&DephasingModel::unitary(1.0))
            .unwrap();
        let closed = m.closed_form_state(1.0).unwrap();
        assert!(max_abs(&(evolved.data() - closed.data())) < 1e-12);
    }

    #[test]
    fn reduced_state_at_t1_by_hand() {
        // p0 = p1 = 1/2, rho_S(0) = |+><+|: the off-diagonal element is
        // p0 * 1/2 + p1 * e^{-it} * 1/2 = (1 + e^{-i}) / 4
        let m = DephasingModel::default();
        let rho_s = m.closed_form_state(1.0).unwrap().partial_trace(&[SYSTEM]).unwrap();
        let off = (linalg::ONE + Complex64::from_polar(1.0, -1.0)) * 0.25;
        assert!((rho_s.data()[(0, 1)] - off).norm() < 1e-14);
        assert!((rho_s.data()[(0, 0)].re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_probability() {
        let m = DephasingModel::default();
        assert!(DephasingModel::new(1.2, m.initial_system.clone()).is_err());
    }
}
