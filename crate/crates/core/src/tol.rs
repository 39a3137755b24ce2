//! Central numerical tolerances.
//!
//! The constants are the defaults; [`Tolerances`] carries the subset that a
//! scenario may override at run time.

/// Hermiticity, unit trace and positivity checks on density matrices.
pub const STATE_VALIDATION: f64 = 1e-10;

/// Largest acceptable Fock-space truncation tail of a coherent state.
pub const COHERENT_TAIL: f64 = 1e-8;

/// Eigenvalues below this fraction of the largest one are dropped when purifying.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Eigenvalues at or below this value do not contribute to an entropy.
pub const ENTROPY_EIGEN_FLOOR: f64 = 1e-14;

/// Measurement branches with smaller probability contribute nothing to the
/// measured conditional entropy.
pub const BRANCH_PROBABILITY: f64 = 1e-12;

/// Discord values in `[-DISCORD_CLAMP, 0)` are reported as zero.
pub const DISCORD_CLAMP: f64 = 1e-9;

/// `Delta_SA` must exceed this to count as a detection.
pub const DETECTION_THRESHOLD: f64 = 1e-6;

/// Global pure states must satisfy `tr(rho^2) > 1 - PURITY`.
pub const PURITY: f64 = 1e-9;

/// Relative change allowed when the Fock cutoff is raised by twenty levels.
pub const TRUNCATION_CONVERGENCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    pub state_validation: f64,
    pub coherent_tail: f64,
    pub rank_cutoff: f64,
    pub detection_threshold: f64,
    pub purity: f64,
    pub truncation_convergence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            state_validation: STATE_VALIDATION,
            coherent_tail: COHERENT_TAIL,
            rank_cutoff: RANK_CUTOFF,
            detection_threshold: DETECTION_THRESHOLD,
            purity: PURITY,
            truncation_convergence: TRUNCATION_CONVERGENCE,
        }
    }
}
