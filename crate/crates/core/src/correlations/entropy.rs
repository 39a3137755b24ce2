use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::DensityMatrix;
use crate::tol;

/// Logarithm base for every entropic quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum LogBase {
    /// Bits. Reproduces the reference non-Markovianity value of the
    /// Jaynes-Cummings example.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "2" | "two" | "bits" => Ok(LogBase::Two),
            "e" | "E" | "nat" | "nats" => Ok(LogBase::E),
            other => Err(format!("unknown log base `{other}` (expected 2 or e)")),
        }
    }
}

/// `-sum p log p` over the entries above the eigenvalue floor.
pub fn entropy_of_spectrum(values: &[f64], base: LogBase) -> f64 {
    let h: f64 = values
        .iter()
        .filter(|&&p| p > tol::ENTROPY_EIGEN_FLOOR)
        .map(|&p| -p * base.log(p))
        .sum();
    h.max(0.0)
}

pub fn binary_entropy(p: f64, base: LogBase) -> f64 {
    entropy_of_spectrum(&[p, 1.0 - p], base)
}

pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues(), base)
}

/// `S[rho] - S[rho_conditioning]` for a bipartite state.
pub fn conditional_entropy(rho: &DensityMatrix, conditioning: &str, base: LogBase) -> Result<f64> {
    if rho.factors().len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "conditional entropy needs a bipartite state, got factors {:?}",
            rho.factors().labels()
        )));
    }
    let marginal = rho.partial_trace(&[conditioning])?;
    Ok(von_neumann_entropy(rho, base) - von_neumann_entropy(&marginal, base))
}
