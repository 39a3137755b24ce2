use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::PureState;

use super::discord::{discord, DiscordOptions};
use super::entanglement::entanglement_of_formation;
use super::entropy::{von_neumann_entropy, LogBase};

/// Labels of the system, environment and ancilla factors of a pure state.
#[derive(Debug, Clone, Copy)]
pub struct Tripartite<'a> {
    pub system: &'a str,
    pub environment: &'a str,
    pub ancilla: &'a str,
}

impl Default for Tripartite<'_> {
    fn default() -> Self {
        Self {
            system: "S",
            environment: "E",
            ancilla: "A",
        }
    }
}

/// Every term of `E_f[rho_EA] = D_S[rho_ES] + S[rho_A] - S[rho_S]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonogamyTerms {
    pub entanglement_of_formation: f64,
    pub discord: f64,
    pub entropy_ancilla: f64,
    pub entropy_system: f64,
    pub residual: f64,
}

fn check_qubits(psi: &PureState, parts: Tripartite<'_>) -> Result<()> {
    let f = psi.factors();
    let dims = [
        f.dim_of(parts.system)?,
        f.dim_of(parts.environment)?,
        f.dim_of(parts.ancilla)?,
    ];
    if f.len() != 3 || dims != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "monogamy identity needs a pure state of exactly three qubits, got {:?}",
            f.dims()
        )));
    }
    Ok(())
}

/// Discord of `rho_SE` (measured on S) reconstructed from the conservation law
/// for pure tripartite states: `E_f[rho_EA] - S[rho_A] + S[rho_S]`.
pub fn discord_from_monogamy(psi: &PureState, parts: Tripartite<'_>, base: LogBase) -> Result<f64> {
    check_qubits(psi, parts)?;
    let ef = entanglement_of_formation(&psi.reduced(&[parts.environment, parts.ancilla])?, base)?;
    let s_a = von_neumann_entropy(&psi.reduced(&[parts.ancilla])?, base);
    let s_s = von_neumann_entropy(&psi.reduced(&[parts.system])?, base);
    Ok(ef - s_a + s_s)
}

pub fn monogamy_residual(psi: &PureState, parts: Tripartite<'_>, opts: &DiscordOptions) -> Result<MonogamyTerms> {
    check_qubits(psi, parts)?;
    let base = opts.log_base;
    let ef = entanglement_of_formation(&psi.reduced(&[parts.environment, parts.ancilla])?, base)?;
    let d = discord(&psi.reduced(&[parts.system, parts.environment])?, parts.system, opts)?.value;
    let s_a = von_neumann_entropy(&psi.reduced(&[parts.ancilla])?, base);
    let s_s = von_neumann_entropy(&psi.reduced(&[parts.system])?, base);
    Ok(MonogamyTerms {
        entanglement_of_formation: ef,
        discord: d,
        entropy_ancilla: s_a,
        entropy_system: s_s,
        residual: (ef - d - s_a + s_s).abs(),
    })
}
