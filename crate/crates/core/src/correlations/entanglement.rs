use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, kron, pauli_y, CMatrix};
use crate::state::DensityMatrix;
use crate::tol;

use super::entropy::{binary_entropy, LogBase};

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.factors().dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state required, got factor dimensions {:?}",
            rho.factors().dims()
        )));
    }
    Ok(())
}

/// Two-qubit concurrence `max(0, l1 - l2 - l3 - l4)`.
///
/// The `l_i` are the singular values of `W^T (Y(x)Y) W` for any factorization
/// `rho = W W^dagger`, which equal the square roots of the eigenvalues of
/// `rho (Y(x)Y) rho* (Y(x)Y)` without the square-root amplification of
/// round-off near zero eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let eig = eig_hermitian(rho.data())?;
    let kept: Vec<usize> = (0..4).filter(|&k| eig.values[k] > tol::ENTROPY_EIGEN_FLOOR).collect();
    if kept.is_empty() {
        return Ok(0.0);
    }
    let w = CMatrix::from_fn(4, kept.len(), |r, k| {
        eig.vectors[(r, kept[k])] * eig.values[kept[k]].sqrt()
    });
    let yy = kron(&pauli_y(), &pauli_y());
    let tau = w.transpose() * yy * &w;
    let mut l: Vec<f64> = tau.singular_values().iter().copied().collect();
    l.sort_by(|a, b| b.total_cmp(a));
    l.resize(4, 0.0);
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

pub fn entanglement_of_formation(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let c = concurrence(rho)?;
    Ok(eof_from_concurrence(c, base))
}

pub fn eof_from_concurrence(c: f64, base: LogBase) -> f64 {
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()), base)
}
