//! Labelled multipartite states.
//!
//! Every state carries an ordered list of named factors. Composite indices are
//! row-major over that list (the first factor is the most significant digit),
//! which is the ordering produced by the Kronecker product.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, CMatrix, CVector};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

/// Ordered factor signature of a tensor-product Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factors(Vec<Subsystem>);

impl Factors {
    pub fn new<S: AsRef<str>>(parts: &[(S, usize)]) -> Result<Self> {
        let mut out: Vec<Subsystem> = Vec::with_capacity(parts.len());
        for (label, dim) in parts {
            let label = label.as_ref();
            if *dim == 0 {
                return Err(Error::DimensionMismatch(format!("factor `{label}` has dimension 0")));
            }
            if out.iter().any(|s| s.label == label) {
                return Err(Error::DuplicateSubsystem(label.to_string()));
            }
            out.push(Subsystem {
                label: label.to_string(),
                dim: *dim,
            });
        }
        if out.is_empty() {
            return Err(Error::DimensionMismatch("state has no factors".into()));
        }
        Ok(Self(out))
    }

    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new(&[(label, dim)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subsystem> {
        self.0.iter()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|s| s.dim).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.dim).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.0.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::UnknownSubsystem(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.0[self.position(label)?].dim)
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1].dim;
        }
        strides
    }

    fn concat(&self, other: &Factors) -> Result<Factors> {
        let parts: Vec<(&str, usize)> = self
            .0
            .iter()
            .chain(other.0.iter())
            .map(|s| (s.label.as_str(), s.dim))
            .collect();
        Factors::new(&parts)
    }

    fn select(&self, positions: &[usize]) -> Factors {
        Factors(positions.iter().map(|&p| self.0[p].clone()).collect())
    }

    /// Splits the composite index space into the kept factors and the rest.
    fn split(&self, keep: &[&str]) -> Result<Split> {
        if keep.is_empty() {
            return Err(Error::DimensionMismatch(
                "partial trace must keep at least one factor".into(),
            ));
        }
        let mut mask = vec![false; self.0.len()];
        for label in keep {
            mask[self.position(label)?] = true;
        }
        let kept: Vec<usize> = (0..self.0.len()).filter(|&k| mask[k]).collect();
        let traced: Vec<usize> = (0..self.0.len()).filter(|&k| !mask[k]).collect();
        let strides = self.strides();
        Ok(Split {
            kept_offsets: offsets(&self.dims(), &strides, &kept),
            traced_offsets: offsets(&self.dims(), &strides, &traced),
            kept: self.select(&kept),
        })
    }
}

struct Split {
    kept_offsets: Vec<usize>,
    traced_offsets: Vec<usize>,
    kept: Factors,
}

/// Offsets of every multi-index over the chosen factors, enumerated row-major.
fn offsets(dims: &[usize], strides: &[usize], chosen: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &k in chosen {
        let mut next = Vec::with_capacity(out.len() * dims[k]);
        for &base in &out {
            for digit in 0..dims[k] {
                next.push(base + digit * strides[k]);
            }
        }
        out = next;
    }
    out
}

/// Hermitian, positive semidefinite, unit-trace matrix over labelled factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: CMatrix,
    factors: Factors,
}

impl DensityMatrix {
    pub fn new(data: CMatrix, factors: Factors) -> Result<Self> {
        Self::with_tolerance(data, factors, tol::STATE_VALIDATION)
    }

    pub fn with_tolerance(data: CMatrix, factors: Factors, tolerance: f64) -> Result<Self> {
        let d = factors.total_dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for factors {:?} (dimension {d})",
                data.nrows(),
                data.ncols(),
                factors.dims()
            )));
        }
        let herm = linalg::hermiticity_residual(&data);
        if herm > tolerance {
            return Err(Error::NotHermitian(herm));
        }
        let tr = linalg::trace(&data);
        let trace_err = (tr - Complex64::new(1.0, 0.0)).norm();
        if trace_err > tolerance {
            return Err(Error::InvalidTrace(trace_err));
        }
        let min_eig = linalg::eigvalsh(&data).last().copied().unwrap_or(0.0);
        if min_eig < -tolerance {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self { data, factors })
    }

    /// Builds a state from data already known to be valid (outputs of
    /// trace-preserving operations on valid states).
    pub(crate) fn from_parts(data: CMatrix, factors: Factors) -> Self {
        debug_assert_eq!(data.nrows(), factors.total_dim());
        Self { data, factors }
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = &state.amplitudes;
        Self::from_parts(v * v.adjoint(), state.factors.clone())
    }

    /// Diagonal state `sum_k p_k |k><k|` on a single factor.
    pub fn diagonal(label: &str, probabilities: &[f64]) -> Result<Self> {
        for &p in probabilities {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        Self::new(
            linalg::diag_real(probabilities),
            Factors::single(label, probabilities.len())?,
        )
    }

    pub fn maximally_mixed(label: &str, dim: usize) -> Result<Self> {
        Self::new(
            linalg::identity(dim).scale(1.0 / dim as f64),
            Factors::single(label, dim)?,
        )
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn factors(&self) -> &Factors {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.data).re
    }

    pub fn purity(&self) -> f64 {
        (&self.data * &self.data).diagonal().iter().map(|z| z.re).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigvalsh(&self.data)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let factors = self.factors.concat(&other.factors)?;
        Ok(Self::from_parts(linalg::kron(&self.data, &other.data), factors))
    }

    /// Reduced state on the named factors; kept factors stay in their original order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let split = self.factors.split(keep)?;
        let n = split.kept_offsets.len();
        let out = CMatrix::from_fn(n, n, |a, b| {
            let (ra, rb) = (split.kept_offsets[a], split.kept_offsets[b]);
            split.traced_offsets.iter().map(|&t| self.data[(ra + t, rb + t)]).sum()
        });
        Ok(Self::from_parts(out, split.kept))
    }

    /// Reorders the factors; `order` must name every factor exactly once.
    pub fn permuted(&self, order: &[&str]) -> Result<DensityMatrix> {
        let perm = permutation(&self.factors, order)?;
        let map = index_map(&self.factors, &perm);
        let d = self.dim();
        let data = CMatrix::from_fn(d, d, |r, c| self.data[(map[r], map[c])]);
        Ok(Self::from_parts(data, self.factors.select(&perm)))
    }

    /// `U rho U^dagger` with `U` acting on the whole space.
    pub fn conjugated(&self, unitary: &CMatrix) -> Result<DensityMatrix> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on a dimension-{} state",
                unitary.nrows(),
                unitary.ncols(),
                self.dim()
            )));
        }
        Ok(Self::from_parts(
            unitary * &self.data * unitary.adjoint(),
            self.factors.clone(),
        ))
    }

    /// Extends a single-factor operator by identities on every other factor.
    pub fn embed(&self, label: &str, op: &CMatrix) -> Result<CMatrix> {
        embed_operator(&self.factors, label, op)
    }
}

/// `I (x) ... (x) op (x) ... (x) I` with `op` on the named factor.
pub fn embed_operator(factors: &Factors, label: &str, op: &CMatrix) -> Result<CMatrix> {
    let pos = factors.position(label)?;
    let dims = factors.dims();
    if op.nrows() != dims[pos] || op.ncols() != dims[pos] {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on factor `{label}` of dimension {}",
            op.nrows(),
            op.ncols(),
            dims[pos]
        )));
    }
    let before: usize = dims[..pos].iter().product();
    let after: usize = dims[pos + 1..].iter().product();
    Ok(linalg::kron(
        &linalg::kron(&linalg::identity(before), op),
        &linalg::identity(after),
    ))
}

fn permutation(factors: &Factors, order: &[&str]) -> Result<Vec<usize>> {
    if order.len() != factors.len() {
        return Err(Error::DimensionMismatch(format!(
            "permutation names {} factors, state has {}",
            order.len(),
            factors.len()
        )));
    }
    let perm: Vec<usize> = order.iter().map(|l| factors.position(l)).collect::<Result<_>>()?;
    for (i, p) in perm.iter().enumerate() {
        if perm[..i].contains(p) {
            return Err(Error::DuplicateSubsystem(order[i].to_string()));
        }
    }
    Ok(perm)
}

/// For each index of the permuted space, the matching index of the original.
fn index_map(factors: &Factors, perm: &[usize]) -> Vec<usize> {
    let strides = factors.strides();
    offsets(&factors.dims(), &strides, perm)
}

/// Unit vector over labelled factors.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
    factors: Factors,
}

impl PureState {
    pub fn new(amplitudes: CVector, factors: Factors) -> Result<Self> {
        if amplitudes.len() != factors.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for factors {:?}",
                amplitudes.len(),
                factors.dims()
            )));
        }
        let err = (amplitudes.norm() - 1.0).abs();
        if err > tol::STATE_VALIDATION {
            return Err(Error::NotNormalized(err));
        }
        Ok(Self { amplitudes, factors })
    }

    pub(crate) fn from_parts(amplitudes: CVector, factors: Factors) -> Self {
        Self { amplitudes, factors }
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(amplitudes: CVector, factors: Factors) -> Result<Self> {
        let n = amplitudes.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized(1.0));
        }
        Self::new(amplitudes.unscale(n), factors)
    }

    /// Computational basis vector `|index>`.
    pub fn basis(index: usize, factors: Factors) -> Result<Self> {
        let d = factors.total_dim();
        if index >= d {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} in dimension {d}"
            )));
        }
        let mut v = CVector::zeros(d);
        v[index] = linalg::ONE;
        Ok(Self { amplitudes: v, factors })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn factors(&self) -> &Factors {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let factors = self.factors.concat(&other.factors)?;
        let d = self.dim() * other.dim();
        let mut v = CVector::zeros(d);
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in other.amplitudes.iter().enumerate() {
                v[i * other.dim() + j] = a * b;
            }
        }
        Ok(Self { amplitudes: v, factors })
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Reduced state of `|psi><psi|` on the named factors, computed as `M M^dagger`
    /// with `M` the amplitude matrix (kept index x traced index).
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let split = self.factors.split(keep)?;
        let m = CMatrix::from_fn(split.kept_offsets.len(), split.traced_offsets.len(), |a, t| {
            self.amplitudes[split.kept_offsets[a] + split.traced_offsets[t]]
        });
        Ok(DensityMatrix::from_parts(&m * m.adjoint(), split.kept))
    }

    pub fn permuted(&self, order: &[&str]) -> Result<PureState> {
        let perm = permutation(&self.factors, order)?;
        let map = index_map(&self.factors, &perm);
        let v = CVector::from_iterator(self.dim(), map.iter().map(|&k| self.amplitudes[k]));
        Ok(Self {
            amplitudes: v,
            factors: self.factors.select(&perm),
        })
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// Truncated coherent state together with the probability mass it discarded.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub state: PureState,
    /// `1 - sum_{n <= n_max} |c_n|^2` before renormalization.
    pub tail: f64,
}

/// `|alpha>` on Fock levels `0..=n_max`, renormalized after truncation.
pub fn coherent_state(alpha: Complex64, n_max: usize, label: &str, tail_tolerance: f64) -> Result<CoherentState> {
    if n_max < 1 {
        return Err(Error::DimensionMismatch("coherent state needs n_max >= 1".into()));
    }
    let mut amps = CVector::zeros(n_max + 1);
    amps[0] = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 1..=n_max {
        amps[n] = amps[n - 1] * alpha / (n as f64).sqrt();
    }
    let kept = amps.norm_squared();
    let tail = (1.0 - kept).max(0.0);
    if tail > tail_tolerance {
        return Err(Error::TruncationTail {
            tail,
            tolerance: tail_tolerance,
            n_max,
        });
    }
    let state = PureState::normalized(amps, Factors::single(label, n_max + 1)?)?;
    Ok(CoherentState { state, tail })
}

/// Purifies `rho` with an ancilla factor whose dimension is the numerical rank
/// of `rho`: `|psi> = sum_i sqrt(lambda_i) |v_i> (x) |i>`.
pub fn purify(rho: &DensityMatrix, ancilla: &str, rank_cutoff: f64) -> Result<PureState> {
    let eig = eig_hermitian(rho.data())?;
    let largest = eig.values.first().copied().unwrap_or(0.0);
    let kept: Vec<usize> = (0..eig.values.len())
        .filter(|&k| eig.values[k] > rank_cutoff * largest)
        .collect();
    let rank = kept.len();
    let d = rho.dim();
    let mut v = CVector::zeros(d * rank);
    for (slot, &k) in kept.iter().enumerate() {
        let weight = eig.values[k].sqrt();
        for r in 0..d {
            v[r * rank + slot] = eig.vectors[(r, k)] * weight;
        }
    }
    let factors = rho.factors().concat(&Factors::single(ancilla, rank)?)?;
    PureState::normalized(v, factors)
}
