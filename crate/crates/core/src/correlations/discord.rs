//! Quantum discord with rank-1 projective measurements on a qubit.
//!
//! `D_S[rho] = S[rho_S] + min_{Pi} sum_j p_j S[rho_{E|j}] - S[rho]`, the
//! minimum taken over qubit bases parametrized by Bloch angles. The search is
//! a coarse grid over the sphere followed by simplex descent from the best
//! grid local minima.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, eigvalsh, CMatrix};
use crate::optimize::{nelder_mead, SimplexOptions};
use crate::state::DensityMatrix;
use crate::tol;

use super::entropy::{entropy_of_spectrum, von_neumann_entropy, LogBase};

/// Orthonormal qubit basis `{|u>, |u_perp>}` with
/// `|u> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// Canonical angles: `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        Self {
            theta,
            phi: phi.rem_euclid(TAU),
        }
    }

    pub fn vectors(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let phase = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), phase * s],
            [-phase.conj() * s, Complex64::new(c, 0.0)],
        ]
    }

    pub fn projectors(&self) -> [CMatrix; 2] {
        self.vectors()
            .map(|v| CMatrix::from_fn(2, 2, |r, c| v[r] * v[c].conj()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordOptions {
    pub log_base: LogBase,
    /// Grid points in theta over `[0, pi]` (endpoints included).
    pub grid_theta: usize,
    /// Grid points in phi over `[0, 2 pi)`.
    pub grid_phi: usize,
    /// Number of grid local minima used as simplex starting points.
    pub starts: usize,
    pub angle_tolerance: f64,
    pub value_tolerance: f64,
    pub max_evals: usize,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self {
            log_base: LogBase::Two,
            grid_theta: 24,
            grid_phi: 48,
            starts: 4,
            angle_tolerance: 1e-8,
            value_tolerance: 1e-10,
            max_evals: 4000,
        }
    }
}

impl DiscordOptions {
    pub fn with_base(log_base: LogBase) -> Self {
        Self {
            log_base,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscordResult {
    pub value: f64,
    pub optimal_basis: MeasurementBasis,
    pub branch_probabilities: [f64; 2],
    pub optimizer_evals: usize,
}

/// Outcome of one measurement on the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredEntropy {
    /// `sum_j p_j S[rho_{E|j}]`.
    pub conditional: f64,
    pub probabilities: [f64; 2],
}

/// A bipartite state prepared for repeated measured-entropy evaluations.
///
/// The state is stored as a factor `rho = W W^dagger` (W of size d x rank),
/// split into the rows with the measured qubit in `|0>` and `|1>`. The
/// unnormalized post-measurement state of the rest is `X X^dagger` with
/// `X = conj(u_0) W_0 + conj(u_1) W_1`, whose nonzero spectrum is that of the
/// smaller of `X X^dagger` and `X^dagger X`.
#[derive(Debug, Clone)]
pub struct DiscordProblem {
    upper: CMatrix,
    lower: CMatrix,
    entropy_measured: f64,
    entropy_joint: f64,
    base: LogBase,
}

impl DiscordProblem {
    pub fn new(rho: &DensityMatrix, measured: &str, base: LogBase) -> Result<Self> {
        if rho.factors().dim_of(measured)? != 2 {
            return Err(Error::DimensionMismatch(format!(
                "measured factor `{measured}` must be a qubit, has dimension {}",
                rho.factors().dim_of(measured)?
            )));
        }
        if rho.factors().len() < 2 {
            return Err(Error::DimensionMismatch("discord needs at least two factors".into()));
        }
        let mut order = vec![measured];
        order.extend(rho.factors().labels().into_iter().filter(|l| *l != measured));
        let rho = rho.permuted(&order)?;
        let eig = eig_hermitian(rho.data())?;
        let kept: Vec<usize> = (0..eig.values.len())
            .filter(|&k| eig.values[k] > tol::ENTROPY_EIGEN_FLOOR)
            .collect();
        let rest = rho.dim() / 2;
        let w = CMatrix::from_fn(rho.dim(), kept.len(), |r, k| {
            eig.vectors[(r, kept[k])] * eig.values[kept[k]].sqrt()
        });
        let entropy_joint = entropy_of_spectrum(&eig.values, base);
        let marginal = rho.partial_trace(&[measured])?;
        Ok(Self {
            upper: w.rows(0, rest).into_owned(),
            lower: w.rows(rest, rest).into_owned(),
            entropy_measured: von_neumann_entropy(&marginal, base),
            entropy_joint,
            base,
        })
    }

    pub fn entropy_measured(&self) -> f64 {
        self.entropy_measured
    }

    pub fn entropy_joint(&self) -> f64 {
        self.entropy_joint
    }

    pub fn measured_entropy(&self, basis: &MeasurementBasis) -> MeasuredEntropy {
        let mut conditional = 0.0;
        let mut probabilities = [0.0; 2];
        for (j, u) in basis.vectors().iter().enumerate() {
            let x = &self.upper * u[0].conj() + &self.lower * u[1].conj();
            let gram = if x.ncols() <= x.nrows() {
                x.adjoint() * &x
            } else {
                &x * x.adjoint()
            };
            let spectrum = eigvalsh(&gram);
            let p: f64 = spectrum.iter().sum::<f64>().max(0.0);
            probabilities[j] = p;
            if p < tol::BRANCH_PROBABILITY {
                continue;
            }
            let normalized: Vec<f64> = spectrum.iter().map(|v| v / p).collect();
            conditional += p * entropy_of_spectrum(&normalized, self.base);
        }
        let total: f64 = probabilities.iter().sum();
        if total > 0.0 {
            probabilities.iter_mut().for_each(|p| *p /= total);
        }
        MeasuredEntropy {
            conditional,
            probabilities,
        }
    }

    /// `S[rho_S] + measured conditional entropy - S[rho]` for one basis.
    pub fn objective(&self, basis: &MeasurementBasis) -> f64 {
        self.entropy_measured + self.measured_entropy(basis).conditional - self.entropy_joint
    }

    pub fn minimize(&self, opts: &DiscordOptions) -> DiscordResult {
        let nt = opts.grid_theta.max(2);
        let np = opts.grid_phi.max(1);
        let theta_step = PI / (nt - 1) as f64;
        let phi_step = TAU / np as f64;
        let mut evals = 0usize;
        let grid: Vec<Vec<f64>> = (0..nt)
            .map(|i| {
                (0..np)
                    .map(|j| {
                        evals += 1;
                        self.measured_entropy(&MeasurementBasis::new(i as f64 * theta_step, j as f64 * phi_step))
                            .conditional
                    })
                    .collect()
            })
            .collect();

        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..nt {
            // all phi coincide at the poles
            let js = if i == 0 || i == nt - 1 { 0..1 } else { 0..np };
            for j in js {
                let v = grid[i][j];
                let mut is_min = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        let ii = i as i64 + di;
                        if (di == 0 && dj == 0) || ii < 0 || ii >= nt as i64 {
                            continue;
                        }
                        let jj = (j as i64 + dj).rem_euclid(np as i64) as usize;
                        if grid[ii as usize][jj] < v {
                            is_min = false;
                        }
                    }
                }
                if is_min {
                    candidates.push((v, i, j));
                }
            }
        }
        if candidates.is_empty() {
            // flat ties everywhere; fall back to the global grid minimum
            let (mut best, mut bi, mut bj) = (f64::INFINITY, 0, 0);
            for (i, row) in grid.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v < best {
                        (best, bi, bj) = (v, i, j);
                    }
                }
            }
            candidates.push((best, bi, bj));
        }
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
        candidates.truncate(opts.starts.max(1));

        let simplex = SimplexOptions {
            x_tolerance: opts.angle_tolerance,
            f_tolerance: opts.value_tolerance,
            max_evals: opts.max_evals,
        };
        let (mut best_value, mut best_basis) = {
            let (v, i, j) = candidates[0];
            (v, MeasurementBasis::new(i as f64 * theta_step, j as f64 * phi_step))
        };
        for &(_, i, j) in &candidates {
            let start = [i as f64 * theta_step, j as f64 * phi_step];
            let run = nelder_mead(
                |x| self.measured_entropy(&MeasurementBasis::new(x[0], x[1])).conditional,
                start,
                [0.5 * theta_step, 0.5 * phi_step],
                simplex,
            );
            evals += run.evals;
            if run.value < best_value {
                best_value = run.value;
                best_basis = MeasurementBasis::new(run.x[0], run.x[1]);
            }
        }

        let measured = self.measured_entropy(&best_basis);
        let mut value = self.entropy_measured + measured.conditional - self.entropy_joint;
        if (-tol::DISCORD_CLAMP..0.0).contains(&value) {
            value = 0.0;
        }
        DiscordResult {
            value,
            optimal_basis: best_basis,
            branch_probabilities: measured.probabilities,
            optimizer_evals: evals,
        }
    }
}

/// Discord of `rho` with projective measurements on the qubit factor `measured`.
pub fn discord(rho: &DensityMatrix, measured: &str, opts: &DiscordOptions) -> Result<DiscordResult> {
    Ok(DiscordProblem::new(rho, measured, opts.log_base)?.minimize(opts))
}

/// `max |[rho, rho_measured (x) I]|`. Zero discord forces this to vanish, so a
/// strictly positive value certifies nonzero discord.
pub fn zero_discord_witness(rho: &DensityMatrix, measured: &str) -> Result<f64> {
    let marginal = rho.partial_trace(&[measured])?;
    let lifted = rho.embed(measured, marginal.data())?;
    Ok(linalg::max_abs(&linalg::commutator(rho.data(), &lifted)))
}
