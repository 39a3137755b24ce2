//! Test-only helpers: seeded random states and a brute-force discord oracle
//! that shares no code with the library's optimizer or objective.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qdiscord::linalg::CMatrix;
use qdiscord::state::{DensityMatrix, Factors, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal deviate by Box-Muller.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub fn ginibre<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Hilbert-Schmidt random mixed state `G G^dagger / tr`.
pub fn random_density<R: Rng>(rng: &mut R, factors: Factors) -> DensityMatrix {
    let d = factors.total_dim();
    let g = ginibre(rng, d, d);
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    let m = m.unscale(tr);
    let m = (&m + m.adjoint()).scale(0.5);
    DensityMatrix::new(m, factors).unwrap()
}

/// Random state of a given rank (`G G^dagger` with `G` of size d x rank).
pub fn random_density_of_rank<R: Rng>(rng: &mut R, factors: Factors, rank: usize) -> DensityMatrix {
    let d = factors.total_dim();
    let g = ginibre(rng, d, rank);
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    let m = m.unscale(tr);
    let m = (&m + m.adjoint()).scale(0.5);
    DensityMatrix::new(m, factors).unwrap()
}

/// Haar-random pure state.
pub fn random_pure<R: Rng>(rng: &mut R, factors: Factors) -> PureState {
    let d = factors.total_dim();
    let v = DVector::from_fn(d, |_, _| complex_gaussian(rng));
    PureState::normalized(v, factors).unwrap()
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    let qr = ginibre(rng, d, d).qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q.clone();
    for k in 0..d {
        let phase = r[(k, k)] / r[(k, k)].norm();
        for row in 0..d {
            u[(row, k)] *= phase;
        }
    }
    u
}

pub fn random_hermitian<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    (&g + g.adjoint()).scale(0.5)
}

fn xlog2x(x: f64) -> f64 {
    if x > 1e-14 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Entropy in bits of a 2x2 Hermitian PSD block given by its entries.
fn entropy2(a: f64, d: f64, b: Complex64) -> f64 {
    let tr = a + d;
    if tr <= 1e-12 {
        return 0.0;
    }
    let (a, d, b) = (a / tr, d / tr, b / tr);
    let disc = ((a - d) * (a - d) / 4.0 + b.norm_sqr()).sqrt();
    let mean = (a + d) / 2.0;
    xlog2x(mean + disc) + xlog2x(mean - disc)
}

/// Two-qubit state with S first, as plain row-major complex entries.
pub struct TwoQubitOracle {
    rho: [[Complex64; 4]; 4],
}

impl TwoQubitOracle {
    pub fn new(rho: &DensityMatrix, measured: &str) -> Self {
        let labels = rho.factors().labels();
        assert_eq!(rho.factors().dims(), vec![2, 2]);
        let swap = labels[0] != measured;
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        let idx = |k: usize| if swap { (k % 2) * 2 + k / 2 } else { k };
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = rho.data()[(idx(r), idx(c))];
            }
        }
        Self { rho: out }
    }

    /// `sum_j p_j S[rho_E|j]` in bits for the basis at Bloch angles (theta, phi).
    pub fn measured_entropy(&self, theta: f64, phi: f64) -> f64 {
        let (s, c) = (0.5 * theta).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        let bases = [[Complex64::new(c, 0.0), e * s], [-e.conj() * s, Complex64::new(c, 0.0)]];
        let mut total = 0.0;
        for u in bases {
            // block (e, e') = sum_{s,t} conj(u_s) u_t rho[(s,e),(t,e')]
            let mut blk = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (e1, row) in blk.iter_mut().enumerate() {
                for (e2, entry) in row.iter_mut().enumerate() {
                    for s_ in 0..2 {
                        for t_ in 0..2 {
                            *entry += u[s_].conj() * u[t_] * self.rho[2 * s_ + e1][2 * t_ + e2];
                        }
                    }
                }
            }
            let p = blk[0][0].re + blk[1][1].re;
            if p > 1e-12 {
                total += p * entropy2(blk[0][0].re, blk[1][1].re, blk[0][1]);
            }
        }
        total
    }

    pub fn entropy_measured_marginal(&self) -> f64 {
        let a = self.rho[0][0].re + self.rho[1][1].re;
        let d = self.rho[2][2].re + self.rho[3][3].re;
        let b = self.rho[0][2] + self.rho[1][3];
        entropy2(a, d, b)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GridMinimum {
    /// Best value on the 720 x 1440 grid alone.
    pub grid: f64,
    /// After brute-force zooming around the grid minimum.
    pub refined: f64,
}

/// Exhaustive minimum of the measured conditional entropy over a
/// `n_theta x n_phi` grid (theta endpoints included), followed by three rounds
/// of 41 x 41 brute-force zoom around the incumbent.
pub fn brute_force_min(oracle: &TwoQubitOracle, n_theta: usize, n_phi: usize) -> GridMinimum {
    use std::f64::consts::{PI, TAU};
    let dt = PI / (n_theta - 1) as f64;
    let dp = TAU / n_phi as f64;
    let (mut best, mut bt, mut bp) = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n_theta {
        let theta = i as f64 * dt;
        for j in 0..n_phi {
            let phi = j as f64 * dp;
            let v = oracle.measured_entropy(theta, phi);
            if v < best {
                (best, bt, bp) = (v, theta, phi);
            }
        }
    }
    let grid = best;
    let (mut ht, mut hp) = (dt, dp);
    for _ in 0..3 {
        let (ct, cp) = (bt, bp);
        for a in -20i32..=20 {
            for b in -20i32..=20 {
                let theta = (ct + a as f64 * ht / 10.0).clamp(0.0, PI);
                let phi = cp + b as f64 * hp / 10.0;
                let v = oracle.measured_entropy(theta, phi);
                if v < best {
                    (best, bt, bp) = (v, theta, phi);
                }
            }
        }
        ht /= 10.0;
        hp /= 10.0;
    }
    GridMinimum { grid, refined: best }
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on the real
/// 2d x 2d embedding `[[Re, -Im], [Im, Re]]`; each eigenvalue appears twice
/// there, so every other value is returned.
pub fn jacobi_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let d = m.nrows();
    let n = 2 * d;
    let mut a = DMatrix::<f64>::zeros(n, n);
    for r in 0..d {
        for c in 0..d {
            let z = m[(r, c)];
            a[(r, c)] = z.re;
            a[(r + d, c + d)] = z.re;
            a[(r, c + d)] = -z.im;
            a[(r + d, c)] = z.im;
        }
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|k| a[(k, k)]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values.into_iter().step_by(2).collect()
}

pub fn entropy_bits(values: &[f64]) -> f64 {
    values.iter().map(|&v| xlog2x(v)).sum()
}
