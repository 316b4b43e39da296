//! Smallest eigenpairs of symmetric sparse matrices.
//!
//! Small problems go through a dense symmetric decomposition. Larger ones
//! use thick-restart Lanczos with full reorthogonalization. Both paths are
//! serial and seeded, so results are bitwise reproducible.
//!
//! Like any single-vector Krylov method, the Lanczos path sees only one
//! direction of each repeated eigenvalue. The smallest `k` *distinct* parts
//! of the spectrum are found reliably; extra copies of a repeated
//! eigenvalue may be skipped.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_DENSE_LIMIT: usize = 2048;
/// Slack allowed outside `[0, 2]` for Laplacian spectra.
pub const SPECTRUM_SLACK: f64 = 1e-9;

const START_SEED: u64 = 0x5eed_1a4c;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    /// Dense up to `dense_limit`, Lanczos above.
    Auto,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone)]
pub struct EigenSolver {
    /// Bound on `‖A x - λ x‖₂` for every returned pair.
    pub tol: f64,
    pub method: EigenMethod,
    pub dense_limit: usize,
    /// Matrix applications allowed per unit of dimension.
    pub budget_per_dim: usize,
    /// Maximum Krylov basis size before a thick restart.
    pub basis_size: usize,
}

impl Default for EigenSolver {
    fn default() -> Self {
        EigenSolver {
            tol: DEFAULT_TOL,
            method: EigenMethod::Auto,
            dense_limit: DEFAULT_DENSE_LIMIT,
            budget_per_dim: 10,
            basis_size: 400,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unit eigenvectors, one per value, indexed like the matrix rows.
    pub vectors: Vec<Vec<f64>>,
    /// Explicit `‖A x - λ x‖₂` per pair.
    pub residuals: Vec<f64>,
    pub tol: f64,
    pub method: EigenMethod,
    pub matvecs: usize,
}

impl EigenResult {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `|x_i · x_j - δ_ij|` over all returned pairs.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(a, b) - target).abs());
            }
        }
        worst
    }
}

/// The `k` smallest eigenpairs with the default solver settings.
pub fn smallest_eigenpairs(m: &SymmetricMatrix, k: usize, tol: f64) -> Result<EigenResult> {
    EigenSolver { tol, ..EigenSolver::default() }.smallest(m, k)
}

impl EigenSolver {
    pub fn with_tol(tol: f64) -> Self {
        EigenSolver { tol, ..Self::default() }
    }

    pub fn smallest(&self, m: &SymmetricMatrix, k: usize) -> Result<EigenResult> {
        let n = m.dim();
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("requested {k} eigenpairs of a {n}x{n} matrix")));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", self.tol)));
        }
        let method = match self.method {
            EigenMethod::Auto if n <= self.dense_limit => EigenMethod::Dense,
            EigenMethod::Auto => EigenMethod::Lanczos,
            other => other,
        };
        let (values, vectors, matvecs) = match method {
            EigenMethod::Lanczos => self.lanczos(m, k)?,
            _ => dense(m, k),
        };
        let residuals: Vec<f64> = values.iter().zip(&vectors).map(|(&l, x)| residual(m, l, x)).collect();
        let result = EigenResult { values, vectors, residuals, tol: self.tol, method, matvecs };
        let worst = result.max_residual();
        if worst > self.tol {
            return Err(Error::NotConverged { matvecs, residual: worst });
        }
        if m.is_laplacian() {
            if let Some(&bad) = result.values.iter().find(|&&l| !(-SPECTRUM_SLACK..=2.0 + SPECTRUM_SLACK).contains(&l)) {
                return Err(Error::UnexpectedSpectrum(format!("eigenvalue {bad} outside [0, 2]")));
            }
        }
        Ok(result)
    }

    fn lanczos(&self, m: &SymmetricMatrix, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>, usize)> {
        let n = m.dim();
        let cap = self.basis_size.max(2 * k + 20).min(n);
        let keep = (k + (cap - k) / 2).min(cap - 1).max(k);
        let budget = self.budget_per_dim.saturating_mul(n).max(cap);
        let check_every = 20;

        let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
        let mut basis: Vec<Vec<f64>> = vec![random_unit(n, &mut rng, &[])];
        let mut proj = DMatrix::<f64>::zeros(cap, cap);
        let mut matvecs = 0;
        let mut w = vec![0.0; n];
        let mut last_residual = f64::INFINITY;

        loop {
            // Expand the basis one vector at a time. `tail` holds the
            // unnormalized continuation A v_last - V h once the basis is full.
            let mut tail_norm;
            let tail = loop {
                let j = basis.len() - 1;
                m.apply(&basis[j], &mut w);
                matvecs += 1;
                let coeffs = orthogonalize(&basis, &mut w);
                for (i, &c) in coeffs.iter().enumerate() {
                    proj[(i, j)] = c;
                    proj[(j, i)] = c;
                }
                tail_norm = norm(&w);
                let full = basis.len() == cap;
                let due = full || (basis.len() >= k && basis.len().is_multiple_of(check_every));
                if due {
                    let (theta, y) = ritz(&proj, basis.len());
                    let estimate = (0..k).map(|i| tail_norm * y[(basis.len() - 1, i)].abs()).fold(0.0, f64::max);
                    if estimate <= 0.5 * self.tol || basis.len() == n {
                        let vectors = combine(&basis, &y, k);
                        let values = theta[..k].to_vec();
                        last_residual = values.iter().zip(&vectors).map(|(&l, x)| residual(m, l, x)).fold(0.0, f64::max);
                        if last_residual <= self.tol || basis.len() == n {
                            return Ok((values, vectors, matvecs));
                        }
                    } else {
                        last_residual = estimate;
                    }
                    if full {
                        break w.clone();
                    }
                }
                if matvecs >= budget {
                    return Err(Error::NotConverged { matvecs, residual: last_residual });
                }
                let next = if tail_norm <= 1e-10 {
                    // Invariant subspace: continue from a fresh direction.
                    random_unit(n, &mut rng, &basis)
                } else {
                    proj[(j + 1, j)] = tail_norm;
                    proj[(j, j + 1)] = tail_norm;
                    w.iter().map(|x| x / tail_norm).collect()
                };
                basis.push(next);
            };
            if matvecs >= budget {
                return Err(Error::NotConverged { matvecs, residual: last_residual });
            }

            // Thick restart: keep the `keep` smallest Ritz vectors and the
            // normalized tail.
            let size = basis.len();
            let (theta, y) = ritz(&proj, size);
            let kept = combine(&basis, &y, keep);
            proj.fill(0.0);
            for (i, &t) in theta[..keep].iter().enumerate() {
                proj[(i, i)] = t;
            }
            basis = kept;
            let next = if tail_norm <= 1e-10 {
                random_unit(n, &mut rng, &basis)
            } else {
                let mut v: Vec<f64> = tail.iter().map(|x| x / tail_norm).collect();
                // Re-orthogonalize against the rotated basis to absorb drift.
                orthogonalize(&basis, &mut v);
                let nv = norm(&v);
                v.iter_mut().for_each(|x| *x /= nv);
                v
            };
            basis.push(next);
        }
    }
}

fn dense(m: &SymmetricMatrix, k: usize) -> (Vec<f64>, Vec<Vec<f64>>, usize) {
    let eig = SymmetricEigen::new(m.to_dense());
    let mut order: Vec<usize> = (0..m.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order[..k].iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order[..k].iter().map(|&i| eig.eigenvectors.column(i).iter().copied().collect()).collect();
    (values, vectors, 0)
}

/// Ascending eigen-decomposition of the leading `size x size` block.
fn ritz(proj: &DMatrix<f64>, size: usize) -> (Vec<f64>, DMatrix<f64>) {
    let block = proj.view((0, 0), (size, size)).into_owned();
    let eig = SymmetricEigen::new(block);
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let theta = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let y = DMatrix::from_fn(size, size, |r, c| eig.eigenvectors[(r, order[c])]);
    (theta, y)
}

/// First `count` Ritz vectors `V y_i`.
fn combine(basis: &[Vec<f64>], y: &DMatrix<f64>, count: usize) -> Vec<Vec<f64>> {
    let n = basis[0].len();
    (0..count)
        .map(|c| {
            let mut x = vec![0.0; n];
            for (j, v) in basis.iter().enumerate() {
                let coef = y[(j, c)];
                x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += coef * vi);
            }
            x
        })
        .collect()
}

/// Two passes of classical Gram-Schmidt; returns the accumulated projection
/// coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut total = vec![0.0; basis.len()];
    for _ in 0..2 {
        let coeffs: Vec<f64> = basis.iter().map(|v| dot(v, w)).collect();
        for (v, &c) in basis.iter().zip(&coeffs) {
            w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= c * vi);
        }
        total.iter_mut().zip(&coeffs).for_each(|(t, c)| *t += c);
    }
    total
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng, against: &[Vec<f64>]) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    orthogonalize(against, &mut v);
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    v
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `‖A x - λ x‖₂`.
pub fn residual(m: &SymmetricMatrix, lambda: f64, x: &[f64]) -> f64 {
    let ax = m.mul_vec(x);
    ax.iter().zip(x).map(|(a, xi)| (a - lambda * xi).powi(2)).sum::<f64>().sqrt()
}
