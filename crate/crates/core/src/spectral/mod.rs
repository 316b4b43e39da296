//! Normalized and Dirichlet Laplacians and their spectral gaps.

mod eigen;
mod matrix;

use std::borrow::Cow;

pub use eigen::{
    residual, smallest_eigenpairs, EigenMethod, EigenResult, EigenSolver, DEFAULT_DENSE_LIMIT, DEFAULT_TOL,
    SPECTRUM_SLACK,
};
pub use matrix::{build_dirichlet_laplacian, build_normalized_laplacian, SymmetricMatrix};
pub(crate) use eigen::dot;

use crate::error::{Error, Result};
use crate::graph::{BoundarySpec, Graph};

/// Eigenvalues at or below this magnitude count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// Smallest nonzero eigenvalue of the normalized Laplacian, i.e. the second
/// smallest on a connected graph. Disconnected graphs are reduced to their
/// largest component first.
pub fn spectral_gap(g: &Graph) -> Result<f64> {
    spectral_gap_with(g, &EigenSolver::default())
}

pub fn spectral_gap_with(g: &Graph, solver: &EigenSolver) -> Result<f64> {
    let g: Cow<'_, Graph> = if g.is_connected() {
        Cow::Borrowed(g)
    } else {
        log::info!("graph is disconnected; using its largest component");
        Cow::Owned(g.largest_component().graph)
    };
    if g.node_count() < 2 {
        return Err(Error::UnexpectedSpectrum("a single node has no spectral gap".into()));
    }
    let m = build_normalized_laplacian(&g)?;
    let r = solver.smallest(&m, 2)?;
    if r.values[0].abs() > ZERO_THRESHOLD {
        return Err(Error::UnexpectedSpectrum(format!("smallest eigenvalue {:e} is not zero", r.values[0])));
    }
    if r.values[1] <= ZERO_THRESHOLD {
        return Err(Error::UnexpectedSpectrum(format!("second eigenvalue {:e} is not positive", r.values[1])));
    }
    Ok(r.values[1])
}

/// Smallest eigenvalue of the Dirichlet Laplacian.
pub fn dirichlet_gap(g: &Graph, b: &BoundarySpec) -> Result<f64> {
    dirichlet_gap_with(g, b, &EigenSolver::default())
}

pub fn dirichlet_gap_with(g: &Graph, b: &BoundarySpec, solver: &EigenSolver) -> Result<f64> {
    let m = build_dirichlet_laplacian(g, b)?;
    Ok(solver.smallest(&m, 1)?.values[0])
}
