//! Closed-form Dirichlet spectrum of truncated `d`-regular trees.
//!
//! The tree has interior depth `L` and its leaves, at depth `L + 1`, form
//! the boundary. Every eigenvalue has the form
//! `λ = 1 - (2/d)·sqrt(d-1)·cos α` with `α ∈ (0, π)`.
//!
//! * Depth-symmetric eigenvectors (constant on each level) give `L + 1`
//!   values of `α`, the roots of
//!   `d·sin α·cos((L+1)α) + (d-2)·cos α·sin((L+1)α) = 0`.
//!   This is the cross-multiplied form of
//!   `tan α / tan((L+1)α) = -(d-2)/d`. Unlike the tangent ratio it has no
//!   poles, and it keeps the root `α = π/2` that the ratio form drops when
//!   `L` is even.
//! * Eigenvectors vanishing down to level `k` and antisymmetric across the
//!   children of a level-`k` node give `α = jπ/(L+1-k)` for `j = 1..L-k`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `1 - (2/d)·sqrt(d-1)`, the spectral gap of the infinite `d`-regular tree.
pub fn infinite_tree_gap(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("tree degree must be at least 2, got {d}")));
    }
    Ok(eigenvalue_from_angle(d, 0.0))
}

/// `1 - (2/d)·sqrt(d-1)·cos α`.
pub fn eigenvalue_from_angle(d: usize, alpha: f64) -> f64 {
    let d = d as f64;
    1.0 - 2.0 / d * (d - 1.0).sqrt() * alpha.cos()
}

/// Pole-free eigenvalue condition for depth-symmetric eigenvectors.
pub fn symmetric_condition(d: usize, depth: usize, alpha: f64) -> f64 {
    let d = d as f64;
    let m = (depth + 1) as f64;
    d * alpha.sin() * (m * alpha).cos() + (d - 2.0) * alpha.cos() * (m * alpha).sin()
}

fn check_params(d: usize, depth: usize) -> Result<()> {
    if d < 3 || depth < 1 {
        return Err(Error::InvalidParameter(format!("need d >= 3 and L >= 1, got d={d}, L={depth}")));
    }
    Ok(())
}

/// The `L + 1` roots in `(0, π)` of [`symmetric_condition`], ascending.
pub fn symmetric_family_roots(d: usize, depth: usize) -> Result<Vec<f64>> {
    check_params(d, depth)?;
    let expected = depth + 1;
    let f = |a: f64| symmetric_condition(d, depth, a);
    let mut found = 0;
    // Refine the scan grid a few times before giving up.
    for refinement in 0..4 {
        let steps = (64 * (depth + 1)) << refinement;
        let mut roots = Vec::with_capacity(expected);
        let mut lo = PI / steps as f64;
        let mut f_lo = f(lo);
        for i in 2..steps {
            let hi = PI * i as f64 / steps as f64;
            let f_hi = f(hi);
            if f_lo == 0.0 {
                roots.push(lo);
            } else if f_lo * f_hi < 0.0 {
                roots.push(bisect(&f, lo, hi, f_lo));
            }
            lo = hi;
            f_lo = f_hi;
        }
        if f_lo == 0.0 {
            roots.push(lo);
        }
        if roots.len() == expected {
            return Ok(roots);
        }
        found = roots.len();
    }
    Err(Error::RootBracketing { found, expected })
}

/// Bisects down to adjacent floating-point numbers.
fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Dirichlet spectral gap of the tree with interior depth `L`, from the
/// smallest symmetric root.
pub fn dirichlet_gap_analytic(d: usize, depth: usize) -> Result<f64> {
    let roots = symmetric_family_roots(d, depth)?;
    Ok(eigenvalue_from_angle(d, roots[0]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorEigenvalue {
    pub lambda: f64,
    pub alpha: f64,
    /// Level of the node whose children carry the antisymmetric pattern.
    pub level: usize,
}

/// Eigenvalues of the eigenvectors that vanish down to level `k`, for
/// `k = 0..L-1`, each with `α = jπ/(L+1-k)`, `j = 1..L-k`.
pub fn sector_family_eigenvalues(d: usize, depth: usize) -> Result<Vec<SectorEigenvalue>> {
    check_params(d, depth)?;
    let mut out = Vec::new();
    for level in 0..depth {
        let m = (depth + 1 - level) as f64;
        for j in 1..depth + 1 - level {
            let alpha = j as f64 * PI / m;
            out.push(SectorEigenvalue { lambda: eigenvalue_from_angle(d, alpha), alpha, level });
        }
    }
    Ok(out)
}

/// Number of independent eigenvectors behind each sector eigenvalue at
/// `level`: one antisymmetric pattern per level-`level` node per extra
/// child, i.e. `d - 1` at the root and `d·(d-1)^(k-1)·(d-2)` below it.
pub fn sector_multiplicity(d: usize, level: usize) -> usize {
    if level == 0 {
        d - 1
    } else {
        d * (d - 1).pow(level as u32 - 1) * (d - 2)
    }
}

/// Interior node count `1 + d·sum_{i<L} (d-1)^i` of the tree with interior
/// depth `L`.
pub fn interior_node_count(d: usize, depth: usize) -> usize {
    1 + (0..depth).map(|i| d * (d - 1).pow(i as u32)).sum::<usize>()
}

/// Both eigenvalue families for one tree.
#[derive(Debug, Clone)]
pub struct TreeSpectrumResult {
    pub d: usize,
    pub depth: usize,
    pub symmetric_alphas: Vec<f64>,
    /// Eigenvalues of the symmetric family, ascending.
    pub eigenvalues: Vec<f64>,
    /// `sector_alphas[k]` holds `jπ/(L+1-k)` for `j = 1..L-k`.
    pub sector_alphas: Vec<Vec<f64>>,
}

impl TreeSpectrumResult {
    pub fn compute(d: usize, depth: usize) -> Result<Self> {
        let symmetric_alphas = symmetric_family_roots(d, depth)?;
        let eigenvalues = symmetric_alphas.iter().map(|&a| eigenvalue_from_angle(d, a)).collect();
        let mut sector_alphas = vec![Vec::new(); depth];
        for s in sector_family_eigenvalues(d, depth)? {
            sector_alphas[s.level].push(s.alpha);
        }
        Ok(TreeSpectrumResult { d, depth, symmetric_alphas, eigenvalues, sector_alphas })
    }

    /// Every eigenvalue with multiplicity, ascending; its length equals the
    /// interior node count.
    pub fn full_spectrum(&self) -> Vec<f64> {
        let mut all = self.eigenvalues.clone();
        for (level, alphas) in self.sector_alphas.iter().enumerate() {
            let mult = sector_multiplicity(self.d, level);
            for &a in alphas {
                all.extend(std::iter::repeat_n(eigenvalue_from_angle(self.d, a), mult));
            }
        }
        all.sort_by(f64::total_cmp);
        all
    }
}
