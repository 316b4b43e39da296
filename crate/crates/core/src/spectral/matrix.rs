use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{BoundarySpec, Graph};

/// A symmetric sparse operator in compressed-row form (both triangles
/// stored) with a map from matrix rows back to graph node ids.
#[derive(Debug, Clone)]
pub struct SymmetricMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    index_map: Vec<usize>,
    laplacian: bool,
}

impl SymmetricMatrix {
    /// Assembles a matrix from `(row, col, value)` entries. Each off-diagonal
    /// entry must be given once; its mirror is added automatically.
    pub fn from_triplets(dim: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
        for &(i, j, v) in triplets {
            if i >= dim || j >= dim {
                return Err(Error::InvalidParameter(format!("entry ({i}, {j}) outside {dim}x{dim} matrix")));
            }
            rows[i].push((j, v));
            if i != j {
                rows[j].push((i, v));
            }
        }
        Ok(Self::from_rows(rows, (0..dim).collect(), false))
    }

    fn from_rows(rows: Vec<Vec<(usize, f64)>>, index_map: Vec<usize>, laplacian: bool) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                match cols.last() {
                    Some(&last) if last == c && cols.len() > row_ptr[row_ptr.len() - 1] => {
                        *vals.last_mut().unwrap() += v;
                    }
                    _ => {
                        cols.push(c);
                        vals.push(v);
                    }
                }
            }
            row_ptr.push(cols.len());
        }
        SymmetricMatrix { dim, row_ptr, cols, vals, index_map, laplacian }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Graph node id for each matrix row.
    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    /// True for matrices assembled from a graph Laplacian, whose spectrum
    /// lies in `[0, 2]`.
    pub fn is_laplacian(&self) -> bool {
        self.laplacian
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()].iter().copied().zip(self.vals[range].iter().copied())
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(pos) => self.vals[range.start + pos],
            Err(_) => 0.0,
        }
    }

    /// `y = A x`, accumulated serially in row order.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        for (i, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[p] * x[self.cols[p]];
            }
            *out = acc;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        self.apply(x, &mut y);
        y
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }
}

/// Normalized Laplacian: 1 on the diagonal, `-1/sqrt(d_x d_y)` for each
/// edge.
pub fn build_normalized_laplacian(g: &Graph) -> Result<SymmetricMatrix> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let all: Vec<usize> = g.nodes().collect();
    restricted_laplacian(g, &all)
}

/// Rows and columns of the normalized Laplacian for the interior nodes.
/// Normalization keeps full-graph degrees, so edges into the boundary still
/// count.
pub fn build_dirichlet_laplacian(g: &Graph, b: &BoundarySpec) -> Result<SymmetricMatrix> {
    let interior: Vec<usize> = g.nodes().filter(|&v| !b.is_boundary(v)).collect();
    if interior.is_empty() {
        return Err(Error::NoInterior);
    }
    restricted_laplacian(g, &interior)
}

fn restricted_laplacian(g: &Graph, keep: &[usize]) -> Result<SymmetricMatrix> {
    if let Some(&v) = keep.iter().find(|&&v| g.degree(v) == 0) {
        return Err(Error::IsolatedNode(v));
    }
    let mut local = vec![usize::MAX; g.node_count()];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let rows = keep
        .iter()
        .map(|&u| {
            let du = g.degree(u) as f64;
            let mut row = vec![(local[u], 1.0)];
            for &v in g.neighbors(u) {
                if local[v] != usize::MAX {
                    row.push((local[v], -1.0 / (du * g.degree(v) as f64).sqrt()));
                }
            }
            row
        })
        .collect();
    Ok(SymmetricMatrix::from_rows(rows, keep.to_vec(), true))
}
