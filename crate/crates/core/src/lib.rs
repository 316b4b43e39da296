//! Spectral analysis of network graphs under Dirichlet boundary conditions.
//!
//! The crate computes traditional and Dirichlet spectral gaps of the
//! normalized Laplacian, Cheeger ratios and their brute-force minima, the
//! analytic Dirichlet spectrum of truncated `d`-regular trees, and compares
//! Dirichlet against traditional spectral clustering over every cut size.
//!
//! Module map:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | [`Graph`], [`NodeSet`], boundary policies, distances |
//! | [`ingest`] | edge-list I/O, generators, CSV output |
//! | [`spectral`] | Laplacian assembly, eigensolvers, spectral gaps |
//! | [`cheeger`] | Cheeger ratios and brute-force constants |
//! | [`tree`] | closed-form spectra of truncated regular trees |
//! | [`clustering`] | embeddings, 2-means, sweeps, comparison reports |

pub mod cheeger;
pub mod clustering;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod spectral;
pub mod tree;

pub use error::{Error, ErrorKind, Result};
pub use graph::{BoundaryPolicy, BoundaryRule, BoundarySpec, CleaningReport, Graph, NodeSet, Subgraph};
pub use spectral::{EigenMethod, EigenResult, EigenSolver, SymmetricMatrix};
