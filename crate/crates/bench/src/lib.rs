//! Workloads shared by the benchmarks under `benches/`.

use dirgap_core::graph::{resolve_boundary, BoundaryRule, BoundarySpec, Graph};
use dirgap_core::ingest::{gen_grid, gen_random_connected, gen_tree, gen_whisker};

/// A graph with the boundary the benchmarks use for it.
pub struct Workload {
    pub name: String,
    pub graph: Graph,
    pub boundary: BoundarySpec,
}

fn workload(name: String, graph: Graph, rule: BoundaryRule<'_>) -> Workload {
    let boundary = resolve_boundary(&graph, &rule).expect("benchmark boundary");
    Workload { name, graph, boundary }
}

/// Square grids with perimeter boundary.
pub fn grid(side: usize) -> Workload {
    workload(format!("grid{side}x{side}"), gen_grid(side, side).expect("grid"), BoundaryRule::GridPerimeter)
}

/// Regular trees with leaf boundary.
pub fn tree(d: usize, depth: usize) -> Workload {
    workload(format!("tree{d}x{depth}"), gen_tree(d, depth).expect("tree"), BoundaryRule::Leaves)
}

pub fn whisker(core: usize, count: usize, len: usize) -> Workload {
    workload(
        format!("whisker{core}x{count}x{len}"),
        gen_whisker(core, count, len).expect("whisker"),
        BoundaryRule::DegreeOne,
    )
}

/// Connected random graph with the given seed, explicit empty boundary.
pub fn random(n: usize, p: f64, seed: u64) -> Graph {
    gen_random_connected(n, p, seed).expect("random graph")
}
