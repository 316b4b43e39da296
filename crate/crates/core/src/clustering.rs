//! Dirichlet and traditional spectral clustering with full cut-size sweeps.
//!
//! Both methods embed nodes by their components in the eigenvectors of the
//! two smallest eigenvalues, split the embedding with 2-means, and rank
//! nodes by how much closer they lie to one center than the other. Every
//! prefix of the ranking is a candidate cut. The Dirichlet method ranks only
//! interior nodes and then reattaches boundary nodes to the side their
//! interior neighbours favour.

use crate::error::{Error, Result};
use crate::graph::{components, BoundarySpec, Graph, NodeSet};
use crate::cheeger::cheeger_ratio;
use crate::ingest::{Cell, CsvTable};
use crate::spectral::{build_dirichlet_laplacian, dot, build_normalized_laplacian, EigenSolver, SymmetricMatrix};

const LLOYD_ROUNDS: usize = 100;
const SIGN_EPS: f64 = 1e-12;
// Projections shorter than this are treated as zero when fixing a basis.
const CANONICAL_EPS: f64 = 1e-6;

/// Two-dimensional spectral coordinates for the nodes covered by a matrix.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// Graph node id per point, in matrix row order.
    pub nodes: Vec<usize>,
    pub degrees: Vec<usize>,
    pub coords: Vec<[f64; 2]>,
    pub eigenvalues: [f64; 2],
}

pub fn embed(g: &Graph, m: &SymmetricMatrix) -> Result<Embedding> {
    embed_with(g, m, &EigenSolver::default())
}

/// Coordinates are raw eigenvector components. Each eigenvector is flipped
/// so that its first nonzero component is positive.
///
/// When an eigenvalue among the two smallest is repeated, any rotation of its
/// eigenspace is an equally valid answer and solvers differ in which one they
/// return. The basis is then fixed canonically: unit vectors `e_0, e_1, ...`
/// are projected onto the eigenspace in index order and orthonormalised.
pub fn embed_with(g: &Graph, m: &SymmetricMatrix, solver: &EigenSolver) -> Result<Embedding> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("embedding needs dimension >= 2, got {n}")));
    }
    // Grow the request until the pairs past the second are separated from it.
    let mut k = 3.min(n);
    let mut r = solver.smallest(m, k)?;
    while k < n && (r.values[k - 1] - r.values[1]).abs() <= solver.tol {
        k = (2 * k).min(n);
        r = solver.smallest(m, k)?;
    }
    let clustered = |i: usize, j: usize| (r.values[i] - r.values[j]).abs() <= solver.tol;
    let mut vectors = Vec::with_capacity(2);
    let mut start = 0;
    while vectors.len() < 2 {
        let end = (start..r.values.len()).take_while(|&j| clustered(start, j)).last().unwrap() + 1;
        let space = &r.vectors[start..end];
        if space.len() == 1 {
            vectors.push(space[0].clone());
        } else {
            vectors.extend(canonical_basis(space, 2 - vectors.len()));
        }
        start = end;
    }
    for v in &mut vectors {
        if v.iter().find(|x| x.abs() > SIGN_EPS).is_some_and(|&x| x < 0.0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let nodes = m.index_map().to_vec();
    let degrees = nodes.iter().map(|&v| g.degree(v)).collect();
    let coords = (0..n).map(|i| [vectors[0][i], vectors[1][i]]).collect();
    Ok(Embedding { nodes, degrees, coords, eigenvalues: [r.values[0], r.values[1]] })
}

/// First `want` vectors of the orthonormal basis of `span(space)` obtained by
/// projecting unit vectors onto it in index order.
fn canonical_basis(space: &[Vec<f64>], want: usize) -> Vec<Vec<f64>> {
    let n = space[0].len();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(want);
    for j in 0..n {
        if out.len() == want {
            break;
        }
        // P e_j = Σ q (q_j)
        let mut p = vec![0.0; n];
        for q in space {
            p.iter_mut().zip(q).for_each(|(x, &y)| *x += q[j] * y);
        }
        for _ in 0..2 {
            for b in &out {
                let c = dot(&p, b);
                p.iter_mut().zip(b).for_each(|(x, &y)| *x -= c * y);
            }
        }
        let norm = dot(&p, &p).sqrt();
        if norm > CANONICAL_EPS {
            out.push(p.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

/// Result of 2-means. Cluster 0 is "center A": the cluster with the smaller
/// volume, or on a tie the one holding the smallest node id.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoMeans {
    pub centers: [[f64; 2]; 2],
    /// Cluster index (0 = A, 1 = B) per embedding point.
    pub assignment: Vec<usize>,
    pub rounds: usize,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Lloyd's algorithm with `k = 2`, seeded at the points with the smallest
/// and largest second coordinate. Equidistant points go to center A.
pub fn two_means(e: &Embedding) -> Result<TwoMeans> {
    let pts = &e.coords;
    if pts.iter().all(|p| p == &pts[0]) {
        return Err(Error::DegenerateEmbedding);
    }
    // Ties on the coordinate go to the lowest node id.
    let idx = 0..pts.len();
    let lo = idx.clone().min_by(|&a, &b| pts[a][1].total_cmp(&pts[b][1]).then(e.nodes[a].cmp(&e.nodes[b]))).unwrap();
    let mut hi = idx.clone().min_by(|&a, &b| pts[b][1].total_cmp(&pts[a][1]).then(e.nodes[a].cmp(&e.nodes[b]))).unwrap();
    if pts[hi] == pts[lo] {
        // Flat second coordinate: seed with the point farthest from `lo`.
        hi = idx
            .min_by(|&a, &b| dist(pts[b], pts[lo]).total_cmp(&dist(pts[a], pts[lo])).then(e.nodes[a].cmp(&e.nodes[b])))
            .unwrap();
    }
    let mut centers = [pts[lo], pts[hi]];
    let assign = |centers: &[[f64; 2]; 2], prefer: usize| -> Vec<usize> {
        pts.iter()
            .map(|&p| {
                let (d0, d1) = (dist(p, centers[0]), dist(p, centers[1]));
                if d0 < d1 {
                    0
                } else if d1 < d0 {
                    1
                } else {
                    prefer
                }
            })
            .collect()
    };
    let mut assignment = assign(&centers, 0);
    let mut rounds = 0;
    while rounds < LLOYD_ROUNDS {
        rounds += 1;
        for (c, center) in centers.iter_mut().enumerate() {
            let members: Vec<[f64; 2]> = pts.iter().zip(&assignment).filter(|(_, &a)| a == c).map(|(p, _)| *p).collect();
            if !members.is_empty() {
                let k = members.len() as f64;
                *center = [members.iter().map(|p| p[0]).sum::<f64>() / k, members.iter().map(|p| p[1]).sum::<f64>() / k];
            }
        }
        let next = assign(&centers, 0);
        if next == assignment {
            break;
        }
        assignment = next;
    }

    let volume = |c: usize| -> usize { assignment.iter().zip(&e.degrees).filter(|(&a, _)| a == c).map(|(_, d)| d).sum() };
    let lowest = |c: usize| assignment.iter().zip(&e.nodes).filter(|(&a, _)| a == c).map(|(_, &v)| v).min();
    let (v0, v1) = (volume(0), volume(1));
    let a_is_zero = v0 < v1 || (v0 == v1 && lowest(0).unwrap_or(usize::MAX) <= lowest(1).unwrap_or(usize::MAX));
    if !a_is_zero {
        centers.swap(0, 1);
    }
    let assignment = assign(&centers, 0);
    Ok(TwoMeans { centers, assignment, rounds })
}

/// Node ids sorted by `‖x - A‖ - ‖x - B‖` ascending, ties by node id. The
/// first `k` entries form the size-`k` cut.
pub fn rank_nodes(e: &Embedding, km: &TwoMeans) -> Vec<usize> {
    let mut scored: Vec<(f64, usize)> = e
        .coords
        .iter()
        .zip(&e.nodes)
        .map(|(&p, &v)| (dist(p, km.centers[0]) - dist(p, km.centers[1]), v))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    scored.into_iter().map(|(_, v)| v).collect()
}

/// Adds each boundary node whose interior neighbours lie strictly more
/// often inside the cut than outside it.
pub fn reattach_boundary(g: &Graph, b: &BoundarySpec, interior_cut: &NodeSet) -> NodeSet {
    let mut mask = interior_cut.mask().to_vec();
    for &v in b.boundary().iter() {
        let (mut inside, mut outside) = (0usize, 0usize);
        for &u in g.neighbors(v) {
            if b.is_boundary(u) {
                continue;
            }
            if interior_cut.contains(u) {
                inside += 1;
            } else {
                outside += 1;
            }
        }
        mask[v] = inside > outside;
    }
    NodeSet::from_mask(mask)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dirichlet,
    Traditional,
}

#[derive(Debug, Clone)]
pub struct CutRecord {
    pub k: usize,
    pub nodes: NodeSet,
    pub h: f64,
    pub c: usize,
    pub method: Method,
}

impl CutRecord {
    pub fn measure(g: &Graph, nodes: NodeSet, method: Method) -> Result<Self> {
        Ok(CutRecord { k: nodes.len(), h: cheeger_ratio(g, &nodes)?, c: components(g, &nodes)?, nodes, method })
    }
}

/// One cut size with both methods' measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedCut {
    pub k: usize,
    /// Interior prefix length that produced the Dirichlet cut.
    pub interior_prefix: usize,
    pub h_d: f64,
    pub c_d: usize,
    pub h_t: f64,
    pub c_t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub cat_le_le: usize,
    pub cat_le_gt: usize,
    pub cat_gt_le: usize,
    pub cat_gt_gt: usize,
    pub avg_dc: f64,
    pub avg_dh: f64,
    pub avg_ct: f64,
    pub avg_ht: f64,
}

impl Aggregate {
    /// Category counts and averages over `rows`; averages are NaN when empty.
    pub fn from_rows(rows: &[PairedCut]) -> Self {
        let mut agg = Aggregate {
            cat_le_le: 0,
            cat_le_gt: 0,
            cat_gt_le: 0,
            cat_gt_gt: 0,
            avg_dc: 0.0,
            avg_dh: 0.0,
            avg_ct: 0.0,
            avg_ht: 0.0,
        };
        for r in rows {
            match (r.c_d <= r.c_t, r.h_d <= r.h_t) {
                (true, true) => agg.cat_le_le += 1,
                (true, false) => agg.cat_le_gt += 1,
                (false, true) => agg.cat_gt_le += 1,
                (false, false) => agg.cat_gt_gt += 1,
            }
            agg.avg_dc += r.c_d as f64 - r.c_t as f64;
            agg.avg_dh += r.h_d - r.h_t;
            agg.avg_ct += r.c_t as f64;
            agg.avg_ht += r.h_t;
        }
        let n = rows.len() as f64;
        agg.avg_dc /= n;
        agg.avg_dh /= n;
        agg.avg_ct /= n;
        agg.avg_ht /= n;
        agg
    }

    pub fn category_total(&self) -> usize {
        self.cat_le_le + self.cat_le_gt + self.cat_gt_le + self.cat_gt_gt
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<PairedCut>,
    pub aggregate: Aggregate,
    /// Interior node ranking used for Dirichlet cuts.
    pub dirichlet_order: Vec<usize>,
    /// Ranking of every node used for traditional cuts.
    pub traditional_order: Vec<usize>,
    /// Interior prefix lengths dropped because the cut was empty, full, a
    /// repeated size, or outside the requested sizes.
    pub skipped: Vec<usize>,
}

impl SweepReport {
    /// Dirichlet cut for one row, rebuilt from the stored ranking.
    pub fn dirichlet_cut(&self, g: &Graph, b: &BoundarySpec, row: &PairedCut) -> NodeSet {
        let prefix = prefix_set(g.node_count(), &self.dirichlet_order[..row.interior_prefix]);
        reattach_boundary(g, b, &prefix)
    }

    pub fn traditional_cut(&self, g: &Graph, row: &PairedCut) -> NodeSet {
        prefix_set(g.node_count(), &self.traditional_order[..row.k])
    }
}

fn prefix_set(universe: usize, ids: &[usize]) -> NodeSet {
    let mut mask = vec![false; universe];
    for &v in ids {
        mask[v] = true;
    }
    NodeSet::from_mask(mask)
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub solver: EigenSolver,
    /// Restrict the report to these cut sizes.
    pub sizes: Option<Vec<usize>>,
}

pub fn sweep(g: &Graph, b: &BoundarySpec) -> Result<SweepReport> {
    sweep_with(g, b, &SweepOptions::default())
}

/// Dirichlet cuts for every interior prefix, paired with traditional cuts of
/// the same sizes.
pub fn sweep_with(g: &Graph, b: &BoundarySpec, opts: &SweepOptions) -> Result<SweepReport> {
    let interior = b.interior();
    if interior.len() < 2 {
        return Err(Error::InvalidParameter(format!("sweep needs at least 2 interior nodes, got {}", interior.len())));
    }
    let n = g.node_count();

    let dirichlet = build_dirichlet_laplacian(g, b)?;
    let emb = embed_with(g, &dirichlet, &opts.solver)?;
    let dirichlet_order = rank_nodes(&emb, &two_means(&emb)?);

    let full = build_normalized_laplacian(g)?;
    let emb = embed_with(g, &full, &opts.solver)?;
    let traditional_order = rank_nodes(&emb, &two_means(&emb)?);

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut seen = vec![false; n + 1];
    let mut prefix = vec![false; n];
    for j in 1..interior.len() {
        prefix[dirichlet_order[j - 1]] = true;
        let cut = reattach_boundary(g, b, &NodeSet::from_mask(prefix.clone()));
        let k = cut.len();
        let wanted = opts.sizes.as_ref().is_none_or(|s| s.contains(&k));
        if k == 0 || k >= n || seen[k] || !wanted {
            if k == 0 || k >= n || seen[k] {
                log::debug!("skipping interior prefix {j} (cut size {k})");
            }
            skipped.push(j);
            continue;
        }
        seen[k] = true;
        let d = CutRecord::measure(g, cut, Method::Dirichlet)?;
        let t = CutRecord::measure(g, prefix_set(n, &traditional_order[..k]), Method::Traditional)?;
        rows.push(PairedCut { k, interior_prefix: j, h_d: d.h, c_d: d.c, h_t: t.h, c_t: t.c });
    }
    if let Some(sizes) = &opts.sizes {
        for &k in sizes.iter().filter(|&&k| k > n || !seen[k]) {
            log::warn!("requested cut size {k} does not occur in the Dirichlet sweep");
        }
    }
    if !skipped.is_empty() {
        log::info!("{} of {} interior prefixes skipped", skipped.len(), interior.len() - 1);
    }
    let aggregate = Aggregate::from_rows(&rows);
    Ok(SweepReport { rows, aggregate, dirichlet_order, traditional_order, skipped })
}

pub const SIZES_HEADER: [&str; 5] = ["k", "h_D", "c_D", "h_T", "c_T"];
pub const SCATTER_HEADER: [&str; 3] = ["k", "dh", "dc"];
pub const AGGREGATE_HEADER: [&str; 8] =
    ["cat_le_le", "cat_le_gt", "cat_gt_le", "cat_gt_gt", "avg_dc", "avg_dh", "avg_cT", "avg_hT"];

/// Plot-ready tables for one sweep.
#[derive(Debug, Clone)]
pub struct CompareReport {
    pub sizes: CsvTable,
    /// Per-size `(k, h_D - h_T, c_D - c_T)`.
    pub scatter: CsvTable,
    pub aggregate: CsvTable,
}

pub fn compare_report(sweep: &SweepReport) -> Result<CompareReport> {
    if sweep.rows.is_empty() {
        return Err(Error::InvalidParameter("sweep produced no paired cuts".into()));
    }
    let mut sizes = CsvTable::new(SIZES_HEADER);
    let mut scatter = CsvTable::new(SCATTER_HEADER);
    for r in &sweep.rows {
        sizes.push(vec![r.k.into(), r.h_d.into(), r.c_d.into(), r.h_t.into(), r.c_t.into()]);
        scatter.push(vec![r.k.into(), (r.h_d - r.h_t).into(), Cell::Int(r.c_d as i64 - r.c_t as i64)]);
    }
    let a = &sweep.aggregate;
    let mut aggregate = CsvTable::new(AGGREGATE_HEADER);
    aggregate.push(vec![
        a.cat_le_le.into(),
        a.cat_le_gt.into(),
        a.cat_gt_le.into(),
        a.cat_gt_gt.into(),
        a.avg_dc.into(),
        a.avg_dh.into(),
        a.avg_ct.into(),
        a.avg_ht.into(),
    ]);
    Ok(CompareReport { sizes, scatter, aggregate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{resolve_boundary, BoundaryRule};
    use crate::ingest::gen_whisker;

    fn two_triangles() -> Graph {
        Graph::from_index_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    }

    fn synthetic(coords: Vec<[f64; 2]>) -> Embedding {
        let n = coords.len();
        Embedding { nodes: (0..n).collect(), degrees: vec![1; n], coords, eigenvalues: [0.0, 0.0] }
    }

    #[test]
    fn p3_embedding() {
        let g = Graph::from_index_edges(3, &[(0, 1), (1, 2)]);
        let e = embed(&g, &build_normalized_laplacian(&g).unwrap()).unwrap();
        let norm = 4f64.sqrt();
        let want = [1.0 / norm, 2f64.sqrt() / norm, 1.0 / norm];
        for (c, w) in e.coords.iter().zip(want) {
            assert!((c[0] - w).abs() < 1e-12);
        }
        assert!((e.coords[0][1] + e.coords[2][1]).abs() < 1e-12);
        assert!(e.coords[1][1].abs() < 1e-12);
        assert!(e.coords[0][1] > 0.0);
    }

    #[test]
    fn empty_boundary_embeds_everything() {
        let g = two_triangles();
        let b = resolve_boundary(&g, &BoundaryRule::DegreeOne).unwrap();
        assert!(b.boundary().is_empty());
        let e = embed(&g, &build_dirichlet_laplacian(&g, &b).unwrap()).unwrap();
        assert_eq!(e.nodes, vec![0, 1, 2, 3, 4, 5]);
        let dot: f64 = e.coords.iter().map(|c| c[0] * c[1]).sum();
        assert!(dot.abs() < 1e-8);
    }

    #[test]
    fn canonical_basis_ignores_rotation() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = vec![vec![s, s, 0.0, 0.0], vec![0.0, 0.0, s, s]];
        let (c, t) = (0.6f64, 0.8f64);
        let rotated: Vec<Vec<f64>> = vec![
            a[0].iter().zip(&a[1]).map(|(x, y)| c * x + t * y).collect(),
            a[0].iter().zip(&a[1]).map(|(x, y)| -t * x + c * y).collect(),
        ];
        let (p, q) = (canonical_basis(&a, 2), canonical_basis(&rotated, 2));
        for (u, v) in p.iter().zip(&q) {
            for (x, y) in u.iter().zip(v) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        assert!((p[0][0] - s).abs() < 1e-12 && (p[1][2] - s).abs() < 1e-12);
    }

    #[test]
    fn repeated_eigenvalue_embedding_is_deterministic() {
        // Four identical whiskers: the second eigenvalue is repeated.
        let g = gen_whisker(6, 4, 2).unwrap();
        let m = build_normalized_laplacian(&g).unwrap();
        let dense = embed(&g, &m).unwrap();
        let again = embed(&g, &m).unwrap();
        assert_eq!(dense.coords, again.coords);
        let dot: f64 = dense.coords.iter().map(|c| c[0] * c[1]).sum();
        assert!(dot.abs() < 1e-8);
    }

    #[test]
    fn separated_clusters_split_exactly() {
        let mut coords = vec![[0.0, 1.0]; 10];
        coords.extend(vec![[0.0, -1.0]; 10]);
        // Jitter so points are distinct.
        for (i, c) in coords.iter_mut().enumerate() {
            c[0] += i as f64 * 1e-3;
        }
        let e = synthetic(coords);
        let km = two_means(&e).unwrap();
        let a = km.assignment[0];
        assert!(km.assignment[..10].iter().all(|&x| x == a));
        assert!(km.assignment[10..].iter().all(|&x| x != a));
        // Equal volumes: A holds node 0.
        assert_eq!(a, 0);
        let order = rank_nodes(&e, &km);
        assert!(order[..10].iter().all(|&v| v < 10));
        assert_eq!(two_means(&e).unwrap(), km);
    }

    #[test]
    fn degenerate_embedding_rejected() {
        assert!(matches!(two_means(&synthetic(vec![[1.0, 1.0]; 4])), Err(Error::DegenerateEmbedding)));
    }

    #[test]
    fn smaller_volume_cluster_is_a() {
        let mut e = synthetic(vec![[0.0, 1.0], [0.0, 1.1], [0.0, -1.0], [0.0, -1.1]]);
        e.degrees = vec![5, 5, 1, 1];
        let km = two_means(&e).unwrap();
        assert_eq!(km.assignment, vec![1, 1, 0, 0]);
        // Node 3 lies farther from B, so it ranks first.
        assert_eq!(&rank_nodes(&e, &km)[..2], &[3, 2]);
    }

    #[test]
    fn two_triangle_cut_is_optimal() {
        let g = two_triangles();
        let e = embed(&g, &build_normalized_laplacian(&g).unwrap()).unwrap();
        let km = two_means(&e).unwrap();
        let order = rank_nodes(&e, &km);
        let cut = NodeSet::new(6, order[..3].iter().copied()).unwrap();
        assert!(cut.ids() == [0, 1, 2] || cut.ids() == [3, 4, 5]);
        let rec = CutRecord::measure(&g, cut, Method::Traditional).unwrap();
        assert_eq!((rec.h, rec.c), (1.0 / 7.0, 1));
    }

    #[test]
    fn prefixes_nest() {
        let g = gen_whisker(8, 4, 3).unwrap();
        let e = embed(&g, &build_normalized_laplacian(&g).unwrap()).unwrap();
        let order = rank_nodes(&e, &two_means(&e).unwrap());
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..g.node_count()).collect::<Vec<_>>());
    }

    #[test]
    fn reattachment_rules() {
        // Path 0-1-2-3 with endpoints as boundary.
        let g = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = resolve_boundary(&g, &BoundaryRule::DegreeOne).unwrap();
        let cut = reattach_boundary(&g, &b, &NodeSet::new(4, [1]).unwrap());
        assert_eq!(cut.ids(), &[0, 1]);
        let cut = reattach_boundary(&g, &b, &NodeSet::new(4, [2]).unwrap());
        assert_eq!(cut.ids(), &[2, 3]);

        // Boundary node 4 adjacent to interior 1 and 2: a tie stays outside.
        let g = Graph::from_index_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]);
        let b = resolve_boundary(&g, &BoundaryRule::Explicit(vec![0, 3, 4])).unwrap();
        let cut = reattach_boundary(&g, &b, &NodeSet::new(5, [1]).unwrap());
        assert_eq!(cut.ids(), &[0, 1]);
        let cut = reattach_boundary(&g, &b, &NodeSet::new(5, [1, 2]).unwrap());
        assert_eq!(cut.ids(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn whisker_tip_follows_path_neighbour() {
        // Triangle core with one 2-node whisker: core 0,1,2; path 3-4, tip 4.
        let g = gen_whisker(3, 1, 2).unwrap();
        let b = resolve_boundary(&g, &BoundaryRule::DegreeOne).unwrap();
        assert_eq!(b.boundary().ids(), &[4]);
        assert_eq!(reattach_boundary(&g, &b, &NodeSet::new(5, [3]).unwrap()).ids(), &[3, 4]);
        assert_eq!(reattach_boundary(&g, &b, &NodeSet::new(5, [0]).unwrap()).ids(), &[0]);
    }

    #[test]
    fn identical_rankings_fill_first_category() {
        let rows: Vec<PairedCut> = (1..5)
            .map(|k| PairedCut { k, interior_prefix: k, h_d: 0.3, c_d: 2, h_t: 0.3, c_t: 2 })
            .collect();
        let a = Aggregate::from_rows(&rows);
        assert_eq!((a.cat_le_le, a.category_total()), (4, 4));
        assert_eq!((a.avg_dc, a.avg_dh), (0.0, 0.0));
    }

    #[test]
    fn single_row_report() {
        let row = PairedCut { k: 3, interior_prefix: 2, h_d: 0.25, c_d: 1, h_t: 0.25, c_t: 1 };
        let report = SweepReport {
            rows: vec![row],
            aggregate: Aggregate::from_rows(&[row]),
            dirichlet_order: vec![],
            traditional_order: vec![],
            skipped: vec![],
        };
        let c = compare_report(&report).unwrap();
        assert_eq!(c.scatter.rows, vec![vec![Cell::Int(3), Cell::Float(0.0), Cell::Int(0)]]);
        let text = String::from_utf8(c.aggregate.to_bytes().unwrap()).unwrap();
        assert_eq!(text, "cat_le_le,cat_le_gt,cat_gt_le,cat_gt_gt,avg_dc,avg_dh,avg_cT,avg_hT\n1,0,0,0,0,0,1,0.25\n");
        let empty = SweepReport { rows: vec![], ..report };
        assert!(compare_report(&empty).is_err());
    }

    #[test]
    fn sweep_records_are_consistent() {
        let g = gen_whisker(10, 5, 3).unwrap();
        let b = resolve_boundary(&g, &BoundaryRule::DegreeOne).unwrap();
        let report = sweep(&g, &b).unwrap();
        assert_eq!(report.rows.len() + report.skipped.len(), b.interior().len() - 1);
        assert!(report.rows.windows(2).all(|w| w[0].k < w[1].k));
        for row in &report.rows {
            let d = report.dirichlet_cut(&g, &b, row);
            assert_eq!(d.len(), row.k);
            assert_eq!(cheeger_ratio(&g, &d).unwrap(), row.h_d);
            assert_eq!(components(&g, &d).unwrap(), row.c_d);
            let t = report.traditional_cut(&g, row);
            assert_eq!(cheeger_ratio(&g, &t).unwrap(), row.h_t);
            assert_eq!(components(&g, &t).unwrap(), row.c_t);
        }
        assert_eq!(report.aggregate.category_total(), report.rows.len());
    }

    #[test]
    fn sweep_size_filter() {
        let g = gen_whisker(10, 5, 3).unwrap();
        let b = resolve_boundary(&g, &BoundaryRule::DegreeOne).unwrap();
        let all = sweep(&g, &b).unwrap();
        let wanted: Vec<usize> = all.rows.iter().map(|r| r.k).take(2).collect();
        let opts = SweepOptions { sizes: Some(wanted.clone()), ..Default::default() };
        let some = sweep_with(&g, &b, &opts).unwrap();
        assert_eq!(some.rows.iter().map(|r| r.k).collect::<Vec<_>>(), wanted);
        assert_eq!(some.rows[..], all.rows[..2]);
    }

    #[test]
    fn sweep_needs_interior() {
        let g = Graph::from_index_edges(3, &[(0, 1), (1, 2)]);
        let b = resolve_boundary(&g, &BoundaryRule::DegreeOne).unwrap();
        assert!(sweep(&g, &b).is_err());
    }
}
