//! Cheeger ratios, local Cheeger ratios, and exact minima by enumeration.

use crate::error::{Error, Result};
use crate::graph::{edge_boundary, volume, BoundarySpec, Graph, NodeSet};

/// Cheeger constant of the infinite `d`-regular tree, `d - 2`.
pub fn infinite_tree_cheeger_constant(d: usize) -> f64 {
    d as f64 - 2.0
}

/// Default enumeration cap for brute-force constants.
pub const DEFAULT_MAX_NODES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheegerKind {
    GlobalRatio,
    GlobalConstant,
    LocalRatio,
    LocalConstant,
}

#[derive(Debug, Clone)]
pub struct CheegerReport {
    pub h: f64,
    pub witness: NodeSet,
    pub kind: CheegerKind,
}

/// `e(S, S̄) / min(vol S, vol S̄)`.
pub fn cheeger_ratio(g: &Graph, s: &NodeSet) -> Result<f64> {
    let (num, den) = ratio_parts(g, s)?;
    Ok(num as f64 / den as f64)
}

fn ratio_parts(g: &Graph, s: &NodeSet) -> Result<(usize, usize)> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if s.is_full() {
        return Err(Error::FullSet);
    }
    let vol = volume(g, s);
    Ok((edge_boundary(g, s), vol.min(2 * g.edge_count() - vol)))
}

/// `e(T, T̄) / vol T` for a set `T` of interior nodes.
pub fn local_cheeger_ratio(g: &Graph, b: &BoundarySpec, t: &NodeSet) -> Result<f64> {
    if t.is_empty() {
        return Err(Error::EmptySet);
    }
    if !t.is_disjoint(b.boundary()) {
        return Err(Error::TouchesBoundary);
    }
    Ok(edge_boundary(g, t) as f64 / volume(g, t) as f64)
}

/// Candidate minimum tracked as an exact fraction; ties go to the
/// lexicographically smallest sorted member list.
struct Best {
    num: usize,
    den: usize,
    members: Vec<usize>,
}

impl Best {
    fn offer(best: &mut Option<Best>, num: usize, den: usize, members: Vec<usize>) {
        let better = match best {
            None => true,
            Some(b) => {
                let (lhs, rhs) = (num * b.den, b.num * den);
                lhs < rhs || (lhs == rhs && members < b.members)
            }
        };
        if better {
            *best = Some(Best { num, den, members });
        }
    }
}

fn members_of(mask: u64, ids: &[usize]) -> Vec<usize> {
    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

/// Exact minimum Cheeger ratio over every nonempty proper subset.
pub fn brute_force_cheeger_constant(g: &Graph, max_n: usize) -> Result<CheegerReport> {
    let n = g.node_count();
    if n > max_n || n > 63 {
        return Err(Error::TooLarge { nodes: n, limit: max_n.min(63) });
    }
    if n < 2 || g.edge_count() == 0 {
        return Err(Error::InvalidParameter("need at least one edge and two nodes".into()));
    }
    let ids: Vec<usize> = g.nodes().collect();
    let total = 2 * g.edge_count();
    let mut best = None;
    for mask in 1..(1u64 << n) - 1 {
        let (cut, vol) = mask_cut_volume(g, mask);
        Best::offer(&mut best, cut, vol.min(total - vol), members_of(mask, &ids));
    }
    let best = best.unwrap();
    Ok(CheegerReport {
        h: best.num as f64 / best.den as f64,
        witness: NodeSet::new(n, best.members)?,
        kind: CheegerKind::GlobalConstant,
    })
}

/// Exact minimum local Cheeger ratio over every nonempty set of interior nodes.
pub fn brute_force_local_cheeger_constant(g: &Graph, b: &BoundarySpec, max_n: usize) -> Result<CheegerReport> {
    let interior = b.interior();
    let m = interior.len();
    if m == 0 {
        return Err(Error::NoInterior);
    }
    if m > max_n || m > 63 {
        return Err(Error::TooLarge { nodes: m, limit: max_n.min(63) });
    }
    let ids = interior.ids().to_vec();
    let mut best = None;
    let mut local = vec![false; g.node_count()];
    for mask in 1..1u64 << m {
        local.iter_mut().for_each(|x| *x = false);
        for (i, &v) in ids.iter().enumerate() {
            local[v] = mask >> i & 1 == 1;
        }
        let mut cut = 0;
        let mut vol = 0;
        for (i, &u) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                vol += g.degree(u);
                cut += g.neighbors(u).iter().filter(|&&v| !local[v]).count();
            }
        }
        if vol == 0 {
            continue;
        }
        Best::offer(&mut best, cut, vol, members_of(mask, &ids));
    }
    let best = best.ok_or_else(|| Error::InvalidParameter("interior has only isolated nodes".into()))?;
    Ok(CheegerReport {
        h: best.num as f64 / best.den as f64,
        witness: NodeSet::new(g.node_count(), best.members)?,
        kind: CheegerKind::LocalConstant,
    })
}

fn mask_cut_volume(g: &Graph, mask: u64) -> (usize, usize) {
    let mut cut = 0;
    let mut vol = 0;
    for u in g.nodes() {
        if mask >> u & 1 == 1 {
            vol += g.degree(u);
            cut += g.neighbors(u).iter().filter(|&&v| mask >> v & 1 == 0).count();
        }
    }
    (cut, vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{resolve_boundary, BoundaryRule};
    use crate::ingest::gen_tree;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_index_edges(n, edges)
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &edges)
    }

    fn two_triangles() -> Graph {
        g(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    }

    fn set(gr: &Graph, ids: &[usize]) -> NodeSet {
        NodeSet::new(gr.node_count(), ids.iter().copied()).unwrap()
    }

    #[test]
    fn ratio_examples() {
        let c4 = cycle(4);
        assert_eq!(cheeger_ratio(&c4, &set(&c4, &[0, 1])).unwrap(), 0.5);
        let k2 = g(2, &[(0, 1)]);
        assert_eq!(cheeger_ratio(&k2, &set(&k2, &[0])).unwrap(), 1.0);
        let tt = two_triangles();
        assert!((cheeger_ratio(&tt, &set(&tt, &[0, 1, 2])).unwrap() - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn ratio_rejects_trivial_sets() {
        let c4 = cycle(4);
        assert!(matches!(cheeger_ratio(&c4, &NodeSet::empty(4)), Err(Error::EmptySet)));
        assert!(matches!(cheeger_ratio(&c4, &NodeSet::all(4)), Err(Error::FullSet)));
    }

    #[test]
    fn local_ratio_examples() {
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let b = resolve_boundary(&star, &BoundaryRule::Leaves).unwrap();
        assert_eq!(local_cheeger_ratio(&star, &b, &set(&star, &[0])).unwrap(), 1.0);
        assert!(matches!(local_cheeger_ratio(&star, &b, &set(&star, &[0, 1])), Err(Error::TouchesBoundary)));

        let t = gen_tree(3, 2).unwrap();
        let b = resolve_boundary(&t, &BoundaryRule::Leaves).unwrap();
        assert_eq!(local_cheeger_ratio(&t, &b, &set(&t, &[0])).unwrap(), 1.0);
        assert_eq!(local_cheeger_ratio(&t, &b, &set(&t, &[0, 1, 2, 3])).unwrap(), 0.5);
    }

    #[test]
    fn brute_force_examples() {
        let k2 = g(2, &[(0, 1)]);
        let r = brute_force_cheeger_constant(&k2, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(r.h, 1.0);
        assert_eq!(r.witness.ids(), &[0]);
        assert_eq!(brute_force_cheeger_constant(&cycle(4), 20).unwrap().h, 0.5);
        let c6 = brute_force_cheeger_constant(&cycle(6), 20).unwrap();
        assert!((c6.h - 1.0 / 3.0).abs() < 1e-15);
        // Lexicographically smallest optimal half-cycle.
        assert_eq!(c6.witness.ids(), &[0, 1, 2]);
        assert_eq!(c6.kind, CheegerKind::GlobalConstant);
    }

    #[test]
    fn brute_force_size_cap() {
        assert!(matches!(brute_force_cheeger_constant(&cycle(8), 6), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn brute_force_local_examples() {
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let b = resolve_boundary(&star, &BoundaryRule::Leaves).unwrap();
        let r = brute_force_local_cheeger_constant(&star, &b, 12).unwrap();
        assert_eq!((r.h, r.witness.ids()), (1.0, &[0usize][..]));

        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = resolve_boundary(&p4, &BoundaryRule::DegreeOne).unwrap();
        assert_eq!(brute_force_local_cheeger_constant(&p4, &b, 12).unwrap().h, 0.5);

        let t = gen_tree(3, 2).unwrap();
        let b = resolve_boundary(&t, &BoundaryRule::Leaves).unwrap();
        let r = brute_force_local_cheeger_constant(&t, &b, 12).unwrap();
        assert_eq!(r.h, 0.5);
        assert_eq!(r.witness.ids(), &[0, 1, 2, 3]);
        assert_eq!(r.kind, CheegerKind::LocalConstant);
    }

    #[test]
    fn infinite_tree_constant() {
        assert_eq!(infinite_tree_cheeger_constant(3), 1.0);
        assert_eq!(infinite_tree_cheeger_constant(5), 3.0);
    }
}
