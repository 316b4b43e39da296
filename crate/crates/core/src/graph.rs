//! Undirected simple graphs in compressed adjacency form.
//!
//! Nodes carry dense ids `0..n` assigned in first-seen order plus the
//! original label string. Adjacency lists are sorted and free of duplicates
//! and self-loops, so `degree(v) == neighbors(v).len()` always holds.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Counts of edges dropped while canonicalizing raw input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CleaningReport {
    pub duplicates: usize,
    pub self_loops: usize,
}

#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

/// Builds a canonical graph from labelled edge pairs.
///
/// Labels receive dense ids in first-seen order. Self-loops and repeated
/// edges (in either orientation) are dropped and counted.
pub fn build_graph<I, A, B>(pairs: I) -> Result<(Graph, CleaningReport)>
where
    I: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, usize> = HashMap::new();
    let mut intern = |label: &str| -> usize {
        if let Some(&id) = label_index.get(label) {
            return id;
        }
        let id = labels.len();
        labels.push(label.to_owned());
        label_index.insert(label.to_owned(), id);
        id
    };

    let mut report = CleaningReport::default();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for (a, b) in pairs {
        let u = intern(a.as_ref());
        let v = intern(b.as_ref());
        if u == v {
            report.self_loops += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            report.duplicates += 1;
            continue;
        }
        edges.push(key);
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let graph = Graph::assemble(labels, label_index, &edges);
    Ok((graph, report))
}

impl Graph {
    /// Builds a graph over `n` nodes labelled `"0".."n-1"` from index pairs.
    /// Edges must be free of self-loops; duplicates are merged.
    pub(crate) fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_labelled_index_edges(labels, edges)
    }

    pub(crate) fn from_labelled_index_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Self::assemble(labels, label_index, edges)
    }

    fn assemble(labels: Vec<String>, label_index: HashMap<String, usize>, edges: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            debug_assert_ne!(u, v);
            lists[u].push(v);
            lists[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(2 * edges.len());
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            list.dedup();
            neighbors.extend_from_slice(&list);
            offsets.push(neighbors.len());
        }
        Graph { labels, label_index, offsets, neighbors }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.node_count()
    }

    /// Hop distances from `source`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Largest hop distance from `v` to any reachable node.
    pub fn eccentricity(&self, v: usize) -> usize {
        self.bfs_distances(v).into_iter().flatten().max().unwrap_or(0)
    }

    /// Component labels for every node, numbered in order of their smallest member.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// The largest connected component; ties go to the component holding the
    /// smallest node id.
    pub fn largest_component(&self) -> Subgraph {
        let (comp, count) = self.component_labels();
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        let best = (0..count).max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a))).unwrap_or(0);
        let ids: Vec<usize> = self.nodes().filter(|&v| comp[v] == best).collect();
        self.induced(&NodeSet::from_sorted_unchecked(self.node_count(), ids))
    }

    /// Subgraph induced by `set`, keeping labels and recording parent ids.
    pub fn induced(&self, set: &NodeSet) -> Subgraph {
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in set.iter().enumerate() {
            local[v] = i;
        }
        let labels: Vec<String> = set.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for &u in set.iter() {
            for &v in self.neighbors(u) {
                if u < v && local[v] != usize::MAX {
                    edges.push((local[u], local[v]));
                }
            }
        }
        Subgraph { graph: Graph::from_labelled_index_edges(labels, &edges), parent_ids: set.ids.clone() }
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::all(self.node_count())
    }
}

/// Two graphs are equal when they have the same labels and the same
/// labelled edge set, regardless of dense id assignment.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        self.nodes().all(|u| {
            let Some(ou) = other.id_of(self.label(u)) else { return false };
            let mut mine: Vec<&str> = self.neighbors(u).iter().map(|&v| self.label(v)).collect();
            let mut theirs: Vec<&str> = other.neighbors(ou).iter().map(|&v| other.label(v)).collect();
            mine.sort_unstable();
            theirs.sort_unstable();
            mine == theirs
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("nodes", &self.node_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// An induced subgraph together with the parent id of each of its nodes.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub parent_ids: Vec<usize>,
}

/// A set of dense node ids over a graph with `universe` nodes.
#[derive(Clone, PartialEq, Eq)]
pub struct NodeSet {
    universe: usize,
    ids: Vec<usize>,
    mask: Vec<bool>,
}

impl NodeSet {
    /// Validates and canonicalizes `ids` (sorted, deduplicated).
    pub fn new(universe: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        if let Some(&id) = ids.iter().find(|&&id| id >= universe) {
            return Err(Error::NodeOutOfRange { id, node_count: universe });
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(Self::from_sorted_unchecked(universe, ids))
    }

    pub(crate) fn from_sorted_unchecked(universe: usize, ids: Vec<usize>) -> Self {
        let mut mask = vec![false; universe];
        for &v in &ids {
            mask[v] = true;
        }
        NodeSet { universe, ids, mask }
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let ids = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        NodeSet { universe: mask.len(), ids, mask }
    }

    pub fn empty(universe: usize) -> Self {
        Self::from_sorted_unchecked(universe, Vec::new())
    }

    pub fn all(universe: usize) -> Self {
        Self::from_sorted_unchecked(universe, (0..universe).collect())
    }

    /// Looks up each label in `g`.
    pub fn from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<Self> {
        let ids = labels
            .iter()
            .map(|l| {
                g.id_of(l.as_ref())
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown node label {:?}", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g.node_count(), ids)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.ids.len() == self.universe
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.ids.iter()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn complement(&self) -> NodeSet {
        NodeSet::from_mask(self.mask.iter().map(|m| !m).collect())
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.ids.iter().all(|&v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.ids.iter().all(|&v| !other.contains(v))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.ids).finish()
    }
}

/// Sum of degrees over `s`.
pub fn volume(g: &Graph, s: &NodeSet) -> usize {
    debug_assert_eq!(s.universe(), g.node_count());
    s.iter().map(|&v| g.degree(v)).sum()
}

/// Number of edges with exactly one endpoint in `s`.
pub fn edge_boundary(g: &Graph, s: &NodeSet) -> usize {
    debug_assert_eq!(s.universe(), g.node_count());
    s.iter().map(|&u| g.neighbors(u).iter().filter(|&&v| !s.contains(v)).count()).sum()
}

/// Connected components of the subgraph induced by `s`.
pub fn components(g: &Graph, s: &NodeSet) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut seen = vec![false; g.node_count()];
    let mut stack = Vec::new();
    let mut count = 0;
    for &start in s.iter() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if s.contains(v) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    Ok(count)
}

/// The node minimizing total hop distance to every other node (the
/// 1-median), used as the graph's center of mass. Ties go to the smallest id.
pub fn one_median(g: &Graph) -> Result<usize> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut best: Option<(usize, usize)> = None;
    for v in g.nodes() {
        let mut total = 0usize;
        for d in g.bfs_distances(v) {
            total += d.ok_or(Error::Disconnected)?;
        }
        if best.is_none_or(|(_, t)| total < t) {
            best = Some((v, total));
        }
    }
    Ok(best.unwrap().0)
}

/// All nodes within `radius` hops of `center`.
pub fn ball(g: &Graph, center: usize, radius: usize) -> NodeSet {
    let mask = g.bfs_distances(center).into_iter().map(|d| d.is_some_and(|d| d <= radius)).collect();
    NodeSet::from_mask(mask)
}

/// How a boundary set was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPolicy {
    DegreeOne,
    Leaves,
    GridPerimeter,
    RadiusCut,
    ExplicitList,
}

impl BoundaryPolicy {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryPolicy::DegreeOne => "degree-one",
            BoundaryPolicy::Leaves => "leaves",
            BoundaryPolicy::GridPerimeter => "grid-perimeter",
            BoundaryPolicy::RadiusCut => "radius-cut",
            BoundaryPolicy::ExplicitList => "explicit-list",
        }
    }
}

/// A boundary policy together with the arguments it needs.
#[derive(Debug, Clone)]
pub enum BoundaryRule<'a> {
    DegreeOne,
    Leaves,
    GridPerimeter,
    /// `subgraph` was cut out of `parent`; the graph being resolved must be
    /// `subgraph.graph`.
    RadiusCut { parent: &'a Graph, subgraph: &'a Subgraph },
    Explicit(Vec<usize>),
}

impl BoundaryRule<'_> {
    pub fn policy(&self) -> BoundaryPolicy {
        match self {
            BoundaryRule::DegreeOne => BoundaryPolicy::DegreeOne,
            BoundaryRule::Leaves => BoundaryPolicy::Leaves,
            BoundaryRule::GridPerimeter => BoundaryPolicy::GridPerimeter,
            BoundaryRule::RadiusCut { .. } => BoundaryPolicy::RadiusCut,
            BoundaryRule::Explicit(_) => BoundaryPolicy::ExplicitList,
        }
    }
}

/// A resolved boundary. Only obtainable through [`resolve_boundary`], so the
/// set always matches its policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySpec {
    policy: BoundaryPolicy,
    boundary: NodeSet,
}

impl BoundarySpec {
    pub fn policy(&self) -> BoundaryPolicy {
        self.policy
    }

    pub fn boundary(&self) -> &NodeSet {
        &self.boundary
    }

    pub fn interior(&self) -> NodeSet {
        self.boundary.complement()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary.contains(v)
    }
}

pub fn resolve_boundary(g: &Graph, rule: &BoundaryRule<'_>) -> Result<BoundarySpec> {
    let n = g.node_count();
    let by_degree = |keep: &dyn Fn(usize) -> bool| NodeSet::from_mask(g.nodes().map(|v| keep(g.degree(v))).collect());
    let boundary = match rule {
        BoundaryRule::DegreeOne | BoundaryRule::Leaves => by_degree(&|d| d == 1),
        BoundaryRule::GridPerimeter => by_degree(&|d| d < 4),
        BoundaryRule::RadiusCut { parent, subgraph } => {
            if subgraph.graph.node_count() != n {
                return Err(Error::InvalidParameter("radius-cut subgraph does not match the graph".into()));
            }
            let mut inside = vec![false; parent.node_count()];
            for &p in &subgraph.parent_ids {
                inside[p] = true;
            }
            let mask = subgraph
                .parent_ids
                .iter()
                .map(|&p| parent.degree(p) == 1 || parent.neighbors(p).iter().any(|&q| !inside[q]))
                .collect();
            NodeSet::from_mask(mask)
        }
        BoundaryRule::Explicit(ids) => NodeSet::new(n, ids.iter().copied())?,
    };
    if boundary.is_full() {
        return Err(Error::NoInterior);
    }
    if boundary.is_empty() {
        log::warn!("{} boundary is empty; the Dirichlet Laplacian equals the full Laplacian", rule.policy().name());
    }
    Ok(BoundarySpec { policy: rule.policy(), boundary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_index_edges(n, &edges)
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_index_edges(n, &edges)
    }

    fn set(g: &Graph, ids: &[usize]) -> NodeSet {
        NodeSet::new(g.node_count(), ids.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge() {
        let (g, report) = build_graph([("a", "b")]).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(report, CleaningReport::default());
    }

    #[test]
    fn cleaning_counts_duplicates_and_loops() {
        let (g, report) = build_graph([("a", "b"), ("b", "a"), ("b", "b")]).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(report, CleaningReport { duplicates: 1, self_loops: 1 });
    }

    #[test]
    fn empty_after_cleaning() {
        assert!(matches!(build_graph([("a", "a")]), Err(Error::EmptyGraph)));
        assert!(matches!(build_graph(Vec::<(&str, &str)>::new()), Err(Error::EmptyGraph)));
    }

    #[test]
    fn first_seen_ids() {
        let (g, _) = build_graph([("x", "y"), ("z", "x")]).unwrap();
        assert_eq!(g.labels(), ["x", "y", "z"]);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn volume_examples() {
        let k2 = path(2);
        assert_eq!(volume(&k2, &set(&k2, &[0])), 1);
        let c4 = cycle(4);
        assert_eq!(volume(&c4, &set(&c4, &[0, 1])), 4);
    }

    #[test]
    fn edge_boundary_examples() {
        let p3 = path(3);
        assert_eq!(edge_boundary(&p3, &set(&p3, &[1])), 2);
        let c4 = cycle(4);
        assert_eq!(edge_boundary(&c4, &set(&c4, &[0, 1])), 2);
    }

    #[test]
    fn components_examples() {
        let p3 = path(3);
        assert_eq!(components(&p3, &p3.all_nodes()).unwrap(), 1);
        assert_eq!(components(&p3, &set(&p3, &[0, 2])).unwrap(), 2);
        assert!(matches!(components(&p3, &NodeSet::empty(3)), Err(Error::EmptySet)));
    }

    #[test]
    fn median_examples() {
        assert_eq!(one_median(&path(3)).unwrap(), 1);
        let star = Graph::from_index_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(one_median(&star).unwrap(), 0);
        let disconnected = Graph::from_index_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(one_median(&disconnected), Err(Error::Disconnected)));
        // Even path: both middle nodes tie, smallest id wins.
        assert_eq!(one_median(&path(4)).unwrap(), 1);
    }

    #[test]
    fn ball_examples() {
        let p5 = path(5);
        assert_eq!(ball(&p5, 2, 0).ids(), &[2]);
        assert_eq!(ball(&p5, 2, 1).ids(), &[1, 2, 3]);
        assert!(ball(&p5, 2, p5.eccentricity(2)).is_full());
    }

    #[test]
    fn node_set_validation() {
        assert!(matches!(NodeSet::new(3, [3]), Err(Error::NodeOutOfRange { id: 3, node_count: 3 })));
        let s = NodeSet::new(5, [4, 1, 1]).unwrap();
        assert_eq!(s.ids(), &[1, 4]);
        assert_eq!(s.complement().ids(), &[0, 2, 3]);
    }

    #[test]
    fn boundary_policies() {
        let p3 = path(3);
        let b = resolve_boundary(&p3, &BoundaryRule::DegreeOne).unwrap();
        assert_eq!(b.boundary().ids(), &[0, 2]);
        assert_eq!(b.interior().ids(), &[1]);
        assert!(matches!(resolve_boundary(&path(2), &BoundaryRule::DegreeOne), Err(Error::NoInterior)));
        let c4 = cycle(4);
        assert!(resolve_boundary(&c4, &BoundaryRule::DegreeOne).unwrap().boundary().is_empty());
        assert!(matches!(resolve_boundary(&c4, &BoundaryRule::Explicit(vec![9])), Err(Error::NodeOutOfRange { .. })));
        assert!(matches!(resolve_boundary(&c4, &BoundaryRule::GridPerimeter), Err(Error::NoInterior)));
    }

    #[test]
    fn radius_cut_marks_outgoing_and_parent_leaves() {
        // 0-1-2-3-4 with a pendant 5 hanging off 1.
        let g = Graph::from_index_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]);
        let sub = g.induced(&ball(&g, 1, 1));
        assert_eq!(sub.parent_ids, vec![0, 1, 2, 5]);
        let b = resolve_boundary(&sub.graph, &BoundaryRule::RadiusCut { parent: &g, subgraph: &sub }).unwrap();
        let parents: Vec<usize> = b.boundary().iter().map(|&v| sub.parent_ids[v]).collect();
        assert_eq!(parents, vec![0, 2, 5]);
    }

    #[test]
    fn largest_component_picks_biggest() {
        let g = Graph::from_index_edges(6, &[(0, 1), (2, 3), (3, 4), (4, 5)]);
        let lcc = g.largest_component();
        assert_eq!(lcc.parent_ids, vec![2, 3, 4, 5]);
        assert!(lcc.graph.is_connected());
        assert_eq!(lcc.graph.label(0), "2");
    }

    #[test]
    fn label_equality_ignores_ids() {
        let (a, _) = build_graph([("x", "y"), ("y", "z")]).unwrap();
        let (b, _) = build_graph([("z", "y"), ("y", "x")]).unwrap();
        assert_eq!(a, b);
        let (c, _) = build_graph([("x", "y"), ("x", "z")]).unwrap();
        assert_ne!(a, c);
    }
}
