//! Immutable simple undirected graphs in compressed adjacency form, with the
//! structural queries the rest of the crate builds on.

mod io;
mod vertex_set;

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

pub use io::{parse_edge_list, read_edge_list, write_edge_list, EdgeListFile};
pub use vertex_set::VertexSet;

pub type Vertex = u32;

/// Sentinel for "no vertex" in dense per-vertex tables.
pub(crate) const NONE: Vertex = Vertex::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("endpoint {vertex} out of range for n = {n}")]
    OutOfRange { vertex: u64, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending and symmetric; the representation is
/// CSR-style (one offset table, one flat target array).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Validating constructor: rejects `n = 0`, self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::OutOfRange { vertex: w as u64, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u as Vertex, w[0]);
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        Ok(Self::from_adjacency(adjacency))
    }

    /// Builds from adjacency lists that are already symmetric and free of
    /// loops and duplicates. Allows the zero-vertex graph, which pipeline
    /// stages may legitimately produce.
    pub(crate) fn from_adjacency(mut adjacency: Vec<Vec<Vertex>>) -> Graph {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for list in &mut adjacency {
            list.sort_unstable();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        debug_assert_eq!(targets.len() % 2, 0);
        Graph { offsets, targets }
    }

    /// Edgeless graph on `n` vertices (possibly zero).
    pub fn edgeless(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.num_vertices() as Vertex
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_profile(&self, m: usize) -> DegreeProfile {
        DegreeProfile::with_reference_n(self, m, self.num_vertices())
    }

    /// Length of a shortest cycle, or `None` for forests.
    ///
    /// BFS from every vertex; a non-tree edge `(u, w)` met from root `r`
    /// closes a walk of length `d(u) + d(w) + 1` that contains a cycle, and
    /// the root lying on a shortest cycle realizes the girth exactly.
    pub fn girth(&self) -> Option<usize> {
        let n = self.num_vertices();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![NONE; n];
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            dist.fill(usize::MAX);
            parent.fill(NONE);
            dist[root as usize] = 0;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                let du = dist[u as usize];
                if 2 * du >= best {
                    break;
                }
                for &w in self.neighbors(u) {
                    if dist[w as usize] == usize::MAX {
                        dist[w as usize] = du + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w {
                        best = best.min(du + dist[w as usize] + 1);
                        if best <= 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 3 {
                break;
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// First cycle of length `< bound` met by BFS from roots in ascending
    /// order (neighbors ascending). The returned cycle is simple and starts
    /// at the meeting point of the two tree branches.
    pub fn find_short_cycle(&self, bound: usize) -> Option<Vec<Vertex>> {
        let n = self.num_vertices();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![NONE; n];
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            dist.fill(usize::MAX);
            parent.fill(NONE);
            dist[root as usize] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let du = dist[u as usize];
                if 2 * du >= bound {
                    break;
                }
                for &w in self.neighbors(u) {
                    if dist[w as usize] == usize::MAX {
                        dist[w as usize] = du + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w && du + dist[w as usize] + 1 < bound {
                        return Some(close_tree_branches(&parent, u, w));
                    }
                }
            }
        }
        None
    }

    /// Distance layers `Γ^0(x), …, Γ^depth(x)`.
    pub fn bfs_layers(&self, x: Vertex, depth: usize) -> Vec<VertexSet> {
        let n = self.num_vertices();
        let mut layers = vec![VertexSet::new(n); depth + 1];
        let mut seen = VertexSet::new(n);
        seen.insert(x);
        layers[0].insert(x);
        let mut frontier = vec![x];
        for layer in layers.iter_mut().skip(1) {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        layer.insert(w);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        layers
    }

    /// Proper 2-coloring if one exists. In each component the lowest vertex
    /// gets side 0.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let n = self.num_vertices();
        let mut side = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for start in self.vertices() {
            if side[start as usize] != u8::MAX {
                continue;
            }
            side[start as usize] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let su = side[u as usize];
                for &w in self.neighbors(u) {
                    match side[w as usize] {
                        u8::MAX => {
                            side[w as usize] = 1 - su;
                            queue.push_back(w);
                        }
                        sw if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(Bipartition { side })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced by `keep`, relabeled to `0..|keep|` preserving order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> InducedSubgraph {
        let n = self.num_vertices();
        let mut old_to_new = vec![NONE; n];
        let new_to_old: Vec<Vertex> = keep.iter().filter(|&v| (v as usize) < n).collect();
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v as usize] = i as Vertex;
        }
        let adjacency = new_to_old
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| Some(old_to_new[w as usize]).filter(|&x| x != NONE))
                    .collect()
            })
            .collect();
        InducedSubgraph {
            graph: Graph::from_adjacency(adjacency),
            old_to_new,
            new_to_old,
        }
    }

    /// Copy with the given edges removed (edges absent from the graph are ignored).
    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> Graph {
        let mut adjacency: Vec<Vec<Vertex>> =
            self.vertices().map(|v| self.neighbors(v).to_vec()).collect();
        for &(u, v) in removed {
            adjacency[u as usize].retain(|&w| w != v);
            adjacency[v as usize].retain(|&w| w != u);
        }
        Graph::from_adjacency(adjacency)
    }
}

/// Walks the two BFS tree branches ending at `u` and `w` back to their
/// lowest common ancestor and joins them with the edge `(u, w)`.
fn close_tree_branches(parent: &[Vertex], u: Vertex, w: Vertex) -> Vec<Vertex> {
    let branch = |mut v: Vertex| {
        let mut path = vec![v];
        while parent[v as usize] != NONE {
            v = parent[v as usize];
            path.push(v);
        }
        path.reverse();
        path
    };
    let (pu, pw) = (branch(u), branch(w));
    let common = pu.iter().zip(&pw).take_while(|(a, b)| a == b).count();
    let mut cycle = pu[common - 1..].to_vec();
    cycle.extend(pw[common..].iter().rev());
    cycle
}

/// 2-coloring stored as one side bit per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
}

impl Bipartition {
    pub fn from_sides(side: Vec<u8>) -> Self {
        Bipartition { side }
    }

    pub fn side(&self, v: Vertex) -> u8 {
        self.side[v as usize]
    }

    pub fn sides(&self) -> [VertexSet; 2] {
        let n = self.side.len();
        let mut sets = [VertexSet::new(n), VertexSet::new(n)];
        for (v, &s) in self.side.iter().enumerate() {
            sets[s as usize].insert(v as Vertex);
        }
        sets
    }
}

/// Result of [`Graph::induced_subgraph`] with the vertex maps in both directions.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Indexed by parent vertex; `u32::MAX` for dropped vertices.
    pub old_to_new: Vec<Vertex>,
    pub new_to_old: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn new_id(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new
            .get(old as usize)
            .copied()
            .filter(|&v| v != NONE)
    }
}

/// Extreme degrees normalized by `n^{1/m}`: the almost-regularity constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub c1: f64,
    pub c2: f64,
}

impl DegreeProfile {
    /// Profile of `g` normalized by `reference_n^{1/m}` instead of `g`'s own order.
    pub fn with_reference_n(g: &Graph, m: usize, reference_n: usize) -> Self {
        assert!(m >= 1, "m must be positive");
        let scale = (reference_n as f64).powf(1.0 / m as f64);
        let (min_degree, max_degree) = (g.min_degree(), g.max_degree());
        let normalize = |d: usize| if scale > 0.0 { d as f64 / scale } else { 0.0 };
        DegreeProfile {
            n: reference_n,
            m,
            min_degree,
            max_degree,
            c1: normalize(min_degree),
            c2: normalize(max_degree),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n as Vertex)
            .map(|i| (i, (i + 1) % n as Vertex))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn heawood() -> Graph {
        // LCF [5, -5]^7
        let mut edges = Vec::new();
        for i in 0..14u32 {
            edges.push((i, (i + 1) % 14));
            if i % 2 == 0 {
                edges.push((i, (i + 5) % 14));
            }
        }
        Graph::from_edges(14, &edges).unwrap()
    }

    #[test]
    fn build_rejections() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        ));
        assert_eq!(Graph::from_edges(0, &[]), Err(GraphError::Empty));
        let empty = Graph::from_edges(5, &[]).unwrap();
        assert_eq!((empty.num_vertices(), empty.num_edges()), (5, 0));
    }

    #[test]
    fn triangle_basics() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.girth(), Some(3));
        assert!(g.bipartition().is_none());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn degree_profiles() {
        let p = cycle(6).degree_profile(2);
        assert_eq!((p.min_degree, p.max_degree), (2, 2));
        assert!((p.c1 - 2.0 / 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(p.c1, p.c2);

        let p = heawood().degree_profile(2);
        assert!((p.c1 - 3.0 / 14f64.sqrt()).abs() < 1e-12);
        assert!((p.c1 - 0.8018).abs() < 1e-4);

        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let p = star.degree_profile(2);
        assert_eq!((p.min_degree, p.max_degree), (1, 4));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(heawood().girth(), Some(6));
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.girth(), None);
    }

    #[test]
    fn short_cycle_is_simple_and_short() {
        let g = heawood();
        assert_eq!(g.find_short_cycle(6), None);
        let c = g.find_short_cycle(7).unwrap();
        assert_eq!(c.len(), 6);
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
        }
        let mut sorted = c.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn layers() {
        let sizes = |g: &Graph, x, d| {
            g.bfs_layers(x, d)
                .iter()
                .map(VertexSet::len)
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes(&cycle(6), 0, 3), vec![1, 2, 2, 1]);
        for x in 0..14 {
            assert_eq!(sizes(&heawood(), x, 3), vec![1, 3, 6, 4]);
        }
        let isolated = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(sizes(&isolated, 0, 2), vec![1, 0, 0]);
    }

    #[test]
    fn bipartitions() {
        let [a, b] = cycle(6).bipartition().unwrap().sides();
        assert_eq!(a.to_vec(), vec![0, 2, 4]);
        assert_eq!(b.to_vec(), vec![1, 3, 5]);
        let [a, b] = heawood().bipartition().unwrap().sides();
        assert_eq!((a.len(), b.len()), (7, 7));
    }

    #[test]
    fn induced() {
        let c6 = cycle(6);
        let sub = c6.induced_subgraph(&VertexSet::from_vertices(6, [0, 1, 2]));
        assert_eq!(sub.graph.num_vertices(), 3);
        assert_eq!(sub.graph.num_edges(), 2);
        let all = c6.induced_subgraph(&VertexSet::full(6));
        assert_eq!(all.graph, c6);
        assert_eq!(all.new_to_old, (0..6).collect::<Vec<_>>());

        let h = heawood();
        let [side, _] = h.bipartition().unwrap().sides();
        let sub = h.induced_subgraph(&side);
        assert_eq!((sub.graph.num_vertices(), sub.graph.num_edges()), (7, 0));
        assert_eq!(sub.new_id(1), None);
        assert_eq!(sub.new_id(2), Some(1));
    }
}
