//! The view of a graph from one root `x`: distance layers up to `m + 1`,
//! the unique tree paths into layers `<= m`, the bipartite graph `G_x`
//! induced on the two outermost layers, and its minimum-degree core `H_x`.

mod closure;
mod witness;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, InducedSubgraph, Vertex, VertexSet, NONE};
use crate::reduction::prune_min_degree;

pub use closure::{close_path, enumerate_layer_paths, for_each_layer_path, ClosureResult, LayerPath, LayerPathStats};
pub use witness::{constructive_cycle_count, constructive_cycles, WitnessSet, WitnessTally};

const UNREACHED: u8 = u8::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootViewError {
    #[error("root {root} out of range for n = {n}")]
    RootOutOfRange { root: Vertex, n: usize },
    #[error("m = {0} unsupported (need 1 <= m <= 200)")]
    BadM(usize),
    #[error("vertex {vertex} has two parents from root {root}; short cycle {cycle:?}")]
    ShortCycle { root: Vertex, vertex: Vertex, cycle: Vec<Vertex> },
    #[error("edge ({u}, {v}) inside layer {layer} from root {root}; graph is not bipartite")]
    IntraLayerEdge { root: Vertex, u: Vertex, v: Vertex, layer: usize },
    #[error("vertex {0} is not within the recorded layers")]
    NotInLayers(Vertex),
    #[error("vertex {0} lies in the outer layer; a witness neighbor in the layer below is required")]
    MissingWitness(Vertex),
    #[error("{witness} is not a down-neighbor of {vertex}")]
    BadWitness { vertex: Vertex, witness: Vertex },
    #[error("path does not match the closure mode: {0}")]
    SideMismatch(String),
    #[error("not a path of H_x: {0}")]
    InvalidPath(String),
    #[error("girth {girth:?} does not exceed 2m = {}", 2 * m)]
    GirthTooSmall { girth: Option<usize>, m: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("cycle half-length {ell} must be at least m + 1 = {}", m + 1)]
    EllTooSmall { ell: usize, m: usize },
}

#[derive(Clone, Debug)]
pub struct RootView {
    root: Vertex,
    m: usize,
    depth: Vec<u8>,
    layers: Vec<VertexSet>,
    parent: Vec<Vertex>,
    gx: InducedSubgraph,
    hx: Graph,
    hx_to_global: Vec<Vertex>,
    global_to_hx: Vec<Vertex>,
    hx_threshold: f64,
}

/// `(c1^{m+1} / 10) · n^{1/m}` with `c1` measured on `g`: the peeling
/// threshold that turns `G_x` into `H_x`.
pub fn default_hx_threshold(g: &Graph, m: usize) -> f64 {
    let profile = g.degree_profile(m);
    let scale = (g.num_vertices() as f64).powf(1.0 / m as f64);
    profile.c1.powi(m as i32 + 1) / 10.0 * scale
}

/// Builds the view from root `x`.
///
/// Fails with [`RootViewError::ShortCycle`] when some vertex within distance
/// `m` has two neighbors one layer closer (a cycle of length `<= 2m`), and
/// with [`RootViewError::IntraLayerEdge`] on an edge inside a layer.
pub fn build_root_view(
    g: &Graph,
    x: Vertex,
    m: usize,
    prune_threshold: Option<f64>,
) -> Result<RootView, RootViewError> {
    let n = g.num_vertices();
    if x as usize >= n {
        return Err(RootViewError::RootOutOfRange { root: x, n });
    }
    if m == 0 || m > 200 {
        return Err(RootViewError::BadM(m));
    }
    let layers = g.bfs_layers(x, m + 1);
    let mut depth = vec![UNREACHED; n];
    for (i, layer) in layers.iter().enumerate() {
        for v in layer.iter() {
            depth[v as usize] = i as u8;
        }
    }

    let mut parent = vec![NONE; n];
    for (i, layer) in layers.iter().enumerate().skip(1) {
        for v in layer.iter() {
            let mut down = None;
            for &w in g.neighbors(v) {
                let dw = depth[w as usize];
                if dw as usize == i && v < w {
                    return Err(RootViewError::IntraLayerEdge { root: x, u: v, v: w, layer: i });
                }
                if i <= m && dw as usize + 1 == i {
                    if let Some(first) = down {
                        let cycle = two_parent_cycle(&parent, v, first, w);
                        return Err(RootViewError::ShortCycle { root: x, vertex: v, cycle });
                    }
                    down = Some(w);
                }
            }
            if i <= m {
                parent[v as usize] = down.expect("BFS layer member has a down-neighbor");
            }
        }
    }

    let outer = VertexSet::from_vertices(n, layers[m].iter().chain(layers[m + 1].iter()));
    let gx = g.induced_subgraph(&outer);
    let threshold = prune_threshold.unwrap_or_else(|| default_hx_threshold(g, m));
    let pruned = prune_min_degree(&gx.graph, threshold);
    let hx_to_global: Vec<Vertex> = pruned
        .new_to_old
        .iter()
        .map(|&local| gx.new_to_old[local as usize])
        .collect();
    let mut global_to_hx = vec![NONE; n];
    for (i, &v) in hx_to_global.iter().enumerate() {
        global_to_hx[v as usize] = i as Vertex;
    }
    Ok(RootView {
        root: x,
        m,
        depth,
        layers,
        parent,
        gx,
        hx: pruned.graph,
        hx_to_global,
        global_to_hx,
        hx_threshold: threshold,
    })
}

/// Cycle through `v` and its two down-neighbors `a`, `b`, closed at the
/// point where their tree paths meet.
fn two_parent_cycle(parent: &[Vertex], v: Vertex, a: Vertex, b: Vertex) -> Vec<Vertex> {
    let (mut left, mut right) = (vec![a], vec![b]);
    let (mut p, mut q) = (a, b);
    while p != q {
        p = parent[p as usize];
        q = parent[q as usize];
        left.push(p);
        right.push(q);
    }
    right.pop();
    let mut cycle = vec![v];
    cycle.extend(left);
    cycle.extend(right.into_iter().rev());
    cycle
}

impl RootView {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `Γ^0 .. Γ^{m+1}`.
    pub fn layers(&self) -> &[VertexSet] {
        &self.layers
    }

    pub fn depth(&self, v: Vertex) -> Option<usize> {
        match self.depth.get(v as usize) {
            Some(&d) if d != UNREACHED => Some(d as usize),
            _ => None,
        }
    }

    #[inline]
    pub(crate) fn depth_raw(&self, v: Vertex) -> u8 {
        self.depth[v as usize]
    }

    /// The unique neighbor one layer closer, for vertices in `Γ^1 .. Γ^m`.
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(v as usize).copied().filter(|&p| p != NONE)
    }

    #[inline]
    pub(crate) fn parent_raw(&self, v: Vertex) -> Vertex {
        self.parent[v as usize]
    }

    /// `G_x` in local ids, with its maps to and from the ambient graph.
    pub fn gx(&self) -> &InducedSubgraph {
        &self.gx
    }

    pub fn hx(&self) -> &Graph {
        &self.hx
    }

    pub fn hx_threshold(&self) -> f64 {
        self.hx_threshold
    }

    pub fn hx_global(&self, local: Vertex) -> Vertex {
        self.hx_to_global[local as usize]
    }

    pub fn hx_local(&self, global: Vertex) -> Option<Vertex> {
        self.global_to_hx
            .get(global as usize)
            .copied()
            .filter(|&v| v != NONE)
    }

    #[inline]
    pub(crate) fn in_hx(&self, global: Vertex) -> bool {
        self.global_to_hx[global as usize] != NONE
    }

    /// Side `A_x = Γ^m` of `G_x`.
    pub fn in_side_a(&self, v: Vertex) -> bool {
        self.depth(v) == Some(self.m)
    }

    /// Side `B_x = Γ^{m+1}` of `G_x`.
    pub fn in_side_b(&self, v: Vertex) -> bool {
        self.depth(v) == Some(self.m + 1)
    }

    /// Global neighbors of `v` within `G_x`.
    pub fn gx_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let local = self.gx.new_id(v);
        local
            .into_iter()
            .flat_map(move |l| self.gx.graph.neighbors(l).iter())
            .map(move |&w| self.gx.new_to_old[w as usize])
    }

    /// The path `x = p_0, p_1, …, p_i = w` of length `depth(w)`.
    ///
    /// Tree paths are unique only up to layer `m`; for `w` in `Γ^{m+1}` a
    /// down-neighbor `witness` in `Γ^m` fixes the last step.
    pub fn tree_path(&self, w: Vertex, witness: Option<Vertex>) -> Result<Vec<Vertex>, RootViewError> {
        let d = self.depth(w).ok_or(RootViewError::NotInLayers(w))?;
        if d == self.m + 1 {
            let y = witness.ok_or(RootViewError::MissingWitness(w))?;
            if !self.in_side_a(y) || !self.gx_neighbors(w).any(|u| u == y) {
                return Err(RootViewError::BadWitness { vertex: w, witness: y });
            }
            let mut path = self.tree_path(y, None)?;
            path.push(w);
            return Ok(path);
        }
        let mut path = Vec::with_capacity(d + 1);
        let mut v = w;
        path.push(v);
        while v != self.root {
            v = self.parent_raw(v);
            path.push(v);
        }
        path.reverse();
        Ok(path)
    }
}

/// Two tree paths that share an internal vertex although their endpoints
/// have a common outer-layer neighbor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessWitness {
    pub outer: Vertex,
    pub y1: Vertex,
    pub y2: Vertex,
    pub shared: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessReport {
    pub root: Vertex,
    pub pairs_checked: u64,
    pub pass: bool,
    pub counterexample: Option<DisjointnessWitness>,
}

/// For every `w` in `Γ^{m+1}` and every pair of its neighbors `y1, y2` in
/// `Γ^m`, checks that the tree paths to `y1` and `y2` share no vertex other
/// than the root. A failure exhibits a cycle of length `<= 2m`.
pub fn check_disjoint_tree_paths(view: &RootView) -> DisjointnessReport {
    let m = view.m;
    let mut pairs_checked = 0;
    for w in view.layers[m + 1].iter() {
        let down: Vec<Vertex> = view.gx_neighbors(w).collect();
        let internals: Vec<Vec<Vertex>> = down
            .iter()
            .map(|&y| {
                let path = view.tree_path(y, None).expect("Γ^m vertices have tree paths");
                path[1..path.len() - 1].to_vec()
            })
            .collect();
        for i in 0..down.len() {
            for j in i + 1..down.len() {
                pairs_checked += 1;
                let shared: Vec<Vertex> = internals[i]
                    .iter()
                    .copied()
                    .filter(|v| internals[j].contains(v))
                    .collect();
                if !shared.is_empty() {
                    return DisjointnessReport {
                        root: view.root,
                        pairs_checked,
                        pass: false,
                        counterexample: Some(DisjointnessWitness {
                            outer: w,
                            y1: down[i],
                            y2: down[j],
                            shared,
                        }),
                    };
                }
            }
        }
    }
    DisjointnessReport {
        root: view.root,
        pairs_checked,
        pass: true,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, projective_plane_incidence};

    fn heawood() -> Graph {
        projective_plane_incidence(2).unwrap().graph
    }

    /// Root 0 with child 1; 1 has children 2 and 3, both adjacent to 4.
    /// The 4-cycle 1-2-4-3 is invisible to parent uniqueness but breaks
    /// tree-path disjointness.
    pub(crate) fn injected_four_cycle() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn heawood_layers() {
        let g = heawood();
        for x in g.vertices() {
            let view = build_root_view(&g, x, 2, None).unwrap();
            let sizes: Vec<usize> = view.layers().iter().map(VertexSet::len).collect();
            assert_eq!(sizes, vec![1, 3, 6, 4]);
            let gx = &view.gx().graph;
            assert_eq!(gx.num_vertices(), 10);
            assert!(gx.is_bipartite());
            assert_eq!(view.hx().num_vertices(), 10);
        }
    }

    #[test]
    fn c6_view() {
        let g = cycle(6).unwrap();
        let view = build_root_view(&g, 0, 2, None).unwrap();
        let sizes: Vec<usize> = view.layers().iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        assert_eq!(view.gx().graph.num_edges(), 2);
        assert!(view.in_side_b(3));
        assert!(view.in_side_a(2) && view.in_side_a(4));
    }

    #[test]
    fn triangle_is_rejected() {
        let g = cycle(3).unwrap();
        assert!(matches!(
            build_root_view(&g, 0, 2, None),
            Err(RootViewError::IntraLayerEdge { layer: 1, .. })
        ));
    }

    #[test]
    fn short_even_cycle_names_the_cycle() {
        let g = cycle(4).unwrap();
        match build_root_view(&g, 0, 2, None) {
            Err(RootViewError::ShortCycle { vertex, cycle, .. }) => {
                assert_eq!(vertex, 2);
                assert_eq!(cycle.len(), 4);
                for i in 0..4 {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % 4]));
                }
            }
            other => panic!("expected short cycle, got {other:?}"),
        }
    }

    #[test]
    fn tree_paths() {
        let g = heawood();
        let view = build_root_view(&g, 0, 2, None).unwrap();
        assert_eq!(view.tree_path(0, None).unwrap(), vec![0]);
        let child = g.neighbors(0)[0];
        assert_eq!(view.tree_path(child, None).unwrap(), vec![0, child]);
        for y in view.layers()[2].iter() {
            let p = view.tree_path(y, None).unwrap();
            assert_eq!(p.len(), 3);
            assert!(g.has_edge(p[0], p[1]) && g.has_edge(p[1], p[2]));
            // Exhaustive uniqueness: exactly one common neighbor of 0 and y.
            let common = g.neighbors(0).iter().filter(|&&a| g.has_edge(a, y)).count();
            assert_eq!(common, 1);
        }
        let outer = view.layers()[3].iter().next().unwrap();
        assert_eq!(view.tree_path(outer, None), Err(RootViewError::MissingWitness(outer)));
        let y = view.gx_neighbors(outer).next().unwrap();
        assert_eq!(view.tree_path(outer, Some(y)).unwrap().len(), 4);
        assert!(matches!(
            view.tree_path(outer, Some(child)),
            Err(RootViewError::BadWitness { .. })
        ));
    }

    #[test]
    fn disjointness() {
        let g = heawood();
        for x in g.vertices() {
            let report = check_disjoint_tree_paths(&build_root_view(&g, x, 2, None).unwrap());
            assert!(report.pass);
            assert_eq!(report.pairs_checked, 4 * 3);
        }
        let c6 = cycle(6).unwrap();
        assert!(check_disjoint_tree_paths(&build_root_view(&c6, 0, 2, None).unwrap()).pass);

        let bad = injected_four_cycle();
        let report = check_disjoint_tree_paths(&build_root_view(&bad, 0, 2, None).unwrap());
        assert!(!report.pass);
        let w = report.counterexample.unwrap();
        assert_eq!((w.outer, w.y1, w.y2, w.shared), (4, 2, 3, vec![1]));
    }
}
