//! Reduction of a dense high-girth graph to a bipartite, almost-regular
//! subgraph: bipartite extraction, maximum-degree capping and
//! minimum-degree peeling.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bounds::gamma_constant;
use crate::graph::{DegreeProfile, Graph, Vertex, VertexSet};

/// Bookkeeping for one reduction stage.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: String,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    /// Peeling rounds, or local-move flips for the bipartite stage.
    pub iterations: usize,
    pub threshold: Option<f64>,
    pub removed_vertices: usize,
}

/// A stage's output graph with the map back to its input's vertex ids.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: Graph,
    pub new_to_old: Vec<Vertex>,
    pub stage: StageRecord,
}

impl Reduced {
    fn from_induced(g: &Graph, keep: &VertexSet, mut stage: StageRecord) -> Reduced {
        let sub = g.induced_subgraph(keep);
        stage.vertices_after = sub.graph.num_vertices();
        stage.edges_after = sub.graph.num_edges();
        stage.removed_vertices = stage.vertices_before - stage.vertices_after;
        Reduced {
            graph: sub.graph,
            new_to_old: sub.new_to_old,
            stage,
        }
    }
}

fn blank_stage(name: &str, g: &Graph, threshold: Option<f64>) -> StageRecord {
    StageRecord {
        stage: name.to_string(),
        vertices_before: g.num_vertices(),
        vertices_after: g.num_vertices(),
        edges_before: g.num_edges(),
        edges_after: g.num_edges(),
        iterations: 0,
        threshold,
        removed_vertices: 0,
    }
}

/// Spanning bipartite subgraph keeping at least half of the edges.
///
/// Vertices are first colored greedily in BFS order (each takes the side
/// with fewer already-colored neighbors, ties going opposite its BFS
/// parent), which is exact on bipartite inputs. Then any vertex with more
/// same-side than cross-side neighbors is flipped, scanning lowest index
/// first, until a local optimum; every flip grows the cut, so at most
/// `e` flips happen. Only cross edges are kept.
pub fn bipartite_half(g: &Graph) -> Reduced {
    let n = g.num_vertices();
    let mut side = vec![u8::MAX; n];
    let mut discovered = VertexSet::new(n);
    let mut parent = vec![Vertex::MAX; n];
    let mut queue = VecDeque::new();
    for start in g.vertices() {
        if !discovered.insert(start) {
            continue;
        }
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let mut on_side = [0usize; 2];
            for &w in g.neighbors(v) {
                if side[w as usize] != u8::MAX {
                    on_side[side[w as usize] as usize] += 1;
                }
                if discovered.insert(w) {
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
            let preferred = match parent[v as usize] {
                Vertex::MAX => 0,
                p => 1 - side[p as usize],
            };
            // Joining side s conflicts with the on_side[s] neighbors there.
            side[v as usize] = match on_side[0].cmp(&on_side[1]) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => preferred,
            };
        }
    }

    let flip_cap = n.saturating_mul(g.num_edges()).max(1);
    let mut flips = 0;
    loop {
        let mut changed = false;
        for v in g.vertices() {
            let s = side[v as usize];
            let same = g.neighbors(v).iter().filter(|&&w| side[w as usize] == s).count();
            if 2 * same > g.degree(v) {
                side[v as usize] = 1 - s;
                flips += 1;
                changed = true;
            }
        }
        if !changed || flips >= flip_cap {
            break;
        }
    }

    let adjacency = g
        .vertices()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| side[w as usize] != side[v as usize])
                .collect()
        })
        .collect();
    let graph = Graph::from_adjacency(adjacency);
    let mut stage = blank_stage("bipartite_half", g, None);
    stage.edges_after = graph.num_edges();
    stage.iterations = flips;
    Reduced {
        graph,
        new_to_old: g.vertices().collect(),
        stage,
    }
}

/// Largest induced subgraph in which every vertex has degree `>= t`.
///
/// Peels in synchronous rounds (all vertices below `t` at once); the round
/// count is recorded as the stage's iterations. The fixpoint does not depend
/// on the peeling order.
pub fn prune_min_degree(g: &Graph, t: f64) -> Reduced {
    let n = g.num_vertices();
    let below = |d: usize| (d as f64) < t;
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = VertexSet::full(n);
    let mut round: Vec<Vertex> = g.vertices().filter(|&v| below(degree[v as usize])).collect();
    let mut rounds = 0;
    while !round.is_empty() {
        rounds += 1;
        for &v in &round {
            alive.remove(v);
        }
        let mut next = Vec::new();
        for &v in &round {
            for &w in g.neighbors(v) {
                if alive.contains(w) {
                    let d = &mut degree[w as usize];
                    let was_below = below(*d);
                    *d -= 1;
                    if !was_below && below(*d) {
                        next.push(w);
                    }
                }
            }
        }
        round = next;
    }
    let mut stage = blank_stage("prune_min_degree", g, Some(t));
    stage.iterations = rounds;
    Reduced::from_induced(g, &alive, stage)
}

/// Sequential peeling that always removes the first eligible vertex of
/// `order`. Same fixpoint as [`prune_min_degree`]; exists to exercise order
/// independence.
pub fn prune_min_degree_in_order(g: &Graph, t: f64, order: &[Vertex]) -> VertexSet {
    let mut alive = VertexSet::full(g.num_vertices());
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    while let Some(&v) = order
        .iter()
        .find(|&&v| alive.contains(v) && (degree[v as usize] as f64) < t)
    {
        alive.remove(v);
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                degree[w as usize] -= 1;
            }
        }
    }
    alive
}

/// Induced subgraph on the vertices of degree strictly below `threshold`.
pub fn cap_max_degree(g: &Graph, threshold: f64) -> Reduced {
    let keep = VertexSet::from_vertices(
        g.num_vertices(),
        g.vertices().filter(|&v| (g.degree(v) as f64) < threshold),
    );
    let mut stage = blank_stage("cap_max_degree", g, Some(threshold));
    stage.iterations = 1;
    Reduced::from_induced(g, &keep, stage)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub m: usize,
    pub c: f64,
    pub original_n: usize,
    pub original_edges: usize,
    pub gamma: f64,
    pub stages: Vec<StageRecord>,
    /// Normalized by the final graph's own order.
    pub final_profile: DegreeProfile,
    /// Normalized by the original order, as the thresholds are.
    pub final_profile_original_n: DegreeProfile,
    pub precondition_ok: bool,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub graph: Graph,
    /// Final vertex id to the input graph's vertex id.
    pub new_to_old: Vec<Vertex>,
    pub report: ReductionReport,
}

/// Bipartite extraction, then capping at `γ·n^{1/m}`, then peeling at
/// `(c/10)·n^{1/m}`, with `n` the input's order throughout.
///
/// Precondition failures (girth `<= 2m`, or fewer than `c·n^{1+1/m}`
/// edges) are recorded as warnings; the stages still run.
pub fn almost_regular_pipeline(g: &Graph, m: usize, c: f64) -> PipelineOutput {
    assert!(m >= 1, "m must be positive");
    let n = g.num_vertices();
    let scale = (n as f64).powf(1.0 / m as f64);
    let edge_floor = c * n as f64 * scale;
    let input_girth = g.girth();

    let mut warnings = Vec::new();
    if input_girth.is_some_and(|girth| girth <= 2 * m) {
        warnings.push(format!(
            "girth {} does not exceed 2m = {}",
            input_girth.unwrap(),
            2 * m
        ));
    }
    if (g.num_edges() as f64) < edge_floor {
        warnings.push(format!(
            "{} edges is below c*n^(1+1/m) = {edge_floor:.3}",
            g.num_edges()
        ));
    }

    let gamma = gamma_constant(c, m);
    let cap_threshold = gamma * scale;
    let prune_threshold = c / 10.0 * scale;

    let half = bipartite_half(g);
    let capped = cap_max_degree(&half.graph, cap_threshold);
    let pruned = prune_min_degree(&capped.graph, prune_threshold);

    let new_to_old: Vec<Vertex> = pruned
        .new_to_old
        .iter()
        .map(|&v| half.new_to_old[capped.new_to_old[v as usize] as usize])
        .collect();

    let out = &pruned.graph;
    let mut checks = vec![
        Check {
            name: "min_degree_at_least_threshold".into(),
            holds: out.vertices().all(|v| out.degree(v) as f64 >= prune_threshold),
            detail: format!("min degree {} vs t = {prune_threshold:.6}", out.min_degree()),
        },
        Check {
            name: "bipartite_keeps_half".into(),
            holds: 2 * half.graph.num_edges() >= g.num_edges() && half.graph.is_bipartite(),
            detail: format!("{} of {} edges kept", half.graph.num_edges(), g.num_edges()),
        },
    ];
    let floor = capped.graph.num_edges() as f64 - capped.graph.num_vertices() as f64 * prune_threshold;
    checks.push(Check {
        name: "prune_edge_floor".into(),
        holds: out.num_edges() as f64 >= floor,
        detail: format!("{} edges vs floor {floor:.3}", out.num_edges()),
    });
    let output_girth = out.girth();
    checks.push(Check {
        name: "girth_not_decreased".into(),
        holds: match (input_girth, output_girth) {
            (Some(a), Some(b)) => b >= a,
            (None, Some(_)) => false,
            _ => true,
        },
        detail: format!("input {input_girth:?}, output {output_girth:?}"),
    });
    if warnings.is_empty() {
        // Informational: halving and capping may already cost more than a tenth.
        let floor = 0.9 * c * n as f64 * scale;
        checks.push(Check {
            name: "nine_tenths_edge_floor".into(),
            holds: out.num_edges() as f64 >= floor,
            detail: format!("{} edges vs 0.9*c*n^(1+1/m) = {floor:.3}", out.num_edges()),
        });
    }

    let report = ReductionReport {
        m,
        c,
        original_n: n,
        original_edges: g.num_edges(),
        gamma,
        stages: vec![half.stage, capped.stage, pruned.stage.clone()],
        final_profile: out.degree_profile(m),
        final_profile_original_n: DegreeProfile::with_reference_n(out, m, n),
        precondition_ok: warnings.is_empty(),
        warnings,
        checks,
    };
    PipelineOutput {
        graph: pruned.graph,
        new_to_old,
        report,
    }
}
