//! Concrete graph families: fixtures, girth-6 extremal incidence graphs and
//! random graphs with enforced girth.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("cycle needs n >= 3, got {0}")]
    CycleTooShort(usize),
    #[error("q must be prime, got {0}")]
    NotPrime(u32),
    #[error("complete bipartite sides must be nonempty, got ({0}, {1})")]
    EmptySide(usize, usize),
    #[error("random girth graph needs n >= girth >= 3, got n = {n}, girth = {girth}")]
    BadRandomParameters { n: usize, girth: usize },
}

/// Parameters of one generated family member.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Cycle { n: usize },
    CompleteBipartite { a: usize, b: usize },
    ProjectivePlaneIncidence { q: u32 },
    RandomGirthEnforced { n: usize, girth: usize, avg_degree: f64, seed: u64 },
}

/// A generated graph with optional side labels and a provenance line.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub sides: Option<[Vec<Vertex>; 2]>,
    pub description: String,
}

impl Generated {
    /// Comment lines for the edge-list writer: family first, then sides.
    pub fn comments(&self) -> Vec<String> {
        let mut lines = vec![format!("family: {}", self.description)];
        if let Some(sides) = &self.sides {
            for (i, side) in sides.iter().enumerate() {
                let ids: Vec<String> = side.iter().map(u32::to_string).collect();
                lines.push(format!("side{i}: {}", ids.join(" ")));
            }
        }
        lines
    }
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Generated, GeneratorError> {
        match *self {
            GeneratorSpec::Cycle { n } => Ok(Generated {
                graph: cycle(n)?,
                sides: None,
                description: format!("cycle n={n}"),
            }),
            GeneratorSpec::CompleteBipartite { a, b } => Ok(Generated {
                graph: complete_bipartite(a, b)?,
                sides: Some([
                    (0..a as Vertex).collect(),
                    (a as Vertex..(a + b) as Vertex).collect(),
                ]),
                description: format!("complete_bipartite a={a} b={b}"),
            }),
            GeneratorSpec::ProjectivePlaneIncidence { q } => {
                let plane = projective_plane_incidence(q)?;
                Ok(Generated {
                    sides: Some([plane.points().collect(), plane.lines().collect()]),
                    graph: plane.graph,
                    description: format!("projective_plane_incidence q={q}"),
                })
            }
            GeneratorSpec::RandomGirthEnforced { n, girth, avg_degree, seed } => Ok(Generated {
                graph: random_girth_enforced(n, girth, avg_degree, seed)?,
                sides: None,
                description: format!(
                    "random_girth_enforced n={n} girth={girth} avg_degree={avg_degree} seed={seed}"
                ),
            }),
        }
    }
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::CycleTooShort(n));
    }
    let edges: Vec<_> = (0..n)
        .map(|i| (i as Vertex, ((i + 1) % n) as Vertex))
        .collect();
    Ok(Graph::from_edges(n, &edges).expect("cycle edges are valid"))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GeneratorError> {
    if a == 0 || b == 0 {
        return Err(GeneratorError::EmptySide(a, b));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u as Vertex, v as Vertex));
        }
    }
    Ok(Graph::from_edges(a + b, &edges).expect("complete bipartite edges are valid"))
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Point-line incidence graph of PG(2, q) over the prime field.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    pub q: u32,
    pub graph: Graph,
    /// Normalized homogeneous coordinates; point `i` and line `N + i` share `coords[i]`.
    pub coords: Vec<[u32; 3]>,
}

impl ProjectivePlane {
    /// Number of points (equivalently lines): `q² + q + 1`.
    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Vertex> {
        0..self.order() as Vertex
    }

    pub fn lines(&self) -> impl Iterator<Item = Vertex> {
        self.order() as Vertex..2 * self.order() as Vertex
    }
}

/// Points are vertices `0..N`, lines `N..2N`, with `N = q² + q + 1`. Both are
/// nonzero triples over Z/qZ normalized so the first nonzero coordinate is 1,
/// listed lexicographically; a point lies on a line when their dot product
/// vanishes mod q.
pub fn projective_plane_incidence(q: u32) -> Result<ProjectivePlane, GeneratorError> {
    if !is_prime(q) {
        return Err(GeneratorError::NotPrime(q));
    }
    let mut coords = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let first = [a, b, c].into_iter().find(|&x| x != 0);
                if first == Some(1) {
                    coords.push([a, b, c]);
                }
            }
        }
    }
    let order = coords.len();
    debug_assert_eq!(order as u32, q * q + q + 1);
    let q64 = q as u64;
    let mut edges = Vec::with_capacity(order * (q as usize + 1));
    for (p, pc) in coords.iter().enumerate() {
        for (l, lc) in coords.iter().enumerate() {
            let dot: u64 = pc.iter().zip(lc).map(|(&x, &y)| x as u64 * y as u64).sum();
            if dot.is_multiple_of(q64) {
                edges.push((p as Vertex, (order + l) as Vertex));
            }
        }
    }
    let graph = Graph::from_edges(2 * order, &edges).expect("incidence edges are valid");
    Ok(ProjectivePlane { q, graph, coords })
}

/// Samples `round(n * avg_degree / 2)` distinct random edges (capped at the
/// complete graph), then repeatedly deletes the lexicographically smallest
/// edge of the first cycle shorter than `girth` until none remains.
pub fn random_girth_enforced(
    n: usize,
    girth: usize,
    avg_degree: f64,
    seed: u64,
) -> Result<Graph, GeneratorError> {
    if girth < 3 || n < girth {
        return Err(GeneratorError::BadRandomParameters { n, girth });
    }
    let max_edges = n * (n - 1) / 2;
    let target = ((n as f64 * avg_degree.max(0.0) / 2.0).round() as usize).min(max_edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    while edges.len() < target {
        let u = rng.gen_range(0..n as Vertex);
        let v = rng.gen_range(0..n as Vertex);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let mut graph = Graph::from_edges(n, &edges).expect("sampled edges are valid");
    while let Some(short) = graph.find_short_cycle(girth) {
        let victim = (0..short.len())
            .map(|i| {
                let (a, b) = (short[i], short[(i + 1) % short.len()]);
                (a.min(b), a.max(b))
            })
            .min()
            .expect("cycles are nonempty");
        graph = graph.without_edges(&[victim]);
    }
    Ok(graph)
}
