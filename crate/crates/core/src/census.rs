//! Exact cycle and path counts.
//!
//! The fast counter starts a DFS at every vertex `s`, only walks through
//! vertices larger than `s`, and closes a cycle when it returns to `s` with
//! the second vertex smaller than the last. Every cycle is therefore produced
//! once, from its minimum vertex in one of its two directions, and per-start
//! counts merge by plain addition. A BFS from `s` inside the `> s` region
//! prunes branches that can no longer get back within the length cap.
//!
//! The oracle walks every simple path from every vertex and deduplicates
//! closed cycles by canonical form, sharing no code with the fast counter.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Default work budget for [`count_cycles`] and [`count_paths`].
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Largest graph the brute-force oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("work estimate {estimate} for length {length} exceeds budget {budget}")]
    BudgetExceeded { length: usize, estimate: u128, budget: u64 },
    #[error("oracle refuses graphs with more than {ORACLE_MAX_VERTICES} vertices (got {0})")]
    OracleTooLarge(usize),
    #[error("cycle length cap must be at least 3, got {0}")]
    LengthTooSmall(usize),
    #[error("path length must be at least 1")]
    ZeroPathLength,
}

/// Exact number of distinct cycles of each length `3..=max_length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub max_length: usize,
    /// Nonzero counts only.
    pub counts: BTreeMap<usize, u64>,
}

impl CycleCensus {
    pub fn get(&self, length: usize) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    fn from_dense(max_length: usize, dense: &[u64]) -> Self {
        let counts = dense
            .iter()
            .enumerate()
            .filter(|&(len, &c)| len >= 3 && c > 0)
            .map(|(len, &c)| (len, c))
            .collect();
        CycleCensus { max_length, counts }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathCount {
    pub k: usize,
    pub count: u64,
}

/// `n · Δ^⌈length/2⌉`, the guard's estimate of DFS work at a given length.
pub fn work_estimate(g: &Graph, length: usize) -> u128 {
    let delta = g.max_degree() as u128;
    let mut est = g.num_vertices() as u128;
    for _ in 0..length.div_ceil(2) {
        est = est.saturating_mul(delta);
    }
    est
}

fn check_budget(g: &Graph, lengths: impl Iterator<Item = usize>, budget: u64) -> Result<(), CensusError> {
    for length in lengths {
        let estimate = work_estimate(g, length);
        if estimate > budget as u128 {
            return Err(CensusError::BudgetExceeded { length, estimate, budget });
        }
    }
    Ok(())
}

/// Rotation/reflection normal form: minimum vertex first, then the direction
/// whose second vertex is smaller.
pub fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let len = cycle.len();
    if len == 0 {
        return Vec::new();
    }
    let start = (0..len).min_by_key(|&i| cycle[i]).expect("nonempty");
    let forward = cycle[(start + 1) % len];
    let backward = cycle[(start + len - 1) % len];
    if forward <= backward {
        (0..len).map(|i| cycle[(start + i) % len]).collect()
    } else {
        (0..len).map(|i| cycle[(start + len - i) % len]).collect()
    }
}

/// Exact census of simple cycles with lengths `3..=max_length`.
///
/// Runs on the current rayon pool; the result does not depend on the number
/// of threads.
pub fn count_cycles(g: &Graph, max_length: usize, budget: u64) -> Result<CycleCensus, CensusError> {
    if max_length < 3 {
        return Err(CensusError::LengthTooSmall(max_length));
    }
    check_budget(g, 3..=max_length, budget)?;
    let n = g.num_vertices();
    let dense = (0..n as Vertex)
        .into_par_iter()
        .map_init(
            || CycleSearch::new(n, max_length),
            |search, s| {
                search.run(g, s);
                search.counts.clone()
            },
        )
        .reduce(
            || vec![0u64; max_length + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(CycleCensus::from_dense(max_length, &dense))
}

struct CycleSearch {
    max_length: usize,
    dist: Vec<usize>,
    touched: Vec<Vertex>,
    on_path: Vec<bool>,
    path: Vec<Vertex>,
    counts: Vec<u64>,
    queue: VecDeque<Vertex>,
}

impl CycleSearch {
    fn new(n: usize, max_length: usize) -> Self {
        CycleSearch {
            max_length,
            dist: vec![usize::MAX; n],
            touched: Vec::new(),
            on_path: vec![false; n],
            path: Vec::with_capacity(max_length),
            counts: vec![0; max_length + 1],
            queue: VecDeque::new(),
        }
    }

    fn run(&mut self, g: &Graph, s: Vertex) {
        self.counts.fill(0);
        // Distances from s within vertices >= s, only as far as useful.
        let horizon = self.max_length / 2;
        self.dist[s as usize] = 0;
        self.touched.push(s);
        self.queue.push_back(s);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize];
            if du == horizon {
                continue;
            }
            for &w in g.neighbors(u) {
                if w > s && self.dist[w as usize] == usize::MAX {
                    self.dist[w as usize] = du + 1;
                    self.touched.push(w);
                    self.queue.push_back(w);
                }
            }
        }

        self.path.push(s);
        self.on_path[s as usize] = true;
        self.extend(g, s);
        self.on_path[s as usize] = false;
        self.path.clear();
        for &v in &self.touched {
            self.dist[v as usize] = usize::MAX;
        }
        self.touched.clear();
    }

    /// `path` holds `len + 1` vertices ending at `v`.
    fn extend(&mut self, g: &Graph, v: Vertex) {
        let s = self.path[0];
        let len = self.path.len() - 1;
        let neighbors = g.neighbors(v);
        let from = neighbors.partition_point(|&w| w < s);
        for &w in &neighbors[from..] {
            if w == s {
                if len >= 2 && self.path[1] < v {
                    self.counts[len + 1] += 1;
                }
                continue;
            }
            if self.on_path[w as usize] {
                continue;
            }
            // After stepping to w the path has len + 1 edges; closing needs
            // dist(w, s) more, within the cap.
            let d = self.dist[w as usize];
            if d == usize::MAX || len + 1 + d > self.max_length || len + 2 > self.max_length {
                continue;
            }
            self.on_path[w as usize] = true;
            self.path.push(w);
            self.extend(g, w);
            self.path.pop();
            self.on_path[w as usize] = false;
        }
    }
}

/// Exact number of simple paths with `k` edges, each counted once up to reversal.
pub fn count_paths(g: &Graph, k: usize, budget: u64) -> Result<PathCount, CensusError> {
    if k == 0 {
        return Err(CensusError::ZeroPathLength);
    }
    check_budget(g, std::iter::once(k), budget)?;
    let n = g.num_vertices();
    let count = (0..n as Vertex)
        .into_par_iter()
        .map_init(
            || vec![false; n],
            |on_path, s| {
                on_path[s as usize] = true;
                let c = paths_from(g, s, s, k, on_path);
                on_path[s as usize] = false;
                c
            },
        )
        .sum();
    Ok(PathCount { k, count })
}

/// Paths of `remaining` more edges from `v` whose final vertex exceeds `start`.
fn paths_from(g: &Graph, start: Vertex, v: Vertex, remaining: usize, on_path: &mut [bool]) -> u64 {
    if remaining == 0 {
        return (v > start) as u64;
    }
    let mut total = 0;
    for &w in g.neighbors(v) {
        if !on_path[w as usize] {
            on_path[w as usize] = true;
            total += paths_from(g, start, w, remaining - 1, on_path);
            on_path[w as usize] = false;
        }
    }
    total
}

/// Brute-force census: every simple closed walk from every vertex, each
/// canonicalized and inserted into a set. Test oracle only.
pub fn oracle_count_cycles(g: &Graph, max_length: usize) -> Result<CycleCensus, CensusError> {
    let n = g.num_vertices();
    if n > ORACLE_MAX_VERTICES {
        return Err(CensusError::OracleTooLarge(n));
    }
    if max_length < 3 {
        return Err(CensusError::LengthTooSmall(max_length));
    }
    fn walk(
        g: &Graph,
        path: &mut Vec<Vertex>,
        max_length: usize,
        seen: &mut HashSet<Vec<Vertex>>,
    ) {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if w == path[0] && path.len() >= 3 {
                seen.insert(canonical_cycle(path));
            } else if !path.contains(&w) && path.len() < max_length {
                path.push(w);
                walk(g, path, max_length, seen);
                path.pop();
            }
        }
    }
    let mut seen = HashSet::new();
    for s in g.vertices() {
        walk(g, &mut vec![s], max_length, &mut seen);
    }
    let mut counts = BTreeMap::new();
    for cycle in seen {
        *counts.entry(cycle.len()).or_insert(0u64) += 1;
    }
    Ok(CycleCensus { max_length, counts })
}

/// Two distinct paths of length at most `m` between the same pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPairWitness {
    pub from: Vertex,
    pub to: Vertex,
    pub first: Vec<Vertex>,
    pub second: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquePathReport {
    pub m: usize,
    pub girth: Option<usize>,
    pub pairs_checked: u64,
    pub pass: bool,
    pub witness: Option<PathPairWitness>,
}

/// Checks that every pair of vertices is joined by at most one path of
/// length `<= m`; girth `> 2m` guarantees it.
pub fn unique_path_property_check(g: &Graph, m: usize) -> UniquePathReport {
    fn walk(
        g: &Graph,
        path: &mut Vec<Vertex>,
        m: usize,
        found: &mut HashMap<Vertex, Vec<Vertex>>,
    ) -> Option<PathPairWitness> {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if path.contains(&w) {
                continue;
            }
            path.push(w);
            if let Some(previous) = found.get(&w) {
                return Some(PathPairWitness {
                    from: path[0],
                    to: w,
                    first: previous.clone(),
                    second: path.clone(),
                });
            }
            found.insert(w, path.clone());
            if path.len() <= m {
                if let Some(witness) = walk(g, path, m, found) {
                    return Some(witness);
                }
            }
            path.pop();
        }
        None
    }

    let mut pairs_checked = 0;
    let mut witness = None;
    for s in g.vertices() {
        let mut found = HashMap::new();
        witness = walk(g, &mut vec![s], m, &mut found);
        pairs_checked += found.len() as u64;
        if witness.is_some() {
            break;
        }
    }
    UniquePathReport {
        m,
        girth: g.girth(),
        pairs_checked,
        pass: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, cycle, projective_plane_incidence};

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn counts(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[3, 2, 1]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[5, 0, 9, 4]), vec![0, 5, 4, 9]);
    }

    #[test]
    fn small_censuses() {
        let c6 = cycle(6).unwrap();
        assert_eq!(count_cycles(&c6, 8, DEFAULT_BUDGET).unwrap().counts, counts(&[(6, 1)]));
        let k4 = complete(4);
        assert_eq!(
            count_cycles(&k4, 4, DEFAULT_BUDGET).unwrap().counts,
            counts(&[(3, 4), (4, 3)])
        );
        let heawood = projective_plane_incidence(2).unwrap().graph;
        assert_eq!(
            count_cycles(&heawood, 8, DEFAULT_BUDGET).unwrap().counts,
            counts(&[(6, 28), (8, 21)])
        );
        assert_eq!(count_cycles(&c6, 2, DEFAULT_BUDGET), Err(CensusError::LengthTooSmall(2)));
    }

    #[test]
    fn oracle_examples() {
        let triangle = cycle(3).unwrap();
        assert_eq!(oracle_count_cycles(&triangle, 5).unwrap().counts, counts(&[(3, 1)]));
        assert_eq!(
            oracle_count_cycles(&cycle(6).unwrap(), 6).unwrap().counts,
            counts(&[(6, 1)])
        );
        let big = cycle(40).unwrap();
        assert_eq!(oracle_count_cycles(&big, 5), Err(CensusError::OracleTooLarge(40)));
    }

    #[test]
    fn path_counts() {
        let heawood = projective_plane_incidence(2).unwrap().graph;
        assert_eq!(count_paths(&heawood, 1, DEFAULT_BUDGET).unwrap().count, 21);
        assert_eq!(count_paths(&heawood, 2, DEFAULT_BUDGET).unwrap().count, 42);
        assert_eq!(count_paths(&cycle(6).unwrap(), 2, DEFAULT_BUDGET).unwrap().count, 6);
    }

    #[test]
    fn budget_guard_names_length() {
        let g = projective_plane_incidence(11).unwrap().graph;
        match count_cycles(&g, 14, 1000) {
            Err(CensusError::BudgetExceeded { length, .. }) => assert_eq!(length, 3),
            other => panic!("expected refusal, got {other:?}"),
        }
        match count_cycles(&g, 14, 10_000_000) {
            Err(CensusError::BudgetExceeded { length, .. }) => assert_eq!(length, 9),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn unique_paths() {
        let heawood = projective_plane_incidence(2).unwrap().graph;
        assert!(unique_path_property_check(&heawood, 2).pass);

        let c4 = complete_bipartite(2, 2).unwrap();
        let report = unique_path_property_check(&c4, 2);
        assert!(!report.pass);
        let w = report.witness.unwrap();
        assert_eq!((w.first.len(), w.second.len()), (3, 3));
        assert_eq!(w.first.last(), w.second.last());
        assert_ne!(w.first, w.second);

        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(unique_path_property_check(&tree, 4).pass);
    }
}
