//! Constructive lower-bound witnesses: every root, every odd layer path of
//! length `2ℓ − 2m − 1` in `H_x`, every closure, deduplicated globally.
//!
//! Two independent routes produce the distinct-cycle count.
//! [`constructive_cycles`] materializes canonical forms and merges them in a
//! map. [`constructive_cycle_count`] stores nothing: it accepts a closed walk
//! only if its generating (root, direction) pair is the first one, in root
//! order, from which the same cycle is constructible. Constructibility from
//! another root is decided from that root's layer depths and `H_x`
//! membership alone.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::closure::{close_into, for_each_layer_path, Marks};
use super::{build_root_view, RootView, RootViewError};
use crate::census::canonical_cycle;
use crate::graph::{Graph, Vertex};

/// Materialized witnesses for cycles of length `2ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub m: usize,
    pub ell: usize,
    /// Canonical forms, sorted.
    pub cycles: Vec<Vec<Vertex>>,
    /// Number of (root, path, neighbor) triples that closed into a cycle.
    pub triples: u64,
    pub attempted: u64,
    pub exceptions: u64,
    pub max_exceptions_per_path: u64,
    /// Largest number of triples producing one cycle.
    pub max_multiplicity: u64,
    pub min_layer_paths: u64,
    pub non_simple_walks: u64,
}

/// Distinct-witness count without materializing cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTally {
    pub m: usize,
    pub ell: usize,
    pub distinct: u64,
    pub triples: u64,
    pub attempted: u64,
    pub exceptions: u64,
    pub max_exceptions_per_path: u64,
    pub min_layer_paths: u64,
    pub non_simple_walks: u64,
}

fn check_preconditions(g: &Graph, m: usize, ell: usize) -> Result<(), RootViewError> {
    if ell < m + 1 {
        return Err(RootViewError::EllTooSmall { ell, m });
    }
    let girth = g.girth();
    if girth.is_some_and(|girth| girth <= 2 * m) {
        return Err(RootViewError::GirthTooSmall { girth, m });
    }
    if !g.is_bipartite() {
        return Err(RootViewError::NotBipartite);
    }
    Ok(())
}

fn build_all_views(g: &Graph, m: usize) -> Result<Vec<RootView>, RootViewError> {
    (0..g.num_vertices() as Vertex)
        .into_par_iter()
        .map(|x| build_root_view(g, x, m, None))
        .collect()
}

#[derive(Default)]
struct RootStats {
    triples: u64,
    attempted: u64,
    exceptions: u64,
    max_exceptions_per_path: u64,
    layer_paths: u64,
    non_simple_walks: u64,
}

/// Runs every closure of every `k`-path from `view`'s root through `emit`.
fn run_root<F: FnMut(&[Vertex])>(view: &RootView, k: usize, n: usize, mut emit: F) -> RootStats {
    let mut stats = RootStats::default();
    let mut marks = Marks::new(n);
    let mut walk = Vec::new();
    let path_stats = for_each_layer_path(view, k, |p| {
        let (attempted, exceptions) = close_into(view, p, &mut marks, &mut walk, &mut emit);
        stats.attempted += attempted;
        stats.exceptions += exceptions;
        stats.triples += attempted - exceptions;
        stats.max_exceptions_per_path = stats.max_exceptions_per_path.max(exceptions);
    });
    stats.layer_paths = path_stats.paths;
    stats.non_simple_walks = path_stats.non_simple_walks;
    stats
}

fn merge_stats(all: impl Iterator<Item = RootStats>) -> RootStats {
    let mut total = RootStats {
        layer_paths: u64::MAX,
        ..RootStats::default()
    };
    for s in all {
        total.triples += s.triples;
        total.attempted += s.attempted;
        total.exceptions += s.exceptions;
        total.max_exceptions_per_path = total.max_exceptions_per_path.max(s.max_exceptions_per_path);
        total.layer_paths = total.layer_paths.min(s.layer_paths);
        total.non_simple_walks += s.non_simple_walks;
    }
    if total.layer_paths == u64::MAX {
        total.layer_paths = 0;
    }
    total
}

/// All distinct `2ℓ`-cycles produced by odd closures, with multiplicities.
pub fn constructive_cycles(g: &Graph, m: usize, ell: usize) -> Result<WitnessSet, RootViewError> {
    check_preconditions(g, m, ell)?;
    let n = g.num_vertices();
    let k = 2 * ell - 2 * m - 1;
    let views = build_all_views(g, m)?;
    let per_root: Vec<(Vec<Vec<Vertex>>, RootStats)> = views
        .par_iter()
        .map(|view| {
            let mut cycles = Vec::new();
            let stats = run_root(view, k, n, |walk| cycles.push(canonical_cycle(walk)));
            (cycles, stats)
        })
        .collect();

    let mut multiplicity: HashMap<Vec<Vertex>, u64> = HashMap::new();
    let mut stats = Vec::with_capacity(per_root.len());
    for (cycles, s) in per_root {
        for c in cycles {
            *multiplicity.entry(c).or_insert(0) += 1;
        }
        stats.push(s);
    }
    let total = merge_stats(stats.into_iter());
    let max_multiplicity = multiplicity.values().copied().max().unwrap_or(0);
    let mut cycles: Vec<Vec<Vertex>> = multiplicity.into_keys().collect();
    cycles.sort_unstable();
    Ok(WitnessSet {
        m,
        ell,
        cycles,
        triples: total.triples,
        attempted: total.attempted,
        exceptions: total.exceptions,
        max_exceptions_per_path: total.max_exceptions_per_path,
        max_multiplicity,
        min_layer_paths: total.layer_paths,
        non_simple_walks: total.non_simple_walks,
    })
}

/// Number of distinct `2ℓ`-cycles produced by odd closures, counted by
/// first-generator acceptance.
pub fn constructive_cycle_count(g: &Graph, m: usize, ell: usize) -> Result<WitnessTally, RootViewError> {
    check_preconditions(g, m, ell)?;
    let n = g.num_vertices();
    let k = 2 * ell - 2 * m - 1;
    let views = build_all_views(g, m)?;
    let per_root: Vec<(u64, RootStats)> = views
        .par_iter()
        .map(|view| {
            let mut accepted = 0;
            let stats = run_root(view, k, n, |walk| {
                if is_first_generator(&views, walk, m) {
                    accepted += 1;
                }
            });
            (accepted, stats)
        })
        .collect();
    let distinct = per_root.iter().map(|(a, _)| a).sum();
    let total = merge_stats(per_root.into_iter().map(|(_, s)| s));
    Ok(WitnessTally {
        m,
        ell,
        distinct,
        triples: total.triples,
        attempted: total.attempted,
        exceptions: total.exceptions,
        max_exceptions_per_path: total.max_exceptions_per_path,
        min_layer_paths: total.layer_paths,
        non_simple_walks: total.non_simple_walks,
    })
}

/// `walk` starts at its generating root and runs in its generating
/// direction. True when no smaller root generates the same cycle and, at
/// this root, the reverse direction either fails or has a larger second
/// vertex.
fn is_first_generator(views: &[RootView], walk: &[Vertex], m: usize) -> bool {
    let len = walk.len();
    let x = walk[0];
    for offset in 1..len {
        let r = walk[offset];
        if r < x {
            let view = &views[r as usize];
            if generates(view, walk, offset, true, m) || generates(view, walk, offset, false, m) {
                return false;
            }
        }
    }
    !(walk[1] > walk[len - 1] && generates(&views[x as usize], walk, 0, false, m))
}

/// Whether the cycle `walk`, read from position `offset` in the given
/// direction, is an odd closure at root `walk[offset]`: tree paths of length
/// `m` on both sides and the remaining `k + 1` vertices alternating between
/// `Γ^m` and `Γ^{m+1}` inside `H_x`.
fn generates(view: &RootView, walk: &[Vertex], offset: usize, forward: bool, m: usize) -> bool {
    let len = walk.len();
    let at = |i: usize| {
        let idx = if forward { offset + i } else { offset + len - i };
        walk[idx % len]
    };
    for i in 1..=m {
        if view.depth_raw(at(i)) as usize != i || view.depth_raw(at(len - i)) as usize != i {
            return false;
        }
    }
    let k = len - 2 * m - 1;
    (0..=k).all(|j| {
        let v = at(m + j);
        view.depth_raw(v) as usize == m + (j & 1) && view.in_hx(v)
    })
}
