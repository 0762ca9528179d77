//! Paths inside `H_x` and their closure into cycles through the root.

use serde::Serialize;

use super::{RootView, RootViewError};
use crate::graph::{Vertex, NONE};

/// A simple path `w_0 … w_k` of `H_x`, in ambient vertex ids.
///
/// Odd paths are oriented with `w_0` in `A_x = Γ^m`; even paths keep their
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LayerPath {
    pub vertices: Vec<Vertex>,
}

impl LayerPath {
    pub fn k(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_odd(&self) -> bool {
        self.k() % 2 == 1
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LayerPathStats {
    pub paths: u64,
    /// Non-backtracking walks that revisited a vertex and were dropped.
    /// Zero whenever the ambient girth exceeds `k`.
    pub non_simple_walks: u64,
}

/// Calls `visit` once per simple `k`-path of `H_x` (a path and its reversal
/// count once), passing ambient ids oriented as in [`LayerPath`].
pub fn for_each_layer_path<F: FnMut(&[Vertex])>(view: &RootView, k: usize, mut visit: F) -> LayerPathStats {
    let hx = view.hx();
    let n = hx.num_vertices();
    let mut stats = LayerPathStats::default();
    if k == 0 {
        return stats;
    }
    let mut on_path = vec![false; n];
    let mut local = Vec::with_capacity(k + 1);
    let mut global = Vec::with_capacity(k + 1);

    struct Walk<'a, F> {
        view: &'a RootView,
        k: usize,
        on_path: &'a mut [bool],
        local: &'a mut Vec<Vertex>,
        global: &'a mut Vec<Vertex>,
        stats: &'a mut LayerPathStats,
        visit: &'a mut F,
    }

    impl<F: FnMut(&[Vertex])> Walk<'_, F> {
        fn extend(&mut self) {
            let hx = self.view.hx();
            let depth = self.local.len() - 1;
            let v = self.local[depth];
            let previous = if depth > 0 { self.local[depth - 1] } else { NONE };
            for &w in hx.neighbors(v) {
                if w == previous {
                    continue;
                }
                if self.on_path[w as usize] {
                    self.stats.non_simple_walks += 1;
                    continue;
                }
                if depth + 1 == self.k {
                    if w > self.local[0] {
                        self.local.push(w);
                        self.emit();
                        self.local.pop();
                    }
                    continue;
                }
                self.on_path[w as usize] = true;
                self.local.push(w);
                self.extend();
                self.local.pop();
                self.on_path[w as usize] = false;
            }
        }

        fn emit(&mut self) {
            self.stats.paths += 1;
            self.global.clear();
            self.global
                .extend(self.local.iter().map(|&l| self.view.hx_global(l)));
            if self.k % 2 == 1 && !self.view.in_side_a(self.global[0]) {
                self.global.reverse();
            }
            (self.visit)(self.global);
        }
    }

    for start in 0..n as Vertex {
        on_path[start as usize] = true;
        local.clear();
        local.push(start);
        let mut walk = Walk {
            view,
            k,
            on_path: &mut on_path,
            local: &mut local,
            global: &mut global,
            stats: &mut stats,
            visit: &mut visit,
        };
        walk.extend();
        on_path[start as usize] = false;
    }
    stats
}

pub fn enumerate_layer_paths(view: &RootView, k: usize) -> (Vec<LayerPath>, LayerPathStats) {
    let mut paths = Vec::new();
    let stats = for_each_layer_path(view, k, |p| {
        paths.push(LayerPath { vertices: p.to_vec() })
    });
    (paths, stats)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    /// Each cycle starts at the root.
    pub cycles: Vec<Vec<Vertex>>,
    pub attempted: u64,
    pub exceptions: u64,
}

/// Stamp-based membership marks reused across closures.
pub(crate) struct Marks {
    stamp: Vec<u32>,
    current: u32,
}

impl Marks {
    pub(crate) fn new(n: usize) -> Self {
        Marks { stamp: vec![0; n], current: 0 }
    }

    fn reset(&mut self) {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.fill(0);
            self.current = 1;
        }
    }

    fn mark(&mut self, v: Vertex) {
        self.stamp[v as usize] = self.current;
    }

    fn marked(&self, v: Vertex) -> bool {
        self.stamp[v as usize] == self.current
    }
}

/// Core closure loop shared by [`close_path`] and the witness counters.
///
/// Odd paths (`w_0 ∈ Γ^m`, `w_k ∈ Γ^{m+1}`): for each `G_x`-neighbor `y` of
/// `w_k`, the walk `P_{w_0} + P + (w_k, y) + reverse(P_y)`.
/// Even paths with both ends in `Γ^{m+1}`: for each `G_x`-neighbor `y_0` of
/// `w_0` and `y_k` of `w_k`, the walk `P_{y_0} + P + reverse(P_{y_k})`.
/// Only simple walks reach `emit`; returns `(attempted, exceptions)`.
pub(crate) fn close_into<F: FnMut(&[Vertex])>(
    view: &RootView,
    path: &[Vertex],
    marks: &mut Marks,
    walk: &mut Vec<Vertex>,
    mut emit: F,
) -> (u64, u64) {
    let m = view.m();
    let k = path.len() - 1;
    let mut attempted = 0;
    let mut exceptions = 0;

    // Pushes the tree path x..v (inclusive) onto the walk.
    let push_tree = |walk: &mut Vec<Vertex>, v: Vertex| {
        let start = walk.len();
        let mut u = v;
        walk.push(u);
        for _ in 0..m {
            u = view.parent_raw(u);
            walk.push(u);
        }
        walk[start..].reverse();
    };

    // Appends y and its ancestors down to layer 1 if none is already marked.
    let try_tail = |walk: &mut Vec<Vertex>, marks: &Marks, y: Vertex| -> bool {
        let mut u = y;
        for _ in 0..m {
            if marks.marked(u) {
                return false;
            }
            walk.push(u);
            u = view.parent_raw(u);
        }
        true
    };

    if k % 2 == 1 {
        walk.clear();
        push_tree(walk, path[0]);
        walk.extend_from_slice(&path[1..]);
        marks.reset();
        for &v in walk.iter() {
            marks.mark(v);
        }
        let prefix = walk.len();
        let last = path[k];
        for y in view.gx_neighbors(last) {
            attempted += 1;
            walk.truncate(prefix);
            if try_tail(walk, marks, y) {
                emit(walk);
            } else {
                exceptions += 1;
            }
        }
    } else {
        let (first, last) = (path[0], path[k]);
        for y0 in view.gx_neighbors(first) {
            walk.clear();
            push_tree(walk, y0);
            walk.extend_from_slice(path);
            marks.reset();
            let mut head_simple = true;
            for &v in walk.iter() {
                if marks.marked(v) {
                    head_simple = false;
                }
                marks.mark(v);
            }
            let prefix = walk.len();
            for yk in view.gx_neighbors(last) {
                attempted += 1;
                walk.truncate(prefix);
                if head_simple && try_tail(walk, marks, yk) {
                    emit(walk);
                } else {
                    exceptions += 1;
                }
            }
        }
    }
    (attempted, exceptions)
}

/// Closes `path` through the root in every possible way.
///
/// Every emitted cycle is simple, starts at the root and has length
/// `k + 2m + 1` (odd `k`) or `k + 2m + 2` (even `k`).
pub fn close_path(view: &RootView, path: &LayerPath) -> Result<ClosureResult, RootViewError> {
    let p = &path.vertices;
    if p.len() < 2 {
        return Err(RootViewError::InvalidPath("paths need at least one edge".into()));
    }
    for pair in p.windows(2) {
        match (view.hx_local(pair[0]), view.hx_local(pair[1])) {
            (Some(a), Some(b)) if view.hx().has_edge(a, b) => {}
            _ => {
                return Err(RootViewError::InvalidPath(format!(
                    "({}, {}) is not an edge of H_x",
                    pair[0], pair[1]
                )))
            }
        }
    }
    let mut sorted = p.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != p.len() {
        return Err(RootViewError::InvalidPath("repeated vertex".into()));
    }
    let (first, last) = (p[0], p[p.len() - 1]);
    if path.is_odd() {
        if !view.in_side_a(first) || !view.in_side_b(last) {
            return Err(RootViewError::SideMismatch(format!(
                "odd path must run from layer m to layer m+1, got {first} -> {last}"
            )));
        }
    } else if !view.in_side_b(first) || !view.in_side_b(last) {
        return Err(RootViewError::SideMismatch(format!(
            "even path must start and end in layer m+1, got {first} -> {last}"
        )));
    }

    let mut result = ClosureResult::default();
    let mut marks = Marks::new(view.depth.len());
    let mut walk = Vec::new();
    let (attempted, exceptions) = close_into(view, p, &mut marks, &mut walk, |cycle| {
        result.cycles.push(cycle.to_vec())
    });
    result.attempted = attempted;
    result.exceptions = exceptions;
    Ok(result)
}
