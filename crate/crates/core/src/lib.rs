//! Even-cycle machinery for graphs of large girth.
//!
//! * [`graph`]: immutable graphs, girth, BFS layers, bipartitions, edge-list I/O.
//! * [`generators`]: cycles, complete bipartite graphs, projective-plane
//!   incidence graphs and random girth-enforced graphs.
//! * [`reduction`]: bipartite extraction, minimum-degree peeling and
//!   maximum-degree capping into an almost-regular bipartite core.
//! * [`rootview`]: per-root layer structure, layer paths and their closure
//!   into cycles through the root.
//! * [`census`]: exact cycle and path counts plus a brute-force oracle.
//! * [`bounds`]: the explicit constants and the cycle-count lower bound check.

pub mod bounds;
pub mod census;
pub mod generators;
pub mod graph;
pub mod reduction;
pub mod rootview;

pub use graph::{DegreeProfile, Graph, GraphError, Vertex, VertexSet};
