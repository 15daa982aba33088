//! Graph transforms behind the three strategies: symmetrization for the
//! undirected setting, and the negative-edge handling variants (drop
//! negatives, or treat all edges as positive).

use crate::graph::{Sign, SignedGraph};

/// Collapse a directed graph onto unordered pairs.
///
/// A pair whose directed edges agree in sign (or exist in one direction only)
/// becomes a single undirected edge of that sign; a pair with conflicting
/// signs is dropped entirely and counted. Undirected input is returned
/// unchanged, so the function is idempotent.
pub fn to_undirected(g: &SignedGraph) -> SignedGraph {
    if !g.is_directed() {
        return g.clone();
    }
    let mut dropped_conflicts = g.dropped_conflicts();
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (lo, hi) = (e.src.min(e.dst), e.src.max(e.dst));
        match g.sign_of(e.dst, e.src) {
            None => edges.push((lo, hi, e.sign)),
            Some(back) if back == e.sign => {
                if e.src < e.dst {
                    edges.push((lo, hi, e.sign));
                }
            }
            Some(_) => {
                if e.src < e.dst {
                    dropped_conflicts += 1;
                }
            }
        }
    }
    SignedGraph::assemble(
        false,
        g.node_count(),
        edges,
        g.weights_arc(),
        g.labels_arc(),
        g.dropped_self_loops(),
        dropped_conflicts,
    )
}

/// Keep only positive edges.
pub fn remove_negative(g: &SignedGraph) -> SignedGraph {
    let edges: Vec<_> = g
        .edges()
        .filter(|e| e.sign == Sign::Positive)
        .map(|e| (e.src, e.dst, e.sign))
        .collect();
    SignedGraph::assemble(
        g.is_directed(),
        g.node_count(),
        edges,
        g.weights_arc(),
        g.labels_arc(),
        g.dropped_self_loops(),
        g.dropped_conflicts(),
    )
}

/// Treat every edge as positive.
pub fn ignore_signs(g: &SignedGraph) -> SignedGraph {
    let edges: Vec<_> = g
        .edges()
        .map(|e| (e.src, e.dst, Sign::Positive))
        .collect();
    SignedGraph::assemble(
        g.is_directed(),
        g.node_count(),
        edges,
        g.weights_arc(),
        g.labels_arc(),
        g.dropped_self_loops(),
        g.dropped_conflicts(),
    )
}
