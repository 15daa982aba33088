//! Sparse signed graphs: an immutable adjacency structure holding positive
//! and negative out/in neighbor lists, optional edge weights (tie-strength
//! ground truth) and an optional node id ↔ label table.

mod load;
mod split;
mod transform;

pub use load::{load_edge_list, load_edge_list_path, EdgeFormat, EdgeRecord, GraphStats};
pub use split::{split_train_test, SplitDataset, TestPair};
pub use transform::{ignore_signs, remove_negative, to_undirected};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Dense node identifier in `[0, node_count)`.
pub type NodeId = u32;

/// Edge polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    /// `+1.0` or `-1.0`.
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    /// Sign of a nonzero finite value.
    pub fn of_value(v: f64) -> Result<Sign> {
        if !v.is_finite() || v == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "edge value must be finite and nonzero, got {v}"
            )));
        }
        Ok(if v > 0.0 { Sign::Positive } else { Sign::Negative })
    }
}

/// One directed signed edge, as yielded by [`SignedGraph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub sign: Sign,
}

/// Flat CSR adjacency: per-row sorted neighbor ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Adjacency {
    /// Build from per-node rows. Rows must already be sorted and deduplicated.
    pub(crate) fn from_rows(rows: Vec<Vec<NodeId>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let total: usize = rows.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for row in rows {
            targets.extend_from_slice(&row);
            offsets.push(targets.len());
        }
        Adjacency { offsets, targets }
    }

    pub(crate) fn empty(n: usize) -> Self {
        Adjacency {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub(crate) fn row(&self, i: NodeId) -> &[NodeId] {
        let i = i as usize;
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub(crate) fn contains(&self, i: NodeId, j: NodeId) -> bool {
        self.row(i).binary_search(&j).is_ok()
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub(crate) fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn transpose(&self) -> Adjacency {
        let n = self.node_count();
        let mut rows: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for i in 0..n {
            for &j in self.row(i as NodeId) {
                rows[j as usize].push(i as NodeId);
            }
        }
        // Row order of the forward scan is already ascending per target.
        Adjacency::from_rows(rows)
    }
}

/// Node id ↔ original label mapping, preserved from ingestion so results can
/// be reported in the dataset's own identifiers.
#[derive(Debug, Clone, Default)]
pub struct LabelTable {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl LabelTable {
    pub(crate) fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.names.len() as NodeId;
        self.names.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn name(&self, id: NodeId) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Immutable sparse signed graph.
///
/// Houses the signed adjacency `A` as four sorted neighbor lists per node
/// (positive/negative × out/in); in-lists are precomputed transposes of the
/// out-lists. For undirected graphs every edge is stored in both directions
/// and the logical edge counts treat `{i, j}` as a single edge.
///
/// The structure is read-only after construction and can be shared freely
/// across threads.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    node_count: usize,
    directed: bool,
    pos_out: Adjacency,
    neg_out: Adjacency,
    pos_in: Adjacency,
    neg_in: Adjacency,
    /// Raw tie-strength ratings keyed by the ordered pair they were given for.
    weights: Option<Arc<BTreeMap<(NodeId, NodeId), f64>>>,
    labels: Option<Arc<LabelTable>>,
    dropped_self_loops: u64,
    dropped_conflicts: u64,
}

impl SignedGraph {
    /// Graph with `node_count` isolated nodes.
    pub fn empty(directed: bool, node_count: usize) -> Self {
        SignedGraph {
            node_count,
            directed,
            pos_out: Adjacency::empty(node_count),
            neg_out: Adjacency::empty(node_count),
            pos_in: Adjacency::empty(node_count),
            neg_in: Adjacency::empty(node_count),
            weights: None,
            labels: None,
            dropped_self_loops: 0,
            dropped_conflicts: 0,
        }
    }

    /// Build a graph from explicit signed edges.
    ///
    /// For an undirected graph each edge is given once as an unordered pair
    /// and stored symmetrically. Self-loops, out-of-range endpoints and
    /// duplicate pairs (including a pair listed with both signs) are errors;
    /// the lenient cleanup path lives in [`load_edge_list`].
    pub fn from_edges(
        directed: bool,
        node_count: usize,
        edges: &[(NodeId, NodeId, Sign)],
    ) -> Result<Self> {
        let mut seen: HashMap<(NodeId, NodeId), Sign> = HashMap::with_capacity(edges.len());
        let mut cleaned = Vec::with_capacity(edges.len());
        for &(src, dst, sign) in edges {
            if src as usize >= node_count {
                return Err(Error::NodeOutOfRange {
                    node: src,
                    count: node_count,
                });
            }
            if dst as usize >= node_count {
                return Err(Error::NodeOutOfRange {
                    node: dst,
                    count: node_count,
                });
            }
            if src == dst {
                return Err(Error::InvalidInput(format!("self-loop at node {src}")));
            }
            let key = if directed || src <= dst {
                (src, dst)
            } else {
                (dst, src)
            };
            if seen.insert(key, sign).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
            cleaned.push((key.0, key.1, sign));
        }
        Ok(Self::assemble(directed, node_count, cleaned, None, None, 0, 0))
    }

    /// Assemble from cleaned edges. For undirected graphs, `edges` holds each
    /// unordered pair once (any orientation); symmetrization happens here.
    pub(crate) fn assemble(
        directed: bool,
        node_count: usize,
        edges: Vec<(NodeId, NodeId, Sign)>,
        weights: Option<Arc<BTreeMap<(NodeId, NodeId), f64>>>,
        labels: Option<Arc<LabelTable>>,
        dropped_self_loops: u64,
        dropped_conflicts: u64,
    ) -> Self {
        let mut pos_rows: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
        let mut neg_rows: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
        for (src, dst, sign) in edges {
            let rows = match sign {
                Sign::Positive => &mut pos_rows,
                Sign::Negative => &mut neg_rows,
            };
            rows[src as usize].push(dst);
            if !directed {
                rows[dst as usize].push(src);
            }
        }
        for row in pos_rows.iter_mut().chain(neg_rows.iter_mut()) {
            row.sort_unstable();
        }
        let pos_out = Adjacency::from_rows(pos_rows);
        let neg_out = Adjacency::from_rows(neg_rows);
        let (pos_in, neg_in) = if directed {
            (pos_out.transpose(), neg_out.transpose())
        } else {
            (pos_out.clone(), neg_out.clone())
        };
        SignedGraph {
            node_count,
            directed,
            pos_out,
            neg_out,
            pos_in,
            neg_in,
            weights,
            labels,
            dropped_self_loops,
            dropped_conflicts,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn check_node(&self, i: NodeId) -> Result<()> {
        if (i as usize) < self.node_count {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: i,
                count: self.node_count,
            })
        }
    }

    pub fn pos_out(&self, i: NodeId) -> &[NodeId] {
        self.pos_out.row(i)
    }

    pub fn neg_out(&self, i: NodeId) -> &[NodeId] {
        self.neg_out.row(i)
    }

    pub fn pos_in(&self, i: NodeId) -> &[NodeId] {
        self.pos_in.row(i)
    }

    pub fn neg_in(&self, i: NodeId) -> &[NodeId] {
        self.neg_in.row(i)
    }

    /// Out-degree counting both signs.
    pub fn out_degree(&self, i: NodeId) -> usize {
        self.pos_out(i).len() + self.neg_out(i).len()
    }

    /// True if the node has no incident edges at all.
    pub fn is_isolated(&self, i: NodeId) -> bool {
        self.pos_out(i).is_empty()
            && self.neg_out(i).is_empty()
            && self.pos_in(i).is_empty()
            && self.neg_in(i).is_empty()
    }

    /// Sign of the ordered edge `i -> j`, if present.
    pub fn sign_of(&self, i: NodeId, j: NodeId) -> Option<Sign> {
        if self.pos_out.contains(i, j) {
            Some(Sign::Positive)
        } else if self.neg_out.contains(i, j) {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// Logical positive edge count (unordered pairs for undirected graphs).
    pub fn pos_edge_count(&self) -> usize {
        if self.directed {
            self.pos_out.edge_count()
        } else {
            self.pos_out.edge_count() / 2
        }
    }

    /// Logical negative edge count (unordered pairs for undirected graphs).
    pub fn neg_edge_count(&self) -> usize {
        if self.directed {
            self.neg_out.edge_count()
        } else {
            self.neg_out.edge_count() / 2
        }
    }

    pub fn edge_count(&self) -> usize {
        self.pos_edge_count() + self.neg_edge_count()
    }

    /// Iterate logical edges: every ordered edge for directed graphs, each
    /// unordered pair once (src < dst) for undirected graphs.
    pub fn edges(&self) -> impl Iterator<Item = SignedEdge> + '_ {
        let directed = self.directed;
        (0..self.node_count as NodeId).flat_map(move |i| {
            let pos = self
                .pos_out(i)
                .iter()
                .map(move |&j| SignedEdge {
                    src: i,
                    dst: j,
                    sign: Sign::Positive,
                });
            let neg = self
                .neg_out(i)
                .iter()
                .map(move |&j| SignedEdge {
                    src: i,
                    dst: j,
                    sign: Sign::Negative,
                });
            pos.chain(neg)
                .filter(move |e| directed || e.src < e.dst)
        })
    }

    /// Raw tie-strength ratings, if this graph was loaded from a weighted format.
    pub fn weights(&self) -> Option<&BTreeMap<(NodeId, NodeId), f64>> {
        self.weights.as_deref()
    }

    pub fn labels(&self) -> Option<&LabelTable> {
        self.labels.as_deref()
    }

    pub(crate) fn weights_arc(&self) -> Option<Arc<BTreeMap<(NodeId, NodeId), f64>>> {
        self.weights.clone()
    }

    pub(crate) fn labels_arc(&self) -> Option<Arc<LabelTable>> {
        self.labels.clone()
    }

    /// Self-loops discarded during ingestion.
    pub fn dropped_self_loops(&self) -> u64 {
        self.dropped_self_loops
    }

    /// Reciprocal pairs with conflicting signs discarded when symmetrizing.
    pub fn dropped_conflicts(&self) -> u64 {
        self.dropped_conflicts
    }

    /// Verify every structural invariant; used by tests and after ingestion.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count;
        for adj in [&self.pos_out, &self.neg_out, &self.pos_in, &self.neg_in] {
            if adj.node_count() != n {
                return Err(Error::InvalidInput("adjacency size mismatch".into()));
            }
            for i in 0..n as NodeId {
                let row = adj.row(i);
                if !row.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::InvalidInput(format!(
                        "row {i} not sorted/deduplicated"
                    )));
                }
                if let Some(&max) = row.last() {
                    if max as usize >= n {
                        return Err(Error::NodeOutOfRange { node: max, count: n });
                    }
                }
                if row.binary_search(&i).is_ok() {
                    return Err(Error::InvalidInput(format!("self-loop at node {i}")));
                }
            }
        }
        for i in 0..n as NodeId {
            let pos = self.pos_out(i);
            let neg = self.neg_out(i);
            // Disjointness of the signed out-lists: one sign per ordered pair.
            let mut a = 0;
            let mut b = 0;
            while a < pos.len() && b < neg.len() {
                match pos[a].cmp(&neg[b]) {
                    std::cmp::Ordering::Equal => {
                        return Err(Error::InvalidInput(format!(
                            "edge ({i}, {}) carries both signs",
                            pos[a]
                        )))
                    }
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                }
            }
        }
        if self.pos_in != self.pos_out.transpose() || self.neg_in != self.neg_out.transpose() {
            return Err(Error::InvalidInput(
                "in-lists are not the transpose of out-lists".into(),
            ));
        }
        if !self.directed
            && (self.pos_in != self.pos_out || self.neg_in != self.neg_out)
        {
            return Err(Error::InvalidInput(
                "undirected graph is not symmetric".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SignedGraph {
        // 1+2, 1+3, 2-4, 3-4 in 0-based ids: 0+1, 0+2, 1-3, 2-3
        SignedGraph::from_edges(
            false,
            4,
            &[
                (0, 1, Sign::Positive),
                (0, 2, Sign::Positive),
                (1, 3, Sign::Negative),
                (2, 3, Sign::Negative),
            ],
        )
        .unwrap()
    }

    #[test]
    fn from_edges_builds_symmetric_adjacency() {
        let g = sample();
        assert_eq!(g.pos_out(0), &[1, 2]);
        assert_eq!(g.pos_out(1), &[0]);
        assert_eq!(g.neg_out(3), &[1, 2]);
        assert_eq!(g.pos_edge_count(), 2);
        assert_eq!(g.neg_edge_count(), 2);
        g.validate().unwrap();
    }

    #[test]
    fn from_edges_rejects_self_loop_and_duplicates() {
        let err = SignedGraph::from_edges(true, 2, &[(0, 0, Sign::Positive)]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        let err = SignedGraph::from_edges(
            false,
            2,
            &[(0, 1, Sign::Positive), (1, 0, Sign::Negative)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn from_edges_rejects_out_of_range() {
        let err = SignedGraph::from_edges(true, 2, &[(0, 5, Sign::Positive)]).unwrap_err();
        assert!(matches!(err, Error::NodeOutOfRange { node: 5, .. }));
    }

    #[test]
    fn directed_in_lists_are_transposes() {
        let g = SignedGraph::from_edges(
            true,
            3,
            &[(0, 1, Sign::Positive), (2, 1, Sign::Negative)],
        )
        .unwrap();
        assert_eq!(g.pos_in(1), &[0]);
        assert_eq!(g.neg_in(1), &[2]);
        assert!(g.pos_out(1).is_empty());
        g.validate().unwrap();
    }

    #[test]
    fn edges_iterates_each_undirected_pair_once() {
        let g = sample();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), 4);
        assert!(edges.iter().all(|e| e.src < e.dst));
    }

    #[test]
    fn sign_lookup() {
        let g = sample();
        assert_eq!(g.sign_of(0, 1), Some(Sign::Positive));
        assert_eq!(g.sign_of(3, 1), Some(Sign::Negative));
        assert_eq!(g.sign_of(0, 3), None);
    }

    #[test]
    fn empty_graph() {
        let g = SignedGraph::empty(true, 0);
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
        g.validate().unwrap();
    }
}
