//! Seeded train/test edge splits for the link-sign prediction protocol.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, Sign, SignedGraph};

/// One held-out edge with its true sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestPair {
    pub src: NodeId,
    pub dst: NodeId,
    pub sign: Sign,
}

/// A train graph plus the held-out edges it must predict.
#[derive(Debug, Clone)]
pub struct SplitDataset {
    pub train: SignedGraph,
    pub test_pairs: Vec<TestPair>,
    pub seed: u64,
    pub ratio: f64,
}

/// Shuffle the edges with a seeded PRNG; the first `⌊ratio·E⌋` rebuild the
/// train graph (same node set, labels and weights), the rest become test
/// pairs. Deterministic for a fixed seed.
pub fn split_train_test(g: &SignedGraph, ratio: f64, seed: u64) -> Result<SplitDataset> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "split ratio must be in (0, 1), got {ratio}"
        )));
    }
    let mut edges: Vec<_> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::InvalidInput("cannot split a graph with no edges".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);
    let train_count = (ratio * edges.len() as f64).floor() as usize;
    let (train_edges, test_edges) = edges.split_at(train_count);
    let train = SignedGraph::assemble(
        g.is_directed(),
        g.node_count(),
        train_edges.iter().map(|e| (e.src, e.dst, e.sign)).collect(),
        g.weights_arc(),
        g.labels_arc(),
        g.dropped_self_loops(),
        g.dropped_conflicts(),
    );
    let test_pairs = test_edges
        .iter()
        .map(|e| TestPair {
            src: e.src,
            dst: e.dst,
            sign: e.sign,
        })
        .collect();
    Ok(SplitDataset {
        train,
        test_pairs,
        seed,
        ratio,
    })
}
