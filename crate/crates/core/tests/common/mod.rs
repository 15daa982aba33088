//! Dense reference oracles and random fixtures shared by the integration
//! tests. Everything here recomputes results from first principles through
//! nalgebra, so the sparse implementations are checked against an
//! independent code path.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use signedrel::graph::SignedGraph;
use signedrel::{NodeId, Sign};

/// Dense signed adjacency: +1 / −1 / 0.
pub fn dense_signed(g: &SignedGraph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n as NodeId {
        for &j in g.pos_out(i) {
            m[(i as usize, j as usize)] = 1.0;
        }
        for &j in g.neg_out(i) {
            m[(i as usize, j as usize)] = -1.0;
        }
    }
    m
}

/// Dense absolute adjacency: 1 where any edge exists.
pub fn dense_abs(g: &SignedGraph) -> DMatrix<f64> {
    dense_signed(g).map(f64::abs)
}

/// Row `source` of `Σ_{l=1..gamma} β^l M^l`, via dense matrix powers.
pub fn dense_katz_row(m: &DMatrix<f64>, source: usize, beta: f64, gamma: u32) -> Vec<f64> {
    let n = m.nrows();
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut acc = DMatrix::<f64>::zeros(n, n);
    let mut attenuation = 1.0;
    for _ in 0..gamma {
        power = &power * m;
        attenuation *= beta;
        acc += &power * attenuation;
    }
    acc.row(source).iter().copied().collect()
}

/// Dense row-normalized transition matrix; rows of dangling nodes stay zero.
pub fn dense_transition(g: &SignedGraph, signed: bool) -> DMatrix<f64> {
    let n = g.node_count();
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n as NodeId {
        let degree = g.out_degree(i);
        if degree == 0 {
            continue;
        }
        let share = 1.0 / degree as f64;
        for &j in g.pos_out(i) {
            s[(i as usize, j as usize)] = share;
        }
        for &j in g.neg_out(i) {
            s[(i as usize, j as usize)] = if signed { -share } else { share };
        }
    }
    s
}

/// Row `source` of `(1−c)(I − cS)^{−1}` by dense inversion.
pub fn dense_rwr_row(s: &DMatrix<f64>, source: usize, c: f64) -> Vec<f64> {
    let n = s.nrows();
    let m = DMatrix::<f64>::identity(n, n) - s * c;
    let inv = m
        .try_inverse()
        .expect("I − cS is strictly diagonally dominant for c < 1");
    inv.row(source).iter().map(|v| v * (1.0 - c)).collect()
}

/// Random signed graph: each candidate pair is kept independently with
/// probability `edge_prob` and negative with probability `neg_prob`.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    edge_prob: f64,
    neg_prob: f64,
    directed: bool,
) -> SignedGraph {
    let mut edges = Vec::new();
    for a in 0..n as NodeId {
        for b in 0..n as NodeId {
            if a == b || (!directed && a > b) {
                continue;
            }
            if rng.random_bool(edge_prob) {
                let sign = if rng.random_bool(neg_prob) {
                    Sign::Negative
                } else {
                    Sign::Positive
                };
                edges.push((a, b, sign));
            }
        }
    }
    SignedGraph::from_edges(directed, n, &edges).unwrap()
}
