//! Truncated Katz relevance. The unsigned form sums attenuated path counts;
//! the signed form tracks balanced/unbalanced path counts per length and
//! scores their attenuated difference, which equals unsigned Katz run on the
//! ±1 signed adjacency.

use crate::error::Result;
use crate::graph::{NodeId, SignedGraph};
use crate::measures::MeasureSpec;

/// Walk counts of one length from a fixed source, split by parity of the
/// number of negative edges: `balanced` has even parity, `unbalanced` odd.
/// Elementwise, `balanced + unbalanced` is the corresponding row of `|A|^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPathCounts {
    pub balanced: Vec<f64>,
    pub unbalanced: Vec<f64>,
    pub length: u32,
}

impl SignedPathCounts {
    /// Length-1 counts: the source's positive and negative out-rows.
    pub fn initial(g: &SignedGraph, source: NodeId) -> Result<Self> {
        g.check_node(source)?;
        let n = g.node_count();
        let mut balanced = vec![0.0; n];
        let mut unbalanced = vec![0.0; n];
        for &j in g.pos_out(source) {
            balanced[j as usize] = 1.0;
        }
        for &j in g.neg_out(source) {
            unbalanced[j as usize] = 1.0;
        }
        Ok(SignedPathCounts {
            balanced,
            unbalanced,
            length: 1,
        })
    }

    /// Extend every walk by one edge: a positive edge preserves parity, a
    /// negative edge flips it.
    pub fn advance(&self, g: &SignedGraph) -> Self {
        let n = g.node_count();
        let mut balanced = vec![0.0; n];
        let mut unbalanced = vec![0.0; n];
        for (i, &count) in self.balanced.iter().enumerate() {
            if count == 0.0 {
                continue;
            }
            for &j in g.pos_out(i as NodeId) {
                balanced[j as usize] += count;
            }
            for &j in g.neg_out(i as NodeId) {
                unbalanced[j as usize] += count;
            }
        }
        for (i, &count) in self.unbalanced.iter().enumerate() {
            if count == 0.0 {
                continue;
            }
            for &j in g.pos_out(i as NodeId) {
                unbalanced[j as usize] += count;
            }
            for &j in g.neg_out(i as NodeId) {
                balanced[j as usize] += count;
            }
        }
        SignedPathCounts {
            balanced,
            unbalanced,
            length: self.length + 1,
        }
    }
}

fn katz_params_check(spec_like: (f64, u32)) -> Result<()> {
    let probe = MeasureSpec {
        beta: spec_like.0,
        gamma: spec_like.1,
        ..MeasureSpec::new(crate::measures::MeasureId::Katz, crate::measures::Strategy::Signed)
    };
    probe.validate()
}

/// Row `source` of `Σ_{l=1..gamma} β^l |Ã|^l`, by sparse vector-matrix
/// products; signs are ignored, so run this on a strategy-transformed graph.
pub fn katz_unsigned_row(
    g: &SignedGraph,
    source: NodeId,
    beta: f64,
    gamma: u32,
) -> Result<Vec<f64>> {
    katz_params_check((beta, gamma))?;
    g.check_node(source)?;
    let n = g.node_count();
    let mut x = vec![0.0; n];
    x[source as usize] = 1.0;
    let mut scores = vec![0.0; n];
    let mut attenuation = 1.0;
    for _ in 0..gamma {
        let mut next = vec![0.0; n];
        for (i, &count) in x.iter().enumerate() {
            if count == 0.0 {
                continue;
            }
            for &j in g.pos_out(i as NodeId).iter().chain(g.neg_out(i as NodeId)) {
                next[j as usize] += count;
            }
        }
        x = next;
        attenuation *= beta;
        for (s, &count) in scores.iter_mut().zip(&x) {
            *s += attenuation * count;
        }
    }
    Ok(scores)
}

/// Row `source` of `Σ_{l=1..gamma} β^l (B_l − U_l)`: attenuated balanced
/// minus unbalanced walk counts. Scores may be negative.
pub fn katz_signed_row(
    g: &SignedGraph,
    source: NodeId,
    beta: f64,
    gamma: u32,
) -> Result<Vec<f64>> {
    katz_params_check((beta, gamma))?;
    let mut counts = SignedPathCounts::initial(g, source)?;
    let mut scores = vec![0.0; g.node_count()];
    let mut attenuation = beta;
    loop {
        for (score, (b, u)) in scores
            .iter_mut()
            .zip(counts.balanced.iter().zip(&counts.unbalanced))
        {
            *score += attenuation * (b - u);
        }
        if counts.length == gamma {
            break;
        }
        counts = counts.advance(g);
        attenuation *= beta;
    }
    Ok(scores)
}
