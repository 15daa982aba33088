//! Neighborhood measures: common neighbors, Jaccard index and preferential
//! attachment, in unsigned and signed forms. All of them require an
//! undirected graph; the evaluation harness symmetrizes directed data first.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{NodeId, SignedGraph};
use crate::measures::{MeasureId, MeasureSpec, PairScoreSet, SpaAggregate, Strategy};

/// Size of the intersection of two sorted, deduplicated id slices.
fn intersection(a: &[NodeId], b: &[NodeId]) -> usize {
    let mut count = 0;
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Common-neighbor counts split by the sign pair (side of i, side of j).
/// The four sets partition the common neighborhood, since each neighbor
/// relation carries exactly one sign.
struct SignedOverlap {
    pp: usize,
    nn: usize,
    pn: usize,
    np: usize,
}

impl SignedOverlap {
    fn total(&self) -> usize {
        self.pp + self.nn + self.pn + self.np
    }

    fn agreement(&self) -> f64 {
        (self.pp + self.nn) as f64 - (self.pn + self.np) as f64
    }
}

fn overlap(g: &SignedGraph, i: NodeId, j: NodeId) -> Result<SignedOverlap> {
    g.check_node(i)?;
    g.check_node(j)?;
    Ok(SignedOverlap {
        pp: intersection(g.pos_out(i), g.pos_out(j)),
        nn: intersection(g.neg_out(i), g.neg_out(j)),
        pn: intersection(g.pos_out(i), g.neg_out(j)),
        np: intersection(g.neg_out(i), g.pos_out(j)),
    })
}

/// Unsigned common neighbors: `|N_i ∩ N_j|` over full neighborhoods.
pub fn ucn(g: &SignedGraph, i: NodeId, j: NodeId) -> Result<f64> {
    Ok(overlap(g, i, j)?.total() as f64)
}

/// Signed common neighbors: sign-agreeing common neighbors minus
/// sign-disagreeing ones. May be negative.
pub fn scn(g: &SignedGraph, i: NodeId, j: NodeId) -> Result<f64> {
    Ok(overlap(g, i, j)?.agreement())
}

fn union_size(g: &SignedGraph, i: NodeId, j: NodeId, common: usize) -> usize {
    g.out_degree(i) + g.out_degree(j) - common
}

/// Unsigned Jaccard index: `|N_i ∩ N_j| / |N_i ∪ N_j|`, 0 when both
/// neighborhoods are empty.
pub fn uji(g: &SignedGraph, i: NodeId, j: NodeId) -> Result<f64> {
    let o = overlap(g, i, j)?;
    let denom = union_size(g, i, j, o.total());
    Ok(if denom == 0 {
        0.0
    } else {
        o.total() as f64 / denom as f64
    })
}

/// Signed Jaccard index: SCN over the unique-neighbor count. Lies in
/// `[-1, 1]`; 0 when both neighborhoods are empty.
pub fn sji(g: &SignedGraph, i: NodeId, j: NodeId) -> Result<f64> {
    let o = overlap(g, i, j)?;
    let denom = union_size(g, i, j, o.total());
    Ok(if denom == 0 {
        0.0
    } else {
        o.agreement() / denom as f64
    })
}

/// Unsigned preferential attachment: `d_i · d_j` over total degrees.
pub fn upa(g: &SignedGraph, i: NodeId, j: NodeId) -> Result<f64> {
    g.check_node(i)?;
    g.check_node(j)?;
    Ok((g.out_degree(i) * g.out_degree(j)) as f64)
}

/// Signed preferential attachment:
/// `sign(UPA⁺ − UPA⁻) · f(UPA⁺, UPA⁻)` with `UPA± = d_i^± · d_j^±`,
/// `sign(0) = 0`, and `f` either `max` (default) or `|difference|`.
pub fn spa(g: &SignedGraph, i: NodeId, j: NodeId, aggregate: SpaAggregate) -> Result<f64> {
    g.check_node(i)?;
    g.check_node(j)?;
    let p = (g.pos_out(i).len() * g.pos_out(j).len()) as f64;
    let n = (g.neg_out(i).len() * g.neg_out(j).len()) as f64;
    let sign = if p > n {
        1.0
    } else if p < n {
        -1.0
    } else {
        return Ok(0.0);
    };
    let f = match aggregate {
        SpaAggregate::Max => p.max(n),
        SpaAggregate::AbsDiff => (p - n).abs(),
    };
    Ok(sign * f)
}

/// Score a pair batch with a local measure, applying the strategy transform.
pub fn score_local_pairs(
    g: &SignedGraph,
    spec: &MeasureSpec,
    pairs: &[(NodeId, NodeId)],
) -> Result<PairScoreSet> {
    if !spec.measure.is_local() {
        return Err(Error::InvalidParameter(format!(
            "{} is not a local measure",
            spec.measure
        )));
    }
    if g.is_directed() {
        return Err(Error::InvalidInput(
            "local measures require an undirected graph; symmetrize first".into(),
        ));
    }
    if let Some(&(i, j)) = pairs.iter().find(|(i, j)| i == j) {
        return Err(Error::InvalidInput(format!("self-pair ({i}, {j})")));
    }
    let transformed;
    let target: &SignedGraph = match spec.strategy {
        Strategy::Signed => g,
        s => {
            transformed = s.transform(g);
            &transformed
        }
    };
    let signed = spec.strategy == Strategy::Signed;
    let scores: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| match (spec.measure, signed) {
            (MeasureId::Cn, true) => scn(target, i, j),
            (MeasureId::Cn, false) => ucn(target, i, j),
            (MeasureId::Ji, true) => sji(target, i, j),
            (MeasureId::Ji, false) => uji(target, i, j),
            (MeasureId::Pa, true) => spa(target, i, j, spec.spa_aggregate),
            (MeasureId::Pa, false) => upa(target, i, j),
            _ => unreachable!("guarded by is_local"),
        })
        .collect::<Result<_>>()?;
    let set = PairScoreSet {
        pairs: pairs.to_vec(),
        scores,
        measure: *spec,
        warnings: Vec::new(),
    };
    debug_assert!(set.validate().is_ok());
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    /// Node ids in these fixtures are 1-based to match hand traces;
    /// node 0 exists but stays isolated.
    fn undirected(n: usize, edges: &[(NodeId, NodeId, Sign)]) -> SignedGraph {
        SignedGraph::from_edges(false, n + 1, edges).unwrap()
    }

    /// Edges {1+2, 1+3, 2−4, 3−4}.
    fn two_triads() -> SignedGraph {
        undirected(
            4,
            &[
                (1, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (2, 4, Sign::Negative),
                (3, 4, Sign::Negative),
            ],
        )
    }

    #[test]
    fn ucn_star_leaves_share_hub() {
        let g = undirected(
            4,
            &[
                (1, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (1, 4, Sign::Positive),
            ],
        );
        assert_eq!(ucn(&g, 2, 3).unwrap(), 1.0);
    }

    #[test]
    fn ucn_disjoint_components() {
        let g = undirected(4, &[(1, 2, Sign::Positive), (3, 4, Sign::Positive)]);
        assert_eq!(ucn(&g, 1, 3).unwrap(), 0.0);
    }

    #[test]
    fn ucn_two_shared_neighbors() {
        // Edges {1-2, 1-3, 2-3, 2-4, 3-4}: ucn(1,4) = |{2,3}| = 2.
        let g = undirected(
            4,
            &[
                (1, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (2, 3, Sign::Positive),
                (2, 4, Sign::Positive),
                (3, 4, Sign::Positive),
            ],
        );
        assert_eq!(ucn(&g, 1, 4).unwrap(), 2.0);
    }

    #[test]
    fn scn_counts_sign_agreement() {
        let g = two_triads();
        // Common neighbors of 2 and 3: node 1 (+,+) and node 4 (−,−).
        assert_eq!(scn(&g, 2, 3).unwrap(), 2.0);
    }

    #[test]
    fn scn_empty_neighborhood_is_zero() {
        let g = two_triads();
        assert_eq!(scn(&g, 0, 2).unwrap(), 0.0);
    }

    #[test]
    fn scn_can_be_negative() {
        // 1 +hub, 2 −hub: the single common neighbor disagrees.
        let g = undirected(3, &[(1, 3, Sign::Positive), (2, 3, Sign::Negative)]);
        assert_eq!(scn(&g, 1, 2).unwrap(), -1.0);
    }

    #[test]
    fn sji_normalizes_by_unique_neighbors() {
        let g = two_triads();
        // scn(2,3) = 2, unique neighbors {1, 4}.
        assert_eq!(sji(&g, 2, 3).unwrap(), 1.0);
    }

    #[test]
    fn ji_zero_denominator_rule() {
        let g = undirected(2, &[]);
        assert_eq!(uji(&g, 1, 2).unwrap(), 0.0);
        assert_eq!(sji(&g, 1, 2).unwrap(), 0.0);
    }

    #[test]
    fn uji_triangle() {
        let g = undirected(
            3,
            &[
                (1, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (2, 3, Sign::Positive),
            ],
        );
        // N_1 = {2,3}, N_2 = {1,3}: intersection {3}, union {1,2,3}.
        assert!((uji(&g, 1, 2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn unsigned_equals_signed_on_positive_graph() {
        let g = undirected(
            4,
            &[
                (1, 2, Sign::Positive),
                (2, 3, Sign::Positive),
                (3, 4, Sign::Positive),
                (1, 4, Sign::Positive),
                (1, 3, Sign::Positive),
            ],
        );
        for i in 1..=4 {
            for j in 1..=4 {
                if i == j {
                    continue;
                }
                assert_eq!(scn(&g, i, j).unwrap(), ucn(&g, i, j).unwrap());
                assert_eq!(sji(&g, i, j).unwrap(), uji(&g, i, j).unwrap());
                assert_eq!(
                    spa(&g, i, j, SpaAggregate::Max).unwrap(),
                    upa(&g, i, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn pa_isolated_node_scores_zero() {
        let g = two_triads();
        assert_eq!(upa(&g, 0, 2).unwrap(), 0.0);
        assert_eq!(spa(&g, 0, 2, SpaAggregate::Max).unwrap(), 0.0);
    }

    #[test]
    fn spa_positive_dominant() {
        let g = two_triads();
        // d1+ = 2, d2+ = 1, d1− = 0, d2− = 1: UPA⁺ = 2, UPA⁻ = 0.
        assert_eq!(spa(&g, 1, 2, SpaAggregate::Max).unwrap(), 2.0);
        assert_eq!(spa(&g, 1, 2, SpaAggregate::AbsDiff).unwrap(), 2.0);
    }

    #[test]
    fn spa_tie_scores_zero() {
        // Both nodes have one positive and one negative neighbor.
        let g = undirected(
            4,
            &[
                (1, 3, Sign::Positive),
                (1, 4, Sign::Negative),
                (2, 3, Sign::Positive),
                (2, 4, Sign::Negative),
            ],
        );
        assert_eq!(spa(&g, 1, 2, SpaAggregate::Max).unwrap(), 0.0);
        assert_eq!(spa(&g, 1, 2, SpaAggregate::AbsDiff).unwrap(), 0.0);
    }

    #[test]
    fn spa_aggregates_differ_when_both_sides_active() {
        // d1+ = 2, d1− = 1, d2+ = 1, d2− = 2: UPA⁺ = 2, UPA⁻ = 2 → tie → 0.
        // Adjust: give node 2 two positive neighbors instead.
        let g = undirected(
            6,
            &[
                (1, 3, Sign::Positive),
                (1, 4, Sign::Positive),
                (1, 5, Sign::Negative),
                (2, 3, Sign::Positive),
                (2, 4, Sign::Positive),
                (2, 6, Sign::Negative),
            ],
        );
        // UPA⁺ = 4, UPA⁻ = 1.
        assert_eq!(spa(&g, 1, 2, SpaAggregate::Max).unwrap(), 4.0);
        assert_eq!(spa(&g, 1, 2, SpaAggregate::AbsDiff).unwrap(), 3.0);
    }

    #[test]
    fn symmetry_in_pair_order() {
        let g = two_triads();
        for i in 0..=4 {
            for j in 0..=4 {
                if i == j {
                    continue;
                }
                assert_eq!(ucn(&g, i, j).unwrap(), ucn(&g, j, i).unwrap());
                assert_eq!(scn(&g, i, j).unwrap(), scn(&g, j, i).unwrap());
                assert_eq!(uji(&g, i, j).unwrap(), uji(&g, j, i).unwrap());
                assert_eq!(sji(&g, i, j).unwrap(), sji(&g, j, i).unwrap());
                assert_eq!(upa(&g, i, j).unwrap(), upa(&g, j, i).unwrap());
                assert_eq!(
                    spa(&g, i, j, SpaAggregate::Max).unwrap(),
                    spa(&g, j, i, SpaAggregate::Max).unwrap()
                );
            }
        }
    }

    #[test]
    fn out_of_range_rejected() {
        let g = two_triads();
        assert!(ucn(&g, 1, 99).is_err());
        assert!(spa(&g, 99, 1, SpaAggregate::Max).is_err());
    }

    #[test]
    fn batch_remove_neg_transform() {
        let g = two_triads();
        let spec = MeasureSpec::new(MeasureId::Cn, Strategy::RemoveNeg);
        // After dropping negatives only {1+2, 1+3} remain; N_4 = ∅.
        let set = score_local_pairs(&g, &spec, &[(1, 4), (2, 3)]).unwrap();
        assert_eq!(set.scores, vec![0.0, 1.0]);
        assert_eq!(set.measure.label(), "UCN-R");
    }

    #[test]
    fn batch_empty_pairs() {
        let g = two_triads();
        let spec = MeasureSpec::new(MeasureId::Ji, Strategy::Signed);
        let set = score_local_pairs(&g, &spec, &[]).unwrap();
        assert!(set.pairs.is_empty());
        assert!(set.scores.is_empty());
    }

    #[test]
    fn batch_strategy_coincidence_on_positive_graph() {
        let g = undirected(
            3,
            &[
                (1, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (2, 3, Sign::Positive),
            ],
        );
        let pairs = [(1, 2), (1, 3), (2, 3)];
        let signed =
            score_local_pairs(&g, &MeasureSpec::new(MeasureId::Ji, Strategy::Signed), &pairs)
                .unwrap();
        let removed = score_local_pairs(
            &g,
            &MeasureSpec::new(MeasureId::Ji, Strategy::RemoveNeg),
            &pairs,
        )
        .unwrap();
        assert_eq!(signed.scores, removed.scores);
    }

    #[test]
    fn batch_rejects_directed_graph() {
        let g = SignedGraph::from_edges(true, 3, &[(0, 1, Sign::Positive)]).unwrap();
        let spec = MeasureSpec::new(MeasureId::Cn, Strategy::Signed);
        assert!(score_local_pairs(&g, &spec, &[(0, 1)]).is_err());
    }

    #[test]
    fn batch_rejects_global_measure_and_self_pair() {
        let g = two_triads();
        let spec = MeasureSpec::new(MeasureId::Rwr, Strategy::Signed);
        assert!(score_local_pairs(&g, &spec, &[(1, 2)]).is_err());
        let spec = MeasureSpec::new(MeasureId::Cn, Strategy::Signed);
        assert!(score_local_pairs(&g, &spec, &[(2, 2)]).is_err());
    }
}
