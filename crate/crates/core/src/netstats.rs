//! Dataset statistics: sign reciprocity, balance-theory triad census and
//! degree distributions.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{to_undirected, NodeId, Sign, SignedGraph};

/// How often a directed edge is answered by a same-sign edge back.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ReciprocityReport {
    pub pos_edges: usize,
    pub neg_edges: usize,
    /// Positive edges i→j with a positive j→i.
    pub pos_reciprocated: usize,
    /// Negative edges i→j with a negative j→i.
    pub neg_reciprocated: usize,
    pub pos_reciprocal_rate: f64,
    pub neg_reciprocal_rate: f64,
    /// False when the corresponding edge class is empty; the rate is then
    /// reported as 0 by convention.
    pub pos_rate_defined: bool,
    pub neg_rate_defined: bool,
    /// Unordered pairs connected in both directions with opposite signs.
    pub mixed_pair_count: u64,
}

/// Per-sign reciprocation rates over ordered edges. Rejects undirected
/// graphs, where every edge would trivially reciprocate itself.
pub fn reciprocity(g: &SignedGraph) -> Result<ReciprocityReport> {
    if !g.is_directed() {
        return Err(Error::InvalidInput(
            "reciprocity requires a directed graph".into(),
        ));
    }
    let mut pos_edges = 0usize;
    let mut neg_edges = 0usize;
    let mut pos_reciprocated = 0usize;
    let mut neg_reciprocated = 0usize;
    let mut mixed_pair_count = 0u64;
    for e in g.edges() {
        match e.sign {
            Sign::Positive => pos_edges += 1,
            Sign::Negative => neg_edges += 1,
        }
        match g.sign_of(e.dst, e.src) {
            Some(back) if back == e.sign => match e.sign {
                Sign::Positive => pos_reciprocated += 1,
                Sign::Negative => neg_reciprocated += 1,
            },
            // Counted once per unordered pair.
            Some(_) if e.src < e.dst => mixed_pair_count += 1,
            _ => {}
        }
    }
    let rate = |hit: usize, total: usize| {
        if total == 0 {
            0.0
        } else {
            hit as f64 / total as f64
        }
    };
    Ok(ReciprocityReport {
        pos_edges,
        neg_edges,
        pos_reciprocated,
        neg_reciprocated,
        pos_reciprocal_rate: rate(pos_reciprocated, pos_edges),
        neg_reciprocal_rate: rate(neg_reciprocated, neg_edges),
        pos_rate_defined: pos_edges > 0,
        neg_rate_defined: neg_edges > 0,
        mixed_pair_count,
    })
}

/// Closed-triangle counts by sign multiset. Balance theory holds (+,+,+)
/// and (+,−,−) balanced, the other two configurations unbalanced.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TriadCensus {
    /// Counts for (+,+,+), (+,+,−), (+,−,−), (−,−,−), in that order.
    pub counts: [u64; 4],
    /// (ppp + pmm) / total; 0 when the graph has no triangles.
    pub balanced_fraction: f64,
    /// Conflicting reciprocal pairs dropped while symmetrizing; the census
    /// runs on the post-drop graph.
    pub dropped_conflict_pairs: u64,
}

impl TriadCensus {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn balanced_count(&self) -> u64 {
        self.counts[0] + self.counts[2]
    }
}

/// Enumerate every undirected triangle once (i < j < k) and classify it by
/// its sign multiset. Directed graphs are symmetrized first; conflicting
/// pairs drop out and are reported on the census.
pub fn triad_census(g: &SignedGraph) -> TriadCensus {
    let owned;
    let g = if g.is_directed() {
        owned = to_undirected(g);
        &owned
    } else {
        g
    };
    let n = g.node_count();
    // Merged (sorted) neighbor lists over both signs.
    let support: Vec<Vec<NodeId>> = (0..n as NodeId)
        .map(|i| {
            let mut merged = Vec::with_capacity(g.out_degree(i));
            let (mut p, mut q) = (g.pos_out(i).iter().peekable(), g.neg_out(i).iter().peekable());
            loop {
                match (p.peek(), q.peek()) {
                    (Some(&&a), Some(&&b)) => {
                        if a < b {
                            merged.push(a);
                            p.next();
                        } else {
                            merged.push(b);
                            q.next();
                        }
                    }
                    (Some(&&a), None) => {
                        merged.push(a);
                        p.next();
                    }
                    (None, Some(&&b)) => {
                        merged.push(b);
                        q.next();
                    }
                    (None, None) => break,
                }
            }
            merged
        })
        .collect();

    let negatives = |i: NodeId, j: NodeId| match g.sign_of(i, j) {
        Some(Sign::Negative) => 1,
        _ => 0,
    };
    let counts = (0..n as u32)
        .into_par_iter()
        .map(|i| {
            let mut local = [0u64; 4];
            for &j in support[i as usize].iter().filter(|&&j| j > i) {
                // k iterates the intersection of the two neighborhoods, k > j.
                let (a, b) = (&support[i as usize], &support[j as usize]);
                let (mut x, mut y) = (0, 0);
                while x < a.len() && y < b.len() {
                    match a[x].cmp(&b[y]) {
                        std::cmp::Ordering::Less => x += 1,
                        std::cmp::Ordering::Greater => y += 1,
                        std::cmp::Ordering::Equal => {
                            let k = a[x];
                            if k > j {
                                let neg = negatives(i, j) + negatives(i, k) + negatives(j, k);
                                local[neg] += 1;
                            }
                            x += 1;
                            y += 1;
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || [0u64; 4],
            |mut acc, local| {
                for (a, l) in acc.iter_mut().zip(local) {
                    *a += l;
                }
                acc
            },
        );
    let total: u64 = counts.iter().sum();
    let balanced_fraction = if total == 0 {
        0.0
    } else {
        (counts[0] + counts[2]) as f64 / total as f64
    };
    TriadCensus {
        counts,
        balanced_fraction,
        dropped_conflict_pairs: g.dropped_conflicts(),
    }
}

/// Degree flavors for [`degree_distribution`]. The in/out kinds only make
/// sense on directed graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeKind {
    InPos,
    InNeg,
    OutPos,
    OutNeg,
    TotalPos,
    TotalNeg,
}

impl DegreeKind {
    pub const ALL: [DegreeKind; 6] = [
        DegreeKind::InPos,
        DegreeKind::InNeg,
        DegreeKind::OutPos,
        DegreeKind::OutNeg,
        DegreeKind::TotalPos,
        DegreeKind::TotalNeg,
    ];

    /// Identifier used in file names and CLI arguments.
    pub fn token(self) -> &'static str {
        match self {
            DegreeKind::InPos => "in_pos",
            DegreeKind::InNeg => "in_neg",
            DegreeKind::OutPos => "out_pos",
            DegreeKind::OutNeg => "out_neg",
            DegreeKind::TotalPos => "total_pos",
            DegreeKind::TotalNeg => "total_neg",
        }
    }

    pub fn requires_directed(self) -> bool {
        !matches!(self, DegreeKind::TotalPos | DegreeKind::TotalNeg)
    }
}

impl FromStr for DegreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "in+" | "in_pos" => Ok(DegreeKind::InPos),
            "in-" | "in_neg" => Ok(DegreeKind::InNeg),
            "out+" | "out_pos" => Ok(DegreeKind::OutPos),
            "out-" | "out_neg" => Ok(DegreeKind::OutNeg),
            "total+" | "total_pos" => Ok(DegreeKind::TotalPos),
            "total-" | "total_neg" => Ok(DegreeKind::TotalNeg),
            other => Err(Error::InvalidParameter(format!(
                "unknown degree kind {other:?}"
            ))),
        }
    }
}

/// Histogram degree → node count; counts sum to the node count.
pub fn degree_distribution(g: &SignedGraph, kind: DegreeKind) -> Result<BTreeMap<usize, usize>> {
    if kind.requires_directed() && !g.is_directed() {
        return Err(Error::InvalidParameter(format!(
            "degree kind {} requires a directed graph",
            kind.token()
        )));
    }
    let mut histogram = BTreeMap::new();
    for i in 0..g.node_count() as NodeId {
        let d = match kind {
            DegreeKind::InPos => g.pos_in(i).len(),
            DegreeKind::InNeg => g.neg_in(i).len(),
            DegreeKind::OutPos => g.pos_out(i).len(),
            DegreeKind::OutNeg => g.neg_out(i).len(),
            // On undirected graphs the out-lists hold each incident edge once;
            // on directed graphs "total" counts both directions.
            DegreeKind::TotalPos => {
                if g.is_directed() {
                    g.pos_out(i).len() + g.pos_in(i).len()
                } else {
                    g.pos_out(i).len()
                }
            }
            DegreeKind::TotalNeg => {
                if g.is_directed() {
                    g.neg_out(i).len() + g.neg_in(i).len()
                } else {
                    g.neg_out(i).len()
                }
            }
        };
        *histogram.entry(d).or_insert(0) += 1;
    }
    Ok(histogram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list, EdgeFormat};

    fn directed(text: &str) -> SignedGraph {
        load_edge_list(text.as_bytes(), EdgeFormat::WhitespaceSigned, true).unwrap()
    }

    fn undirected(text: &str) -> SignedGraph {
        load_edge_list(text.as_bytes(), EdgeFormat::WhitespaceSigned, false).unwrap()
    }

    #[test]
    fn reciprocity_fully_reciprocated() {
        let r = reciprocity(&directed("a b 1\nb a 1\n")).unwrap();
        assert_eq!(r.pos_reciprocal_rate, 1.0);
        assert_eq!(r.neg_reciprocal_rate, 0.0);
        assert!(!r.neg_rate_defined);
        assert_eq!(r.mixed_pair_count, 0);
    }

    #[test]
    fn reciprocity_mixed_pair() {
        let r = reciprocity(&directed("a b 1\nb a -1\n")).unwrap();
        assert_eq!(r.pos_reciprocal_rate, 0.0);
        assert_eq!(r.neg_reciprocal_rate, 0.0);
        assert_eq!(r.mixed_pair_count, 1);
        assert!(r.pos_rate_defined && r.neg_rate_defined);
    }

    #[test]
    fn reciprocity_partial() {
        // a↔b positive pair; a→c positive unreciprocated; c→d / d→c negative.
        let r = reciprocity(&directed("a b 1\nb a 1\na c 1\nc d -1\nd c -1\n")).unwrap();
        assert_eq!(r.pos_edges, 3);
        assert!((r.pos_reciprocal_rate - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.neg_reciprocal_rate, 1.0);
    }

    #[test]
    fn reciprocity_rejects_undirected() {
        assert!(reciprocity(&undirected("a b 1\n")).is_err());
    }

    #[test]
    fn census_single_triangles() {
        let all_pos = triad_census(&undirected("a b 1\nb c 1\na c 1\n"));
        assert_eq!(all_pos.counts, [1, 0, 0, 0]);
        assert_eq!(all_pos.balanced_fraction, 1.0);

        let one_neg = triad_census(&undirected("a b 1\nb c 1\na c -1\n"));
        assert_eq!(one_neg.counts, [0, 1, 0, 0]);
        assert_eq!(one_neg.balanced_fraction, 0.0);

        let two_neg = triad_census(&undirected("a b 1\nb c -1\na c -1\n"));
        assert_eq!(two_neg.counts, [0, 0, 1, 0]);
        assert_eq!(two_neg.balanced_fraction, 1.0);

        let all_neg = triad_census(&undirected("a b -1\nb c -1\na c -1\n"));
        assert_eq!(all_neg.counts, [0, 0, 0, 1]);
        assert_eq!(all_neg.balanced_fraction, 0.0);
    }

    #[test]
    fn census_empty_graph() {
        let census = triad_census(&undirected(""));
        assert_eq!(census.total(), 0);
        assert_eq!(census.balanced_fraction, 0.0);
    }

    #[test]
    fn census_counts_shared_edges_once() {
        // Two triangles sharing edge b-c: a-b-c and b-c-d.
        let census = triad_census(&undirected("a b 1\nb c 1\na c 1\nb d -1\nc d -1\n"));
        assert_eq!(census.total(), 2);
        assert_eq!(census.counts, [1, 0, 1, 0]);
        assert_eq!(census.balanced_fraction, 1.0);
    }

    #[test]
    fn census_symmetrizes_directed_input() {
        // Reciprocal agreeing pairs form a triangle.
        let census = triad_census(&directed("a b 1\nb a 1\nb c 1\na c -1\n"));
        assert_eq!(census.total(), 1);
        assert_eq!(census.counts, [0, 1, 0, 0]);
        assert_eq!(census.dropped_conflict_pairs, 0);
    }

    #[test]
    fn census_reports_dropped_conflicts() {
        // a↔c disagrees, so the triangle disappears.
        let census = triad_census(&directed("a b 1\nb c 1\na c 1\nc a -1\n"));
        assert_eq!(census.total(), 0);
        assert_eq!(census.dropped_conflict_pairs, 1);
    }

    #[test]
    fn census_invariant_under_relabeling() {
        let a = triad_census(&undirected("a b 1\nb c -1\na c -1\nc d 1\nb d 1\n"));
        let b = triad_census(&undirected("z y 1\ny x -1\nz x -1\nx w 1\ny w 1\n"));
        assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn degree_empty_graph() {
        let g = SignedGraph::empty(false, 5);
        let h = degree_distribution(&g, DegreeKind::TotalPos).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 5)]));
    }

    #[test]
    fn degree_star_total() {
        let g = undirected("h a 1\nh b 1\nh c 1\nh d 1\n");
        let h = degree_distribution(&g, DegreeKind::TotalPos).unwrap();
        assert_eq!(h, BTreeMap::from([(1, 4), (4, 1)]));
        let n = degree_distribution(&g, DegreeKind::TotalNeg).unwrap();
        assert_eq!(n, BTreeMap::from([(0, 5)]));
    }

    #[test]
    fn degree_directed_kinds() {
        let g = directed("a b 1\na c -1\nb c 1\n");
        let out_pos = degree_distribution(&g, DegreeKind::OutPos).unwrap();
        assert_eq!(out_pos, BTreeMap::from([(0, 1), (1, 2)]));
        let in_neg = degree_distribution(&g, DegreeKind::InNeg).unwrap();
        assert_eq!(in_neg, BTreeMap::from([(0, 2), (1, 1)]));
        let total_pos = degree_distribution(&g, DegreeKind::TotalPos).unwrap();
        assert_eq!(total_pos, BTreeMap::from([(1, 2), (2, 1)]));
    }

    #[test]
    fn degree_histogram_sums_to_node_count() {
        let g = directed("a b 1\na c -1\nb c 1\nd a -1\n");
        for kind in DegreeKind::ALL {
            let h = degree_distribution(&g, kind).unwrap();
            assert_eq!(h.values().sum::<usize>(), g.node_count(), "{}", kind.token());
        }
    }

    #[test]
    fn degree_directed_kind_rejected_on_undirected() {
        let g = undirected("a b 1\n");
        assert!(degree_distribution(&g, DegreeKind::InPos).is_err());
        assert!(degree_distribution(&g, DegreeKind::TotalPos).is_ok());
    }

    #[test]
    fn degree_kind_tokens_parse() {
        for kind in DegreeKind::ALL {
            assert_eq!(kind.token().parse::<DegreeKind>().unwrap(), kind);
        }
        assert_eq!("in+".parse::<DegreeKind>().unwrap(), DegreeKind::InPos);
        assert_eq!("total-".parse::<DegreeKind>().unwrap(), DegreeKind::TotalNeg);
        assert!("sideways".parse::<DegreeKind>().is_err());
    }
}
