//! ASCOS++ relevance: per-edge coefficients `(A_vw / κ_v) · (1 − e^{−A_vw})`
//! with the tail normalizer `κ_v = Σ_q A_vq` (unsigned) or `Σ_q |A_vq|`
//! (signed variant), propagated from a source whose self-relevance is pinned
//! to 1. For ±1 edge weights the factor `1 − e^{−A}` is ≈ 0.632 on positive
//! edges and ≈ −1.718 on negative edges.

use crate::error::{Error, Result};
use crate::graph::{NodeId, SignedGraph};
use crate::measures::sparse::WeightedCsr;
use crate::measures::SolveReport;

/// `1 − e^{−1}`, the weight factor of a +1 edge.
pub(crate) const POSITIVE_EDGE_FACTOR: f64 = 0.632_120_558_828_557_7;
/// `1 − e^{+1}`, the weight factor of a −1 edge.
pub(crate) const NEGATIVE_EDGE_FACTOR: f64 = -1.718_281_828_459_045;

/// Edge-coefficient matrix for one (graph, variant) pair; rows with a zero
/// normalizer are empty, so their outgoing edges carry no relevance.
#[derive(Debug, Clone)]
pub(crate) struct AscosOperator {
    coefficients: WeightedCsr,
}

impl AscosOperator {
    pub(crate) fn new(g: &SignedGraph, signed: bool) -> Self {
        let n = g.node_count();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n as NodeId {
            let pos = g.pos_out(i).len() as f64;
            let neg = g.neg_out(i).len() as f64;
            let kappa = if signed { pos + neg } else { pos - neg };
            if kappa == 0.0 {
                rows.push(Vec::new());
                continue;
            }
            let mut row = Vec::with_capacity((pos + neg) as usize);
            for &j in g.pos_out(i) {
                row.push((j, POSITIVE_EDGE_FACTOR / kappa));
            }
            for &j in g.neg_out(i) {
                // (−1/κ)·(1−e^{+1})
                row.push((j, -NEGATIVE_EDGE_FACTOR / kappa));
            }
            row.sort_unstable_by_key(|&(j, _)| j);
            rows.push(row);
        }
        AscosOperator {
            coefficients: WeightedCsr::from_rows(rows),
        }
    }

    /// Fixed-point solve for one source: `x_source ≡ 1` and, for `j ≠ source`,
    /// `x_j = c · Σ_{v→j} coef(v, j) · x_v`, iterated until the max-norm
    /// change falls to `tol` or `max_iter` sweeps elapse.
    pub(crate) fn solve(
        &self,
        source: NodeId,
        c: f64,
        tol: f64,
        max_iter: u32,
    ) -> (Vec<f64>, SolveReport) {
        let n = self.coefficients.node_count();
        let mut x = vec![0.0; n];
        x[source as usize] = 1.0;
        let mut residual = f64::INFINITY;
        let mut iterations = 0;
        while iterations < max_iter {
            let mut next = vec![0.0; n];
            self.coefficients.accumulate_vec_mul(&x, &mut next);
            for v in next.iter_mut() {
                *v *= c;
            }
            next[source as usize] = 1.0;
            residual = x
                .iter()
                .zip(&next)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            x = next;
            iterations += 1;
            if residual <= tol {
                break;
            }
        }
        let report = SolveReport {
            iterations,
            residual,
            converged: residual <= tol,
        };
        (x, report)
    }
}

/// Relevance of every node to `source` under ASCOS++ (`signed = false`, the
/// Σ A normalizer) or SASCOS++ (`signed = true`, the Σ |A| normalizer).
///
/// Non-convergence is reported, never silently dropped: the scores of the
/// last sweep are returned alongside `converged = false`.
pub fn ascospp_row(
    g: &SignedGraph,
    source: NodeId,
    c: f64,
    tol: f64,
    max_iter: u32,
    signed: bool,
) -> Result<(Vec<f64>, SolveReport)> {
    check_solver_params(c, tol, max_iter)?;
    g.check_node(source)?;
    let op = AscosOperator::new(g, signed);
    Ok(op.solve(source, c, tol, max_iter))
}

pub(crate) fn check_solver_params(c: f64, tol: f64, max_iter: u32) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "c must lie in (0, 1), got {c}"
        )));
    }
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if max_iter < 1 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    const TOL: f64 = 1e-10;

    fn solve(g: &SignedGraph, source: NodeId, c: f64, signed: bool) -> Vec<f64> {
        let (scores, report) = ascospp_row(g, source, c, TOL, 500, signed).unwrap();
        assert!(report.converged, "solve did not converge: {report:?}");
        scores
    }

    #[test]
    fn factor_constants() {
        assert!((POSITIVE_EDGE_FACTOR - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((NEGATIVE_EDGE_FACTOR - (1.0 - 1.0f64.exp())).abs() < 1e-15);
        assert!((POSITIVE_EDGE_FACTOR - 0.632).abs() < 5e-4);
        assert!((NEGATIVE_EDGE_FACTOR + 1.718).abs() < 5e-4);
    }

    #[test]
    fn isolated_source_scores_self_only() {
        let g = SignedGraph::from_edges(true, 3, &[(1, 2, Sign::Positive)]).unwrap();
        let scores = solve(&g, 0, 0.85, true);
        assert_eq!(scores, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn single_positive_edge_closed_form() {
        let g = SignedGraph::from_edges(true, 2, &[(0, 1, Sign::Positive)]).unwrap();
        let scores = solve(&g, 0, 0.5, true);
        let expected = 0.5 * POSITIVE_EDGE_FACTOR;
        assert!((scores[1] - expected).abs() < 1e-12);
        assert!((expected - 0.316).abs() < 1e-3);
    }

    #[test]
    fn single_negative_edge_uses_negative_factor() {
        let g = SignedGraph::from_edges(true, 2, &[(0, 1, Sign::Negative)]).unwrap();
        let scores = solve(&g, 0, 0.5, true);
        // κ = |−1| = 1: coefficient (−1/1)·(1−e) = e−1.
        assert!((scores[1] - 0.5 * (-NEGATIVE_EDGE_FACTOR)).abs() < 1e-12);
    }

    #[test]
    fn self_score_is_exactly_one() {
        let g = SignedGraph::from_edges(
            false,
            4,
            &[
                (0, 1, Sign::Positive),
                (1, 2, Sign::Negative),
                (2, 3, Sign::Positive),
                (0, 3, Sign::Negative),
            ],
        )
        .unwrap();
        for source in 0..4 {
            let (scores, _) = ascospp_row(&g, source, 0.5, TOL, 500, true).unwrap();
            assert_eq!(scores[source as usize], 1.0);
        }
    }

    #[test]
    fn signed_and_unsigned_agree_on_positive_graph() {
        let g = SignedGraph::from_edges(
            false,
            4,
            &[
                (0, 1, Sign::Positive),
                (1, 2, Sign::Positive),
                (2, 3, Sign::Positive),
                (0, 3, Sign::Positive),
            ],
        )
        .unwrap();
        for source in 0..4 {
            assert_eq!(
                solve(&g, source, 0.85, true),
                solve(&g, source, 0.85, false)
            );
        }
    }

    #[test]
    fn zero_normalizer_blocks_propagation() {
        // 0 → 1, then 1 has one positive and one negative out-edge: the
        // unsigned normalizer at node 1 is 0, so nothing flows past it.
        let g = SignedGraph::from_edges(
            true,
            4,
            &[
                (0, 1, Sign::Positive),
                (1, 2, Sign::Positive),
                (1, 3, Sign::Negative),
            ],
        )
        .unwrap();
        let unsigned = solve(&g, 0, 0.5, false);
        assert!(unsigned[1] > 0.0);
        assert_eq!(unsigned[2], 0.0);
        assert_eq!(unsigned[3], 0.0);
        // The signed normalizer (|A| sum = 2) fixes exactly this case.
        let signed = solve(&g, 0, 0.5, true);
        assert!(signed[2] > 0.0);
        assert!(signed[3] != 0.0);
    }

    #[test]
    fn divergent_cycle_reports_non_convergence() {
        // 2 ↔ 3 negative two-cycle: loop gain (c·1.718)² > 1 at c = 0.85.
        let g = SignedGraph::from_edges(
            true,
            4,
            &[
                (0, 2, Sign::Positive),
                (2, 3, Sign::Negative),
                (3, 2, Sign::Negative),
            ],
        )
        .unwrap();
        let (scores, report) = ascospp_row(&g, 0, 0.85, 1e-12, 60, true).unwrap();
        assert!(!report.converged);
        assert!(report.residual > 1e-12);
        assert!(scores.iter().all(|s| s.is_finite()));
    }

    #[test]
    fn invalid_parameters_rejected() {
        let g = SignedGraph::from_edges(true, 2, &[(0, 1, Sign::Positive)]).unwrap();
        assert!(ascospp_row(&g, 0, 0.0, TOL, 10, true).is_err());
        assert!(ascospp_row(&g, 0, 1.0, TOL, 10, true).is_err());
        assert!(ascospp_row(&g, 0, 0.5, 0.0, 10, true).is_err());
        assert!(ascospp_row(&g, 0, 0.5, TOL, 0, true).is_err());
        assert!(ascospp_row(&g, 9, 0.5, TOL, 10, true).is_err());
    }
}
