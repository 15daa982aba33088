//! Random walk with restart. The walker follows the row-normalized
//! transition matrix with probability `c` and restarts at the source with
//! probability `1 − c`; the signed variant normalizes the signed adjacency
//! (entries `±1/d̄_i`), so scores carry sign and lie in `[−1, 1]`.

use crate::error::Result;
use crate::graph::{NodeId, SignedGraph};
use crate::measures::ascos::check_solver_params;
use crate::measures::sparse::WeightedCsr;
use crate::measures::SolveReport;

/// Row-normalized transition structure shared by every per-source solve.
///
/// Rows of dangling nodes (no out-edges) are all-zero: their walk mass
/// decays and the restart term keeps the system well-posed. Every other row
/// has absolute sum exactly 1.
#[derive(Debug, Clone)]
pub struct RandomWalkOperator {
    transition: WeightedCsr,
    restart: f64,
    abs_row_sums: Vec<f64>,
}

impl RandomWalkOperator {
    /// Build from `|A|` (`signed = false`) or the signed `A` (`signed = true`),
    /// dividing each row by the node's total out-degree.
    pub fn new(g: &SignedGraph, restart: f64, signed: bool) -> Result<Self> {
        check_solver_params(restart, 1.0, 1)?;
        let n = g.node_count();
        let mut rows = Vec::with_capacity(n);
        let mut abs_row_sums = Vec::with_capacity(n);
        for i in 0..n as NodeId {
            let degree = g.out_degree(i);
            if degree == 0 {
                rows.push(Vec::new());
                abs_row_sums.push(0.0);
                continue;
            }
            let share = 1.0 / degree as f64;
            let negative_share = if signed { -share } else { share };
            let mut row = Vec::with_capacity(degree);
            for &j in g.pos_out(i) {
                row.push((j, share));
            }
            for &j in g.neg_out(i) {
                row.push((j, negative_share));
            }
            row.sort_unstable_by_key(|&(j, _)| j);
            rows.push(row);
            abs_row_sums.push(1.0);
        }
        Ok(RandomWalkOperator {
            transition: WeightedCsr::from_rows(rows),
            restart,
            abs_row_sums,
        })
    }

    pub fn restart(&self) -> f64 {
        self.restart
    }

    /// 1 for nodes with out-edges, 0 for dangling nodes.
    pub fn abs_row_sums(&self) -> &[f64] {
        &self.abs_row_sums
    }

    /// `x · S`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.transition.node_count()];
        self.transition.accumulate_vec_mul(x, &mut out);
        out
    }

    /// Solve row `source` of `(1−c)(I − cS)^{−1}` by power iteration
    /// `r ← c·(rS) + (1−c)·e_source` from `r = (1−c)·e_source`. The map is a
    /// 1-norm contraction with ratio `c`, so the residual decays
    /// geometrically and the solve always terminates well before
    /// `⌈log(tol/(1−c)) / log(c)⌉` iterations.
    pub fn solve_row(&self, source: NodeId, tol: f64, max_iter: u32) -> Result<(Vec<f64>, SolveReport)> {
        check_solver_params(self.restart, tol, max_iter)?;
        let n = self.transition.node_count();
        if source as usize >= n {
            return Err(crate::error::Error::NodeOutOfRange {
                node: source,
                count: n,
            });
        }
        let c = self.restart;
        let hold = 1.0 - c;
        let mut r = vec![0.0; n];
        r[source as usize] = hold;
        let mut residual = f64::INFINITY;
        let mut iterations = 0;
        while iterations < max_iter {
            let mut next = self.apply(&r);
            for v in next.iter_mut() {
                *v *= c;
            }
            next[source as usize] += hold;
            residual = r
                .iter()
                .zip(&next)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            r = next;
            iterations += 1;
            if residual <= tol {
                break;
            }
        }
        debug_assert!(r.iter().map(|v| v.abs()).sum::<f64>() <= 1.0 + 1e-12);
        let report = SolveReport {
            iterations,
            residual,
            converged: residual <= tol,
        };
        Ok((r, report))
    }
}

/// Relevance of every node to `source` under URWR (`signed = false`) or
/// SRWR (`signed = true`).
pub fn rwr_row(
    g: &SignedGraph,
    source: NodeId,
    c: f64,
    tol: f64,
    max_iter: u32,
    signed: bool,
) -> Result<(Vec<f64>, SolveReport)> {
    g.check_node(source)?;
    check_solver_params(c, tol, max_iter)?;
    RandomWalkOperator::new(g, c, signed)?.solve_row(source, tol, max_iter)
}
