//! Batch scoring for the global measures: pairs are grouped by source, each
//! distinct source gets one per-source solve, and targets are read off the
//! solved row. Sources run in parallel over the shared immutable graph.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{NodeId, SignedGraph};
use crate::measures::ascos::AscosOperator;
use crate::measures::rwr::RandomWalkOperator;
use crate::measures::{katz_signed_row, katz_unsigned_row};
use crate::measures::{MeasureId, MeasureSpec, PairScoreSet, Strategy};

/// Diagnostics of one iterative per-source solve.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SolveReport {
    pub iterations: u32,
    /// Max-norm of the last successive-iterate difference.
    pub residual: f64,
    pub converged: bool,
}

enum Solver {
    Katz { signed: bool },
    Ascos { operator: AscosOperator },
    Rwr { operator: RandomWalkOperator },
}

impl Solver {
    fn prepare(g: &SignedGraph, spec: &MeasureSpec) -> Result<Solver> {
        let signed = spec.strategy == Strategy::Signed;
        Ok(match spec.measure {
            MeasureId::Katz => Solver::Katz { signed },
            MeasureId::Ascospp => Solver::Ascos {
                operator: AscosOperator::new(g, signed),
            },
            MeasureId::Rwr => Solver::Rwr {
                operator: RandomWalkOperator::new(g, spec.c, signed)?,
            },
            local => {
                return Err(Error::InvalidParameter(format!(
                    "{local} is not a global measure"
                )))
            }
        })
    }

    /// Solve the row for one source: scores plus, for the iterative
    /// families, a convergence report.
    fn row(
        &self,
        g: &SignedGraph,
        spec: &MeasureSpec,
        source: NodeId,
    ) -> Result<(Vec<f64>, Option<SolveReport>)> {
        match self {
            Solver::Katz { signed: true } => {
                Ok((katz_signed_row(g, source, spec.beta, spec.gamma)?, None))
            }
            Solver::Katz { signed: false } => {
                Ok((katz_unsigned_row(g, source, spec.beta, spec.gamma)?, None))
            }
            Solver::Ascos { operator } => {
                let (scores, report) = operator.solve(source, spec.c, spec.tol, spec.max_iter);
                Ok((scores, Some(report)))
            }
            Solver::Rwr { operator } => {
                let (scores, report) = operator.solve_row(source, spec.tol, spec.max_iter)?;
                Ok((scores, Some(report)))
            }
        }
    }
}

/// Score a pair batch with a global measure, applying the strategy transform.
///
/// Cost is one solve per distinct source. Non-converged solves surface as
/// warnings on the result; their last-iterate scores are still used.
pub fn score_global_pairs(
    g: &SignedGraph,
    spec: &MeasureSpec,
    pairs: &[(NodeId, NodeId)],
) -> Result<PairScoreSet> {
    spec.validate()?;
    if spec.measure.is_local() {
        return Err(Error::InvalidParameter(format!(
            "{} is not a global measure",
            spec.measure
        )));
    }
    for &(i, j) in pairs {
        g.check_node(i)?;
        g.check_node(j)?;
        if i == j {
            return Err(Error::InvalidInput(format!("self-pair ({i}, {j})")));
        }
    }
    let transformed;
    let target: &SignedGraph = match spec.strategy {
        Strategy::Signed => g,
        s => {
            transformed = s.transform(g);
            &transformed
        }
    };
    let solver = Solver::prepare(target, spec)?;

    // Group by source; BTreeMap keeps source order (and thus warnings and
    // error selection) deterministic.
    let mut by_source: BTreeMap<NodeId, Vec<(usize, NodeId)>> = BTreeMap::new();
    for (idx, &(src, dst)) in pairs.iter().enumerate() {
        by_source.entry(src).or_default().push((idx, dst));
    }
    let groups: Vec<(NodeId, Vec<(usize, NodeId)>)> = by_source.into_iter().collect();

    // Per source: (source, (pair index, score) list, solve diagnostics).
    type Solved = (NodeId, Vec<(usize, f64)>, Option<SolveReport>);
    let solved: Vec<Solved> = groups
        .into_par_iter()
        .map(|(source, wanted)| {
            let (row, report) = solver.row(target, spec, source)?;
            let values = wanted
                .into_iter()
                .map(|(idx, dst)| (idx, row[dst as usize]))
                .collect();
            Ok((source, values, report))
        })
        .collect::<Result<_>>()?;

    let mut scores = vec![0.0; pairs.len()];
    let mut warnings = Vec::new();
    for (source, values, report) in solved {
        if let Some(r) = report {
            if !r.converged {
                warnings.push(format!(
                    "{} solve for source {} stopped at {} iterations with residual {:.3e}",
                    spec.label(),
                    source,
                    r.iterations,
                    r.residual
                ));
            }
        }
        for (idx, value) in values {
            scores[idx] = value;
        }
    }
    let set = PairScoreSet {
        pairs: pairs.to_vec(),
        scores,
        measure: *spec,
        warnings,
    };
    set.validate()?;
    Ok(set)
}
