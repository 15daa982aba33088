//! Seeded k-fold cross-validation over a parameter grid.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::link::setting_graph;
use crate::eval::metrics::{auc, rmse, threshold_search};
use crate::eval::tie::{normalize_strengths, ScoreMap};
use crate::eval::{Setting, Task};
use crate::graph::{NodeId, Sign, SignedGraph};
use crate::measures::{score_pairs, MeasureId, MeasureSpec, Strategy};

/// Candidate parameter values. Each measure family reads only the axes it
/// uses: betas × gammas for the path-counting measure, cs for the walk-based
/// measures; the neighborhood measures take no parameters.
#[derive(Debug, Clone)]
pub struct ParamGrid {
    pub betas: Vec<f64>,
    pub gammas: Vec<u32>,
    pub cs: Vec<f64>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        ParamGrid {
            betas: vec![MeasureSpec::DEFAULT_BETA],
            gammas: vec![MeasureSpec::DEFAULT_GAMMA],
            cs: vec![MeasureSpec::DEFAULT_C],
        }
    }
}

impl ParamGrid {
    /// Expand into concrete specs for the family of `base`, in ascending
    /// parameter order so that a tie is broken toward smaller values.
    fn points(&self, base: &MeasureSpec) -> Result<Vec<MeasureSpec>> {
        match base.measure {
            MeasureId::Katz => {
                if self.betas.is_empty() || self.gammas.is_empty() {
                    return Err(Error::InvalidParameter(
                        "parameter grid has no beta/gamma candidates".into(),
                    ));
                }
                let mut betas = self.betas.clone();
                betas.sort_by(f64::total_cmp);
                let mut gammas = self.gammas.clone();
                gammas.sort_unstable();
                let mut points = Vec::with_capacity(betas.len() * gammas.len());
                for &beta in &betas {
                    for &gamma in &gammas {
                        points.push(MeasureSpec {
                            beta,
                            gamma,
                            ..*base
                        });
                    }
                }
                Ok(points)
            }
            MeasureId::Ascospp | MeasureId::Rwr => {
                if self.cs.is_empty() {
                    return Err(Error::InvalidParameter(
                        "parameter grid has no c candidates".into(),
                    ));
                }
                let mut cs = self.cs.clone();
                cs.sort_by(f64::total_cmp);
                Ok(cs.iter().map(|&c| MeasureSpec { c, ..*base }).collect())
            }
            _ => Ok(vec![*base]),
        }
    }
}

/// The winning grid point with its mean validation metric.
#[derive(Debug, Clone)]
pub struct CvOutcome {
    pub best: MeasureSpec,
    /// Mean AUC (link task) or mean RMSE (tie task) over the folds.
    pub mean_metric: f64,
    pub warnings: Vec<String>,
}

enum PointError {
    /// The solver stalled somewhere in this grid point; skip it.
    NonConvergent,
    Fatal(Error),
}

/// Pick the best parameters for `base`'s measure by k-fold validation.
///
/// Link task: edges are shuffled once with the seed and dealt into `folds`
/// near-equal chunks; each chunk is held out, scored against the remaining
/// edges, and the grid point with the highest mean AUC wins. Tie task: the
/// rating records are chunked the same way, the score-to-strength mapping is
/// fitted on the training records only, and the lowest mean RMSE wins.
///
/// Grid points whose solver fails to converge on any fold are skipped with a
/// warning; if every point is skipped the whole run fails.
pub fn cross_validate(
    g: &SignedGraph,
    base: &MeasureSpec,
    grid: &ParamGrid,
    folds: u32,
    seed: u64,
    task: Task,
    setting: Setting,
) -> Result<CvOutcome> {
    base.validate()?;
    if folds < 2 {
        return Err(Error::InvalidParameter(format!(
            "cross-validation needs at least 2 folds, got {folds}"
        )));
    }
    let points = grid.points(base)?;
    for point in &points {
        point.validate()?;
    }
    let eval_graph = setting_graph(g, base, setting)?;
    match task {
        Task::LinkPrediction => cv_link(&eval_graph, &points, folds as usize, seed),
        Task::TieStrength => cv_tie(&eval_graph, &points, folds as usize, seed),
    }
}

/// Half-open index range of fold `k` out of `folds` over `n` samples.
fn fold_bounds(n: usize, folds: usize, k: usize) -> (usize, usize) {
    (k * n / folds, (k + 1) * n / folds)
}

fn select_best<F>(points: &[MeasureSpec], maximize: bool, eval_point: F) -> Result<CvOutcome>
where
    F: Fn(&MeasureSpec) -> std::result::Result<f64, PointError>,
{
    let mut warnings = Vec::new();
    let mut best: Option<(MeasureSpec, f64)> = None;
    for point in points {
        match eval_point(point) {
            Ok(mean) => {
                let improves = match best {
                    None => true,
                    Some((_, incumbent)) if maximize => mean > incumbent,
                    Some((_, incumbent)) => mean < incumbent,
                };
                if improves {
                    best = Some((*point, mean));
                }
            }
            Err(PointError::NonConvergent) => warnings.push(format!(
                "skipped grid point {}: solver did not converge",
                describe_point(point)
            )),
            Err(PointError::Fatal(e)) => return Err(e),
        }
    }
    match best {
        Some((spec, mean)) => Ok(CvOutcome {
            best: spec,
            mean_metric: mean,
            warnings,
        }),
        None => Err(Error::Solver(
            "every grid point failed to converge".into(),
        )),
    }
}

fn describe_point(p: &MeasureSpec) -> String {
    match p.measure {
        MeasureId::Katz => format!("beta={}, gamma={}", p.beta, p.gamma),
        MeasureId::Ascospp | MeasureId::Rwr => format!("c={}", p.c),
        _ => p.label(),
    }
}

fn cv_link(
    eval_graph: &SignedGraph,
    points: &[MeasureSpec],
    folds: usize,
    seed: u64,
) -> Result<CvOutcome> {
    let mut edges: Vec<_> = eval_graph.edges().collect();
    if edges.is_empty() {
        return Err(Error::InvalidInput(
            "cannot cross-validate a graph with no edges".into(),
        ));
    }
    if edges.len() < folds {
        return Err(Error::InvalidParameter(format!(
            "{folds} folds exceed the {} available edges",
            edges.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);

    select_best(points, true, |point| {
        let fold_aucs: Vec<f64> = (0..folds)
            .into_par_iter()
            .map(|k| {
                let (start, end) = fold_bounds(edges.len(), folds, k);
                let held_out = &edges[start..end];
                let train_edges: Vec<_> = edges[..start]
                    .iter()
                    .chain(edges[end..].iter())
                    .map(|e| (e.src, e.dst, e.sign))
                    .collect();
                let train = SignedGraph::assemble(
                    eval_graph.is_directed(),
                    eval_graph.node_count(),
                    train_edges,
                    eval_graph.weights_arc(),
                    eval_graph.labels_arc(),
                    eval_graph.dropped_self_loops(),
                    eval_graph.dropped_conflicts(),
                );
                let pairs: Vec<(NodeId, NodeId)> =
                    held_out.iter().map(|e| (e.src, e.dst)).collect();
                let labels: Vec<Sign> = held_out.iter().map(|e| e.sign).collect();
                let scored = score_pairs(&train, point, &pairs).map_err(PointError::Fatal)?;
                // score_pairs only warns about solver stalls, so any warning
                // marks the grid point as non-convergent.
                if !scored.warnings.is_empty() {
                    return Err(PointError::NonConvergent);
                }
                let mut scores = scored.scores;
                for (i, &(src, dst)) in pairs.iter().enumerate() {
                    if train.is_isolated(src) || train.is_isolated(dst) {
                        scores[i] = 0.0;
                    }
                }
                auc(&scores, &labels).map_err(PointError::Fatal)
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(fold_aucs.iter().sum::<f64>() / fold_aucs.len() as f64)
    })
}

fn cv_tie(
    eval_graph: &SignedGraph,
    points: &[MeasureSpec],
    folds: usize,
    seed: u64,
) -> Result<CvOutcome> {
    let Some(weights) = eval_graph.weights() else {
        return Err(Error::TaskNotApplicable(
            "tie-strength prediction needs ground-truth ratings; load a weighted CSV".into(),
        ));
    };
    let mut records: Vec<(NodeId, NodeId, f64)> = weights
        .iter()
        .filter(|(&(src, dst), _)| eval_graph.sign_of(src, dst).is_some())
        .map(|(&(src, dst), &rating)| (src, dst, rating))
        .collect();
    if records.is_empty() {
        return Err(Error::InvalidInput(
            "no rated edges survive in the evaluated network".into(),
        ));
    }
    if records.len() < folds {
        return Err(Error::InvalidParameter(format!(
            "{folds} folds exceed the {} available rating records",
            records.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    records.shuffle(&mut rng);
    let pairs: Vec<(NodeId, NodeId)> = records.iter().map(|r| (r.0, r.1)).collect();
    let ratings: Vec<f64> = records.iter().map(|r| r.2).collect();
    let truth = normalize_strengths(&ratings)?;
    let labels: Vec<Sign> = truth
        .iter()
        .map(|&w| if w > 0.0 { Sign::Positive } else { Sign::Negative })
        .collect();

    select_best(points, false, |point| {
        // Scores depend only on the grid point; the folds just move the
        // mapping-fit / validation boundary.
        let scored = score_pairs(eval_graph, point, &pairs).map_err(PointError::Fatal)?;
        if !scored.warnings.is_empty() {
            return Err(PointError::NonConvergent);
        }
        let fold_rmses: Vec<f64> = (0..folds)
            .map(|k| {
                let (start, end) = fold_bounds(records.len(), folds, k);
                let is_val = |i: usize| i >= start && i < end;
                let train_scores: Vec<f64> = (0..records.len())
                    .filter(|&i| !is_val(i))
                    .map(|i| scored.scores[i])
                    .collect();
                let map = match point.strategy {
                    Strategy::Signed => ScoreMap::fit_scale(&train_scores),
                    Strategy::RemoveNeg | Strategy::IgnoreSign => {
                        let train_labels: Vec<Sign> = (0..records.len())
                            .filter(|&i| !is_val(i))
                            .map(|i| labels[i])
                            .collect();
                        let t = threshold_search(&train_scores, &train_labels)
                            .map_err(PointError::Fatal)?
                            .threshold;
                        ScoreMap::fit_stretch(&train_scores, t)
                    }
                };
                let predictions: Vec<f64> =
                    (start..end).map(|i| map.apply(scored.scores[i])).collect();
                rmse(&predictions, &truth[start..end]).map_err(PointError::Fatal)
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(fold_rmses.iter().sum::<f64>() / fold_rmses.len() as f64)
    })
}
