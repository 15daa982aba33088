//! Link-sign prediction: hold out a seeded share of edges, score the held-out
//! pairs against the train graph only, and measure rank-based AUC against the
//! true signs.

use crate::error::{Error, Result};
use crate::eval::metrics::{auc, threshold_search};
use crate::eval::{EvalReport, Setting, Task};
use crate::graph::{split_train_test, to_undirected, NodeId, Sign, SignedGraph};
use crate::measures::{score_pairs, MeasureSpec};

/// Resolve the evaluation graph for a setting. Local measures only exist on
/// undirected networks, so the directed setting rejects them.
pub(crate) fn setting_graph(
    g: &SignedGraph,
    spec: &MeasureSpec,
    setting: Setting,
) -> Result<SignedGraph> {
    match setting {
        Setting::Undirected => Ok(to_undirected(g)),
        Setting::Directed => {
            if !g.is_directed() {
                return Err(Error::TaskNotApplicable(
                    "directed evaluation needs directed input data".into(),
                ));
            }
            if spec.measure.is_local() {
                return Err(Error::TaskNotApplicable(format!(
                    "{} is defined for undirected networks only; use the undirected setting",
                    spec.measure
                )));
            }
            Ok(g.clone())
        }
    }
}

/// Run one link-prediction evaluation: split with `seed`, score test pairs
/// against the train graph, report AUC (threshold-free) plus the trained
/// threshold for auxiliary accuracy reporting.
///
/// Test pairs with an endpoint that has no train edges score 0 and are
/// counted in the warnings rather than discarded.
pub fn eval_link_prediction(
    g: &SignedGraph,
    spec: &MeasureSpec,
    ratio: f64,
    seed: u64,
    setting: Setting,
) -> Result<EvalReport> {
    spec.validate()?;
    let eval_graph = setting_graph(g, spec, setting)?;
    let split = split_train_test(&eval_graph, ratio, seed)?;
    if split.test_pairs.is_empty() {
        return Err(Error::InvalidInput(
            "split left no test pairs; lower the ratio".into(),
        ));
    }
    let labels: Vec<Sign> = split.test_pairs.iter().map(|p| p.sign).collect();
    if labels.iter().all(|&s| s == labels[0]) {
        return Err(Error::SingleClassTestSet);
    }

    // One batch for test pairs and train edges: shared sources solve once.
    let test_pairs: Vec<(NodeId, NodeId)> =
        split.test_pairs.iter().map(|p| (p.src, p.dst)).collect();
    let train_edges: Vec<(NodeId, NodeId, Sign)> = split
        .train
        .edges()
        .map(|e| (e.src, e.dst, e.sign))
        .collect();
    let mut batch = test_pairs.clone();
    batch.extend(train_edges.iter().map(|&(s, d, _)| (s, d)));
    let scored = score_pairs(&split.train, spec, &batch)?;
    let mut warnings = scored.warnings;
    let (test_scores, train_scores) = scored.scores.split_at(test_pairs.len());
    let mut test_scores = test_scores.to_vec();

    let mut unseen = 0usize;
    for (score, &(src, dst)) in test_scores.iter_mut().zip(&test_pairs) {
        if split.train.is_isolated(src) || split.train.is_isolated(dst) {
            *score = 0.0;
            unseen += 1;
        }
    }
    if unseen > 0 {
        warnings.push(format!(
            "{unseen} test pairs had an endpoint without train edges; scored 0"
        ));
    }

    let metric_value = auc(&test_scores, &labels)?;
    let train_labels: Vec<Sign> = train_edges.iter().map(|&(_, _, s)| s).collect();
    let threshold = match threshold_search(train_scores, &train_labels) {
        Ok(r) => Some(r.threshold),
        Err(Error::SingleClassTestSet) => {
            warnings.push("train edges are single-class; no threshold trained".into());
            None
        }
        Err(e) => return Err(e),
    };

    Ok(EvalReport {
        task: Task::LinkPrediction,
        measure: *spec,
        setting,
        metric_value,
        threshold,
        split_seed: seed,
        n_test: test_pairs.len(),
        warnings,
    })
}
