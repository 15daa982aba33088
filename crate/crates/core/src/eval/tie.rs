//! Tie-strength prediction: score every rated edge of the full network,
//! map the scores into [−1, 1], and measure RMSE against the normalized
//! ground-truth ratings.

use crate::error::{Error, Result};
use crate::eval::link::setting_graph;
use crate::eval::metrics::{rmse, threshold_search};
use crate::eval::{EvalReport, Setting, Task};
use crate::graph::{NodeId, Sign, SignedGraph};
use crate::measures::{score_pairs, MeasureSpec, Strategy};

/// Map raw ratings (±[1, 10]) onto [−1, 1] by dividing by 10.
pub fn normalize_strengths(ratings: &[f64]) -> Result<Vec<f64>> {
    ratings
        .iter()
        .map(|&r| {
            if !r.is_finite() || !(1.0..=10.0).contains(&r.abs()) {
                return Err(Error::InvalidInput(format!(
                    "rating {r} outside ±[1, 10]"
                )));
            }
            Ok(r / 10.0)
        })
        .collect()
}

/// Mapping of raw scores into [−1, 1], trained on one score set and
/// applicable to another; out-of-range inputs clamp to the trained range.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ScoreMap {
    /// Divide by the trained max-abs when it exceeds 1, else identity.
    Scale { normalizer: f64 },
    /// Stretch around a trained threshold: scores at or above it map
    /// affinely onto [0, 1], scores below onto [−1, 0). A branch with no
    /// spread collapses to 0, the neutral prediction.
    Stretch { t: f64, lo: f64, hi: f64 },
}

impl ScoreMap {
    pub(crate) fn fit_scale(scores: &[f64]) -> Self {
        let max_abs = scores.iter().fold(0.0f64, |acc, s| acc.max(s.abs()));
        ScoreMap::Scale {
            normalizer: max_abs.max(1.0),
        }
    }

    pub(crate) fn fit_stretch(scores: &[f64], threshold: f64) -> Self {
        let lo = scores.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        ScoreMap::Stretch {
            t: threshold.clamp(lo, hi),
            lo,
            hi,
        }
    }

    pub(crate) fn apply(&self, s: f64) -> f64 {
        match *self {
            ScoreMap::Scale { normalizer } => (s / normalizer).clamp(-1.0, 1.0),
            ScoreMap::Stretch { t, lo, hi } => {
                let s = s.clamp(lo, hi);
                let width = if s >= t { hi - t } else { t - lo };
                if width == 0.0 {
                    0.0
                } else {
                    (s - t) / width
                }
            }
        }
    }
}

#[cfg(test)]
fn threshold_stretch(scores: &[f64], t: f64) -> Vec<f64> {
    let map = ScoreMap::fit_stretch(scores, t);
    scores.iter().map(|&s| map.apply(s)).collect()
}

/// Evaluate a measure on tie-strength prediction.
///
/// Every rating record whose pair survives in the evaluated network becomes
/// one sample: the pair is scored on the full network (no split), the score
/// is mapped into [−1, 1], and RMSE is computed against `rating / 10`.
///
/// Signed-strategy scores are divided by the maximum absolute score over the
/// evaluated pairs when that maximum exceeds 1; remove-negative and
/// ignore-sign scores, which carry no sign information of their own, are
/// stretched around the threshold trained against the rating signs.
pub fn eval_tie_strength(
    g: &SignedGraph,
    spec: &MeasureSpec,
    setting: Setting,
) -> Result<EvalReport> {
    spec.validate()?;
    let Some(weights) = g.weights() else {
        return Err(Error::TaskNotApplicable(
            "tie-strength prediction needs ground-truth ratings; load a weighted CSV".into(),
        ));
    };
    let eval_graph = setting_graph(g, spec, setting)?;

    let mut pairs: Vec<(NodeId, NodeId)> = Vec::with_capacity(weights.len());
    let mut ratings: Vec<f64> = Vec::with_capacity(weights.len());
    let mut skipped = 0usize;
    for (&(src, dst), &rating) in weights {
        // Records whose pair was dropped while symmetrizing have no edge to
        // evaluate.
        if eval_graph.sign_of(src, dst).is_none() {
            skipped += 1;
            continue;
        }
        pairs.push((src, dst));
        ratings.push(rating);
    }
    if pairs.is_empty() {
        return Err(Error::InvalidInput(
            "no rated edges survive in the evaluated network".into(),
        ));
    }
    let truth = normalize_strengths(&ratings)?;

    let scored = score_pairs(&eval_graph, spec, &pairs)?;
    let mut warnings = scored.warnings;
    if skipped > 0 {
        warnings.push(format!(
            "{skipped} rating records dropped with their conflicting pairs"
        ));
    }

    let (map, threshold) = match spec.strategy {
        Strategy::Signed => (ScoreMap::fit_scale(&scored.scores), None),
        Strategy::RemoveNeg | Strategy::IgnoreSign => {
            let labels: Vec<Sign> = truth
                .iter()
                .map(|&w| if w > 0.0 { Sign::Positive } else { Sign::Negative })
                .collect();
            let t = threshold_search(&scored.scores, &labels)?.threshold;
            (ScoreMap::fit_stretch(&scored.scores, t), Some(t))
        }
    };
    let predictions: Vec<f64> = scored.scores.iter().map(|&s| map.apply(s)).collect();

    let metric_value = rmse(&predictions, &truth)?;
    Ok(EvalReport {
        task: Task::TieStrength,
        measure: *spec,
        setting,
        metric_value,
        threshold,
        split_seed: 0,
        n_test: pairs.len(),
        warnings,
    })
}
