//! Ranking and regression metrics: rank-based AUC with midrank tie
//! handling, balanced-accuracy threshold search, and RMSE.

use crate::error::{Error, Result};
use crate::graph::Sign;

fn check_classes(labels: &[Sign]) -> Result<(usize, usize)> {
    let pos = labels.iter().filter(|&&l| l == Sign::Positive).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClassTestSet);
    }
    Ok((pos, neg))
}

/// Probability that a uniformly random positive-labeled score exceeds a
/// random negative-labeled one, with ties counted as one half. Computed via
/// midranks, so it equals the pairwise-comparison definition exactly.
pub fn auc(scores: &[f64], labels: &[Sign]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidInput(
            "scores and labels length mismatch".into(),
        ));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidInput("NaN score".into()));
    }
    let (pos, neg) = check_classes(labels)?;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // Midranks: tied scores share the average of their 1-based positions.
    let mut positive_rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        let midrank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            if labels[idx] == Sign::Positive {
                positive_rank_sum += midrank;
            }
        }
        start = end;
    }
    let pos = pos as f64;
    let neg = neg as f64;
    Ok((positive_rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg))
}

/// Reference implementation: enumerate every positive-negative pair.
/// Quadratic; used by tests to pin the fast path.
pub fn auc_bruteforce(scores: &[f64], labels: &[Sign]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidInput(
            "scores and labels length mismatch".into(),
        ));
    }
    check_classes(labels)?;
    let mut wins = 0.0;
    let mut comparisons = 0.0;
    for (i, &li) in labels.iter().enumerate() {
        if li != Sign::Positive {
            continue;
        }
        for (j, &lj) in labels.iter().enumerate() {
            if lj != Sign::Negative {
                continue;
            }
            comparisons += 1.0;
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    Ok(wins / comparisons)
}

/// Outcome of a balanced-accuracy threshold sweep.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ThresholdResult {
    /// Midpoint between adjacent distinct scores, or a ±∞ sentinel.
    pub threshold: f64,
    /// Balanced accuracy of `predict positive iff score ≥ threshold` on the
    /// training data.
    pub balanced_accuracy: f64,
}

/// Sweep every candidate threshold (±∞ sentinels plus midpoints between
/// adjacent distinct sorted scores) and keep the one maximizing balanced
/// accuracy; ties break toward the smaller threshold.
pub fn threshold_search(scores: &[f64], labels: &[Sign]) -> Result<ThresholdResult> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidInput(
            "scores and labels length mismatch".into(),
        ));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidInput("NaN score".into()));
    }
    let (pos_total, neg_total) = check_classes(labels)?;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // At threshold −∞ everything is predicted positive.
    let mut true_pos = pos_total;
    let mut false_pos = neg_total;
    let bacc = |tp: usize, fp: usize| {
        let tpr = tp as f64 / pos_total as f64;
        let tnr = (neg_total - fp) as f64 / neg_total as f64;
        (tpr + tnr) / 2.0
    };
    let mut best = ThresholdResult {
        threshold: f64::NEG_INFINITY,
        balanced_accuracy: bacc(true_pos, false_pos),
    };
    let mut start = 0;
    while start < order.len() {
        // Move the threshold just above this tie group: its members flip to
        // predicted-negative.
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        for &idx in &order[start..end] {
            match labels[idx] {
                Sign::Positive => true_pos -= 1,
                Sign::Negative => false_pos -= 1,
            }
        }
        let threshold = if end == order.len() {
            f64::INFINITY
        } else {
            (scores[order[start]] + scores[order[end]]) / 2.0
        };
        let accuracy = bacc(true_pos, false_pos);
        if accuracy > best.balanced_accuracy {
            best = ThresholdResult {
                threshold,
                balanced_accuracy: accuracy,
            };
        }
        start = end;
    }
    Ok(best)
}

/// Root-mean-square error between parallel slices.
pub fn rmse(predictions: &[f64], truth: &[f64]) -> Result<f64> {
    if predictions.len() != truth.len() {
        return Err(Error::InvalidInput(
            "predictions and truth length mismatch".into(),
        ));
    }
    if predictions.is_empty() {
        return Err(Error::InvalidInput("empty RMSE input".into()));
    }
    if predictions.iter().chain(truth).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite RMSE input".into()));
    }
    let sum_sq: f64 = predictions
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    Ok((sum_sq / predictions.len() as f64).sqrt())
}
