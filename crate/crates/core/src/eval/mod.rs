//! Experiment harness: link-sign prediction (AUC over seeded train/test
//! splits), tie-strength prediction (RMSE over normalized ratings) and
//! cross-validated parameter selection.

mod cv;
mod link;
mod metrics;
mod tie;

pub use cv::{cross_validate, CvOutcome, ParamGrid};
pub use link::eval_link_prediction;
pub use metrics::{auc, auc_bruteforce, rmse, threshold_search, ThresholdResult};
pub use tie::{eval_tie_strength, normalize_strengths};

use std::str::FromStr;

use crate::error::Error;
use crate::measures::MeasureSpec;

/// Which experiment a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    LinkPrediction,
    TieStrength,
}

/// Whether edges keep their direction or the network is symmetrized first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Setting {
    Directed,
    Undirected,
}

impl Setting {
    pub fn token(self) -> &'static str {
        match self {
            Setting::Directed => "directed",
            Setting::Undirected => "undirected",
        }
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "directed" => Ok(Setting::Directed),
            "undirected" => Ok(Setting::Undirected),
            other => Err(Error::InvalidParameter(format!(
                "unknown setting {other:?} (expected directed or undirected)"
            ))),
        }
    }
}

/// Result of one evaluation run.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EvalReport {
    pub task: Task,
    pub measure: MeasureSpec,
    pub setting: Setting,
    /// AUC for link prediction, RMSE for tie strength.
    pub metric_value: f64,
    /// Trained decision threshold where the protocol defines one.
    pub threshold: Option<f64>,
    pub split_seed: u64,
    /// Evaluated pair count.
    pub n_test: usize,
    /// Unseen-endpoint counts, non-converged solves, skipped records.
    pub warnings: Vec<String>,
}
