//! Node relevance measures for signed networks.
//!
//! Six measure families, each usable under three strategies:
//!
//! * `signed`: the signed variant runs directly on the signed graph
//!   (SCN, SJI, SPA, SK, SASCOS++, SRWR);
//! * `remove_neg`: negative edges are dropped, then the unsigned variant
//!   runs (UCN-R, UJI-R, UPA-R, UK-R, UASCOS++-R, URWR-R);
//! * `ignore_sign`: every edge is treated as positive, then the unsigned
//!   variant runs (the `-I` row labels).
//!
//! Local measures (`cn`, `ji`, `pa`) read only the immediate neighborhoods
//! and require an undirected graph. Global measures (`katz`, `ascospp`,
//! `rwr`) propagate relevance through the whole network via per-source
//! sparse solves and accept either orientation.

mod ascos;
mod global;
mod katz;
mod local;
mod rwr;
mod sparse;

pub use ascos::ascospp_row;
pub use global::{score_global_pairs, SolveReport};
pub use katz::{katz_signed_row, katz_unsigned_row, SignedPathCounts};
pub use local::{scn, score_local_pairs, sji, spa, ucn, uji, upa};
pub use rwr::{rwr_row, RandomWalkOperator};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{NodeId, SignedGraph};

/// Measure family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    Cn,
    Ji,
    Pa,
    Katz,
    Ascospp,
    Rwr,
}

impl MeasureId {
    /// Every family, in the row order the result tables use.
    pub const ALL: [MeasureId; 6] = [
        MeasureId::Cn,
        MeasureId::Ji,
        MeasureId::Pa,
        MeasureId::Katz,
        MeasureId::Rwr,
        MeasureId::Ascospp,
    ];

    /// Neighborhood-only measures; these require an undirected graph.
    pub fn is_local(self) -> bool {
        matches!(self, MeasureId::Cn | MeasureId::Ji | MeasureId::Pa)
    }

    /// Lowercase CLI token.
    pub fn token(self) -> &'static str {
        match self {
            MeasureId::Cn => "cn",
            MeasureId::Ji => "ji",
            MeasureId::Pa => "pa",
            MeasureId::Katz => "katz",
            MeasureId::Ascospp => "ascospp",
            MeasureId::Rwr => "rwr",
        }
    }

    fn base_label(self) -> &'static str {
        match self {
            MeasureId::Cn => "CN",
            MeasureId::Ji => "JI",
            MeasureId::Pa => "PA",
            MeasureId::Katz => "K",
            MeasureId::Ascospp => "ASCOS++",
            MeasureId::Rwr => "RWR",
        }
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cn" => Ok(MeasureId::Cn),
            "ji" => Ok(MeasureId::Ji),
            "pa" => Ok(MeasureId::Pa),
            "katz" => Ok(MeasureId::Katz),
            "ascospp" => Ok(MeasureId::Ascospp),
            "rwr" => Ok(MeasureId::Rwr),
            other => Err(Error::InvalidParameter(format!(
                "unknown measure {other:?} (expected cn, ji, pa, katz, rwr or ascospp)"
            ))),
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// How a measure handles negative edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Drop negative edges, run the unsigned measure.
    RemoveNeg,
    /// Treat every edge as positive, run the unsigned measure.
    IgnoreSign,
    /// Run the signed variant on the signed graph.
    Signed,
}

impl Strategy {
    /// Every strategy, in the row order the result tables use.
    pub const ALL: [Strategy; 3] = [Strategy::RemoveNeg, Strategy::IgnoreSign, Strategy::Signed];

    /// Lowercase CLI token.
    pub fn token(self) -> &'static str {
        match self {
            Strategy::RemoveNeg => "remove_neg",
            Strategy::IgnoreSign => "ignore_sign",
            Strategy::Signed => "signed",
        }
    }

    /// The graph the measure actually runs on under this strategy.
    pub fn transform(self, g: &SignedGraph) -> SignedGraph {
        match self {
            Strategy::RemoveNeg => crate::graph::remove_negative(g),
            Strategy::IgnoreSign => crate::graph::ignore_signs(g),
            Strategy::Signed => g.clone(),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "signed" => Ok(Strategy::Signed),
            "remove_neg" => Ok(Strategy::RemoveNeg),
            "ignore_sign" => Ok(Strategy::IgnoreSign),
            other => Err(Error::InvalidParameter(format!(
                "unknown strategy {other:?} (expected signed, remove_neg or ignore_sign)"
            ))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Aggregation `f(UPA⁺, UPA⁻)` inside SPA.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaAggregate {
    /// `max(UPA⁺, UPA⁻)`, the default.
    Max,
    /// `|UPA⁺ − UPA⁻|`.
    AbsDiff,
}

/// A fully parameterized measure: family, strategy and solver knobs.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MeasureSpec {
    pub measure: MeasureId,
    pub strategy: Strategy,
    /// Katz attenuation per path edge.
    pub beta: f64,
    /// Katz maximum path length.
    pub gamma: u32,
    /// Restart/decay factor for ASCOS++ and RWR.
    pub c: f64,
    /// Convergence threshold on the max-norm iterate change.
    pub tol: f64,
    pub max_iter: u32,
    pub spa_aggregate: SpaAggregate,
}

impl MeasureSpec {
    pub const DEFAULT_BETA: f64 = 0.005;
    pub const DEFAULT_GAMMA: u32 = 5;
    pub const DEFAULT_C: f64 = 0.85;
    pub const DEFAULT_TOL: f64 = 1e-8;
    pub const DEFAULT_MAX_ITER: u32 = 200;

    pub fn new(measure: MeasureId, strategy: Strategy) -> Self {
        MeasureSpec {
            measure,
            strategy,
            beta: Self::DEFAULT_BETA,
            gamma: Self::DEFAULT_GAMMA,
            c: Self::DEFAULT_C,
            tol: Self::DEFAULT_TOL,
            max_iter: Self::DEFAULT_MAX_ITER,
            spa_aggregate: SpaAggregate::Max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta <= 0.0 || !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if self.gamma < 1 {
            return Err(Error::InvalidParameter("gamma must be at least 1".into()));
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "c must lie in (0, 1), got {}",
                self.c
            )));
        }
        if self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Display name matching the result-table row labels: the signed variants
    /// are `SCN`, `SJI`, `SPA`, `SK`, `SRWR`, `SASCOS++`; the unsigned
    /// adaptations append `-R` or `-I` to `UCN`, `UJI`, `UPA`, `UK`, `URWR`,
    /// `UASCOS++`.
    pub fn label(&self) -> String {
        match self.strategy {
            Strategy::Signed => format!("S{}", self.measure.base_label()),
            Strategy::RemoveNeg => format!("U{}-R", self.measure.base_label()),
            Strategy::IgnoreSign => format!("U{}-I", self.measure.base_label()),
        }
    }
}

/// Scores for an explicit list of node pairs, parallel to `pairs`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PairScoreSet {
    pub pairs: Vec<(NodeId, NodeId)>,
    pub scores: Vec<f64>,
    pub measure: MeasureSpec,
    /// Per-source solver complaints (e.g. non-convergence); never silent NaN.
    pub warnings: Vec<String>,
}

impl PairScoreSet {
    /// Check the type invariants: parallel lengths, finite scores, no self-pairs.
    pub fn validate(&self) -> Result<()> {
        if self.pairs.len() != self.scores.len() {
            return Err(Error::InvalidInput(
                "pairs and scores length mismatch".into(),
            ));
        }
        if let Some((i, j)) = self.pairs.iter().find(|(i, j)| i == j) {
            return Err(Error::InvalidInput(format!("self-pair ({i}, {j})")));
        }
        if self.scores.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidInput("non-finite score".into()));
        }
        Ok(())
    }
}

/// Score `pairs` under `spec`, applying the strategy transform internally.
///
/// Local families route to [`score_local_pairs`] (undirected graphs only),
/// global families to [`score_global_pairs`].
pub fn score_pairs(
    g: &SignedGraph,
    spec: &MeasureSpec,
    pairs: &[(NodeId, NodeId)],
) -> Result<PairScoreSet> {
    spec.validate()?;
    if spec.measure.is_local() {
        score_local_pairs(g, spec, pairs)
    } else {
        score_global_pairs(g, spec, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_match_table_rows() {
        let label = |m, s| MeasureSpec::new(m, s).label();
        assert_eq!(label(MeasureId::Cn, Strategy::Signed), "SCN");
        assert_eq!(label(MeasureId::Cn, Strategy::RemoveNeg), "UCN-R");
        assert_eq!(label(MeasureId::Cn, Strategy::IgnoreSign), "UCN-I");
        assert_eq!(label(MeasureId::Katz, Strategy::Signed), "SK");
        assert_eq!(label(MeasureId::Katz, Strategy::RemoveNeg), "UK-R");
        assert_eq!(label(MeasureId::Rwr, Strategy::Signed), "SRWR");
        assert_eq!(label(MeasureId::Rwr, Strategy::IgnoreSign), "URWR-I");
        assert_eq!(label(MeasureId::Ascospp, Strategy::Signed), "SASCOS++");
        assert_eq!(label(MeasureId::Ascospp, Strategy::RemoveNeg), "UASCOS++-R");
        assert_eq!(label(MeasureId::Ji, Strategy::IgnoreSign), "UJI-I");
        assert_eq!(label(MeasureId::Pa, Strategy::Signed), "SPA");
    }

    #[test]
    fn tokens_round_trip() {
        for m in MeasureId::ALL {
            assert_eq!(m.token().parse::<MeasureId>().unwrap(), m);
        }
        for s in Strategy::ALL {
            assert_eq!(s.token().parse::<Strategy>().unwrap(), s);
        }
        assert_eq!("remove-neg".parse::<Strategy>().unwrap(), Strategy::RemoveNeg);
        assert!("pagerank".parse::<MeasureId>().is_err());
        assert!("raw".parse::<Strategy>().is_err());
    }

    #[test]
    fn spec_validation_bounds() {
        let mut spec = MeasureSpec::new(MeasureId::Katz, Strategy::Signed);
        spec.validate().unwrap();
        spec.beta = 0.0;
        assert!(spec.validate().is_err());
        spec.beta = 0.5;
        spec.gamma = 0;
        assert!(spec.validate().is_err());
        spec.gamma = 3;
        spec.c = 1.0;
        assert!(spec.validate().is_err());
        spec.c = 0.85;
        spec.tol = -1.0;
        assert!(spec.validate().is_err());
        spec.tol = 1e-8;
        spec.max_iter = 0;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn pair_score_set_invariants() {
        let spec = MeasureSpec::new(MeasureId::Cn, Strategy::Signed);
        let ok = PairScoreSet {
            pairs: vec![(0, 1)],
            scores: vec![1.0],
            measure: spec,
            warnings: vec![],
        };
        ok.validate().unwrap();
        let bad_len = PairScoreSet {
            pairs: vec![(0, 1)],
            scores: vec![],
            measure: spec,
            warnings: vec![],
        };
        assert!(bad_len.validate().is_err());
        let self_pair = PairScoreSet {
            pairs: vec![(2, 2)],
            scores: vec![0.0],
            measure: spec,
            warnings: vec![],
        };
        assert!(self_pair.validate().is_err());
        let nan = PairScoreSet {
            pairs: vec![(0, 1)],
            scores: vec![f64::NAN],
            measure: spec,
            warnings: vec![],
        };
        assert!(nan.validate().is_err());
    }
}
