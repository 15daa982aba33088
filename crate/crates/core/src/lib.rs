//! Sparse signed-graph analytics: node relevance measures for networks whose
//! edges carry a positive or negative polarity, plus the statistics and
//! evaluation machinery needed to compare them.
//!
//! The crate is organized around an immutable [`SignedGraph`]:
//!
//! - [`graph`]: loading, validation, unsigned-adaptation transforms and
//!   train/test splitting of sparse signed graphs.
//! - [`measures`]: local (common-neighbor family) and global (Katz,
//!   ASCOS++, random walk with restart) relevance scores, each in a signed
//!   variant and in the two unsigned-adaptation variants (remove negative
//!   edges / ignore signs).
//! - [`netstats`]: reciprocity, degree distributions and the balance-theory
//!   triad census.
//! - [`eval`]: link-sign prediction (AUC) and tie-strength prediction
//!   (RMSE) harnesses with seeded splits and grid cross-validation.

pub mod error;
pub mod eval;
pub mod graph;
pub mod measures;
pub mod netstats;

pub use error::{Error, Result};
pub use graph::{NodeId, Sign, SignedGraph};
pub use measures::{MeasureId, MeasureSpec, PairScoreSet, Strategy};
