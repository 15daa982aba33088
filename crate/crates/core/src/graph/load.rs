//! Edge-list ingestion: CSV `src,dst,rating,time` and whitespace
//! `src dst sign` formats, with comment skipping, dense id remapping,
//! duplicate resolution and self-loop cleanup.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{LabelTable, NodeId, Sign, SignedGraph};

/// Supported edge-list layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFormat {
    /// `src,dst,rating,time` rows; rating is a nonzero weight whose sign is
    /// the edge sign, time an optional integer timestamp used for duplicate
    /// resolution. Ratings are retained raw as tie-strength ground truth.
    CsvWeighted,
    /// `src dst sign` rows separated by whitespace; sign is ±1.
    WhitespaceSigned,
}

/// One parsed input row, before cleanup.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub src: NodeId,
    pub dst: NodeId,
    /// Nonzero; its sign is the edge sign, its magnitude the raw rating.
    pub value: f64,
    pub timestamp: Option<i64>,
}

/// Summary counters for a loaded graph, serialized as the graph-stats report.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GraphStats {
    pub nodes: usize,
    pub pos_edges: usize,
    pub neg_edges: usize,
    pub dropped_self_loops: u64,
    pub dropped_conflicts: u64,
}

impl SignedGraph {
    pub fn stats(&self) -> GraphStats {
        GraphStats {
            nodes: self.node_count(),
            pos_edges: self.pos_edge_count(),
            neg_edges: self.neg_edge_count(),
            dropped_self_loops: self.dropped_self_loops(),
            dropped_conflicts: self.dropped_conflicts(),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_value(raw: &str, line: usize) -> Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("invalid numeric value {raw:?}")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite value {raw:?}")));
    }
    if v == 0.0 {
        return Err(parse_err(line, "zero value carries no sign"));
    }
    Ok(v)
}

fn parse_timestamp(raw: &str, line: usize) -> Result<i64> {
    // Some exports carry fractional epoch seconds; truncate toward zero.
    let raw = raw.trim();
    if let Ok(t) = raw.parse::<i64>() {
        return Ok(t);
    }
    raw.parse::<f64>()
        .map(|t| t as i64)
        .map_err(|_| parse_err(line, format!("invalid timestamp {raw:?}")))
}

/// Parse a stream of edge rows into a [`SignedGraph`].
///
/// Node labels are remapped to dense ids in first-appearance order and the
/// mapping is retained on the graph. Lines starting with `#` and blank lines
/// are skipped. Duplicate ordered pairs keep the record with the latest
/// timestamp (last-read wins among equal or missing timestamps); self-loops
/// are dropped and counted. With `directed = false`, reciprocal records are
/// merged into one undirected edge when their signs agree and the pair is
/// dropped (and counted) when they conflict.
///
/// For the CSV format the raw ratings of every surviving record are retained
/// on the graph, keyed by the ordered pair they were given for; downstream
/// consumers normalize them.
pub fn load_edge_list<R: BufRead>(
    reader: R,
    format: EdgeFormat,
    directed: bool,
) -> Result<SignedGraph> {
    let mut labels = LabelTable::default();
    let mut dropped_self_loops: u64 = 0;
    // Ordered pair -> (dedup key, value); the key (timestamp, sequence) is
    // maximized, so later timestamps win and read order breaks ties.
    let mut latest: BTreeMap<(NodeId, NodeId), ((i64, usize), f64)> = BTreeMap::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let row = line.trim();
        if row.is_empty() || row.starts_with('#') {
            continue;
        }
        let record = match format {
            EdgeFormat::CsvWeighted => {
                let fields: Vec<&str> = row.split(',').collect();
                if fields.len() != 3 && fields.len() != 4 {
                    return Err(parse_err(
                        line_no,
                        format!("expected src,dst,rating[,time], got {} fields", fields.len()),
                    ));
                }
                let src = fields[0].trim();
                let dst = fields[1].trim();
                if src.is_empty() || dst.is_empty() {
                    return Err(parse_err(line_no, "empty node id"));
                }
                let value = parse_value(fields[2], line_no)?;
                let timestamp = match fields.get(3) {
                    Some(f) => Some(parse_timestamp(f, line_no)?),
                    None => None,
                };
                (src.to_owned(), dst.to_owned(), value, timestamp)
            }
            EdgeFormat::WhitespaceSigned => {
                let fields: Vec<&str> = row.split_whitespace().collect();
                if fields.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        format!("expected `src dst sign`, got {} fields", fields.len()),
                    ));
                }
                let value = parse_value(fields[2], line_no)?;
                (fields[0].to_owned(), fields[1].to_owned(), value, None)
            }
        };
        let (src_label, dst_label, value, timestamp) = record;
        let src = labels.intern(&src_label);
        let dst = labels.intern(&dst_label);
        if src == dst {
            dropped_self_loops += 1;
            continue;
        }
        let key = (timestamp.unwrap_or(i64::MIN), idx);
        let entry = latest.entry((src, dst)).or_insert((key, value));
        if key >= entry.0 {
            *entry = (key, value);
        }
    }

    let node_count = labels.len();
    let mut dropped_conflicts: u64 = 0;
    let mut edges: Vec<(NodeId, NodeId, Sign)> = Vec::with_capacity(latest.len());
    if directed {
        for (&(src, dst), &(_, value)) in &latest {
            edges.push((src, dst, Sign::of_value(value)?));
        }
    } else {
        for (&(src, dst), &(_, value)) in &latest {
            if src > dst {
                continue; // handled with its mirror below
            }
            let sign = Sign::of_value(value)?;
            match latest.get(&(dst, src)) {
                Some(&(_, back)) if Sign::of_value(back)? != sign => dropped_conflicts += 1,
                _ => edges.push((src, dst, sign)),
            }
        }
        // Pairs present only in (hi, lo) orientation.
        for (&(src, dst), &(_, value)) in &latest {
            if src > dst && !latest.contains_key(&(dst, src)) {
                edges.push((dst, src, Sign::of_value(value)?));
            }
        }
    }

    let weights = match format {
        EdgeFormat::CsvWeighted => Some(Arc::new(
            latest
                .iter()
                .map(|(&pair, &(_, value))| (pair, value))
                .collect::<BTreeMap<_, _>>(),
        )),
        EdgeFormat::WhitespaceSigned => None,
    };

    let g = SignedGraph::assemble(
        directed,
        node_count,
        edges,
        weights,
        Some(Arc::new(labels)),
        dropped_self_loops,
        dropped_conflicts,
    );
    debug_assert!(g.validate().is_ok());
    Ok(g)
}

/// [`load_edge_list`] over a file path.
pub fn load_edge_list_path(
    path: impl AsRef<Path>,
    format: EdgeFormat,
    directed: bool,
) -> Result<SignedGraph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file), format, directed)
}
