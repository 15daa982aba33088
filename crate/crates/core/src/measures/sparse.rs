//! Minimal weighted CSR used by the iterative global solvers.

use crate::graph::NodeId;

/// Row-major sparse matrix with f64 entries.
#[derive(Debug, Clone)]
pub(crate) struct WeightedCsr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    values: Vec<f64>,
}

impl WeightedCsr {
    /// Build from per-row (target, value) lists.
    pub(crate) fn from_rows(rows: Vec<Vec<(NodeId, f64)>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let total: usize = rows.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        let mut values = Vec::with_capacity(total);
        for row in rows {
            for (t, v) in row {
                targets.push(t);
                values.push(v);
            }
            offsets.push(targets.len());
        }
        WeightedCsr {
            offsets,
            targets,
            values,
        }
    }

    pub(crate) fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn row(&self, i: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let i = i as usize;
        let span = self.offsets[i]..self.offsets[i + 1];
        self.targets[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    /// `out += x · M`: push every nonzero of `x` along its row.
    pub(crate) fn accumulate_vec_mul(&self, x: &[f64], out: &mut [f64]) {
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, v) in self.row(i as NodeId) {
                out[j as usize] += xi * v;
            }
        }
    }

}
