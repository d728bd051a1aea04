//! Finite metric data and the Vietoris-Rips construction.

use super::{ComplexError, FilteredComplex, GroupAction, Simplex};
use crate::value::Rat;
use num::Zero;

/// Finite point set given by exact pairwise distances, with optional vertex
/// labels and an optional group of symmetries.
#[derive(Debug, Clone)]
pub struct MetricData {
    n: usize,
    dist: Vec<Rat>,
    labels: Option<Vec<String>>,
    action: Option<GroupAction>,
}

impl MetricData {
    /// Validates symmetry, the zero diagonal and nonnegativity exactly.
    pub fn new(
        rows: Vec<Vec<Rat>>,
        labels: Option<Vec<String>>,
        action: Option<GroupAction>,
    ) -> Result<MetricData, ComplexError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(ComplexError::NotSquare {
                    row: i,
                    got: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            if !rows[i][i].is_zero() {
                return Err(ComplexError::NonZeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(ComplexError::NotSymmetric { i, j });
                }
                if rows[i][j] < Rat::zero() {
                    return Err(ComplexError::NegativeDistance { i, j });
                }
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != n {
                return Err(ComplexError::LabelCountMismatch {
                    got: ls.len(),
                    expected: n,
                });
            }
        }
        if let Some(a) = &action {
            if a.degree() != n {
                return Err(ComplexError::ActionDegreeMismatch {
                    got: a.degree(),
                    expected: n,
                });
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for r in rows {
            dist.extend(r);
        }
        Ok(MetricData { n, dist, labels, action })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rat {
        &self.dist[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }
}

/// Vietoris-Rips filtration: a simplex is present iff all its pairwise
/// distances are at most `max_scale` and its dimension is at most
/// `max_dim`; its entry value is the largest pairwise distance (0 for
/// vertices).
pub fn vietoris_rips(
    m: &MetricData,
    max_dim: usize,
    max_scale: &Rat,
) -> Result<FilteredComplex, ComplexError> {
    let n = m.len();
    let mut cells: Vec<(Simplex, Rat)> = Vec::new();
    // Depth-first clique growth; candidates keep vertex order increasing so
    // every simplex is generated exactly once.
    let mut stack: Vec<(Vec<usize>, Rat)> = (0..n).map(|v| (vec![v], Rat::zero())).collect();
    while let Some((verts, value)) = stack.pop() {
        if verts.len() + 1 <= max_dim + 1 {
            let last = *verts.last().expect("nonempty");
            'cand: for w in (last + 1)..n {
                let mut extended = value.clone();
                for &u in &verts {
                    let d = m.dist(u, w);
                    if d > max_scale {
                        continue 'cand;
                    }
                    if d > &extended {
                        extended = d.clone();
                    }
                }
                let mut vs = verts.clone();
                vs.push(w);
                stack.push((vs, extended));
            }
        }
        cells.push((Simplex::new(verts)?, value));
    }
    FilteredComplex::new(cells)
}
