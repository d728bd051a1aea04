//! Persistent homology ranks via cycle and boundary subspaces.

use super::PersistenceFunction;
use crate::complex::FilteredComplex;
use crate::field::{FieldSpec, Matrix};

/// Per-span sublevel data in one homology degree: a basis of the cycle
/// space and a basis of the boundary space, both in the coordinates of the
/// k-chains of that sublevel.
pub(crate) struct SpanBases {
    pub(crate) n_k: usize,
    pub(crate) cycles: Matrix,
    pub(crate) boundaries: Matrix,
}

/// Cycle and boundary bases of one sublevel, given as a value t (None means
/// the empty sublevel below every entry value).
pub(crate) fn sublevel_bases(
    c: &FilteredComplex,
    k: usize,
    field: FieldSpec,
    t: Option<&crate::value::Rat>,
) -> SpanBases {
    let counts = |dim: usize| -> usize { t.map_or(0, |t| c.sublevel_count(dim, t)) };
    let n_k = counts(k);
    let cycles = if k == 0 {
        // Every 0-chain is a cycle.
        Matrix::identity(field, n_k)
    } else {
        c.boundary_prefix(k, counts(k - 1), n_k, field).kernel_basis()
    };
    let boundaries = c
        .boundary_prefix(k + 1, n_k, counts(k + 1), field)
        .image_basis();
    SpanBases { n_k, cycles, boundaries }
}

pub(crate) fn span_bases(c: &FilteredComplex, k: usize, field: FieldSpec) -> Vec<SpanBases> {
    let critical = c.critical_values();
    (0..=critical.len())
        .map(|span| {
            let t = if span == 0 { None } else { Some(&critical[span - 1]) };
            sublevel_bases(c, k, field, t)
        })
        .collect()
}

/// Rank of the map induced on degree-k homology by the sublevel inclusion
/// between two spans: the dimension of (Z_u + B_v) / B_v inside the chains
/// of the larger sublevel. Sublevel chain bases are prefixes of each other,
/// so cycles embed by zero padding.
fn induced_rank(u: &SpanBases, v: &SpanBases) -> i64 {
    if u.cycles.cols() == 0 {
        return 0;
    }
    let padded = u.cycles.pad_rows(v.n_k);
    let joint = padded.hstack(&v.boundaries).rank();
    (joint - v.boundaries.cols()) as i64
}

/// Persistence function of degree-k homology: p(u, v) is the rank of the
/// map H_k(sublevel u) -> H_k(sublevel v) over the given field. Critical
/// values are the distinct entry values of the complex.
pub fn homology_persistence_function(
    c: &FilteredComplex,
    k: usize,
    field: FieldSpec,
) -> PersistenceFunction {
    let critical = c.critical_values();
    let bases = span_bases(c, k, field);
    let n = bases.len();
    let mut grid = vec![0i64; n * n];
    for i in 0..n {
        for j in i..n {
            grid[i * n + j] = induced_rank(&bases[i], &bases[j]);
        }
    }
    PersistenceFunction::from_span_grid(critical, grid)
}
