//! Simplices, filtered complexes and boundary matrices.

mod action;
mod family;
mod metric;

pub use action::{apply_group_average_filtration, GroupAction};
pub use family::{build_poset_family, PosetFamily, SubsetComplex};
pub use metric::{vietoris_rips, MetricData};

use crate::field::{FieldSpec, Matrix, Scalar};
use crate::value::Rat;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("duplicate vertex {0} in simplex")]
    DuplicateVertex(usize),
    #[error("duplicate simplex {0}")]
    DuplicateSimplex(String),
    #[error("face {face} of {of} is missing from the complex")]
    MissingFace { face: String, of: String },
    #[error("face {face} enters at {face_at} after its coface {of} at {of_at}")]
    NonMonotone {
        face: String,
        of: String,
        face_at: f64,
        of_at: f64,
    },
    #[error("boundary degree must be at least 1")]
    BoundaryDegreeZero,
    #[error("distance matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("distance matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("distance matrix diagonal entry {0} is nonzero")]
    NonZeroDiagonal(usize),
    #[error("negative distance at ({i},{j})")]
    NegativeDistance { i: usize, j: usize },
    #[error("label list length {got} does not match point count {expected}")]
    LabelCountMismatch { got: usize, expected: usize },
    #[error("permutation {index} is not a bijection on 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("permutation set has no identity element")]
    MissingIdentity,
    #[error("permutation set is not closed under composition")]
    NotClosed,
    #[error("permutation degree {got} does not match point count {expected}")]
    ActionDegreeMismatch { got: usize, expected: usize },
    #[error("group element {element} does not act simplicially: image of {simplex} is missing")]
    NonSimplicialAction { element: usize, simplex: String },
    #[error("dataset has no labels, so no poset family can be built")]
    MissingLabels,
    #[error("{0} distinct labels exceed the supported maximum of 16")]
    TooManyLabels(usize),
}

/// Abstract simplex: a nonempty, strictly increasing vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    verts: Vec<usize>,
}

impl Simplex {
    /// Canonicalizes the vertex order; duplicates are rejected.
    pub fn new(mut verts: Vec<usize>) -> Result<Simplex, ComplexError> {
        if verts.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        verts.sort_unstable();
        for w in verts.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateVertex(w[0]));
            }
        }
        Ok(Simplex { verts })
    }

    /// Shorthand for fixtures; panics on invalid input.
    pub fn from_slice(verts: &[usize]) -> Simplex {
        Simplex::new(verts.to_vec()).expect("valid simplex")
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// Codimension-one faces, in the order used by the boundary formula:
    /// the i-th facet drops the i-th vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.verts.len() == 1 {
            return Vec::new();
        }
        (0..self.verts.len())
            .map(|i| {
                let mut v = self.verts.clone();
                v.remove(i);
                Simplex { verts: v }
            })
            .collect()
    }
}

// Tie-break order used within equal entry values: dimension first, then the
// lexicographic vertex list.
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.verts.len(), &self.verts).cmp(&(other.verts.len(), &other.verts))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Finite filtered simplicial complex.
///
/// Cells are kept in the canonical filtration order (entry value, dimension,
/// lexicographic vertices), so for every dimension the sublevel sets are
/// prefixes of the per-dimension cell list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    cells: Vec<(Simplex, Rat)>,
    index: HashMap<Simplex, usize>,
    by_dim: Vec<Vec<usize>>,
}

impl FilteredComplex {
    pub fn new(mut cells: Vec<(Simplex, Rat)>) -> Result<FilteredComplex, ComplexError> {
        cells.sort_by(|(s1, v1), (s2, v2)| v1.cmp(v2).then_with(|| s1.cmp(s2)));
        let mut index = HashMap::with_capacity(cells.len());
        for (i, (s, _)) in cells.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(ComplexError::DuplicateSimplex(s.to_string()));
            }
        }
        // Closure and monotonicity in one pass: every facet must exist with
        // an entry value not above its coface.
        for (s, v) in &cells {
            for face in s.facets() {
                match index.get(&face) {
                    None => {
                        return Err(ComplexError::MissingFace {
                            face: face.to_string(),
                            of: s.to_string(),
                        })
                    }
                    Some(&fi) => {
                        let fv = &cells[fi].1;
                        if fv > v {
                            return Err(ComplexError::NonMonotone {
                                face: face.to_string(),
                                of: s.to_string(),
                                face_at: crate::value::rat_to_f64(fv),
                                of_at: crate::value::rat_to_f64(v),
                            });
                        }
                    }
                }
            }
        }
        let max_dim = cells.iter().map(|(s, _)| s.dim()).max();
        let mut by_dim = vec![Vec::new(); max_dim.map_or(0, |d| d + 1)];
        for (i, (s, _)) in cells.iter().enumerate() {
            by_dim[s.dim()].push(i);
        }
        Ok(FilteredComplex { cells, index, by_dim })
    }

    pub fn empty() -> FilteredComplex {
        FilteredComplex::new(Vec::new()).expect("empty complex")
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest dimension present, if any cell exists.
    pub fn max_dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Cells in canonical filtration order.
    pub fn cells(&self) -> &[(Simplex, Rat)] {
        &self.cells
    }

    pub fn entry_value(&self, s: &Simplex) -> Option<&Rat> {
        self.index.get(s).map(|&i| &self.cells[i].1)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Sorted distinct entry values.
    pub fn critical_values(&self) -> Vec<Rat> {
        let mut vals: Vec<Rat> = self.cells.iter().map(|(_, v)| v.clone()).collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// Indices (into `cells`) of the k-cells, in canonical order.
    pub fn cells_of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Number of k-cells with entry value <= t. Because per-dimension lists
    /// are ordered by entry value, the sublevel set is exactly that prefix.
    pub fn sublevel_count(&self, k: usize, t: &Rat) -> usize {
        let ids = self.cells_of_dim(k);
        ids.partition_point(|&i| &self.cells[i].1 <= t)
    }

    /// Position of a simplex inside its per-dimension list.
    pub fn position_in_dim(&self, s: &Simplex) -> Option<usize> {
        let &ci = self.index.get(s)?;
        let ids = self.cells_of_dim(s.dim());
        ids.binary_search_by(|&i| {
            let (cs, cv) = &self.cells[i];
            cv.cmp(&self.cells[ci].1).then_with(|| cs.cmp(s))
        })
        .ok()
    }

    /// Boundary matrix of degree k at a sublevel: rows are the (k-1)-cells
    /// and columns the k-cells with entry value <= t, both in canonical
    /// order. Signs alternate along the vertex list; over GF(2) they all
    /// collapse to 1.
    pub fn boundary_matrix(
        &self,
        k: usize,
        sublevel: &Rat,
        field: FieldSpec,
    ) -> Result<Matrix, ComplexError> {
        if k == 0 {
            return Err(ComplexError::BoundaryDegreeZero);
        }
        let rows = self.sublevel_count(k - 1, sublevel);
        let cols = self.sublevel_count(k, sublevel);
        Ok(self.boundary_prefix(k, rows, cols, field))
    }

    /// Boundary matrix on canonical prefixes: the first `rows` (k-1)-cells
    /// against the first `cols` k-cells. Prefixes of the per-dimension
    /// lists are exactly the sublevel sets, so this is the building block
    /// for every sublevel computation. Requires k >= 1.
    pub(crate) fn boundary_prefix(
        &self,
        k: usize,
        rows: usize,
        cols: usize,
        field: FieldSpec,
    ) -> Matrix {
        assert!(k >= 1, "degree zero has no boundary");
        let col_ids = self.cells_of_dim(k);
        let mut m = Matrix::zeros(field, rows, cols);
        for j in 0..cols {
            let (s, _) = &self.cells[col_ids[j]];
            for (i, face) in s.facets().into_iter().enumerate() {
                let r = self
                    .position_in_dim(&face)
                    .expect("closure guarantees the face exists");
                debug_assert!(r < rows, "face enters no later than its coface");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, j, Scalar::from_int(field, sign));
            }
        }
        m
    }
}
