//! Subspaces, cokernel projections and induced maps on quotients.

use super::{FieldError, FieldSpec, Matrix};

/// Linear subspace of F^ambient, stored as an independent column basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the columns of `m`; dependent columns are dropped
    /// deterministically (pivot columns of the original are kept).
    pub fn from_columns(m: &Matrix) -> Subspace {
        Subspace {
            ambient: m.rows(),
            basis: m.image_basis(),
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, ambient, 0),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Sum of subspaces of a common ambient space.
    pub fn sum(
        field: FieldSpec,
        ambient: usize,
        parts: &[&Subspace],
    ) -> Result<Subspace, FieldError> {
        let mut stacked = Matrix::zeros(field, ambient, 0);
        for p in parts {
            if p.ambient != ambient {
                return Err(FieldError::AmbientMismatch {
                    expected: ambient,
                    got: p.ambient,
                });
            }
            stacked = stacked.hstack(&p.basis);
        }
        Ok(Subspace::from_columns(&stacked))
    }

    pub fn contains_vector(&self, v: &Matrix) -> bool {
        assert_eq!(v.rows(), self.ambient, "ambient mismatch");
        self.basis.hstack(v).rank() == self.dim()
    }

    /// Containment decided by a rank test: other <= self iff adjoining
    /// other's basis does not grow the rank.
    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        self.basis.hstack(&other.basis).rank() == self.dim()
    }

    /// Equality as subspaces, by mutual containment.
    pub fn same_space(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }
}

/// Projection of F^targets onto the quotient by the sum of `images`.
///
/// Returns a surjective matrix Q with `targets` columns and
/// `targets - dim(sum of images)` rows whose kernel is exactly that sum.
/// The rows are the deterministic kernel basis of the transposed span, so
/// the construction is reproducible.
pub fn cokernel_projection(
    field: FieldSpec,
    targets: usize,
    images: &[Subspace],
) -> Result<Matrix, FieldError> {
    let mut stacked = Matrix::zeros(field, targets, 0);
    for im in images {
        if im.ambient() != targets {
            return Err(FieldError::AmbientMismatch {
                expected: targets,
                got: im.ambient(),
            });
        }
        if im.field() != field {
            return Err(FieldError::EntryFieldMismatch);
        }
        stacked = stacked.hstack(im.basis());
    }
    // Rows of Q span the annihilator of the image sum: x with x^T B = 0.
    // Over any field the double annihilator recovers the span, so ker Q is
    // exactly the sum of the images.
    Ok(stacked.transpose().kernel_basis().transpose())
}

/// Rank of the unique map g on quotients with g . src_proj = dst_proj . f.
///
/// `f` maps the source ambient space to the target ambient space and the
/// projections are surjections onto the respective quotients. The map is
/// well defined only when dst_proj . f kills the kernel of src_proj; that
/// is checked, and violations are reported as a contract error.
pub fn rank_of_induced_map(
    f: &Matrix,
    src_proj: &Matrix,
    dst_proj: &Matrix,
) -> Result<usize, FieldError> {
    if src_proj.cols() != f.cols() || dst_proj.cols() != f.rows() {
        return Err(FieldError::DimensionMismatch("rank_of_induced_map"));
    }
    if f.field() != src_proj.field() || f.field() != dst_proj.field() {
        return Err(FieldError::EntryFieldMismatch);
    }
    let pushed = dst_proj.mul(f);
    let src_kernel = src_proj.kernel_basis();
    if !pushed.mul(&src_kernel).is_zero() {
        return Err(FieldError::IllDefinedInducedMap);
    }
    // src_proj is onto its quotient, so the induced map has the same image
    // as dst_proj . f.
    Ok(pushed.rank())
}
