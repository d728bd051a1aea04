//! Isotypic decomposition of persistent homology under a finite group
//! action with a rational character table.
//!
//! The averaging idempotent e = (d/|G|) sum_g chi(g^-1) rho(g) projects
//! chains onto the isotypic component of one irreducible. Because the
//! action is simplicial and filtration-preserving, the projectors commute
//! with the boundary maps and with sublevel inclusions, so they descend to
//! homology span by span.

use super::{CharacterTable, ColorPart, ColoredDiagram, ColoringError};
use crate::complex::{FilteredComplex, GroupAction};
use crate::field::{FieldSpec, Matrix, Scalar};
use crate::persistence::{span_bases, PersistenceFunction};
use crate::value::rat_int;

/// The signed permutation matrices of a group acting on the first `prefix`
/// k-cells of a complex, over the rationals. Carries the class index of
/// each element's inverse, which is what the projector formula consumes.
pub struct ChainRepresentation {
    matrices: Vec<Matrix>,
    inv_class_of: Vec<usize>,
    order: u64,
}

impl ChainRepresentation {
    pub fn new(
        c: &FilteredComplex,
        action: &GroupAction,
        table: &CharacterTable,
        k: usize,
        prefix: usize,
    ) -> Result<ChainRepresentation, ColoringError> {
        let class_of = table.class_of_elements(action)?;
        let inv_class_of = (0..action.order())
            .map(|g| class_of[action.inverse(g)])
            .collect();
        let ids = c.cells_of_dim(k);
        assert!(prefix <= ids.len(), "prefix exceeds cell count");
        let mut matrices = Vec::with_capacity(action.order());
        for g in 0..action.order() {
            let mut m = Matrix::zeros(FieldSpec::Rational, prefix, prefix);
            for (i, &id) in ids[..prefix].iter().enumerate() {
                let (image, sign) = action.apply_signed(g, &c.cells()[id].0);
                let pos = c
                    .position_in_dim(&image)
                    .expect("action maps cells to cells");
                assert!(
                    pos < prefix,
                    "invariant filtration keeps orbits inside each sublevel"
                );
                m.set(pos, i, Scalar::from_int(FieldSpec::Rational, sign));
            }
            matrices.push(m);
        }
        Ok(ChainRepresentation {
            matrices,
            inv_class_of,
            order: action.order() as u64,
        })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }
}

/// The averaging idempotent of one irreducible character on the given
/// chain representation: e = (d/|G|) sum_g chi(g^-1) rho(g).
pub fn isotypic_projector(
    table: &CharacterTable,
    rep: &ChainRepresentation,
    irrep: usize,
) -> Matrix {
    let n = rep.dim();
    let mut acc = Matrix::zeros(FieldSpec::Rational, n, n);
    for (g, rho) in rep.matrices.iter().enumerate() {
        let chi = table.character(irrep, rep.inv_class_of[g]);
        acc = acc.add(&rho.scale(&Scalar::from_rat(chi.clone())));
    }
    let degree = rat_int(table.irreps()[irrep].degree as i64);
    acc.scale(&Scalar::from_rat(degree / rat_int(rep.order as i64)))
}

/// Per-irreducible persistence functions of degree-k homology over the
/// rationals: (name, degree, function). Every rank is already divided by
/// the character degree, so the functions count multiplicity spaces; the
/// division must be exact and failures are reported.
pub fn group_color_functions(
    c: &FilteredComplex,
    action: &GroupAction,
    table: &CharacterTable,
    k: usize,
) -> Result<Vec<(String, u64, PersistenceFunction)>, ColoringError> {
    action.is_simplicial_on(c)?;
    if !action.preserves_filtration(c) {
        return Err(ColoringError::NotInvariant);
    }
    let critical = c.critical_values();
    let bases = span_bases(c, k, FieldSpec::Rational);
    let n = bases.len();
    let reps: Vec<ChainRepresentation> = bases
        .iter()
        .map(|sb| ChainRepresentation::new(c, action, table, k, sb.n_k))
        .collect::<Result<_, _>>()?;

    let mut out = Vec::with_capacity(table.irreps().len());
    for (gi, ir) in table.irreps().iter().enumerate() {
        // Isotypic cycle subspace per span, in chain coordinates.
        let iso_cycles: Vec<Matrix> = (0..n)
            .map(|j| isotypic_projector(table, &reps[j], gi).mul(&bases[j].cycles))
            .collect();
        let mut grid = vec![0i64; n * n];
        for i in 0..n {
            for j in i..n {
                let b = &bases[j].boundaries;
                let joint = iso_cycles[i].pad_rows(bases[j].n_k).hstack(b);
                let rank = (joint.rank() - b.cols()) as i64;
                if rank % ir.degree as i64 != 0 {
                    return Err(ColoringError::IndivisibleRank {
                        rank,
                        degree: ir.degree,
                    });
                }
                grid[i * n + j] = rank / ir.degree as i64;
            }
        }
        out.push((
            ir.name.clone(),
            ir.degree,
            PersistenceFunction::from_span_grid(critical.clone(), grid),
        ));
    }
    Ok(out)
}

/// Colored diagram of the isotypic decomposition; one part per irreducible,
/// weighted by its degree. Requires an invariant filtration (average it
/// with `apply_group_average_filtration` first if needed).
pub fn group_colored_diagram(
    c: &FilteredComplex,
    action: &GroupAction,
    table: &CharacterTable,
    k: usize,
) -> Result<ColoredDiagram, ColoringError> {
    let mut parts = Vec::new();
    for (name, degree, f) in group_color_functions(c, action, table, k)? {
        parts.push(ColorPart {
            id: name,
            weight: degree,
            diagram: f.diagram()?,
        });
    }
    ColoredDiagram::new(parts)
}
