//! Label-subset coloring of persistent homology for labeled point clouds.
//!
//! For each nonempty label subset p, the colored object at a sublevel is
//! the cokernel of the map into H_k of p's complex from the homologies of
//! all strictly smaller subsets. A class is p-colored exactly when it needs
//! every label in p to exist: anything already present in a smaller subset
//! is quotiented away.
//!
//! All computations run in cycle coordinates: the quotient of the cycle
//! space by boundaries plus included sub-cycles equals the cokernel on
//! homology, and sublevel inclusions induce maps between these quotients
//! whose ranks form the colored persistence function.

use super::{ColorPart, ColoredDiagram, ColoringError};
use crate::complex::{FilteredComplex, PosetFamily};
use crate::field::{cokernel_projection, rank_of_induced_map, FieldSpec, Matrix, Subspace};
use crate::persistence::{sublevel_bases, PersistenceFunction, SpanBases};
use crate::value::Rat;

/// Nonzero proper submasks of `mask`, ascending.
fn proper_submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = mask & (mask - 1);
    loop {
        if s == 0 {
            break;
        }
        out.push(s);
        s = (s - 1) & mask;
    }
    out.sort_unstable();
    out
}

/// Embedding of the k-chains of a subcomplex sublevel into the k-chains of
/// a larger complex's sublevel, as a column-selection matrix. Cells map to
/// themselves; entry values agree, so positions stay inside the prefix.
fn chain_inclusion(
    sub: &FilteredComplex,
    big: &FilteredComplex,
    k: usize,
    sub_cells: usize,
    big_cells: usize,
    field: FieldSpec,
) -> Matrix {
    let ids = sub.cells_of_dim(k);
    let mut m = Matrix::zeros(field, big_cells, sub_cells);
    for (i, &id) in ids[..sub_cells].iter().enumerate() {
        let pos = big
            .position_in_dim(&sub.cells()[id].0)
            .expect("subset complexes are subcomplexes");
        assert!(pos < big_cells, "equal entry values keep cells in the prefix");
        m.set(pos, i, crate::field::Scalar::one(field));
    }
    m
}

/// Cokernel projection (in cycle coordinates) for subset `mask` at one
/// sublevel, given the bases of the subset itself and of every strictly
/// smaller subset.
fn quotient_projection(
    fam: &PosetFamily,
    mask: u32,
    k: usize,
    field: FieldSpec,
    own: &SpanBases,
    smaller: &[(u32, &SpanBases)],
) -> Result<Matrix, ColoringError> {
    let big = &fam.subset(mask).expect("mask is in the family").complex;
    let z = own.cycles.cols();
    let mut images = Vec::new();
    if own.boundaries.cols() > 0 {
        let coords = own
            .cycles
            .solve(&own.boundaries)
            .expect("boundaries are cycles");
        images.push(Subspace::from_columns(&coords));
    }
    for (sub_mask, sub_bases) in smaller {
        if sub_bases.cycles.cols() == 0 {
            continue;
        }
        let sub = &fam.subset(*sub_mask).expect("mask is in the family").complex;
        let incl = chain_inclusion(sub, big, k, sub_bases.n_k, own.n_k, field);
        let embedded = incl.mul(&sub_bases.cycles);
        let coords = own
            .cycles
            .solve(&embedded)
            .expect("cycles of a subcomplex are cycles");
        images.push(Subspace::from_columns(&coords));
    }
    Ok(cokernel_projection(field, z, &images)?)
}

/// Per-subset persistence functions of the coloring: (subset name, function).
/// Subsets are reported in family order (by size, then mask); the critical
/// grid is shared, taken from the full complex.
pub fn poset_color_functions(
    fam: &PosetFamily,
    k: usize,
    field: FieldSpec,
) -> Result<Vec<(String, PersistenceFunction)>, ColoringError> {
    let full = &fam
        .subset(fam.full_mask())
        .expect("family contains the full subset")
        .complex;
    let critical: Vec<Rat> = full.critical_values();
    let m = critical.len();
    let at = |span: usize| -> Option<&Rat> {
        if span == 0 {
            None
        } else {
            Some(&critical[span - 1])
        }
    };

    // Bases of every subset at every global span, computed once.
    let mut bases: Vec<Vec<SpanBases>> = Vec::with_capacity(fam.subsets().len());
    for sc in fam.subsets() {
        bases.push(
            (0..=m)
                .map(|span| sublevel_bases(&sc.complex, k, field, at(span)))
                .collect(),
        );
    }
    let index_of = |mask: u32| -> usize {
        fam.subsets()
            .iter()
            .position(|sc| sc.mask == mask)
            .expect("family is closed under nonempty subsets")
    };

    let mut out = Vec::with_capacity(fam.subsets().len());
    for (si, sc) in fam.subsets().iter().enumerate() {
        let smaller_masks = proper_submasks(sc.mask);
        let projections: Vec<Matrix> = (0..=m)
            .map(|span| {
                let smaller: Vec<(u32, &SpanBases)> = smaller_masks
                    .iter()
                    .map(|&q| (q, &bases[index_of(q)][span]))
                    .collect();
                quotient_projection(fam, sc.mask, k, field, &bases[si][span], &smaller)
            })
            .collect::<Result<_, _>>()?;

        let n = m + 1;
        let mut grid = vec![0i64; n * n];
        for i in 0..n {
            for j in i..n {
                let zi = &bases[si][i].cycles;
                let zj = &bases[si][j].cycles;
                let padded = zi.pad_rows(bases[si][j].n_k);
                let f = zj.solve(&padded).expect("cycles include into cycles");
                grid[i * n + j] =
                    rank_of_induced_map(&f, &projections[i], &projections[j])? as i64;
            }
        }
        out.push((
            sc.name.clone(),
            PersistenceFunction::from_span_grid(critical.clone(), grid),
        ));
    }
    Ok(out)
}

/// Colored diagram of the label-subset coloring, one part per nonempty
/// subset, all with weight 1. The total rank of a tuple of spaces is the
/// sum of the parts, so the additivity check runs against
/// [`super::sum_of_functions`] of these functions.
pub fn poset_colored_diagram(
    fam: &PosetFamily,
    k: usize,
    field: FieldSpec,
) -> Result<ColoredDiagram, ColoringError> {
    let mut parts = Vec::new();
    for (name, f) in poset_color_functions(fam, k, field)? {
        parts.push(ColorPart {
            id: name,
            weight: 1,
            diagram: f.diagram()?,
        });
    }
    ColoredDiagram::new(parts)
}
