//! Interval decomposition of one-parameter persistence by boundary-matrix
//! column reduction.
//!
//! The canonical cell order of a `FilteredComplex` is a filtration order
//! (faces never come after cofaces), so the classic reduction applies
//! per dimension: zeroed columns of the degree-k boundary create classes,
//! pivot rows of the degree-(k+1) boundary kill them.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use super::{PersistenceDiagram, PersistenceError};
use crate::complex::FilteredComplex;
use crate::field::{FieldSpec, Scalar};
use crate::value::{ExtValue, Rat};

/// One interval summand, supported on the half-open span [birth, death).
/// The color tags which simple object the summand lives over; plain
/// homology leaves it unset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntervalSummand {
    pub birth: ExtValue,
    pub death: ExtValue,
    pub color: Option<String>,
}

impl IntervalSummand {
    pub fn new(birth: ExtValue, death: ExtValue) -> Result<Self, PersistenceError> {
        if birth >= death {
            return Err(PersistenceError::BadCornerpoint {
                birth: birth.to_string(),
                death: death.to_string(),
            });
        }
        Ok(IntervalSummand { birth, death, color: None })
    }

    pub fn finite(birth: Rat, death: Rat) -> Result<Self, PersistenceError> {
        Self::new(ExtValue::Finite(birth), ExtValue::Finite(death))
    }

    pub fn immortal(birth: Rat) -> Self {
        IntervalSummand {
            birth: ExtValue::Finite(birth),
            death: ExtValue::PosInf,
            color: None,
        }
    }

    pub fn with_color(mut self, color: &str) -> Self {
        self.color = Some(color.to_string());
        self
    }

    /// Whether the module is nonzero at u and the inclusion u <= v stays
    /// inside the support, i.e. birth <= u and v < death. An immortal
    /// summand counts as alive at v = +inf, matching the convention that
    /// values at infinite coordinates are limits along the line.
    pub fn spans(&self, u: &ExtValue, v: &ExtValue) -> bool {
        let alive_at_v = v < &self.death
            || (self.death == ExtValue::PosInf && *v == ExtValue::PosInf);
        &self.birth <= u && alive_at_v
    }
}

impl fmt::Display for IntervalSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.birth, self.death)
    }
}

/// A finite direct sum of interval summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModule {
    intervals: Vec<IntervalSummand>,
}

impl IntervalModule {
    pub fn new(mut intervals: Vec<IntervalSummand>) -> Self {
        intervals.sort();
        IntervalModule { intervals }
    }

    pub fn intervals(&self) -> &[IntervalSummand] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Rank of the structure map from u to v: the number of summands whose
    /// support contains both.
    pub fn rank(&self, u: &ExtValue, v: &ExtValue) -> i64 {
        assert!(u <= v, "rank requires u <= v");
        self.intervals.iter().filter(|iv| iv.spans(u, v)).count() as i64
    }

    /// Collapse the summands into a diagram, merging equal intervals of the
    /// same color into one cornerpoint with multiplicity.
    pub fn diagram(&self) -> PersistenceDiagram {
        let mut counts: BTreeMap<(ExtValue, ExtValue, Option<String>), u64> = BTreeMap::new();
        for iv in &self.intervals {
            *counts
                .entry((iv.birth.clone(), iv.death.clone(), iv.color.clone()))
                .or_insert(0) += 1;
        }
        let points = counts
            .into_iter()
            .map(|((birth, death, color), multiplicity)| super::Cornerpoint {
                birth,
                death,
                color,
                multiplicity,
            })
            .collect();
        PersistenceDiagram::new(points).expect("summands are strictly below the diagonal")
    }

    /// Expand a diagram back into one summand per unit of multiplicity.
    pub fn from_diagram(d: &PersistenceDiagram) -> Self {
        let mut intervals = Vec::new();
        for pt in d.points() {
            for _ in 0..pt.multiplicity {
                intervals.push(IntervalSummand {
                    birth: pt.birth.clone(),
                    death: pt.death.clone(),
                    color: pt.color.clone(),
                });
            }
        }
        IntervalModule::new(intervals)
    }
}

type SparseCol = BTreeMap<usize, Scalar>;

fn add_scaled(dst: &mut SparseCol, src: &SparseCol, factor: &Scalar) {
    for (&row, coeff) in src {
        let add = coeff.mul(factor);
        match dst.get(&row) {
            Some(cur) => {
                let next = cur.add(&add);
                if next.is_zero() {
                    dst.remove(&row);
                } else {
                    dst.insert(row, next);
                }
            }
            None => {
                if !add.is_zero() {
                    dst.insert(row, add);
                }
            }
        }
    }
}

/// Reduce the columns left to right. Returns, per column, the pivot row it
/// settled on, or None for columns that reduced to zero.
fn reduce_columns(mut cols: Vec<SparseCol>) -> Vec<Option<usize>> {
    let mut owner_of_low: HashMap<usize, usize> = HashMap::new();
    let mut lows: Vec<Option<usize>> = vec![None; cols.len()];
    for j in 0..cols.len() {
        loop {
            let Some((&low, coeff)) = cols[j].last_key_value() else {
                break;
            };
            match owner_of_low.get(&low) {
                Some(&i) => {
                    let pivot_coeff = cols[i]
                        .last_key_value()
                        .expect("owner column is nonzero")
                        .1
                        .clone();
                    let factor = coeff.div(&pivot_coeff).neg();
                    let src = cols[i].clone();
                    add_scaled(&mut cols[j], &src, &factor);
                }
                None => {
                    owner_of_low.insert(low, j);
                    lows[j] = Some(low);
                    break;
                }
            }
        }
    }
    lows
}

fn sparse_boundary_cols(
    c: &FilteredComplex,
    k: usize,
    field: FieldSpec,
) -> Vec<SparseCol> {
    let ids = c.cells_of_dim(k);
    let mut cols = Vec::with_capacity(ids.len());
    for &id in ids {
        let s = &c.cells()[id].0;
        let mut col = SparseCol::new();
        if k > 0 {
            for (i, facet) in s.facets().into_iter().enumerate() {
                let row = c
                    .position_in_dim(&facet)
                    .expect("complex is closed under faces");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                col.insert(row, Scalar::from_int(field, sign));
            }
        }
        cols.push(col);
    }
    cols
}

/// Decompose the degree-k persistent homology of a filtered complex into
/// interval summands over the given field. Zero-length pairs (a class born
/// and killed at the same value) contribute nothing.
pub fn reduce_to_intervals(
    c: &FilteredComplex,
    k: usize,
    field: FieldSpec,
) -> IntervalModule {
    let k_ids = c.cells_of_dim(k);
    if k_ids.is_empty() {
        return IntervalModule::new(Vec::new());
    }

    // Columns of the degree-k boundary decide which k-cells create classes.
    let creator = reduce_columns(sparse_boundary_cols(c, k, field));

    // Columns of the degree-(k+1) boundary pair those creators with deaths.
    let killer_lows = reduce_columns(sparse_boundary_cols(c, k + 1, field));
    let coface_ids = c.cells_of_dim(k + 1);

    let mut death_of: HashMap<usize, &Rat> = HashMap::new();
    for (j, low) in killer_lows.iter().enumerate() {
        if let Some(row) = low {
            death_of.insert(*row, &c.cells()[coface_ids[j]].1);
        }
    }

    let mut intervals = Vec::new();
    for (i, low) in creator.iter().enumerate() {
        if low.is_some() {
            continue;
        }
        let birth = &c.cells()[k_ids[i]].1;
        match death_of.get(&i) {
            Some(death) if *death == birth => {}
            Some(death) => intervals.push(
                IntervalSummand::finite(birth.clone(), (*death).clone())
                    .expect("deaths follow births in a filtration"),
            ),
            None => intervals.push(IntervalSummand::immortal(birth.clone())),
        }
    }
    IntervalModule::new(intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;
    use crate::persistence::homology_persistence_function;
    use crate::value::{rat_frac, rat_int};

    fn filled_triangle() -> FilteredComplex {
        FilteredComplex::new(vec![
            (Simplex::from_slice(&[0]), rat_int(0)),
            (Simplex::from_slice(&[1]), rat_int(0)),
            (Simplex::from_slice(&[2]), rat_int(0)),
            (Simplex::from_slice(&[0, 1]), rat_int(1)),
            (Simplex::from_slice(&[0, 2]), rat_int(1)),
            (Simplex::from_slice(&[1, 2]), rat_int(1)),
            (Simplex::from_slice(&[0, 1, 2]), rat_int(2)),
        ])
        .unwrap()
    }

    #[test]
    fn triangle_intervals_in_both_degrees() {
        let field = FieldSpec::Gf(2);
        let h0 = reduce_to_intervals(&filled_triangle(), 0, field);
        assert_eq!(h0.len(), 3);
        let immortal: Vec<_> = h0
            .intervals()
            .iter()
            .filter(|iv| iv.death == ExtValue::PosInf)
            .collect();
        assert_eq!(immortal.len(), 1);

        let h1 = reduce_to_intervals(&filled_triangle(), 1, field);
        assert_eq!(h1.len(), 1);
        assert_eq!(
            h1.intervals()[0],
            IntervalSummand::finite(rat_int(1), rat_int(2)).unwrap()
        );
    }

    #[test]
    fn zero_length_pairs_are_dropped() {
        // Edge and filling triangle arrive together: the cycle never lives.
        let c = FilteredComplex::new(vec![
            (Simplex::from_slice(&[0]), rat_int(0)),
            (Simplex::from_slice(&[1]), rat_int(0)),
            (Simplex::from_slice(&[2]), rat_int(0)),
            (Simplex::from_slice(&[0, 1]), rat_int(1)),
            (Simplex::from_slice(&[0, 2]), rat_int(1)),
            (Simplex::from_slice(&[1, 2]), rat_int(1)),
            (Simplex::from_slice(&[0, 1, 2]), rat_int(1)),
        ])
        .unwrap();
        assert!(reduce_to_intervals(&c, 1, FieldSpec::Gf(2)).is_empty());
    }

    #[test]
    fn reduction_matches_rank_route() {
        let c = filled_triangle();
        for field in [FieldSpec::Gf(2), FieldSpec::Gf(5), FieldSpec::Rational] {
            for k in 0..2 {
                let via_rank = homology_persistence_function(&c, k, field)
                    .diagram()
                    .unwrap();
                let via_reduction = reduce_to_intervals(&c, k, field).diagram();
                assert_eq!(via_rank, via_reduction, "degree {k} over {field}");
            }
        }
    }

    #[test]
    fn module_rank_counts_spanning_summands() {
        let m = IntervalModule::new(vec![
            IntervalSummand::finite(rat_int(0), rat_int(2)).unwrap(),
            IntervalSummand::finite(rat_int(1), rat_int(3)).unwrap(),
            IntervalSummand::immortal(rat_int(1)),
        ]);
        let at = |a: Rat, b: Rat| m.rank(&ExtValue::Finite(a), &ExtValue::Finite(b));
        assert_eq!(at(rat_int(1), rat_int(1)), 3);
        assert_eq!(at(rat_frac(3, 2), rat_frac(5, 2)), 2);
        assert_eq!(at(rat_int(0), rat_int(3)), 0);
        assert_eq!(m.rank(&ExtValue::Finite(rat_int(1)), &ExtValue::PosInf), 1);
    }

    #[test]
    fn diagram_round_trip() {
        let m = IntervalModule::new(vec![
            IntervalSummand::finite(rat_int(0), rat_int(2)).unwrap(),
            IntervalSummand::finite(rat_int(0), rat_int(2)).unwrap(),
            IntervalSummand::immortal(rat_int(1)),
        ]);
        let d = m.diagram();
        assert_eq!(d.total_multiplicity(), 3);
        assert_eq!(IntervalModule::from_diagram(&d), m);
    }

    #[test]
    fn colors_survive_the_round_trip_and_split_points() {
        let m = IntervalModule::new(vec![
            IntervalSummand::finite(rat_int(0), rat_int(2))
                .unwrap()
                .with_color("triv"),
            IntervalSummand::finite(rat_int(0), rat_int(2))
                .unwrap()
                .with_color("sgn"),
        ]);
        let d = m.diagram();
        // Same support, different colors: two cornerpoints, not one.
        assert_eq!(d.points().len(), 2);
        assert_eq!(IntervalModule::from_diagram(&d), m);
    }
}
