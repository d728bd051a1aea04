//! Interleaving distance on interval modules, with explicit certificates,
//! and an empirical stability check for diagrams of perturbed filtrations.

use std::collections::HashMap;

use rand::Rng;

use super::{bottleneck, solve, DistanceError};
use crate::complex::{FilteredComplex, Simplex};
use crate::field::FieldSpec;
use crate::persistence::{reduce_to_intervals, IntervalModule, IntervalSummand};
use crate::value::{rat_from_f64, rat_int, ExtValue, Rat};

/// Witness for an interleaving value: the interval pairing that realizes
/// it. Paired intervals are connected by the canonical maps in both
/// directions; intervals paired with the diagonal are those the double
/// shift annihilates.
#[derive(Debug, Clone)]
pub struct InterleavingCertificate {
    pub value: ExtValue,
    pub pairs: Vec<(Option<IntervalSummand>, Option<IntervalSummand>)>,
}

impl InterleavingCertificate {
    /// Replay the construction at shift eps. For a pair of intervals that
    /// both die within 2*eps of birth the zero maps suffice, since the
    /// double-shift structure maps vanish; otherwise the canonical maps
    /// must exist both ways, which also pins their composites to the
    /// double shifts. An interval on the diagonal must vanish under the
    /// double shift. The check is monotone in eps: it holds at the stored
    /// value and fails strictly below it.
    pub fn verify(&self, eps: &ExtValue) -> bool {
        let eps_rat = match eps {
            ExtValue::PosInf => return true,
            ExtValue::NegInf => return self.pairs.is_empty(),
            ExtValue::Finite(e) => e,
        };
        if eps_rat < &rat_int(0) {
            return self.pairs.is_empty();
        }
        let two_eps = ExtValue::Finite(eps_rat * rat_int(2));
        self.pairs.iter().all(|pair| match pair {
            (Some(i1), Some(i2)) => {
                let long1 = i1.death.abs_diff(&i1.birth) > two_eps;
                let long2 = i2.death.abs_diff(&i2.birth) > two_eps;
                if !long1 && !long2 {
                    return true;
                }
                shifted_map_exists(i1, i2, eps_rat) && shifted_map_exists(i2, i1, eps_rat)
            }
            (Some(iv), None) | (None, Some(iv)) => iv.death.abs_diff(&iv.birth) <= two_eps,
            (None, None) => false,
        })
    }
}

/// Whether a nonzero map from the source interval into the eps-shifted
/// target exists: the shifted target must start and end no later than the
/// source, and the two must overlap. The map is then the identity on the
/// overlap and zero elsewhere.
fn shifted_map_exists(src: &IntervalSummand, dst: &IntervalSummand, eps: &Rat) -> bool {
    let start = dst.birth.minus(eps);
    let end = dst.death.minus(eps);
    start <= src.birth && src.birth < end && end <= src.death
}

/// Interleaving distance between two interval modules over one shared
/// color, together with the certificate realizing it. The value is the
/// bottleneck distance of the induced diagrams, which the certificate
/// upgrades to explicit interleaving maps at any eps at or above it.
pub fn interleaving_on_intervals(
    m1: &IntervalModule,
    m2: &IntervalModule,
) -> Result<(ExtValue, InterleavingCertificate), DistanceError> {
    let mut colors: Vec<Option<String>> = m1
        .intervals()
        .iter()
        .chain(m2.intervals())
        .map(|iv| iv.color.clone())
        .collect();
    colors.sort();
    colors.dedup();
    if colors.len() > 1 {
        return Err(DistanceError::MixedColors(
            colors
                .into_iter()
                .map(|c| c.unwrap_or_else(|| "(none)".to_string()))
                .collect(),
        ));
    }

    let coords = |m: &IntervalModule| -> Vec<(ExtValue, ExtValue)> {
        m.intervals()
            .iter()
            .map(|iv| (iv.birth.clone(), iv.death.clone()))
            .collect()
    };
    let (value, index_pairs) = solve(&coords(m1), &coords(m2));
    let pairs = index_pairs
        .into_iter()
        .map(|(a, b)| {
            (
                a.map(|i| m1.intervals()[i].clone()),
                b.map(|j| m2.intervals()[j].clone()),
            )
        })
        .collect();
    let certificate = InterleavingCertificate {
        value: value.clone(),
        pairs,
    };
    debug_assert!(certificate.verify(&value));
    Ok((value, certificate))
}

/// Stability check: perturb every entry value of f independently by at
/// most eps, repair monotonicity, and test that the degree-k diagrams
/// moved by at most eps in bottleneck distance.
///
/// Repair raises each cell to the largest perturbed value among its faces.
/// Every face satisfies original(face) <= original(cell), so the raised
/// value still lies within eps of original(cell) and the two sublevel
/// filtrations include into each other with shift eps.
pub fn verify_interleaving_inequality(
    f: &FilteredComplex,
    eps: &Rat,
    k: usize,
    field: FieldSpec,
    rng: &mut impl Rng,
) -> bool {
    assert!(eps >= &rat_int(0), "shift bound must be nonnegative");
    let cells = f.cells();
    let mut index_of: HashMap<&Simplex, usize> = HashMap::new();
    let mut repaired: Vec<Rat> = Vec::with_capacity(cells.len());
    for (i, (s, v)) in cells.iter().enumerate() {
        let jitter = rat_from_f64(rng.gen_range(-1.0..=1.0)).expect("finite sample") * eps;
        let mut value = v + jitter;
        // Faces precede cofaces in the canonical cell order, so their
        // repaired values are final by the time the coface is reached.
        for facet in s.facets() {
            let face_value = &repaired[index_of[&facet]];
            if *face_value > value {
                value = face_value.clone();
            }
        }
        index_of.insert(s, i);
        repaired.push(value);
    }
    let shifted: Vec<(Simplex, Rat)> = cells
        .iter()
        .zip(&repaired)
        .map(|((s, _), v)| (s.clone(), v.clone()))
        .collect();
    let g = FilteredComplex::new(shifted).expect("repair keeps the filtration monotone");

    let df = reduce_to_intervals(f, k, field).diagram();
    let dg = reduce_to_intervals(&g, k, field).diagram();
    let (value, _) = bottleneck(&df, &dg);
    value <= ExtValue::Finite(eps.clone())
}
