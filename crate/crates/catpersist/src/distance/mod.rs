//! Bottleneck distances between persistence diagrams, their multicolored
//! refinement, and the interleaving distance on interval modules.
//!
//! The bottleneck value is exact: the optimum is one of finitely many
//! candidate costs (pairwise l-inf distances and distances to the
//! diagonal), located by binary search with a maximum-matching feasibility
//! test at each candidate. Every result ships a witness matching.

mod interleaving;
mod matching;

pub use interleaving::{
    interleaving_on_intervals, verify_interleaving_inequality, InterleavingCertificate,
};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coloring::ColoredDiagram;
use crate::persistence::{Cornerpoint, PersistenceDiagram};
use crate::value::{rat_int, ExtValue};
use matching::Bipartite;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistanceError {
    #[error("interval modules mix colors {0:?}; split per color first")]
    MixedColors(Vec<String>),
}

/// One side of a matched pair: an off-diagonal cornerpoint, expanded to
/// multiplicity one, or the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Point(Cornerpoint),
    Diagonal,
}

impl Endpoint {
    fn coords(&self) -> Option<(ExtValue, ExtValue)> {
        match self {
            Endpoint::Point(p) => Some((p.birth.clone(), p.death.clone())),
            Endpoint::Diagonal => None,
        }
    }
}

/// l-inf distance between matched endpoints. A point matched to the
/// diagonal pays half its persistence, so a point with infinite death can
/// never reach it.
pub fn pair_cost(a: &Endpoint, b: &Endpoint) -> ExtValue {
    match (a.coords(), b.coords()) {
        (Some(p), Some(q)) => linf(&p, &q),
        (Some(p), None) | (None, Some(p)) => diagonal_cost(&p),
        (None, None) => ExtValue::int(0),
    }
}

fn linf(p: &(ExtValue, ExtValue), q: &(ExtValue, ExtValue)) -> ExtValue {
    p.0.abs_diff(&q.0).max(p.1.abs_diff(&q.1))
}

fn diagonal_cost(p: &(ExtValue, ExtValue)) -> ExtValue {
    match (&p.0, &p.1) {
        (ExtValue::Finite(b), ExtValue::Finite(d)) => ExtValue::Finite((d - b) / rat_int(2)),
        _ => ExtValue::PosInf,
    }
}

/// A witness bijection between two diagrams, diagonal included. Each
/// off-diagonal point appears in exactly one pair per unit of multiplicity;
/// diagonal-to-diagonal pairs are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(Endpoint, Endpoint)>,
    pub cost: ExtValue,
}

impl Matching {
    /// Largest pair cost, recomputed from scratch.
    pub fn recompute_cost(&self) -> ExtValue {
        self.pairs
            .iter()
            .map(|(a, b)| pair_cost(a, b))
            .max()
            .unwrap_or_else(|| ExtValue::int(0))
    }

    /// Whether this matching certifies its stored cost for the given pair
    /// of diagrams: left endpoints exhaust d1, right endpoints exhaust d2,
    /// no diagonal-diagonal pairs, and the cost is the actual maximum.
    pub fn certifies(&self, d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> bool {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (a, b) in &self.pairs {
            if *a == Endpoint::Diagonal && *b == Endpoint::Diagonal {
                return false;
            }
            if let Endpoint::Point(p) = a {
                left.push(p.clone());
            }
            if let Endpoint::Point(p) = b {
                right.push(p.clone());
            }
        }
        same_multiset(left, expand(d1)) && same_multiset(right, expand(d2))
            && self.recompute_cost() == self.cost
    }

    /// Whether every point-to-point pair stays within one color.
    pub fn preserves_colors(&self) -> bool {
        self.pairs.iter().all(|(a, b)| match (a, b) {
            (Endpoint::Point(p), Endpoint::Point(q)) => p.color == q.color,
            _ => true,
        })
    }
}

fn same_multiset(mut a: Vec<Cornerpoint>, mut b: Vec<Cornerpoint>) -> bool {
    let key = |p: &Cornerpoint| (p.birth.clone(), p.death.clone(), p.color.clone());
    a.sort_by_key(key);
    b.sort_by_key(key);
    a == b
}

/// One cornerpoint per unit of multiplicity.
fn expand(d: &PersistenceDiagram) -> Vec<Cornerpoint> {
    let mut out = Vec::new();
    for p in d.points() {
        for _ in 0..p.multiplicity {
            out.push(Cornerpoint {
                multiplicity: 1,
                ..p.clone()
            });
        }
    }
    out
}

/// Matched index pairs into two point lists; None is the diagonal.
type IndexPairs = Vec<(Option<usize>, Option<usize>)>;

/// Exact bottleneck on expanded coordinate lists. Returns +inf when no
/// finite threshold admits a perfect matching, which happens exactly when
/// the immortal classes cannot be paired off.
pub(crate) fn solve(
    p1: &[(ExtValue, ExtValue)],
    p2: &[(ExtValue, ExtValue)],
) -> (ExtValue, IndexPairs) {
    if p1.is_empty() && p2.is_empty() {
        return (ExtValue::int(0), Vec::new());
    }

    let mut candidates: BTreeSet<ExtValue> = BTreeSet::new();
    candidates.insert(ExtValue::int(0));
    for a in p1 {
        for b in p2 {
            let c = linf(a, b);
            if c.is_finite() {
                candidates.insert(c);
            }
        }
    }
    for p in p1.iter().chain(p2) {
        let c = diagonal_cost(p);
        if c.is_finite() {
            candidates.insert(c);
        }
    }
    let candidates: Vec<ExtValue> = candidates.into_iter().collect();

    // Left side: points of p1, then one diagonal slot per point of p2.
    // Right side: points of p2, then one diagonal slot per point of p1.
    // Slot-to-slot edges are free, so a perfect matching of size
    // |p1| + |p2| exists iff the threshold is feasible.
    let matching_at = |t: Option<&ExtValue>| -> Option<IndexPairs> {
        let ok = |cost: ExtValue| t.map_or(true, |t| &cost <= t);
        let (n1, n2) = (p1.len(), p2.len());
        let mut g = Bipartite::new(n1 + n2, n2 + n1);
        for i in 0..n1 {
            for j in 0..n2 {
                if ok(linf(&p1[i], &p2[j])) {
                    g.add_edge(i, j);
                }
            }
            if ok(diagonal_cost(&p1[i])) {
                g.add_edge(i, n2 + i);
            }
        }
        for j in 0..n2 {
            if ok(diagonal_cost(&p2[j])) {
                g.add_edge(n1 + j, j);
            }
            for i in 0..n1 {
                g.add_edge(n1 + j, n2 + i);
            }
        }
        let right_of = g.maximum_matching();
        if right_of.iter().any(|r| r.is_none()) {
            return None;
        }
        let mut pairs = Vec::new();
        for (l, r) in right_of.into_iter().enumerate() {
            let r = r.expect("matching is perfect");
            match (l < n1, r < n2) {
                (true, true) => pairs.push((Some(l), Some(r))),
                (true, false) => pairs.push((Some(l), None)),
                (false, true) => pairs.push((None, Some(r))),
                (false, false) => {}
            }
        }
        Some(pairs)
    };

    // Feasibility is monotone in the threshold: binary search for the
    // smallest feasible candidate.
    let mut lo = 0;
    let mut hi = candidates.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matching_at(Some(&candidates[mid])).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    match candidates.get(lo) {
        Some(t) => {
            let pairs = matching_at(Some(t)).expect("feasible by search");
            (t.clone(), pairs)
        }
        None => {
            let pairs = matching_at(None).expect("everything matches at infinity");
            (ExtValue::PosInf, pairs)
        }
    }
}

/// Bottleneck distance with a witness matching. Colors are ignored here;
/// multicolored_bottleneck restricts to color-preserving bijections.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> (ExtValue, Matching) {
    let e1 = expand(d1);
    let e2 = expand(d2);
    let coords = |ps: &[Cornerpoint]| -> Vec<(ExtValue, ExtValue)> {
        ps.iter()
            .map(|p| (p.birth.clone(), p.death.clone()))
            .collect()
    };
    let (value, index_pairs) = solve(&coords(&e1), &coords(&e2));
    let pairs = index_pairs
        .into_iter()
        .map(|(a, b)| {
            (
                a.map_or(Endpoint::Diagonal, |i| Endpoint::Point(e1[i].clone())),
                b.map_or(Endpoint::Diagonal, |j| Endpoint::Point(e2[j].clone())),
            )
        })
        .collect();
    let cost = value.clone();
    (value, Matching { pairs, cost })
}

/// Largest per-color bottleneck over the union of the two legends. A color
/// missing on one side counts as an empty diagram there, so every one of
/// its points pays the trip to the diagonal.
pub fn multicolored_bottleneck(
    c1: &ColoredDiagram,
    c2: &ColoredDiagram,
) -> (ExtValue, Matching) {
    let mut ids: BTreeSet<String> = c1.ids().into_iter().map(String::from).collect();
    ids.extend(c2.ids().into_iter().map(String::from));

    let empty = PersistenceDiagram::empty();
    let mut worst = ExtValue::int(0);
    let mut pairs = Vec::new();
    for id in &ids {
        let d1 = c1.part(id).map_or(&empty, |p| &p.diagram);
        let d2 = c2.part(id).map_or(&empty, |p| &p.diagram);
        let (value, m) = bottleneck(d1, d2);
        worst = worst.max(value);
        pairs.extend(m.pairs);
    }
    let cost = worst.clone();
    (worst, Matching { pairs, cost })
}
