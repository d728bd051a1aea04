//! Colorings of persistence diagrams.
//!
//! Two constructions split a persistence diagram into colored parts whose
//! weighted ranks add up to a total rank:
//!
//! * [`group_colored_diagram`]: one color per irreducible character of a
//!   finite group acting on the complex; the part is the isotypic piece of
//!   homology, reported in multiplicity-space lengths (weight = character
//!   degree).
//! * [`poset_colored_diagram`]: one color per nonempty label subset; the
//!   part is homology of that subset's complex modulo everything arriving
//!   from strictly smaller subsets (weight = 1).

mod group;
mod poset;
mod table;

pub use group::{
    group_color_functions, group_colored_diagram, isotypic_projector, ChainRepresentation,
};
pub use poset::{poset_color_functions, poset_colored_diagram};
pub use table::{CharacterTable, ConjClass, Irrep};

use std::collections::BTreeSet;

use crate::complex::ComplexError;
use crate::field::FieldError;
use crate::persistence::{PersistenceDiagram, PersistenceError, PersistenceFunction};
use crate::value::Rat;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ColoringError {
    #[error("conjugacy class sizes sum to {sum}, group order is {order}")]
    WrongClassSizeSum { sum: u64, order: u64 },
    #[error("squared character degrees sum to {sum}, group order is {order}")]
    WrongDegreeSquareSum { sum: u64, order: u64 },
    #[error("character table must be square: {irreps} irreducibles, {classes} classes")]
    TableNotSquare { irreps: usize, classes: usize },
    #[error("characters {a} and {b} are not orthogonal")]
    NotOrthogonal { a: String, b: String },
    #[error("class 0 must be the singleton class of the identity, with every character equal to its degree there")]
    BadIdentityClass,
    #[error("irreducible {name} lists {got} character values, expected {expected}")]
    BadValueCount { name: String, got: usize, expected: usize },
    #[error("duplicate irreducible name {0}")]
    DuplicateIrrep(String),
    #[error("character degree must be at least 1")]
    ZeroDegree,
    #[error("table declares order {table}, action has order {action}")]
    OrderMismatch { table: u64, action: usize },
    #[error("table class with representative {rep} does not match a conjugacy class of the action")]
    ClassMismatch { rep: usize },
    #[error("filtration is not invariant under the action; average it first")]
    NotInvariant,
    #[error("isotypic rank {rank} is not divisible by the character degree {degree}")]
    IndivisibleRank { rank: i64, degree: u64 },
    #[error("colored diagram ids must be distinct: {0}")]
    DuplicateColor(String),
    #[error("color weights must be at least 1")]
    ZeroWeight,
    #[error("every point must carry a color to build a colored diagram")]
    UncoloredPoint,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
}

/// One colored part: the diagram of a single color, plus the weight its
/// ranks carry in the additivity identity (the character degree for group
/// colors, 1 for poset colors).
#[derive(Debug, Clone, PartialEq)]
pub struct ColorPart {
    pub id: String,
    pub weight: u64,
    pub diagram: PersistenceDiagram,
}

/// A diagram split into colored parts with distinct ids. Points inside each
/// part are tagged with the part id, so merging keeps the colors.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredDiagram {
    parts: Vec<ColorPart>,
}

impl ColoredDiagram {
    pub fn new(parts: Vec<ColorPart>) -> Result<ColoredDiagram, ColoringError> {
        let mut seen = BTreeSet::new();
        for p in &parts {
            if !seen.insert(p.id.clone()) {
                return Err(ColoringError::DuplicateColor(p.id.clone()));
            }
            if p.weight == 0 {
                return Err(ColoringError::ZeroWeight);
            }
        }
        let parts = parts
            .into_iter()
            .map(|p| ColorPart {
                diagram: p.diagram.with_color(&p.id),
                ..p
            })
            .collect();
        Ok(ColoredDiagram { parts })
    }

    /// Group the points of a single diagram by their color tags, one part
    /// per distinct color, all with weight 1.
    pub fn from_colored_points(d: &PersistenceDiagram) -> Result<ColoredDiagram, ColoringError> {
        let mut ids = BTreeSet::new();
        for c in d.colors() {
            match c {
                Some(name) => {
                    ids.insert(name);
                }
                None => return Err(ColoringError::UncoloredPoint),
            }
        }
        ColoredDiagram::new(
            ids.into_iter()
                .map(|id| ColorPart {
                    diagram: d.filter_color(Some(&id)),
                    id,
                    weight: 1,
                })
                .collect(),
        )
    }

    pub fn parts(&self) -> &[ColorPart] {
        &self.parts
    }

    pub fn ids(&self) -> Vec<&str> {
        self.parts.iter().map(|p| p.id.as_str()).collect()
    }

    /// Color legend: id to display name. Both built-in colorings use ids
    /// that already are the display names (character row labels, label
    /// subsets like "b+o"), so the legend is the identity on ids.
    pub fn legend(&self) -> Vec<(String, String)> {
        self.parts
            .iter()
            .map(|p| (p.id.clone(), p.id.clone()))
            .collect()
    }

    pub fn part(&self, id: &str) -> Option<&ColorPart> {
        self.parts.iter().find(|p| p.id == id)
    }

    /// All parts superimposed into one diagram with color tags.
    pub fn merged(&self) -> PersistenceDiagram {
        let mut out = PersistenceDiagram::empty();
        for p in &self.parts {
            out = out.merge(&p.diagram);
        }
        out
    }

    /// Weighted number of points alive at t across all colors.
    pub fn weighted_count_through(&self, t: &Rat) -> i64 {
        self.parts
            .iter()
            .map(|p| p.weight as i64 * p.diagram.count_through(t) as i64)
            .sum()
    }
}

/// Rank additivity: at every critical value t of the total function and
/// every finite cornerpoint coordinate of the colored diagram, the weighted
/// colored counts through t must equal totals(t, t).
pub fn colored_rank_check(cd: &ColoredDiagram, totals: &PersistenceFunction) -> bool {
    let mut ts: BTreeSet<Rat> = totals.critical_values().iter().cloned().collect();
    for part in cd.parts() {
        for pt in part.diagram.points() {
            for coord in [&pt.birth, &pt.death] {
                if let Some(x) = coord.as_finite() {
                    ts.insert(x.clone());
                }
            }
        }
    }
    ts.iter()
        .all(|t| cd.weighted_count_through(t) == totals.evaluate(t, t))
}

/// Pointwise sum of persistence functions; the critical values are pooled.
/// Used as the "total rank" of a poset coloring, where the rank of a tuple
/// of spaces is the sum of the component ranks.
pub fn sum_of_functions(parts: &[PersistenceFunction]) -> PersistenceFunction {
    let mut critical: Vec<Rat> = parts
        .iter()
        .flat_map(|p| p.critical_values().iter().cloned())
        .collect();
    critical.sort();
    critical.dedup();
    let owned: Vec<PersistenceFunction> = parts.to_vec();
    PersistenceFunction::from_evaluator(critical, move |u, v| {
        owned.iter().map(|p| p.evaluate(u, v)).sum()
    })
}
