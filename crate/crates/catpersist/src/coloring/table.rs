//! Rational-valued character tables of finite groups.
//!
//! Only groups with rational character tables are supported; that keeps all
//! projector arithmetic in the rationals. Class 0 is by convention the
//! singleton class of the identity, so every character's value there is its
//! degree.

use super::ColoringError;
use crate::complex::GroupAction;
use crate::value::{rat_int, Rat};

/// One conjugacy class: its size and the index (into the action's element
/// list) of a representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub size: u64,
    pub rep: usize,
}

/// One irreducible character: display name, degree, and one rational value
/// per conjugacy class, in class order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irrep {
    pub name: String,
    pub degree: u64,
    pub values: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    order: u64,
    classes: Vec<ConjClass>,
    irreps: Vec<Irrep>,
}

impl CharacterTable {
    pub fn new(
        order: u64,
        classes: Vec<ConjClass>,
        irreps: Vec<Irrep>,
    ) -> Result<CharacterTable, ColoringError> {
        let size_sum: u64 = classes.iter().map(|c| c.size).sum();
        if order == 0 || size_sum != order {
            return Err(ColoringError::WrongClassSizeSum { sum: size_sum, order });
        }
        if irreps.len() != classes.len() {
            return Err(ColoringError::TableNotSquare {
                irreps: irreps.len(),
                classes: classes.len(),
            });
        }
        if classes[0].size != 1 {
            return Err(ColoringError::BadIdentityClass);
        }
        let mut names = std::collections::BTreeSet::new();
        for ir in &irreps {
            if ir.degree == 0 {
                return Err(ColoringError::ZeroDegree);
            }
            if ir.values.len() != classes.len() {
                return Err(ColoringError::BadValueCount {
                    name: ir.name.clone(),
                    got: ir.values.len(),
                    expected: classes.len(),
                });
            }
            if ir.values[0] != rat_int(ir.degree as i64) {
                return Err(ColoringError::BadIdentityClass);
            }
            if !names.insert(ir.name.clone()) {
                return Err(ColoringError::DuplicateIrrep(ir.name.clone()));
            }
        }
        let degree_square_sum: u64 = irreps.iter().map(|ir| ir.degree * ir.degree).sum();
        if degree_square_sum != order {
            return Err(ColoringError::WrongDegreeSquareSum {
                sum: degree_square_sum,
                order,
            });
        }
        // Rational characters are real, so row orthogonality needs no
        // conjugation: sum_c |C| chi_a(c) chi_b(c) = |G| delta_ab.
        for a in 0..irreps.len() {
            for b in a..irreps.len() {
                let mut acc = rat_int(0);
                for (c, class) in classes.iter().enumerate() {
                    acc += rat_int(class.size as i64) * &irreps[a].values[c]
                        * &irreps[b].values[c];
                }
                let expected = if a == b { rat_int(order as i64) } else { rat_int(0) };
                if acc != expected {
                    return Err(ColoringError::NotOrthogonal {
                        a: irreps[a].name.clone(),
                        b: irreps[b].name.clone(),
                    });
                }
            }
        }
        Ok(CharacterTable { order, classes, irreps })
    }

    /// The one-element group.
    pub fn trivial() -> CharacterTable {
        CharacterTable::new(
            1,
            vec![ConjClass { size: 1, rep: 0 }],
            vec![Irrep {
                name: "triv".into(),
                degree: 1,
                values: vec![rat_int(1)],
            }],
        )
        .expect("built-in table is valid")
    }

    /// The two-element group, with the action's identity listed first
    /// (element 0) and the involution second (element 1).
    pub fn cyclic_two() -> CharacterTable {
        CharacterTable::new(
            2,
            vec![ConjClass { size: 1, rep: 0 }, ConjClass { size: 1, rep: 1 }],
            vec![
                Irrep {
                    name: "triv".into(),
                    degree: 1,
                    values: vec![rat_int(1), rat_int(1)],
                },
                Irrep {
                    name: "sgn".into(),
                    degree: 1,
                    values: vec![rat_int(1), rat_int(-1)],
                },
            ],
        )
        .expect("built-in table is valid")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn character(&self, irrep: usize, class: usize) -> &Rat {
        &self.irreps[irrep].values[class]
    }

    /// Matches the table's classes against the conjugacy classes of an
    /// action and returns the class index of every group element. Class 0's
    /// representative must be the action's identity.
    pub fn class_of_elements(&self, action: &GroupAction) -> Result<Vec<usize>, ColoringError> {
        if action.order() as u64 != self.order {
            return Err(ColoringError::OrderMismatch {
                table: self.order,
                action: action.order(),
            });
        }
        if self.classes[0].rep != action.identity() {
            return Err(ColoringError::BadIdentityClass);
        }
        let action_classes = action.conjugacy_classes();
        let mut class_of = vec![usize::MAX; action.order()];
        let mut claimed = vec![false; action_classes.len()];
        for (ci, class) in self.classes.iter().enumerate() {
            let found = action_classes
                .iter()
                .position(|ac| ac.contains(&class.rep))
                .expect("every element lies in some conjugacy class");
            if claimed[found] || action_classes[found].len() as u64 != class.size {
                return Err(ColoringError::ClassMismatch { rep: class.rep });
            }
            claimed[found] = true;
            for &g in &action_classes[found] {
                class_of[g] = ci;
            }
        }
        // Sizes sum to the order and classes are disjoint, so coverage is
        // complete once every table class is claimed.
        Ok(class_of)
    }
}
