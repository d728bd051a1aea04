//! Finite vertex permutation groups acting on complexes.

use super::{ComplexError, FilteredComplex, Simplex};
use crate::value::rat_int;
use std::collections::HashMap;

/// Finite group of vertex permutations, closed under composition and
/// inverse and containing the identity. Elements keep their input order;
/// the multiplication table is precomputed on construction.
#[derive(Debug, Clone)]
pub struct GroupAction {
    degree: usize,
    perms: Vec<Vec<usize>>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl GroupAction {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<GroupAction, ComplexError> {
        if perms.is_empty() {
            return Err(ComplexError::MissingIdentity);
        }
        let degree = perms[0].len();
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(ComplexError::NotAPermutation { index: i, degree });
            }
            for &v in p {
                if v >= degree || seen[v] {
                    return Err(ComplexError::NotAPermutation { index: i, degree });
                }
                seen[v] = true;
            }
        }
        let lookup: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        if lookup.len() != perms.len() {
            // Duplicate elements would make indices ambiguous.
            return Err(ComplexError::NotClosed);
        }
        let id: Vec<usize> = (0..degree).collect();
        let Some(&identity) = lookup.get(id.as_slice()) else {
            return Err(ComplexError::MissingIdentity);
        };
        let order = perms.len();
        let mut mult = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                // (a . b)(x) = a(b(x))
                let comp: Vec<usize> = (0..degree).map(|x| perms[a][perms[b][x]]).collect();
                match lookup.get(comp.as_slice()) {
                    Some(&c) => mult[a][b] = c,
                    None => return Err(ComplexError::NotClosed),
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mult[a][b] == identity {
                    inverse[a] = b;
                }
            }
            if inverse[a] == usize::MAX {
                return Err(ComplexError::NotClosed);
            }
        }
        Ok(GroupAction { degree, perms, mult, inverse, identity })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> GroupAction {
        GroupAction::new(vec![(0..degree).collect()]).expect("identity is a permutation")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn apply_vertex(&self, g: usize, v: usize) -> usize {
        self.perms[g][v]
    }

    /// Image simplex under g.
    pub fn apply(&self, g: usize, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&v| self.perms[g][v]).collect())
            .expect("permutation preserves distinctness")
    }

    /// Image simplex together with the orientation sign of the reordering,
    /// as the parity of the permutation sorting the mapped vertex list.
    pub fn apply_signed(&self, g: usize, s: &Simplex) -> (Simplex, i64) {
        let mapped: Vec<usize> = s.vertices().iter().map(|&v| self.perms[g][v]).collect();
        let mut inversions = 0usize;
        for i in 0..mapped.len() {
            for j in (i + 1)..mapped.len() {
                if mapped[i] > mapped[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        (Simplex::new(mapped).expect("permutation preserves distinctness"), sign)
    }

    /// Conjugacy classes as sorted element index lists, ordered by their
    /// smallest member. Deterministic, used to match character tables.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let order = self.order();
        let mut seen = vec![false; order];
        let mut classes = Vec::new();
        for g in 0..order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..order)
                .map(|h| self.compose(self.compose(h, g), self.inverse(h)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// True when every group element maps every cell of `c` to a cell of
    /// `c` (ignoring entry values).
    pub fn is_simplicial_on(&self, c: &FilteredComplex) -> Result<(), ComplexError> {
        for g in 0..self.order() {
            for (s, _) in c.cells() {
                let gs = self.apply(g, s);
                if !c.contains(&gs) {
                    return Err(ComplexError::NonSimplicialAction {
                        element: g,
                        simplex: s.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// True when entry values are constant on orbits.
    pub fn preserves_filtration(&self, c: &FilteredComplex) -> bool {
        c.cells().iter().all(|(s, v)| {
            (0..self.order()).all(|g| c.entry_value(&self.apply(g, s)) == Some(v))
        })
    }
}

/// Replaces every entry value by the average of the entry values over the
/// orbit of the simplex. The result is invariant under the action and stays
/// a valid filtration. Errors if some group element fails to act
/// simplicially on `c`.
pub fn apply_group_average_filtration(
    c: &FilteredComplex,
    action: &GroupAction,
) -> Result<FilteredComplex, ComplexError> {
    action.is_simplicial_on(c)?;
    let order = rat_int(action.order() as i64);
    let mut cells = Vec::with_capacity(c.len());
    for (s, _) in c.cells() {
        let mut total = rat_int(0);
        for g in 0..action.order() {
            let gs = action.apply(g, s);
            let v = c.entry_value(&gs).expect("simplicial action");
            total += v;
        }
        cells.push((s.clone(), total / order.clone()));
    }
    let averaged = FilteredComplex::new(cells)?;
    debug_assert!(action.preserves_filtration(&averaged));
    Ok(averaged)
}
