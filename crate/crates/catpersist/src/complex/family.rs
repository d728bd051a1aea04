//! Label subset families of Vietoris-Rips complexes.

use super::{vietoris_rips, ComplexError, FilteredComplex, MetricData};
use crate::value::Rat;

/// One nonempty label subset and its complex. Complexes are built on the
/// global vertex ids of the dataset, so for r inside r' the complex of r is
/// literally a subcomplex of the complex of r' with equal entry values and
/// the inclusion maps are identities on simplices.
#[derive(Debug, Clone)]
pub struct SubsetComplex {
    pub mask: u32,
    pub name: String,
    pub complex: FilteredComplex,
}

/// All nonempty subsets of the label set, each with its complex, ordered by
/// (subset size, mask). Labels are sorted, so color names are canonical.
#[derive(Debug, Clone)]
pub struct PosetFamily {
    labels: Vec<String>,
    subsets: Vec<SubsetComplex>,
}

impl PosetFamily {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn subsets(&self) -> &[SubsetComplex] {
        &self.subsets
    }

    pub fn subset(&self, mask: u32) -> Option<&SubsetComplex> {
        self.subsets.iter().find(|s| s.mask == mask)
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.labels.len()) - 1
    }

    /// Canonical color name of a mask: member labels joined with '+'.
    pub fn name_of(&self, mask: u32) -> String {
        subset_name(&self.labels, mask)
    }

    /// Masks of the maximal proper nonempty subsets of `mask`: drop one
    /// member at a time. Their homology images generate all images from
    /// strictly smaller subsets.
    pub fn maximal_proper_subsets(&self, mask: u32) -> Vec<u32> {
        (0..self.labels.len())
            .filter_map(|i| {
                let bit = 1u32 << i;
                if mask & bit != 0 && mask != bit {
                    Some(mask ^ bit)
                } else {
                    None
                }
            })
            .collect()
    }
}

fn subset_name(labels: &[String], mask: u32) -> String {
    let parts: Vec<&str> = labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, l)| l.as_str())
        .collect();
    parts.join("+")
}

/// Builds the family of Vietoris-Rips complexes over every nonempty label
/// subset of a labeled dataset.
pub fn build_poset_family(
    m: &MetricData,
    max_dim: usize,
    max_scale: &Rat,
) -> Result<PosetFamily, ComplexError> {
    let point_labels = m.labels().ok_or(ComplexError::MissingLabels)?;
    let mut labels: Vec<String> = point_labels.to_vec();
    labels.sort();
    labels.dedup();
    if labels.len() > 16 {
        return Err(ComplexError::TooManyLabels(labels.len()));
    }
    let label_index: Vec<usize> = point_labels
        .iter()
        .map(|l| labels.binary_search(l).expect("label present"))
        .collect();

    // Build the top complex once; each subset keeps the cells whose
    // vertices all carry member labels. Entry values are untouched, so
    // subcomplex inclusions are automatic.
    let top = vietoris_rips(m, max_dim, max_scale)?;
    let full: u32 = (1u32 << labels.len()) - 1;
    let mut subsets = Vec::new();
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let cells: Vec<_> = top
            .cells()
            .iter()
            .filter(|(s, _)| {
                s.vertices()
                    .iter()
                    .all(|&v| mask & (1 << label_index[v]) != 0)
            })
            .cloned()
            .collect();
        let complex = FilteredComplex::new(cells)?;
        let name = subset_name(&labels, mask);
        subsets.push(SubsetComplex { mask, name, complex });
    }
    Ok(PosetFamily { labels, subsets })
}
