//! Connected-component persistence computed directly with a union-find,
//! with no linear algebra. Serves as an independent route to the degree-0
//! homology ranks.

use std::collections::HashMap;

use super::PersistenceFunction;
use crate::complex::{FilteredComplex, Simplex};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Persistence function of connected components: p(u, v) is the number of
/// components of the sublevel at v that contain a vertex present at u.
/// This equals the degree-0 homology persistence function over any field.
pub fn component_persistence_function(c: &FilteredComplex) -> PersistenceFunction {
    let critical = c.critical_values();
    let m = critical.len();

    // Vertex cells form a prefix of cells_of_dim(0) per sublevel; map the
    // vertex labels to those prefix positions once.
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, &id) in c.cells_of_dim(0).iter().enumerate() {
        slot.insert(c.cells()[id].0.vertices()[0], i);
    }
    let edges: Vec<&Simplex> = c
        .cells_of_dim(1)
        .iter()
        .map(|&id| &c.cells()[id].0)
        .collect();

    let n = m + 1;
    let mut grid = vec![0i64; n * n];
    for j in 0..n {
        let (nv_j, ne_j) = if j == 0 {
            (0, 0)
        } else {
            (
                c.sublevel_count(0, &critical[j - 1]),
                c.sublevel_count(1, &critical[j - 1]),
            )
        };
        let mut uf = UnionFind::new(nv_j);
        for e in &edges[..ne_j] {
            let v = e.vertices();
            uf.union(slot[&v[0]], slot[&v[1]]);
        }
        for i in 0..=j {
            let nv_i = if i == 0 {
                0
            } else {
                c.sublevel_count(0, &critical[i - 1])
            };
            let mut roots: Vec<usize> = (0..nv_i).map(|x| uf.find(x)).collect();
            roots.sort_unstable();
            roots.dedup();
            grid[i * n + j] = roots.len() as i64;
        }
    }
    PersistenceFunction::from_span_grid(critical, grid)
}
