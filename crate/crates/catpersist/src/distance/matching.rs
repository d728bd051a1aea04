//! Maximum bipartite matching by augmenting paths.

/// Bipartite graph on left vertices 0..n_left and right vertices 0..n_right.
pub(crate) struct Bipartite {
    n_right: usize,
    adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub(crate) fn new(n_left: usize, n_right: usize) -> Self {
        Bipartite {
            n_right,
            adj: vec![Vec::new(); n_left],
        }
    }

    pub(crate) fn add_edge(&mut self, left: usize, right: usize) {
        self.adj[left].push(right);
    }

    /// Partner of each left vertex in a maximum matching.
    pub(crate) fn maximum_matching(&self) -> Vec<Option<usize>> {
        let mut right_of: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut left_of: Vec<Option<usize>> = vec![None; self.n_right];
        for start in 0..self.adj.len() {
            let mut seen = vec![false; self.n_right];
            self.augment(start, &mut seen, &mut right_of, &mut left_of);
        }
        right_of
    }

    fn augment(
        &self,
        left: usize,
        seen: &mut [bool],
        right_of: &mut [Option<usize>],
        left_of: &mut [Option<usize>],
    ) -> bool {
        for &r in &self.adj[left] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let free = match left_of[r] {
                None => true,
                Some(owner) => self.augment(owner, seen, right_of, left_of),
            };
            if free {
                right_of[left] = Some(r);
                left_of[r] = Some(left);
                return true;
            }
        }
        false
    }
}
