//! Maximum bipartite matching (Hopcroft–Karp) and alternating-path reachability.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Bipartite graph with children on the left and labels on the right.
#[derive(Debug, Clone, Default)]
pub struct BipartiteGraph {
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> BipartiteGraph {
        BipartiteGraph { right_count, adj: vec![Vec::new(); left_count] }
    }

    /// Adds edge (l, r). Callers must not add duplicates.
    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(r < self.right_count);
        debug_assert!(!self.adj[l].contains(&r));
        self.adj[l].push(r);
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pair_left: Vec<usize>,
    pair_right: Vec<usize>,
    size: usize,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn partner_of_left(&self, l: usize) -> Option<usize> {
        let r = self.pair_left[l];
        (r != FREE).then_some(r)
    }

    pub fn partner_of_right(&self, r: usize) -> Option<usize> {
        let l = self.pair_right[r];
        (l != FREE).then_some(l)
    }

    /// True iff every left vertex is matched.
    pub fn is_left_perfect(&self) -> bool {
        self.size == self.pair_left.len()
    }
}

/// Maximum-cardinality matching by Hopcroft–Karp. Deterministic: augmenting paths are
/// explored in index order.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let nl = g.left_count();
    let mut pair_left = vec![FREE; nl];
    let mut pair_right = vec![FREE; g.right_count()];
    let mut size = 0;
    let mut dist = vec![0u32; nl];
    let mut queue = VecDeque::with_capacity(nl);
    let mut it = vec![0usize; nl];
    loop {
        // BFS layering from free left vertices.
        queue.clear();
        let mut found = false;
        for l in 0..nl {
            if pair_left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = u32::MAX;
            }
        }
        while let Some(l) = queue.pop_front() {
            for &r in &g.adj[l] {
                let m = pair_right[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == u32::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        it.iter_mut().for_each(|x| *x = 0);
        for l in 0..nl {
            if pair_left[l] == FREE && augment(g, l, &mut pair_left, &mut pair_right, &mut dist, &mut it) {
                size += 1;
            }
        }
    }
    Matching { pair_left, pair_right, size }
}

fn augment(
    g: &BipartiteGraph,
    l: usize,
    pair_left: &mut [usize],
    pair_right: &mut [usize],
    dist: &mut [u32],
    it: &mut [usize],
) -> bool {
    // Recursion depth is bounded by the matching size, i.e. by the label count.
    while it[l] < g.adj[l].len() {
        let r = g.adj[l][it[l]];
        it[l] += 1;
        let m = pair_right[r];
        if m == FREE || (dist[m] == dist[l] + 1 && augment(g, m, pair_left, pair_right, dist, it)) {
            pair_left[l] = r;
            pair_right[r] = l;
            return true;
        }
    }
    dist[l] = u32::MAX;
    false
}

/// Right vertices reachable from unmatched right vertices by alternating paths
/// (non-matching edge to a left vertex, then its matching edge back to the right).
/// Every unmatched right vertex is reachable from itself.
pub fn alternating_reachable(g: &BipartiteGraph, m: &Matching) -> Vec<bool> {
    let nr = g.right_count();
    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); nr];
    for l in 0..g.left_count() {
        for &r in &g.adj[l] {
            radj[r].push(l);
        }
    }
    let mut seen = vec![false; nr];
    let mut queue = VecDeque::new();
    for (r, &l) in m.pair_right.iter().enumerate() {
        if l == FREE {
            seen[r] = true;
            queue.push_back(r);
        }
    }
    while let Some(r) = queue.pop_front() {
        for &l in &radj[r] {
            let r2 = m.pair_left[l];
            if r2 != r && r2 != FREE && !seen[r2] {
                seen[r2] = true;
                queue.push_back(r2);
            }
        }
    }
    seen
}
