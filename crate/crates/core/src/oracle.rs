//! Exhaustive backtracking oracles. Deliberately independent of the DP engines.

use crate::delta::DeltaTable;
use crate::error::{Error, Result};
use crate::labeling::{lambda_bounds, Labeling};
use crate::tree::{RootedTree, Tree};

pub const DEFAULT_LAMBDA_CAP: usize = 15;
pub const DEFAULT_DELTA_CAP: usize = 8;

/// A small graph prepared for backtracking: each position lists the earlier positions it
/// constrains together with the required gap.
struct Search {
    order: Vec<usize>,
    checks: Vec<Vec<(usize, u32)>>,
    labels: Vec<u32>,
    lambda: u32,
}

impl Search {
    /// `adj` is an adjacency list; `order` must start with any pre-fixed vertices.
    fn new(adj: &[Vec<usize>], order: Vec<usize>, p: u32, q: u32, lambda: u32) -> Search {
        let n = adj.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut checks = vec![Vec::new(); n];
        for (i, &v) in order.iter().enumerate() {
            let mut near: Vec<(usize, u32)> = Vec::new();
            for &w in &adj[v] {
                if pos[w] < i {
                    near.push((pos[w], p));
                }
                for &x in &adj[w] {
                    if x != v && pos[x] < i && !adj[v].contains(&x) {
                        near.push((pos[x], q));
                    }
                }
            }
            near.sort_unstable();
            near.dedup_by(|a, b| {
                a.0 == b.0 && {
                    b.1 = b.1.max(a.1);
                    true
                }
            });
            checks[i] = near;
        }
        Search { order, checks, labels: vec![0; n], lambda }
    }

    fn fits(&self, i: usize, x: u32) -> bool {
        self.checks[i].iter().all(|&(j, gap)| self.labels[j].abs_diff(x) >= gap)
    }

    /// Depth-first search from position `i`; `visit` returns true to stop.
    fn run(&mut self, i: usize, first_max: u32, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if i == self.order.len() {
            return visit(&self.labels);
        }
        let top = if i == 0 { first_max } else { self.lambda };
        for x in 0..=top {
            if self.fits(i, x) {
                self.labels[i] = x;
                if self.run(i + 1, first_max, visit) {
                    return true;
                }
            }
        }
        false
    }

    fn to_vertex_labels(&self, by_pos: &[u32]) -> Vec<u32> {
        let mut out = vec![0; by_pos.len()];
        for (i, &v) in self.order.iter().enumerate() {
            out[v] = by_pos[i];
        }
        out
    }
}

fn adjacency(t: &Tree) -> Vec<Vec<usize>> {
    (0..t.vertex_count()).map(|v| t.neighbors(v).to_vec()).collect()
}

fn bfs_order(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut order = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

/// Searches for a λ-L(p,q)-labeling; returns one if it exists.
pub fn brute_force_feasible(t: &Tree, p: u32, q: u32, lambda: u32) -> Option<Labeling> {
    let adj = adjacency(t);
    let start = (0..t.vertex_count()).max_by_key(|&v| (t.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let mut s = Search::new(&adj, bfs_order(&adj, start), p, q, lambda);
    let mut found = None;
    // Complementing labels preserves validity, so the first vertex may stay in the lower half.
    s.run(0, lambda / 2, &mut |l| {
        found = Some(l.to_vec());
        true
    });
    found.map(|by_pos| Labeling { lambda, labels: s.to_vertex_labels(&by_pos) })
}

/// Calls `visit` on every λ-L(p,q)-labeling (vertex-indexed) until it returns true.
pub fn for_each_labeling(t: &Tree, p: u32, q: u32, lambda: u32, mut visit: impl FnMut(&[u32]) -> bool) {
    let adj = adjacency(t);
    let mut s = Search::new(&adj, bfs_order(&adj, 0), p, q, lambda);
    let order = s.order.clone();
    s.run(0, lambda, &mut |by_pos| {
        let mut out = vec![0; by_pos.len()];
        for (i, &v) in order.iter().enumerate() {
            out[v] = by_pos[i];
        }
        visit(&out)
    });
}

/// Exact λ_{p,q}(T) with a witness, using the default size cap.
pub fn brute_force_lambda(t: &Tree, p: u32, q: u32) -> Result<(u32, Labeling)> {
    brute_force_lambda_capped(t, p, q, DEFAULT_LAMBDA_CAP)
}

pub fn brute_force_lambda_capped(t: &Tree, p: u32, q: u32, cap: usize) -> Result<(u32, Labeling)> {
    if q == 0 || q > p {
        return Err(Error::InvalidParameter(format!("need p >= q >= 1 (p={p}, q={q})")));
    }
    let n = t.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    if n == 1 {
        return Ok((0, Labeling { lambda: 0, labels: vec![0] }));
    }
    let start = if q == 1 { lambda_bounds(t, p).lower } else { p };
    // The upper bound is trusted only as a stopping hint; keep going if it fails.
    let mut lambda = start;
    loop {
        if let Some(f) = brute_force_feasible(t, p, q, lambda) {
            return Ok((lambda, f));
        }
        lambda += 1;
    }
}

/// Dense δ table of T(u,v) for the subtree rooted at `v` (u is a virtual parent), by
/// exhaustive enumeration for every (a,b).
pub fn brute_force_delta(rt: &RootedTree, v: usize, p: u32, lambda: u32) -> Result<DeltaTable> {
    brute_force_delta_capped(rt, v, p, lambda, DEFAULT_DELTA_CAP)
}

pub fn brute_force_delta_capped(rt: &RootedTree, v: usize, p: u32, lambda: u32, cap: usize) -> Result<DeltaTable> {
    let verts = rt.subtree_vertices(v);
    if verts.len() > cap {
        return Err(Error::CapExceeded { size: verts.len(), cap });
    }
    // Local ids: 0 is the virtual parent, 1.. follow `verts`.
    let k = verts.len() + 1;
    let mut local = std::collections::HashMap::new();
    for (i, &x) in verts.iter().enumerate() {
        local.insert(x, i + 1);
    }
    let mut adj = vec![Vec::new(); k];
    adj[0].push(1);
    adj[1].push(0);
    for &x in &verts {
        for &c in rt.children(x) {
            let (i, j) = (local[&x], local[&c]);
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let order: Vec<usize> = (0..k).collect();
    let mut s = Search::new(&adj, order, p, 1, lambda);
    Ok(DeltaTable::from_fn(lambda, p, |a, b| {
        s.labels[0] = a;
        s.labels[1] = b;
        if !s.fits(1, b) {
            return false;
        }
        s.run(2, lambda, &mut |_| true)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::validate_labeling;
    use crate::tree::{parse_tree, root_at_leaf};

    #[test]
    fn lambda_examples() {
        let p2 = parse_tree("2\n0 1").unwrap();
        assert_eq!(brute_force_lambda(&p2, 2, 1).unwrap().0, 2);
        assert_eq!(brute_force_lambda(&p2, 5, 1).unwrap().0, 5);
        let k13 = parse_tree("4\n0 1\n0 2\n0 3").unwrap();
        assert_eq!(brute_force_lambda(&k13, 2, 1).unwrap().0, 4);
        let p5 = parse_tree("5\n0 1\n1 2\n2 3\n3 4").unwrap();
        let (l, f) = brute_force_lambda(&p5, 2, 1).unwrap();
        assert_eq!(l, 4);
        assert!(validate_labeling(&p5, &f, 2, 1).unwrap());
        assert!(matches!(brute_force_lambda_capped(&p5, 2, 1, 4), Err(Error::CapExceeded { size: 5, cap: 4 })));
    }

    #[test]
    fn general_q() {
        // P3 with L(2,2): labels 0,2,4 → span 4.
        let p3 = parse_tree("3\n0 1\n1 2").unwrap();
        assert_eq!(brute_force_lambda(&p3, 2, 2).unwrap().0, 4);
    }

    #[test]
    fn delta_examples() {
        // v = 0 with two leaf children; rooted at leaf 1, the subtree of 0 is {0, 2, 3}.
        let t = parse_tree("4\n0 1\n0 2\n0 3").unwrap();
        let rt = root_at_leaf(t);
        let leaf = brute_force_delta(&rt, 2, 2, 4).unwrap();
        for a in 0..=4 {
            for b in 0..=4 {
                assert_eq!(leaf.get(a, b), a.abs_diff(b) >= 2);
            }
        }
        let d = brute_force_delta(&rt, 0, 2, 4).unwrap();
        let col0: Vec<bool> = (0..=4).map(|a| d.get(a, 0)).collect();
        assert_eq!(col0, vec![false, false, true, true, true]);
        assert!((0..=4).all(|a| !d.get(a, 2)));
    }
}
