//! λ-preserving reductions: removal of leaves with low-degree neighbours and splitting of
//! long degree-2 runs, plus the reverse mapping of piece labelings onto the input tree.

use std::collections::VecDeque;

use crate::error::{invariant, Result};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    /// Leaf `v` removed while attached to `u`.
    Leaf { v: u32, u: u32 },
    /// Index into the cut paths: v0–v1–v2–v3–v4–v5 cut by deleting v2 and v3.
    Split(u32),
}

/// The pieces left after preprocessing, with enough history to lift labelings back.
#[derive(Debug, Clone)]
pub struct PreprocessResult {
    pub trees: Vec<Tree>,
    /// `vertex_maps[i][local]` is the input-tree id of piece `i`'s vertex `local`.
    pub vertex_maps: Vec<Vec<usize>>,
    pub removed_leaves: usize,
    pub splits: usize,
    ops: Vec<Op>,
    cuts: Vec<[usize; 6]>,
    n: usize,
}

/// Whether cutting a long degree-2 run is λ-preserving for this (p, λ).
///
/// Below λ = 2p the cut can turn an infeasible tree into feasible pieces (the path on six
/// vertices at p = 2, λ = 3 is the smallest case), so the split step is skipped there.
pub fn split_preserves_lambda(p: u32, lambda: u32) -> bool {
    lambda >= 2 * p
}

/// Runs both reduction steps to a joint fixpoint.
pub fn preprocess(t: &Tree, p: u32, lambda: u32) -> PreprocessResult {
    preprocess_with(t, p, lambda, true)
}

/// As [`preprocess`]; with `allow_split = false` only leaf removal runs.
pub fn preprocess_with(t: &Tree, p: u32, lambda: u32, allow_split: bool) -> PreprocessResult {
    let split = allow_split && split_preserves_lambda(p, lambda);
    run(t, lambda as i64 + 3 - 2 * p as i64, split)
}

/// The input as a single piece, with nothing removed.
pub fn no_reduction(t: &Tree) -> PreprocessResult {
    run(t, i64::MIN, false)
}

fn run(t: &Tree, thr: i64, split: bool) -> PreprocessResult {
    let n = t.vertex_count();
    assert!(u32::try_from(n).is_ok(), "preprocessing stores vertex ids in 32 bits");
    let mut st = State {
        t,
        node: (0..n)
            .map(|v| Node {
                link: t.neighbors(v).iter().fold(0, |x, &w| x ^ w as u32),
                deg: t.degree(v) as u32,
                alive: true,
            })
            .collect(),
        thr,
        ops: Vec::with_capacity(n),
        cuts: Vec::new(),
        queue: VecDeque::new(),
        fresh2: Vec::new(),
        removed: 0,
        splits: 0,
    };
    if n > 2 {
        st.queue.extend((0..n).filter(|&v| t.degree(v) == 1));
        let mut stamp = vec![0u32; n];
        let mut round = 0u32;
        loop {
            st.drain_leaves();
            if !split {
                break;
            }
            round += 1;
            // The first round sweeps every vertex in id order; later rounds only revisit
            // vertices whose degree dropped to two since.
            let fresh = std::mem::take(&mut st.fresh2);
            let cands: Box<dyn Iterator<Item = usize>> =
                if round == 1 { Box::new(0..n) } else { Box::new(fresh.into_iter()) };
            let mut any = false;
            for c in cands {
                if st.node[c].alive && st.node[c].deg == 2 && stamp[c] != round {
                    any |= st.split_run(c, &mut stamp, round);
                }
            }
            if !any && st.queue.is_empty() {
                break;
            }
        }
    }
    st.finish()
}

/// Per-vertex reduction state, kept together so a visit touches one cache line.
#[derive(Clone, Copy)]
struct Node {
    /// XOR of the alive neighbours' ids: the neighbour itself once one is left.
    link: u32,
    deg: u32,
    alive: bool,
}

struct State<'a> {
    t: &'a Tree,
    node: Vec<Node>,
    thr: i64,
    ops: Vec<Op>,
    cuts: Vec<[usize; 6]>,
    queue: VecDeque<usize>,
    fresh2: Vec<usize>,
    removed: usize,
    splits: usize,
}

impl State<'_> {
    fn alive_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.t.neighbors(v).iter().copied().filter(move |&w| self.node[w].alive)
    }

    fn drain_leaves(&mut self) {
        while let Some(v) = self.queue.pop_front() {
            if !self.node[v].alive || self.node[v].deg != 1 {
                continue;
            }
            let u = self.node[v].link as usize;
            if (self.node[u].deg as i64) >= self.thr {
                continue;
            }
            self.node[v].alive = false;
            self.node[v].deg = 0;
            self.node[u].deg -= 1;
            self.node[u].link ^= v as u32;
            self.removed += 1;
            self.ops.push(Op::Leaf { v: v as u32, u: u as u32 });
            match self.node[u].deg {
                1 => self.queue.push_back(u),
                2 => self.fresh2.push(u),
                _ => {}
            }
            if self.node[u].deg as i64 == self.thr - 1 {
                // u just fell below the threshold: its other leaves become removable.
                let leaves: Vec<usize> = self.alive_neighbors(u).filter(|&w| self.node[w].deg == 1).collect();
                self.queue.extend(leaves);
            }
        }
    }

    /// Splits the degree-2 run through `c` if it has at least four vertices.
    fn split_run(&mut self, c: usize, stamp: &mut [u32], round: u32) -> bool {
        // Walk to one end of the run.
        let mut prev = usize::MAX;
        let mut cur = c;
        loop {
            let next = if prev == usize::MAX {
                self.alive_neighbors(cur).next().expect("degree-2 vertex")
            } else {
                (self.node[cur].link ^ prev as u32) as usize
            };
            if self.node[next].deg != 2 || next == c {
                prev = next;
                break;
            }
            prev = cur;
            cur = next;
        }
        // `cur` is an end of the run and `prev` its outer neighbour.
        let outer0 = prev;
        let mut run = vec![cur];
        stamp[cur] = round;
        let (mut p, mut x) = (outer0, cur);
        let outer1 = loop {
            let next = (self.node[x].link ^ p as u32) as usize;
            if self.node[next].deg != 2 {
                break next;
            }
            stamp[next] = round;
            run.push(next);
            p = x;
            x = next;
        };
        if run.len() < 4 {
            return false;
        }
        let mut s = 0;
        let mut before = outer0;
        while run.len() - s >= 4 {
            let v5 = if s + 4 < run.len() { run[s + 4] } else { outer1 };
            let v = [before, run[s], run[s + 1], run[s + 2], run[s + 3], v5];
            for &d in &v[2..4] {
                self.node[d].alive = false;
                self.node[d].deg = 0;
            }
            self.node[v[1]].deg -= 1;
            self.node[v[4]].deg -= 1;
            self.node[v[1]].link ^= v[2] as u32;
            self.node[v[4]].link ^= v[3] as u32;
            self.queue.push_back(v[1]);
            self.queue.push_back(v[4]);
            self.ops.push(Op::Split(self.cuts.len() as u32));
            self.cuts.push(v);
            self.splits += 1;
            before = v[4];
            s += 4;
        }
        true
    }

    fn finish(self) -> PreprocessResult {
        let n = self.t.vertex_count();
        const UNSEEN: u32 = u32::MAX;
        const SEEN: u32 = u32::MAX - 1;
        // Local ids of surviving vertices; only the pieces' own adjacency is visited.
        let mut local = vec![UNSEEN; n];
        let mut vertex_maps: Vec<Vec<usize>> = Vec::new();
        let mut piece_edges: Vec<Vec<(usize, usize)>> = Vec::new();
        for s in 0..n {
            if !self.node[s].alive || local[s] != UNSEEN {
                continue;
            }
            let mut members = vec![s];
            local[s] = SEEN;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in self.t.neighbors(v) {
                    if local[w] == UNSEEN && self.node[w].alive {
                        local[w] = SEEN;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            for (i, &v) in members.iter().enumerate() {
                local[v] = i as u32;
            }
            let mut edges = Vec::with_capacity(members.len() - 1);
            for &v in &members {
                for &w in self.t.neighbors(v) {
                    if v < w && self.node[w].alive {
                        edges.push((local[v] as usize, local[w] as usize));
                    }
                }
            }
            vertex_maps.push(members);
            piece_edges.push(edges);
        }
        let trees = vertex_maps
            .iter()
            .zip(&piece_edges)
            .map(|(m, e)| Tree::from_edges(m.len(), e).expect("pieces are trees"))
            .collect();
        PreprocessResult {
            trees,
            vertex_maps,
            removed_leaves: self.removed,
            splits: self.splits,
            ops: self.ops,
            cuts: self.cuts,
            n,
        }
    }
}

impl PreprocessResult {
    pub fn piece_count(&self) -> usize {
        self.trees.len()
    }

    /// Lifts per-piece labelings to a labeling of the input tree `t` by undoing the
    /// reductions in reverse: removed leaves get the smallest free label, cut runs are
    /// re-joined by searching labels for the two deleted vertices (complementing the far
    /// side once if needed). Returns `Ok(None)` if some cut cannot be re-joined.
    pub fn lift(&self, t: &Tree, pieces: &[Vec<u32>], p: u32, lambda: u32) -> Result<Option<Vec<u32>>> {
        const UNSET: u32 = u32::MAX;
        debug_assert_eq!(t.vertex_count(), self.n);
        let mut f = vec![UNSET; self.n];
        for (m, labels) in self.vertex_maps.iter().zip(pieces) {
            for (&v, &l) in m.iter().zip(labels) {
                f[v] = l;
            }
        }
        // Labels of the labelled neighbours of each vertex, kept when they fit in a word.
        // Every edge is linked when its second endpoint gets a label: a re-inserted leaf sees
        // only its attachment vertex, a re-joined cut only its path neighbours.
        let mut masks = (lambda < 64).then(|| {
            let mut m = vec![0u64; self.n];
            for (v, &l) in f.iter().enumerate() {
                if l != UNSET {
                    t.neighbors(v).iter().for_each(|&w| m[w] |= 1 << l);
                }
            }
            m
        });
        let link = |f: &[u32], masks: &mut Option<Vec<u64>>, a: usize, b: usize| {
            if let Some(m) = masks {
                m[a] |= 1 << f[b];
                m[b] |= 1 << f[a];
            }
        };
        let mut used = vec![false; lambda as usize + 1];
        for op in self.ops.iter().rev() {
            match *op {
                Op::Leaf { v, u } => {
                    let (v, u) = (v as usize, u as usize);
                    let fu = f[u];
                    let pick = match &masks {
                        Some(m) => {
                            let window = bit_range(fu.saturating_sub(p - 1), (fu + p - 1).min(lambda));
                            let free = bit_range(0, lambda) & !m[u] & !window;
                            (free != 0).then(|| free.trailing_zeros())
                        }
                        None => {
                            used.iter_mut().for_each(|x| *x = false);
                            for &w in t.neighbors(u) {
                                if w != v && f[w] != UNSET {
                                    used[f[w] as usize] = true;
                                }
                            }
                            (0..=lambda).find(|&x| x.abs_diff(fu) >= p && !used[x as usize])
                        }
                    };
                    match pick {
                        Some(x) => {
                            f[v] = x;
                            link(&f, &mut masks, u, v);
                        }
                        None => return invariant(format!("no free label when re-inserting leaf {v} at {u}")),
                    }
                }
                Op::Split(i) => {
                    let v = self.cuts[i as usize];
                    let mut joined = stitch(&f, v, p, lambda);
                    if joined.is_none() {
                        // Complement the side containing v4 and try again.
                        let side = component_without(t, &f, v[4], v[3], UNSET);
                        for &x in &side {
                            f[x] = lambda - f[x];
                        }
                        if let Some(m) = &mut masks {
                            for &x in &side {
                                for &w in std::iter::once(&x).chain(t.neighbors(x)) {
                                    m[w] = t
                                        .neighbors(w)
                                        .iter()
                                        .filter(|&&y| f[y] != UNSET)
                                        .fold(0, |acc, &y| acc | 1 << f[y]);
                                }
                            }
                        }
                        joined = stitch(&f, v, p, lambda);
                    }
                    let Some((x2, x3)) = joined else {
                        return Ok(None);
                    };
                    f[v[2]] = x2;
                    f[v[3]] = x3;
                    for k in 1..4 {
                        link(&f, &mut masks, v[k], v[k + 1]);
                    }
                }
            }
        }
        if f.contains(&UNSET) {
            return invariant("lift left a vertex unlabelled");
        }
        Ok(Some(f))
    }
}

fn stitch(f: &[u32], v: [usize; 6], p: u32, lambda: u32) -> Option<(u32, u32)> {
    let [x0, x1, _, _, x4, x5] = v.map(|i| f[i]);
    for x2 in 0..=lambda {
        if x2.abs_diff(x1) < p || x2 == x0 || x2 == x4 {
            continue;
        }
        for x3 in 0..=lambda {
            if x3.abs_diff(x2) >= p && x3.abs_diff(x4) >= p && x3 != x1 && x3 != x5 {
                return Some((x2, x3));
            }
        }
    }
    None
}

/// Labelled vertices reachable from `start` without entering `blocked`.
/// Bits `lo..=hi` of a word (`hi < 64`).
fn bit_range(lo: u32, hi: u32) -> u64 {
    let upto = if hi >= 63 { u64::MAX } else { (1u64 << (hi + 1)) - 1 };
    upto & !((1u64 << lo) - 1)
}

fn component_without(t: &Tree, f: &[u32], start: usize, blocked: usize, unset: u32) -> Vec<usize> {
    let mut out = vec![start];
    let mut seen = std::collections::HashSet::from([start, blocked]);
    let mut i = 0;
    while i < out.len() {
        let v = out[i];
        i += 1;
        for &w in t.neighbors(v) {
            if f[w] != unset && seen.insert(w) {
                out.push(w);
            }
        }
    }
    out
}

/// Postcondition of leaf removal: every leaf's neighbour has degree ≥ λ−2p+3.
pub fn leaf_neighbors_major(t: &Tree, p: u32, lambda: u32) -> bool {
    if t.vertex_count() <= 2 {
        return true;
    }
    let need = lambda as i64 - 2 * p as i64 + 3;
    (0..t.vertex_count()).filter(|&v| t.degree(v) == 1).all(|v| t.degree(t.neighbors(v)[0]) as i64 >= need)
}

/// Postcondition of path splitting: every path component has at most three vertices.
pub fn short_path_components(t: &Tree) -> bool {
    crate::tree::path_components(t).iter().all(|c| c.size() <= 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_tree, TreeKind};
    use crate::tree::parse_tree;

    #[test]
    fn star_is_unchanged() {
        let t = parse_tree("4\n0 1\n0 2\n0 3").unwrap();
        let r = preprocess(&t, 2, 4);
        assert_eq!(r.trees.len(), 1);
        assert_eq!(r.trees[0], t);
        assert_eq!(r.removed_leaves, 0);
    }

    #[test]
    fn broom_handle_is_eaten() {
        // Handle 0–1, centre 2 with leaves 3..=5 (Δ = 4).
        let t = parse_tree("6\n0 1\n1 2\n2 3\n2 4\n2 5").unwrap();
        let r = preprocess(&t, 2, 5);
        assert_eq!(r.trees.len(), 1);
        assert_eq!(r.vertex_maps[0], vec![1, 2, 3, 4, 5]);
        assert_eq!(r.removed_leaves, 1);
        // At λ = 5 the centre has degree 4 < λ−1? No: threshold is λ−1 = 4, so the centre keeps its leaves.
        assert!(leaf_neighbors_major(&r.trees[0], 2, 5) || r.trees[0].vertex_count() <= 2);
    }

    #[test]
    fn long_run_between_stars_is_cut() {
        // Centres 0 and 8 (three leaves each) joined by the 7-vertex run 1..=7.
        let mut e: Vec<(usize, usize)> = (0..8).map(|i| (i, i + 1)).collect();
        e.extend([(0, 9), (0, 10), (8, 11), (8, 12)]);
        let t = Tree::from_edges(13, &e).unwrap();
        let r = preprocess(&t, 2, 4);
        assert!(r.splits >= 1);
        for piece in &r.trees {
            assert!(short_path_components(piece));
            assert!(leaf_neighbors_major(piece, 2, 4));
        }
    }

    #[test]
    fn small_trees_are_identity() {
        let t = parse_tree("2\n0 1").unwrap();
        let r = preprocess(&t, 2, 2);
        assert_eq!(r.trees, vec![t]);
    }

    #[test]
    fn random_trees_collapse_and_lift() {
        for seed in 0..20 {
            let t = generate_tree(TreeKind::Random, 200, Some(6), seed).unwrap();
            let lambda = 8;
            let r = preprocess(&t, 2, lambda);
            let pieces: Vec<Vec<u32>> = r
                .trees
                .iter()
                .map(|pt| crate::oracle::brute_force_feasible(pt, 2, 1, lambda).map(|f| f.labels))
                .collect::<Option<_>>()
                .expect("λ = Δ+2 is always feasible");
            let f = r.lift(&t, &pieces, 2, lambda).unwrap().expect("stitchable");
            let lab = crate::labeling::Labeling { lambda, labels: f };
            assert!(crate::labeling::validate_labeling(&t, &lab, 2, 1).unwrap());
        }
    }
}
