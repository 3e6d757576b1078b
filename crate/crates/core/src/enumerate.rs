//! Exhaustive enumeration of unlabelled trees for oracle sweeps.

use std::collections::BTreeSet;

use crate::tree::Tree;

/// Canonical string of a free tree: the smaller AHU encoding over its (one or two) centres.
pub fn canonical_form(t: &Tree) -> String {
    centers(t).into_iter().map(|c| encode(t, c, usize::MAX)).min().unwrap_or_default()
}

fn encode(t: &Tree, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| encode(t, w, v)).collect();
    kids.sort_unstable();
    let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
    s.push('(');
    kids.iter().for_each(|k| s.push_str(k));
    s.push(')');
    s
}

fn centers(t: &Tree) -> Vec<usize> {
    let n = t.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// All pairwise non-isomorphic trees on exactly `n` vertices (n ≥ 1), each grown from a
/// smaller one by attaching a leaf and deduplicated by canonical form.
pub fn nonisomorphic_trees(n: usize) -> Vec<Tree> {
    assert!(n >= 1, "trees need at least one vertex");
    let mut level = vec![Tree::singleton()];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.vertex_count() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let grown = Tree::from_edges(size, &edges).expect("leaf attachment keeps a tree");
                if seen.insert(canonical_form(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// Non-isomorphic trees for every size in `lo..=hi`.
pub fn nonisomorphic_trees_upto(lo: usize, hi: usize) -> Vec<Tree> {
    (lo.max(1)..=hi).flat_map(nonisomorphic_trees).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=10).map(|n| nonisomorphic_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&star));
    }
}
