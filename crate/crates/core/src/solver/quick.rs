//! Constant-time-per-vertex screens for the decision at λ = Δ+1 (p = 2).

use std::collections::HashMap;

use crate::tree::Tree;

/// `Some(false)` if some closed neighbourhood holds three major vertices, `Some(true)` if
/// there are at most Δ−6 major vertices, otherwise `None`.
///
/// The positive answer is decision-only: it comes without a labeling.
pub fn quick_checks(t: &Tree) -> Option<bool> {
    let n = t.vertex_count();
    let delta = t.max_degree();
    if n <= 2 {
        return None;
    }
    // Only closed neighbourhoods touching a major vertex can hold three of them.
    let majors: Vec<usize> = (0..n).filter(|&v| t.degree(v) == delta).collect();
    let mut around: HashMap<usize, u32> = HashMap::with_capacity(majors.len() * (delta + 1));
    for &m in &majors {
        for &w in std::iter::once(&m).chain(t.neighbors(m)) {
            let c = around.entry(w).or_insert(0);
            *c += 1;
            if *c >= 3 {
                return Some(false);
            }
        }
    }
    (majors.len() as i64 <= delta as i64 - 6).then_some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_tree, TreeKind};
    use crate::tree::parse_tree;

    #[test]
    fn examples() {
        // Hub 0 and its three neighbours all have degree 3.
        let hub = parse_tree("10\n0 1\n0 2\n0 3\n1 4\n1 5\n2 6\n2 7\n3 8\n3 9").unwrap();
        assert_eq!(quick_checks(&hub), Some(false));
        let star = generate_tree(TreeKind::Star, 11, None, 0).unwrap();
        assert_eq!(quick_checks(&star), Some(true));
        // Δ = 4 with two adjacent majors and nothing else major.
        let two = parse_tree("8\n0 1\n0 2\n0 3\n0 4\n4 5\n4 6\n4 7").unwrap();
        assert_eq!(quick_checks(&two), None);
    }
}
