//! Labelings, their validity contract and the λ range for trees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Tree;

/// A vertex → label map. Serialized as `{"lambda": int, "labels": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub lambda: u32,
    pub labels: Vec<u32>,
}

impl Labeling {
    /// Wraps labels, recording the span as the largest label used.
    pub fn new(labels: Vec<u32>) -> Labeling {
        let lambda = labels.iter().copied().max().unwrap_or(0);
        Labeling { lambda, labels }
    }

    pub fn span(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("labeling serializes")
    }

    pub fn from_json(s: &str) -> Result<Labeling> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

/// The first violated constraint of a labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Adjacent { u: usize, v: usize, gap: u32 },
    DistanceTwo { u: usize, v: usize, via: usize, gap: u32 },
    Span { v: usize, label: u32, lambda: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Adjacent { u, v, gap } => write!(f, "edge ({u},{v}) has label gap {gap}"),
            Violation::DistanceTwo { u, v, via, gap } => {
                write!(f, "vertices {u} and {v} (both adjacent to {via}) have label gap {gap}")
            }
            Violation::Span { v, label, lambda } => write!(f, "vertex {v} has label {label} above lambda {lambda}"),
        }
    }
}

/// Returns the first violated constraint, or `None` when `f` is an L(p,q)-labeling of `t`
/// with all labels at most `f.lambda`.
pub fn first_violation(t: &Tree, f: &Labeling, p: u32, q: u32) -> Result<Option<Violation>> {
    let n = t.vertex_count();
    if f.labels.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: f.labels.len() });
    }
    let lab = &f.labels;
    for (v, &l) in lab.iter().enumerate() {
        if l > f.lambda {
            return Ok(Some(Violation::Span { v, label: l, lambda: f.lambda }));
        }
    }
    for &(u, v) in t.edges() {
        let gap = lab[u].abs_diff(lab[v]);
        if gap < p {
            return Ok(Some(Violation::Adjacent { u, v, gap }));
        }
    }
    // Distance-2 pairs are exactly pairs of neighbours of a common vertex. Sorting each
    // neighbourhood's labels makes the check O(d log d) per vertex instead of O(d²).
    let mut buf: Vec<(u32, usize)> = Vec::new();
    for x in 0..n {
        let nb = t.neighbors(x);
        if nb.len() < 2 {
            continue;
        }
        buf.clear();
        buf.extend(nb.iter().map(|&w| (lab[w], w)));
        buf.sort_unstable();
        for pair in buf.windows(2) {
            let gap = pair[1].0 - pair[0].0;
            if gap < q {
                return Ok(Some(Violation::DistanceTwo { u: pair[0].1, v: pair[1].1, via: x, gap }));
            }
        }
    }
    Ok(None)
}

/// True iff adjacent labels differ by at least `p` and distance-2 labels by at least `q`.
pub fn validate_labeling(t: &Tree, f: &Labeling, p: u32, q: u32) -> Result<bool> {
    if q > p {
        return Err(Error::InvalidParameter(format!("q={q} exceeds p={p}")));
    }
    Ok(first_violation(t, f, p, q)?.is_none())
}

/// The closed range known to contain λ_{p,1}(T).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaBounds {
    pub lower: u32,
    pub upper: u32,
}

/// [Δ+p−1, min{Δ+2p−2, 2Δ+p−2}]; `[0,0]` for the single vertex.
pub fn lambda_bounds(t: &Tree, p: u32) -> LambdaBounds {
    let d = t.max_degree() as u32;
    if d == 0 {
        return LambdaBounds { lower: 0, upper: 0 };
    }
    let lower = d + p - 1;
    let upper = (d + 2 * p - 2).min(2 * d + p - 2);
    LambdaBounds { lower, upper: upper.max(lower) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    #[test]
    fn validity_examples() {
        let e = parse_tree("2\n0 1").unwrap();
        assert!(validate_labeling(&e, &Labeling::new(vec![0, 2]), 2, 1).unwrap());
        let p3 = parse_tree("3\n0 1\n1 2").unwrap();
        let bad = Labeling::new(vec![0, 2, 1]);
        assert!(!validate_labeling(&p3, &bad, 2, 1).unwrap());
        assert!(matches!(first_violation(&p3, &bad, 2, 1).unwrap(), Some(Violation::Adjacent { u: 1, v: 2, .. })));
        let star = parse_tree("5\n0 1\n0 2\n0 3\n0 4").unwrap();
        let f = Labeling::new(vec![0, 2, 3, 4, 5]);
        assert!(validate_labeling(&star, &f, 2, 1).unwrap());
        assert_eq!(f.lambda, 5);
        assert!(validate_labeling(&star, &Labeling::new(vec![0]), 2, 1).is_err());
    }

    #[test]
    fn distance_two_detected() {
        let p3 = parse_tree("3\n0 1\n1 2").unwrap();
        assert!(!validate_labeling(&p3, &Labeling::new(vec![0, 3, 0]), 2, 1).unwrap());
    }

    #[test]
    fn bounds_examples() {
        let s4 = parse_tree("5\n0 1\n0 2\n0 3\n0 4").unwrap();
        assert_eq!(lambda_bounds(&s4, 2), LambdaBounds { lower: 5, upper: 6 });
        assert_eq!(lambda_bounds(&s4, 3), LambdaBounds { lower: 6, upper: 8 });
        let e = parse_tree("2\n0 1").unwrap();
        assert_eq!(lambda_bounds(&e, 2), LambdaBounds { lower: 2, upper: 2 });
    }

    #[test]
    fn json_round_trip() {
        let f = Labeling { lambda: 4, labels: vec![0, 2, 4] };
        let s = f.to_json();
        assert_eq!(s, r#"{"lambda":4,"labels":[0,2,4]}"#);
        assert_eq!(Labeling::from_json(&s).unwrap(), f);
        assert!(Labeling::from_json("{nope").is_err());
    }
}
