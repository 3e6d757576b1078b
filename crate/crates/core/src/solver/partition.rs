//! Vertex classes for the linear tier.
//!
//! Maximal subtrees of at most `vm_cap` vertices are "generalised leaves" (heads of V_M);
//! heads below `light_cap` vertices are light. Above the generalised leaves, a vertex is
//! generic (V2) unless exactly one child is heavy, in which case the constant-size rules
//! apply: V3 when every light child is a leaf, otherwise V4/V5 by total light size.

use crate::delta::VertexKind;
use crate::error::{Error, Result};
use crate::preprocess::leaf_neighbors_major;
use crate::tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    V1,
    V2,
    V3,
    V4,
    V5,
}

impl VertexClass {
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Size thresholds, derived from the effective maximum degree Δ = λ−1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    /// Largest generalised leaf (Δ⁵ unless overridden).
    pub vm_cap: u64,
    /// Light heads have fewer vertices than this ((Δ−19)⁴).
    pub light_cap: u64,
    /// V4/V5 split on total light size (Δ(Δ−19)).
    pub light_total: u64,
}

impl Thresholds {
    pub fn for_lambda(lambda: u32, vm_cap: Option<u64>) -> Thresholds {
        let d = u64::from(lambda.saturating_sub(1));
        let slack = d.saturating_sub(19);
        Thresholds {
            vm_cap: vm_cap.unwrap_or_else(|| d.saturating_pow(5)),
            light_cap: slack.pow(4),
            light_total: d * slack,
        }
    }
}

/// Whether the constant-size rules are usable: p = 2, Δ = λ−1 ≥ 18, no vertex above Δ.
pub fn special_rules_apply(max_degree: usize, p: u32, lambda: u32) -> bool {
    p == 2 && lambda >= 19 && max_degree < lambda as usize
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub thresholds: Thresholds,
    class: Vec<VertexClass>,
    head: Vec<bool>,
    light: Vec<bool>,
    d2: Vec<u32>,
    dt: Vec<u32>,
    w_star: Vec<u32>,
    vq: Vec<bool>,
}

const NO_CHILD: u32 = u32::MAX;

/// Classifies every vertex of a preprocessed piece.
pub fn partition_vertices(rt: &RootedTree, p: u32, lambda: u32, vm_cap: Option<u64>) -> Result<Partition> {
    let t = rt.base();
    if !leaf_neighbors_major(t, p, lambda) {
        return Err(Error::NotPreprocessed("a leaf is attached to a vertex below the major-degree threshold".into()));
    }
    let n = rt.vertex_count();
    let th = Thresholds::for_lambda(lambda, vm_cap);
    let size = |v: usize| rt.subtree_size(v) as u64;
    let mut head = vec![false; n];
    let mut in_vm = vec![false; n];
    // BFS order visits parents first.
    for &v in rt.order() {
        match rt.parent(v) {
            Some(u) if in_vm[u] => in_vm[v] = true,
            Some(u) => {
                if size(v) <= th.vm_cap && size(u) > th.vm_cap {
                    head[v] = true;
                    in_vm[v] = true;
                }
            }
            None => {
                if size(v) <= th.vm_cap {
                    head[v] = true;
                    in_vm[v] = true;
                }
            }
        }
    }
    let light: Vec<bool> = (0..n).map(|v| head[v] && size(v) < th.light_cap).collect();
    let mut class = vec![VertexClass::V1; n];
    let mut d2 = vec![0u32; n];
    let mut dt = vec![0u32; n];
    let mut w_star = vec![NO_CHILD; n];
    let mut vq = vec![false; n];
    for v in 0..n {
        let kids = rt.children(v);
        d2[v] = kids.iter().filter(|&&c| rt.child_count(c) > 0).count() as u32;
        vq[v] = !kids.is_empty() && t.degree(v) + 1 == lambda as usize && d2[v] == 0;
        if in_vm[v] {
            continue;
        }
        let heavy: Vec<usize> = (0..kids.len()).filter(|&i| !light[kids[i]]).collect();
        dt[v] = heavy.len() as u32;
        class[v] = if heavy.len() != 1 {
            VertexClass::V2
        } else {
            w_star[v] = heavy[0] as u32;
            let light_total: u64 = kids.iter().filter(|&&c| light[c] && rt.child_count(c) > 0).map(|&c| size(c)).sum();
            if light_total == 0 {
                VertexClass::V3
            } else if light_total <= th.light_total {
                VertexClass::V4
            } else {
                VertexClass::V5
            }
        };
    }
    Ok(Partition { thresholds: th, class, head, light, d2, dt, w_star, vq })
}

impl Partition {
    pub fn class(&self, v: usize) -> VertexClass {
        self.class[v]
    }

    /// Vertex counts per class, indexed V1..V5.
    pub fn histogram(&self) -> [u64; 5] {
        let mut h = [0u64; 5];
        for c in &self.class {
            h[c.index()] += 1;
        }
        h
    }

    /// The routine the DP uses for `v`.
    pub fn kind(&self, v: usize) -> VertexKind {
        let w_star = self.w_star[v] as usize;
        match self.class[v] {
            VertexClass::V1 | VertexClass::V2 => VertexKind::Generic,
            VertexClass::V3 => VertexKind::V3 { w_star },
            VertexClass::V4 => VertexKind::V4 { w_star },
            VertexClass::V5 => VertexKind::V5 { w_star },
        }
    }

    /// Head of a generalised leaf.
    pub fn is_vm_head(&self, v: usize) -> bool {
        self.head[v]
    }

    /// Head of a light generalised leaf.
    pub fn is_light_head(&self, v: usize) -> bool {
        self.light[v]
    }

    /// Number of heavy generalised-leaf heads.
    pub fn heavy_head_count(&self) -> usize {
        (0..self.head.len()).filter(|&v| self.head[v] && !self.light[v]).count()
    }

    /// Number of non-leaf children.
    pub fn nonleaf_children(&self, v: usize) -> u32 {
        self.d2[v]
    }

    /// Number of children that are not light heads (0 inside generalised leaves).
    pub fn heavy_children(&self, v: usize) -> u32 {
        self.dt[v]
    }

    /// Vertex of degree λ−1 whose children are all leaves.
    pub fn is_vq(&self, v: usize) -> bool {
        self.vq[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_tree, TreeKind};
    use crate::preprocess::preprocess;
    use crate::tree::root_at_leaf;

    #[test]
    fn small_tree_is_one_generalised_leaf() {
        let t = generate_tree(TreeKind::Star, 26, None, 0).unwrap();
        let rt = root_at_leaf(t);
        let part = partition_vertices(&rt, 2, 26, None).unwrap();
        assert_eq!(part.histogram(), [26, 0, 0, 0, 0]);
        assert!(part.is_vm_head(rt.root()));
    }

    #[test]
    fn stress_instance_reaches_heavy_path_classes() {
        let t = generate_tree(TreeKind::V45Stress, 6000, Some(25), 3).unwrap();
        let pre = preprocess(&t, 2, 26);
        let mut hist = [0u64; 5];
        for piece in &pre.trees {
            let rt = root_at_leaf(piece.clone());
            let part = partition_vertices(&rt, 2, 26, Some(1500)).unwrap();
            let h = part.histogram();
            (0..5).for_each(|i| hist[i] += h[i]);
            let v2 = h[1] as usize;
            if part.heavy_head_count() > 0 {
                assert!(v2 < part.heavy_head_count());
            }
        }
        assert!(hist[0] > 0 && hist[2..].iter().all(|&c| c > 0), "{hist:?}");
    }

    #[test]
    fn unpreprocessed_input_is_rejected() {
        let t = generate_tree(TreeKind::Path, 10, None, 0).unwrap();
        let rt = root_at_leaf(t);
        assert!(matches!(partition_vertices(&rt, 2, 4, None), Err(Error::NotPreprocessed(_))));
    }
}
