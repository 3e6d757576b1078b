//! Top-down witness construction from retained δ tables.

use crate::delta::DeltaTable;
use crate::error::{invariant, Result};
use crate::matching::{max_matching, BipartiteGraph};
use crate::tree::RootedTree;

/// Builds a λ-L(p,1)-labeling of the rooted tree from the tables of every non-root vertex
/// (`tables[v]` is δ of T(parent(v), v)). The root must be a leaf.
pub fn extract_labeling(rt: &RootedTree, tables: &[Option<DeltaTable>], p: u32, lambda: u32) -> Result<Vec<u32>> {
    let n = rt.vertex_count();
    let r = rt.root();
    let mut f = vec![0u32; n];
    if n == 1 {
        return Ok(f);
    }
    let [c] = rt.children(r) else {
        return invariant("extraction needs a leaf root");
    };
    let Some(top) = tables[*c].as_ref() else {
        return invariant(format!("missing table for vertex {c}"));
    };
    let Some((a, b)) = top.some_feasible_pair() else {
        return invariant("root check failed before extraction");
    };
    f[r] = a;
    f[*c] = b;
    for &v in &rt.order()[1..] {
        let kids = rt.children(v);
        if kids.is_empty() {
            continue;
        }
        let (pa, b) = (f[rt.parent(v).expect("non-root")], f[v]);
        let mut g = BipartiteGraph::new(kids.len(), lambda as usize + 1);
        for (i, &w) in kids.iter().enumerate() {
            let Some(t) = tables[w].as_ref() else {
                return invariant(format!("missing table for vertex {w}"));
            };
            for x in 0..=lambda {
                if x != pa && t.get(b, x) {
                    g.add_edge(i, x as usize);
                }
            }
        }
        let m = max_matching(&g);
        if !m.is_left_perfect() {
            return invariant(format!("no child assignment at vertex {v} despite a feasible table entry"));
        }
        for (i, &w) in kids.iter().enumerate() {
            f[w] = m.partner_of_left(i).expect("perfect") as u32;
        }
    }
    debug_assert!(f.iter().all(|&x| x <= lambda) && p > 0);
    Ok(f)
}
