//! Generic δ engines: per-(a,b) matching, Maintain-Matching rows, and flow rows over a
//! compressed domain, plus the per-vertex dispatcher.

use super::special::{compute_delta_v3, compute_delta_v4, v5_row, SpecialChildren};
use super::table::{level_bound, DeltaTable, LabelDomain};
use super::DeltaStats;
use crate::error::{invariant, Result};
use crate::flow::FlowNetwork;
use crate::matching::{alternating_reachable, max_matching, BipartiteGraph};
use crate::tree::RootedTree;

/// How generic (non-specialised) vertices are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// One matching per (a,b); full tables.
    Ck,
    /// One matching per b with alternating-path reachability; full tables.
    Fast,
    /// One flow per b over the domain compressed at the subtree's level bound.
    Flow,
}

/// The routine selected for a vertex by the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Generic,
    /// Single heavy child `w_star` (index into the child list), other children leaves.
    V3 {
        w_star: usize,
    },
    /// Single heavy child plus light subtrees of small total size.
    V4 {
        w_star: usize,
    },
    /// Single heavy child plus light subtrees of large total size.
    V5 {
        w_star: usize,
    },
}

/// Builds a table row by row; `row(b)` receives a concrete neck label and returns per-slot
/// head values.
///
/// The band row is evaluated at both ends of the band: a concrete head label next to one
/// end takes its value from the other end, which is equivalent by compatibility.
pub fn table_from_rows(dom: LabelDomain, p: u32, mut row: impl FnMut(u32) -> Result<Vec<bool>>) -> Result<DeltaTable> {
    let mut t = DeltaTable::zeros(dom, p);
    for sb in 0..dom.slot_count() {
        match dom.concrete_label(sb) {
            Some(b) => {
                let r = row(b)?;
                debug_assert_eq!(r.len(), dom.slot_count());
                t.set_row(sb, &r);
            }
            None => {
                let (lo, hi) = (dom.level(), dom.lambda() - dom.level());
                let r_lo = row(lo)?;
                let r_hi = row(hi)?;
                let merged: Vec<bool> = (0..dom.slot_count())
                    .map(|sa| match dom.concrete_label(sa) {
                        Some(a) if a.abs_diff(lo) < p => r_hi[sa],
                        _ => r_lo[sa],
                    })
                    .collect();
                t.set_row(sb, &merged);
            }
        }
    }
    Ok(t)
}

/// Projects a row over concrete head labels onto the slots of `dom`.
fn project_row(dom: &LabelDomain, concrete: &[bool], b: u32, p: u32) -> Vec<bool> {
    (0..dom.slot_count())
        .map(|sa| dom.representative(sa, b, p).is_some_and(|a| a.abs_diff(b) >= p && concrete[a as usize]))
        .collect()
}

/// Row δ((u,v),(·,b)) by one maximum matching of children against labels and
/// alternating-path reachability from the unmatched labels.
pub fn maintain_matching_delta(
    b: u32,
    children: &[&DeltaTable],
    p: u32,
    lambda: u32,
    stats: &mut DeltaStats,
) -> Vec<bool> {
    let labels = lambda as usize + 1;
    let mut g = BipartiteGraph::new(children.len(), labels);
    for (i, t) in children.iter().enumerate() {
        for c in 0..=lambda {
            if t.get(b, c) {
                g.add_edge(i, c as usize);
            }
        }
    }
    stats.kernel_calls += 1;
    let m = max_matching(&g);
    if !m.is_left_perfect() {
        return vec![false; labels];
    }
    let reach = alternating_reachable(&g, &m);
    (0..=lambda).map(|a| reach[a as usize] && a.abs_diff(b) >= p).collect()
}

/// Row δ((u,v),(·,b)) by a separate matching for each head label `a`.
pub fn ck_delta_row(b: u32, children: &[&DeltaTable], p: u32, lambda: u32, stats: &mut DeltaStats) -> Vec<bool> {
    let mut row = vec![false; lambda as usize + 1];
    for a in 0..=lambda {
        if a.abs_diff(b) < p {
            continue;
        }
        let mut g = BipartiteGraph::new(children.len(), lambda as usize + 1);
        for (i, t) in children.iter().enumerate() {
            for c in 0..=lambda {
                if c != a && t.get(b, c) {
                    g.add_edge(i, c as usize);
                }
            }
        }
        stats.kernel_calls += 1;
        row[a as usize] = max_matching(&g).is_left_perfect();
    }
    row
}

/// Row δ((u,v),(·,b)) over the slots of `dom`, by one max flow where the band is a single
/// label node of capacity |L_h − {b−p+1..b+p−1}|.
///
/// Every child table must be compatible at the domain's level (level ≤ `dom.level()`).
pub fn flow_delta(b: u32, children: &[&DeltaTable], dom: &LabelDomain, p: u32, stats: &mut DeltaStats) -> Vec<bool> {
    let k = dom.slot_count();
    let band = dom.bundle_member_far_from(b, p);
    let caps: Vec<u32> = (0..k)
        .map(|s| match dom.concrete_label(s) {
            Some(_) => 1,
            None => dom.bundle_capacity(b, p),
        })
        .collect();
    let mut net = FlowNetwork::new(children.len(), &caps);
    for (i, t) in children.iter().enumerate() {
        for s in 0..k {
            if let Some(c) = dom.concrete_label(s).or(band) {
                if t.get(b, c) {
                    net.add_edge(i, s, 1);
                }
            }
        }
    }
    stats.kernel_calls += 1;
    if net.max_flow() < children.len() as u64 {
        return vec![false; k];
    }
    let reach = net.residual_reachable();
    (0..k)
        .map(|s| {
            reach[s]
                && match dom.concrete_label(s) {
                    Some(a) => a.abs_diff(b) >= p,
                    None => band.is_some(),
                }
        })
        .collect()
}

/// Closed form for a vertex of degree λ−1 whose children are all leaves (p = 2): the
/// children use every label outside {a, b−1, b, b+1}, which is possible only for b ∈ {0, λ}.
pub fn vq_base_delta(dom: LabelDomain) -> DeltaTable {
    let lambda = dom.lambda();
    let mut t = DeltaTable::zeros(dom, 2);
    for (b, bad) in [(0, 1), (lambda, lambda - 1)] {
        let concrete: Vec<bool> = (0..=lambda).map(|a| a != b && a != bad).collect();
        let row = project_row(&dom, &concrete, b, 2);
        t.set_row(dom.slot_of(b), &row);
    }
    t
}

fn is_vq(rt: &RootedTree, v: usize, lambda: u32) -> bool {
    let kids = rt.children(v);
    !kids.is_empty() && rt.base().degree(v) + 1 == lambda as usize && kids.iter().all(|&c| rt.child_count(c) == 0)
}

/// Domain used by `engine` for a subtree of `size` vertices.
pub fn engine_domain(engine: Engine, size: usize, lambda: u32, p: u32) -> LabelDomain {
    match engine {
        Engine::Ck | Engine::Fast => LabelDomain::full(lambda),
        Engine::Flow => LabelDomain::at_level(lambda, level_bound(size, lambda, p)),
    }
}

/// The δ table of T(parent(v), v) from the tables of v's children (in `rt.children(v)` order).
#[allow(clippy::too_many_arguments)]
pub fn delta_table_for(
    rt: &RootedTree,
    v: usize,
    child_tables: &[&DeltaTable],
    engine: Engine,
    kind: VertexKind,
    p: u32,
    lambda: u32,
    stats: &mut DeltaStats,
) -> Result<DeltaTable> {
    let kids = rt.children(v);
    if kids.len() != child_tables.len() {
        return invariant(format!("vertex {v}: {} child tables for {} children", child_tables.len(), kids.len()));
    }
    let dom = engine_domain(engine, rt.subtree_size(v), lambda, p);
    if kids.is_empty() {
        return Ok(DeltaTable::edge(dom, p));
    }
    if engine != Engine::Ck && p == 2 && is_vq(rt, v, lambda) {
        return Ok(vq_base_delta(dom));
    }
    match kind {
        VertexKind::Generic => match engine {
            Engine::Ck => table_from_rows(dom, p, |b| Ok(ck_delta_row(b, child_tables, p, lambda, stats))),
            Engine::Fast => table_from_rows(dom, p, |b| Ok(maintain_matching_delta(b, child_tables, p, lambda, stats))),
            Engine::Flow => table_from_rows(dom, p, |b| Ok(flow_delta(b, child_tables, &dom, p, stats))),
        },
        VertexKind::V3 { w_star } | VertexKind::V4 { w_star } | VertexKind::V5 { w_star } => {
            if p != 2 || engine != Engine::Flow || w_star >= kids.len() {
                return invariant(format!("vertex {v}: specialised routine needs p = 2 and the flow engine"));
            }
            let mut sc = SpecialChildren { w_star: child_tables[w_star], pseudo: Vec::new(), leaves: 0 };
            for (i, (&c, &t)) in kids.iter().zip(child_tables).enumerate() {
                if i == w_star {
                    continue;
                }
                if rt.child_count(c) == 0 {
                    sc.leaves += 1;
                } else {
                    sc.pseudo.push(t);
                }
            }
            table_from_rows(dom, p, |b| {
                let row = match kind {
                    VertexKind::V3 { .. } => {
                        if !sc.pseudo.is_empty() {
                            return invariant(format!(
                                "vertex {v}: single-heavy-child rule with non-leaf light children"
                            ));
                        }
                        compute_delta_v3(&sc, b, lambda, stats)
                    }
                    VertexKind::V4 { .. } => compute_delta_v4(&sc, b, lambda, stats)?,
                    _ => v5_row(&sc, b, lambda, stats),
                };
                Ok(project_row(&dom, &row, b, p))
            })
        }
    }
}

/// Table of a whole small subtree computed bottom-up with the flow engine.
pub fn generalized_leaf_base_delta(
    rt: &RootedTree,
    v: usize,
    p: u32,
    lambda: u32,
    stats: &mut DeltaStats,
) -> Result<DeltaTable> {
    let verts = rt.subtree_vertices(v);
    let mut tables: std::collections::HashMap<usize, DeltaTable> =
        std::collections::HashMap::with_capacity(verts.len());
    for &x in verts.iter().rev() {
        let t = {
            let kids: Vec<&DeltaTable> = rt.children(x).iter().map(|c| &tables[c]).collect();
            delta_table_for(rt, x, &kids, Engine::Flow, VertexKind::Generic, p, lambda, stats)?
        };
        for c in rt.children(x) {
            tables.remove(c);
        }
        tables.insert(x, t);
    }
    Ok(tables.remove(&v).expect("subtree root computed"))
}
