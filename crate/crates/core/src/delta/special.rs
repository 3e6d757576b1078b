//! Constant-size δ rules for vertices with one heavy child (p = 2, large Δ).
//!
//! Labels split into the 16 extremes `{0..7} ∪ {λ−7..λ}` and the band `L_8 = {8..λ−8}`;
//! every light child has level ≤ 8, so its behaviour on `L_8` is uniform.

use super::table::DeltaTable;
use super::DeltaStats;
use crate::error::{invariant, Result};
use crate::flow::FlowNetwork;
use crate::matching::{alternating_reachable, max_matching, BipartiteGraph};

/// Number of extreme labels outside `L_8`.
pub const EXTREMES: usize = 16;
const P: u32 = 2;
const BAND: u32 = 8;

/// Children of a vertex handled by the specialised rules.
#[derive(Debug, Clone)]
pub struct SpecialChildren<'a> {
    /// The unique heavy child.
    pub w_star: &'a DeltaTable,
    /// Non-leaf light children.
    pub pseudo: Vec<&'a DeltaTable>,
    /// Number of leaf children.
    pub leaves: usize,
}

/// A light child's behaviour under a fixed neck label: one bit per extreme label plus one
/// for the band, with the number of children sharing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChildTypeVector {
    pub bits: u32,
    pub multiplicity: u32,
}

fn extremes(lambda: u32) -> [u32; EXTREMES] {
    let mut x = [0; EXTREMES];
    for i in 0..8 {
        x[i as usize] = i;
        x[8 + i as usize] = lambda - 7 + i;
    }
    x
}

fn in_window(c: u32, b: u32) -> bool {
    c.abs_diff(b) < P
}

/// A member of `L_8` usable next to `b`.
fn band_rep(b: u32, lambda: u32) -> u32 {
    if BAND.abs_diff(b) >= P {
        BAND
    } else {
        lambda - BAND
    }
}

fn band(lambda: u32) -> std::ops::RangeInclusive<u32> {
    BAND..=lambda - BAND
}

fn is_band(c: u32, lambda: u32) -> bool {
    (BAND..=lambda - BAND).contains(&c)
}

/// |L_8 − excluded|, counting each excluded label once.
fn band_size_without(lambda: u32, excluded: &[u32]) -> u32 {
    let mut ex: Vec<u32> = excluded.iter().copied().filter(|&c| is_band(c, lambda)).collect();
    ex.sort_unstable();
    ex.dedup();
    lambda - 2 * BAND + 1 - ex.len() as u32
}

fn leaves_allowed(sc: &SpecialChildren<'_>, b: u32, lambda: u32) -> bool {
    sc.leaves == 0 || b == 0 || b == lambda
}

/// Row δ((u,v),(·,b)) when the heavy child is the only non-leaf child.
pub fn compute_delta_v3(sc: &SpecialChildren<'_>, b: u32, lambda: u32, stats: &mut DeltaStats) -> Vec<bool> {
    let mut row = vec![false; lambda as usize + 1];
    if !leaves_allowed(sc, b, lambda) {
        return row;
    }
    let mut feasible = (0..=lambda).filter(|&c| sc.w_star.get(b, c));
    let forbidden = match (feasible.next(), feasible.next()) {
        (Some(_), Some(_)) => {
            stats.v3_steps[0] += 1;
            None
        }
        (Some(c), None) => {
            stats.v3_steps[1] += 1;
            Some(c)
        }
        _ => {
            stats.v3_steps[2] += 1;
            return row;
        }
    };
    for a in 0..=lambda {
        row[a as usize] = !in_window(a, b) && Some(a) != forbidden;
    }
    row
}

/// Matches `{w*}? ∪ C₂` into the extreme labels outside the window of `b`. Returns the
/// extremes reachable from free labels if the matching saturates every child.
fn match_extremes(
    sc: &SpecialChildren<'_>,
    c2: &[&DeltaTable],
    with_w_star: bool,
    b: u32,
    lambda: u32,
    stats: &mut DeltaStats,
) -> Option<Vec<bool>> {
    let x = extremes(lambda);
    let kids: Vec<&DeltaTable> = c2.iter().copied().chain(with_w_star.then_some(sc.w_star)).collect();
    let mut g = BipartiteGraph::new(kids.len(), EXTREMES);
    for (i, t) in kids.iter().enumerate() {
        for (j, &c) in x.iter().enumerate() {
            if !in_window(c, b) && t.get(b, c) {
                g.add_edge(i, j);
            }
        }
    }
    stats.kernel_calls += 1;
    let m = max_matching(&g);
    m.is_left_perfect().then(|| alternating_reachable(&g, &m))
}

/// Row δ((u,v),(·,b)) when the light subtrees are few and small enough that the
/// band-flexible ones can always be placed in `L_8`.
pub fn compute_delta_v4(sc: &SpecialChildren<'_>, b: u32, lambda: u32, stats: &mut DeltaStats) -> Result<Vec<bool>> {
    let mut row = vec![false; lambda as usize + 1];
    if sc.pseudo.len() as i64 > lambda as i64 - 20 {
        return invariant(format!("{} light children exceed the band slack for λ = {lambda}", sc.pseudo.len()));
    }
    if !leaves_allowed(sc, b, lambda) {
        return Ok(row);
    }
    let c8 = band_rep(b, lambda);
    let c2: Vec<&DeltaTable> = sc.pseudo.iter().copied().filter(|t| !t.get(b, c8)).collect();
    if c2.len() > EXTREMES {
        stats.v4_branches[0] += 1;
        return Ok(row);
    }
    let mut f8 = band(lambda).filter(|&c| sc.w_star.get(b, c));
    let (first, second) = (f8.next(), f8.next());
    let x = extremes(lambda);
    let idx = |a: u32| x.iter().position(|&c| c == a);
    let fill = |row: &mut Vec<bool>, reach: &Option<Vec<bool>>, band_ok: &dyn Fn(u32) -> bool| {
        for a in 0..=lambda {
            if in_window(a, b) {
                continue;
            }
            row[a as usize] = match idx(a) {
                Some(j) => reach.as_ref().is_some_and(|r| r[j]),
                None => band_ok(a),
            };
        }
    };
    match (first, second) {
        (Some(_), Some(_)) => {
            stats.v4_branches[1] += 1;
            let r = match_extremes(sc, &c2, false, b, lambda, stats);
            let ok = r.is_some();
            fill(&mut row, &r, &|_| ok);
        }
        (Some(c1), None) => {
            stats.v4_branches[2] += 1;
            let r = match_extremes(sc, &c2, false, b, lambda, stats);
            let ok = r.is_some();
            let at_c1 =
                if !in_window(c1, b) { match_extremes(sc, &c2, true, b, lambda, stats).is_some() } else { false };
            fill(&mut row, &r, &|a| if a == c1 { at_c1 } else { ok });
        }
        _ => {
            stats.v4_branches[3] += 1;
            let r = match_extremes(sc, &c2, true, b, lambda, stats);
            let ok = r.is_some();
            fill(&mut row, &r, &|_| ok);
        }
    }
    Ok(row)
}

/// Groups light children (leaves included) by their behaviour under neck label `b`.
pub fn child_types(sc: &SpecialChildren<'_>, b: u32, lambda: u32) -> Vec<ChildTypeVector> {
    let x = extremes(lambda);
    let c8 = band_rep(b, lambda);
    let vector = |get: &dyn Fn(u32) -> bool| {
        let mut bits = 0u32;
        for (j, &c) in x.iter().enumerate() {
            if get(c) {
                bits |= 1 << j;
            }
        }
        if get(c8) {
            bits |= 1 << EXTREMES;
        }
        bits
    };
    let mut all: Vec<u32> = sc.pseudo.iter().map(|t| vector(&|c| t.get(b, c))).collect();
    if sc.leaves > 0 {
        let leaf = vector(&|c| !in_window(c, b));
        all.extend(std::iter::repeat_n(leaf, sc.leaves));
    }
    all.sort_unstable();
    let mut out: Vec<ChildTypeVector> = Vec::new();
    for bits in all {
        match out.last_mut() {
            Some(t) if t.bits == bits => t.multiplicity += 1,
            _ => out.push(ChildTypeVector { bits, multiplicity: 1 }),
        }
    }
    out
}

/// δ((u,v),(a,b)) by max flow on the network with one node per child type, the heavy
/// child, the 16 extreme labels and one band node.
pub fn compute_delta_v5(
    sc: &SpecialChildren<'_>,
    types: &[ChildTypeVector],
    a: u32,
    b: u32,
    lambda: u32,
    stats: &mut DeltaStats,
) -> bool {
    if in_window(a, b) {
        return false;
    }
    let x = extremes(lambda);
    let band_cap = band_size_without(lambda, &[a, b.wrapping_sub(1), b, b + 1]);
    let mut caps = vec![1u32; EXTREMES];
    caps.push(band_cap);
    let band_node = EXTREMES;
    // Child nodes: one per type (supply = multiplicity), then w*.
    let supplies: Vec<u32> = types.iter().map(|t| t.multiplicity).chain([1]).collect();
    let mut net = FlowNetwork::with_supplies(&supplies, &caps);
    for (i, t) in types.iter().enumerate() {
        for (j, &c) in x.iter().enumerate() {
            if c != a && !in_window(c, b) && t.bits >> j & 1 == 1 {
                net.add_edge(i, j, 1);
            }
        }
        if t.bits >> EXTREMES & 1 == 1 {
            net.add_edge(i, band_node, band_cap.min(t.multiplicity));
        }
    }
    let w = types.len();
    for (j, &c) in x.iter().enumerate() {
        if c != a && !in_window(c, b) && sc.w_star.get(b, c) {
            net.add_edge(w, j, 1);
        }
    }
    if band(lambda).any(|c| c != a && !in_window(c, b) && sc.w_star.get(b, c)) {
        net.add_edge(w, band_node, 1);
    }
    stats.kernel_calls += 1;
    let need: u64 = supplies.iter().map(|&s| u64::from(s)).sum();
    net.max_flow() == need
}

/// Row δ((u,v),(·,b)) for a vertex with many light children, evaluating the network only
/// on a constant candidate set of head labels.
pub fn v5_row(sc: &SpecialChildren<'_>, b: u32, lambda: u32, stats: &mut DeltaStats) -> Vec<bool> {
    let types = child_types(sc, b, lambda);
    let mut row = vec![false; lambda as usize + 1];
    let x = extremes(lambda);
    for &a in &x {
        row[a as usize] = compute_delta_v5(sc, &types, a, b, lambda, stats);
    }
    let mut f8 = band(lambda).filter(|&c| !in_window(c, b) && sc.w_star.get(b, c));
    let (first, second) = (f8.next(), f8.next());
    match (first, second) {
        (Some(c_star), None) => {
            stats.v5_facts[1] += 1;
            let at_star = compute_delta_v5(sc, &types, c_star, b, lambda, stats);
            let other = band(lambda).find(|&c| c != c_star && !in_window(c, b));
            let rest = other.is_some_and(|c| compute_delta_v5(sc, &types, c, b, lambda, stats));
            for a in band(lambda) {
                if !in_window(a, b) {
                    row[a as usize] = if a == c_star { at_star } else { rest };
                }
            }
        }
        _ => {
            stats.v5_facts[0] += 1;
            let val = compute_delta_v5(sc, &types, band_rep(b, lambda), b, lambda, stats);
            for a in band(lambda) {
                if !in_window(a, b) {
                    row[a as usize] = val;
                }
            }
        }
    }
    row
}
