//! λ-decision, optimal-λ search and witness extraction.

mod extract;
mod partition;
mod quick;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use extract::extract_labeling;
pub use partition::{partition_vertices, special_rules_apply, Partition, Thresholds, VertexClass};
pub use quick::quick_checks;

use crate::delta::{delta_table_for, DeltaStats, DeltaTable, Engine, VertexKind};
use crate::error::{invariant, Error, Result};
use crate::labeling::Labeling;
use crate::preprocess::{no_reduction, preprocess_with, PreprocessResult};
use crate::tree::{root_at_leaf, Tree};

/// Algorithm tier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Per-(a,b) matchings over full tables.
    Ck,
    /// Per-b matching with alternating reachability over full tables.
    Fast,
    /// Flow over compressed tables, with the class partition whenever it applies.
    Linear,
    /// Closed forms for tiny trees; flow for trees below the generalised-leaf size or small Δ;
    /// otherwise the full partition.
    Auto,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ck" => Ok(Algorithm::Ck),
            "fast" => Ok(Algorithm::Fast),
            "linear" => Ok(Algorithm::Linear),
            "auto" => Ok(Algorithm::Auto),
            _ => Err(Error::InvalidParameter(format!("unknown algorithm {s:?}"))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Ck => "ck",
            Algorithm::Fast => "fast",
            Algorithm::Linear => "linear",
            Algorithm::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    /// Override for the generalised-leaf size cap (Δ⁵ by default).
    pub vm_cap: Option<u64>,
    /// Run the λ-preserving reductions first.
    pub preprocess: bool,
    /// Allow the constant-time screens at λ = Δ+1 (never used when a witness is wanted).
    pub quick_checks: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { algorithm: Algorithm::Auto, vm_cap: None, preprocess: true, quick_checks: true }
    }
}

impl SolveConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> SolveConfig {
        SolveConfig { algorithm, ..SolveConfig::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SolveStats {
    /// Vertices per class V1..V5 in the deciding run; vertices removed by preprocessing count as V1.
    pub classes: [u64; 5],
    pub kernel_calls: u64,
    pub v3_steps: [u64; 3],
    pub v4_branches: [u64; 4],
    pub v5_facts: [u64; 2],
    pub removed_leaves: usize,
    pub splits: usize,
    pub pieces: usize,
    /// Decisions run (one per λ tried).
    pub decisions: u32,
    /// Outcome of the quick screen, when it answered.
    pub quick: Option<bool>,
    /// Split reconstruction fell back to leaf-only preprocessing.
    pub split_fallbacks: u32,
    pub table_bytes: usize,
    #[serde(serialize_with = "as_nanos")]
    pub wall: Duration,
}

fn as_nanos<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_nanos())
}

impl SolveStats {
    fn absorb(&mut self, d: &DeltaStats) {
        self.kernel_calls += d.kernel_calls;
        (0..3).for_each(|i| self.v3_steps[i] += d.v3_steps[i]);
        (0..4).for_each(|i| self.v4_branches[i] += d.v4_branches[i]);
        (0..2).for_each(|i| self.v5_facts[i] += d.v5_facts[i]);
    }

    fn merge(&mut self, o: &SolveStats) {
        // The histogram describes the last decision, which is the one that answered.
        self.classes = o.classes;
        self.kernel_calls += o.kernel_calls;
        (0..3).for_each(|i| self.v3_steps[i] += o.v3_steps[i]);
        (0..4).for_each(|i| self.v4_branches[i] += o.v4_branches[i]);
        (0..2).for_each(|i| self.v5_facts[i] += o.v5_facts[i]);
        self.removed_leaves = self.removed_leaves.max(o.removed_leaves);
        self.splits = self.splits.max(o.splits);
        self.pieces = self.pieces.max(o.pieces);
        self.decisions += o.decisions;
        self.quick = self.quick.or(o.quick);
        self.split_fallbacks += o.split_fallbacks;
        self.table_bytes = self.table_bytes.max(o.table_bytes);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub feasible: bool,
    pub lambda: u32,
    pub witness: Option<Labeling>,
    pub stats: SolveStats,
}

/// Outcome of the DP on one piece.
struct PieceOutcome {
    feasible: bool,
    labels: Option<Vec<u32>>,
}

fn engine_for(algorithm: Algorithm) -> Engine {
    match algorithm {
        Algorithm::Ck => Engine::Ck,
        Algorithm::Fast => Engine::Fast,
        Algorithm::Linear | Algorithm::Auto => Engine::Flow,
    }
}

fn solve_piece(
    t: &Tree,
    p: u32,
    lambda: u32,
    cfg: &SolveConfig,
    partitioned: bool,
    want: bool,
    stats: &mut SolveStats,
) -> Result<PieceOutcome> {
    let n = t.vertex_count();
    match n {
        1 => {
            stats.classes[0] += 1;
            return Ok(PieceOutcome { feasible: true, labels: want.then(|| vec![0]) });
        }
        2 => {
            stats.classes[0] += 2;
            let ok = lambda >= p;
            return Ok(PieceOutcome { feasible: ok, labels: (want && ok).then(|| vec![0, lambda]) });
        }
        _ => {}
    }
    let rt = root_at_leaf(t.clone());
    let engine = engine_for(cfg.algorithm);
    let use_partition = partitioned
        && special_rules_apply(t.max_degree(), p, lambda)
        && match cfg.algorithm {
            Algorithm::Linear => true,
            Algorithm::Auto => (n as u64) > Thresholds::for_lambda(lambda, cfg.vm_cap).vm_cap,
            _ => false,
        };
    let partition = if use_partition { Some(partition_vertices(&rt, p, lambda, cfg.vm_cap)?) } else { None };
    match &partition {
        Some(part) => {
            let h = part.histogram();
            (0..5).for_each(|i| stats.classes[i] += h[i]);
        }
        None => stats.classes[0] += n as u64,
    }
    let mut tables: Vec<Option<DeltaTable>> = vec![None; n];
    let mut ds = DeltaStats::default();
    let mut bytes = 0usize;
    let mut peak = 0usize;
    for &v in rt.order()[1..].iter().rev() {
        let kind = partition.as_ref().map_or(VertexKind::Generic, |part| part.kind(v));
        let table = {
            let kids: Vec<&DeltaTable> =
                rt.children(v).iter().map(|&c| tables[c].as_ref().expect("children are computed first")).collect();
            delta_table_for(&rt, v, &kids, engine, kind, p, lambda, &mut ds)?
        };
        bytes += table.heap_bytes();
        if !want {
            for &c in rt.children(v) {
                if let Some(old) = tables[c].take() {
                    bytes -= old.heap_bytes();
                }
            }
        }
        peak = peak.max(bytes);
        tables[v] = Some(table);
    }
    stats.absorb(&ds);
    stats.table_bytes = stats.table_bytes.max(peak);
    let top = rt.children(rt.root())[0];
    let feasible = tables[top].as_ref().is_some_and(|t| t.some_feasible_pair().is_some());
    let labels = if want && feasible { Some(extract_labeling(&rt, &tables, p, lambda)?) } else { None };
    Ok(PieceOutcome { feasible, labels })
}

fn decide_pieces(
    t: &Tree,
    pre: &PreprocessResult,
    p: u32,
    lambda: u32,
    cfg: &SolveConfig,
    want: bool,
    stats: &mut SolveStats,
) -> Result<(bool, Option<Vec<Vec<u32>>>)> {
    let mut all = Vec::with_capacity(pre.trees.len());
    stats.classes[0] += (t.vertex_count() - pre.trees.iter().map(Tree::vertex_count).sum::<usize>()) as u64;
    for piece in &pre.trees {
        let out = solve_piece(piece, p, lambda, cfg, cfg.preprocess, want, stats)?;
        if !out.feasible {
            return Ok((false, None));
        }
        all.push(out.labels.unwrap_or_default());
    }
    Ok((true, want.then_some(all)))
}

/// Decides whether `t` has a λ-L(p,1)-labeling, optionally constructing one.
pub fn decide_lambda(t: &Tree, p: u32, lambda: u32, cfg: &SolveConfig, want_witness: bool) -> Result<SolveResult> {
    let start = Instant::now();
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let mut stats = SolveStats { decisions: 1, ..SolveStats::default() };
    let n = t.vertex_count();
    let delta = t.max_degree() as u32;
    let finish = |feasible: bool, labels: Option<Vec<u32>>, mut stats: SolveStats| -> Result<SolveResult> {
        stats.wall = start.elapsed();
        let witness = labels.map(|l| Labeling { lambda, labels: l });
        Ok(SolveResult { feasible, lambda, witness, stats })
    };
    // A vertex and its neighbours need Δ+1 distinct labels, the last two p apart.
    if n >= 2 && lambda + 1 < delta + p {
        stats.classes[0] = n as u64;
        return finish(false, None, stats);
    }
    if n <= 2 {
        stats.classes[0] = n as u64;
        let labels = if n == 1 { vec![0] } else { vec![0, lambda] };
        return finish(true, want_witness.then_some(labels), stats);
    }
    if cfg.quick_checks && cfg.algorithm != Algorithm::Ck && p == 2 && lambda == delta + 1 {
        match quick_checks(t) {
            Some(false) => {
                stats.quick = Some(false);
                stats.classes[0] = n as u64;
                return finish(false, None, stats);
            }
            Some(true) if !want_witness => {
                stats.quick = Some(true);
                stats.classes[0] = n as u64;
                return finish(true, None, stats);
            }
            _ => {}
        }
    }
    let pre = if cfg.preprocess { preprocess_with(t, p, lambda, true) } else { no_reduction(t) };
    stats.removed_leaves = pre.removed_leaves;
    stats.splits = pre.splits;
    stats.pieces = pre.piece_count();
    let (feasible, pieces) = decide_pieces(t, &pre, p, lambda, cfg, want_witness, &mut stats)?;
    if !feasible || !want_witness {
        return finish(feasible, None, stats);
    }
    let pieces = pieces.expect("witness requested");
    if let Some(f) = pre.lift(t, &pieces, p, lambda)? {
        return finish(true, Some(f), stats);
    }
    // A cut could not be re-joined: redo the pieces with leaf removal only.
    stats.split_fallbacks += 1;
    let pre = preprocess_with(t, p, lambda, false);
    let mut retry = SolveStats::default();
    let (ok, pieces) = decide_pieces(t, &pre, p, lambda, cfg, true, &mut retry)?;
    stats.kernel_calls += retry.kernel_calls;
    if !ok {
        return invariant("leaf-only reduction disagrees with the split reduction");
    }
    match pre.lift(t, &pieces.expect("witness requested"), p, lambda)? {
        Some(f) => finish(true, Some(f), stats),
        None => invariant("leaf-only reduction produced no stitch points"),
    }
}

/// λ_{2,1}(T) with a witness, by deciding λ = Δ+1 and falling back to Δ+2.
pub fn solve_l21(t: &Tree) -> Result<SolveResult> {
    solve_l21_with(t, &SolveConfig::default())
}

pub fn solve_l21_with(t: &Tree, cfg: &SolveConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let n = t.vertex_count();
    if n == 1 {
        let mut r = decide_lambda(t, 2, 0, cfg, true)?;
        r.stats.wall = start.elapsed();
        return Ok(r);
    }
    let delta = t.max_degree() as u32;
    let first = decide_lambda(t, 2, delta + 1, cfg, true)?;
    if first.feasible {
        return Ok(first);
    }
    let mut second = decide_lambda(t, 2, delta + 2, cfg, true)?;
    if !second.feasible {
        return invariant(format!("no labeling with span Δ+2 = {}", delta + 2));
    }
    let mut stats = first.stats;
    stats.merge(&second.stats);
    stats.wall = start.elapsed();
    second.stats = stats;
    Ok(second)
}

/// λ_{p,1}(T) with a witness, by an ascending scan from Δ+p−1.
pub fn solve_lp1(t: &Tree, p: u32) -> Result<SolveResult> {
    solve_lp1_with(t, p, &SolveConfig::default())
}

pub fn solve_lp1_with(t: &Tree, p: u32, cfg: &SolveConfig) -> Result<SolveResult> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let start = Instant::now();
    let n = t.vertex_count();
    if n == 1 {
        return decide_lambda(t, p, 0, cfg, true);
    }
    let delta = t.max_degree() as u32;
    let lo = delta + p - 1;
    let hi = (delta + 2 * p - 2).min(2 * delta + p - 2).max(lo);
    let mut stats = SolveStats::default();
    for lambda in lo..=hi {
        let r = decide_lambda(t, p, lambda, cfg, true)?;
        stats.merge(&r.stats);
        if r.feasible {
            stats.wall = start.elapsed();
            return Ok(SolveResult { stats, ..r });
        }
    }
    invariant(format!("no labeling with span up to {hi}"))
}
