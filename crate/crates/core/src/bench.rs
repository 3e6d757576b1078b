//! Benchmark harness: deterministic instances, median-of-repeats solve times, CSV rows.

use std::fmt::Write as _;
use std::time::Duration;

use crate::error::Result;
use crate::gen::{generate_tree, TreeKind};
use crate::solver::{solve_l21_with, Algorithm, SolveConfig};

pub const CSV_HEADER: &str = "n,delta,algorithm,ns,delta_computations,v1,v2,v3,v4,v5";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub delta: usize,
    pub algorithm: Algorithm,
    /// Median solve time over the repeats.
    pub ns: u128,
    pub delta_computations: u64,
    /// Vertices per class V1..V5.
    pub classes: [u64; 5],
    /// Not part of the CSV; kept so callers can compare tiers.
    pub lambda: u32,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let c = &self.classes;
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n, self.delta, self.algorithm, self.ns, self.delta_computations, c[0], c[1], c[2], c[3], c[4]
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub kind: TreeKind,
    pub sizes: Vec<usize>,
    pub delta: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub repeats: usize,
    pub vm_cap: Option<u64>,
}

/// Runs every (size, algorithm) pair. Each size gets one instance, shared by all
/// algorithms; only the solve call is timed.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    let mut sizes = spec.sizes.clone();
    sizes.sort_unstable();
    for &n in &sizes {
        let t = generate_tree(spec.kind, n, Some(spec.delta), spec.seed)?;
        for &algorithm in &spec.algorithms {
            let cfg = SolveConfig { algorithm, vm_cap: spec.vm_cap, ..SolveConfig::default() };
            let mut times: Vec<Duration> = Vec::with_capacity(spec.repeats.max(1));
            let mut last = None;
            for _ in 0..spec.repeats.max(1) {
                let r = solve_l21_with(&t, &cfg)?;
                times.push(r.stats.wall);
                last = Some(r);
            }
            times.sort_unstable();
            let r = last.expect("at least one repeat");
            out.push(BenchRecord {
                n: t.vertex_count(),
                delta: t.max_degree(),
                algorithm,
                ns: times[times.len() / 2].as_nanos(),
                delta_computations: r.stats.kernel_calls,
                classes: r.stats.classes,
                lambda: r.lambda,
            });
        }
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CSV_HEADER}");
    for r in records {
        let _ = writeln!(s, "{}", r.csv_row());
    }
    s
}
