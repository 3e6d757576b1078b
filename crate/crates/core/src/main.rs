//! `lambdatree` command line: solve, verify, gen, oracle, bench.
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad input, 3 internal invariant violated.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lambdatree::bench::{run_bench, to_csv, BenchSpec};
use lambdatree::gen::{generate_tree, TreeKind};
use lambdatree::labeling::first_violation;
use lambdatree::oracle::{brute_force_lambda_capped, DEFAULT_LAMBDA_CAP};
use lambdatree::solver::{decide_lambda, solve_l21_with, solve_lp1_with, SolveResult, SolveStats};
use lambdatree::{parse_tree, Algorithm, Error, Labeling, SolveConfig, Tree};

const ORACLE_CAP_VAR: &str = "LAMBDATREE_ORACLE_CAP";

#[derive(Parser)]
#[command(name = "lambdatree", version, about = "Optimal L(p,1)-labelings of trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimal λ (or a yes/no answer with --lambda).
    Solve(SolveArgs),
    /// Check a labeling against a tree.
    Verify(VerifyArgs),
    /// Emit a generated tree.
    Gen(GenArgs),
    /// Exhaustive λ for small trees.
    Oracle(OracleArgs),
    /// Time the solver on generated trees; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Decide this span instead of optimising.
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long, default_value = "auto", value_parser = parse_algorithm)]
    algorithm: Algorithm,
    /// Print the labeling.
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    json: bool,
    /// Print partition and kernel counters.
    #[arg(long)]
    stats: bool,
    /// Generalised-leaf size cap (Δ⁵ by default).
    #[arg(long)]
    vm_cap: Option<u64>,
    #[arg(long)]
    no_preprocess: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Labeling JSON, inline or as a file path.
    #[arg(long)]
    labels: String,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    q: u32,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: TreeKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    q: u32,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 25)]
    delta: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "linear", value_parser = parse_algorithm)]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value = "random", value_parser = parse_kind)]
    kind: TreeKind,
    #[arg(long)]
    vm_cap: Option<u64>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<TreeKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = if matches!(e, Error::Invariant(_)) { 3 } else { 2 };
        Fail(code, e.to_string())
    }
}

type CmdResult = Result<u8, Fail>;

fn read_tree(path: &Path) -> Result<Tree, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    Ok(parse_tree(&text)?)
}

fn print_stats(s: &SolveStats) {
    let c = &s.classes;
    println!("classes v1={} v2={} v3={} v4={} v5={}", c[0], c[1], c[2], c[3], c[4]);
    println!("delta_computations {}", s.kernel_calls);
    println!("v3_steps {:?}", s.v3_steps);
    println!("v4_branches {:?}", s.v4_branches);
    println!("v5_facts {:?}", s.v5_facts);
    println!("preprocess removed={} splits={} pieces={}", s.removed_leaves, s.splits, s.pieces);
    println!("wall_ns {}", s.wall.as_nanos());
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let t = read_tree(&a.input)?;
    let cfg = SolveConfig {
        algorithm: a.algorithm,
        vm_cap: a.vm_cap,
        preprocess: !a.no_preprocess,
        ..SolveConfig::default()
    };
    let r: SolveResult = match a.lambda {
        Some(l) => decide_lambda(&t, a.p, l, &cfg, a.witness)?,
        None if a.p == 2 => solve_l21_with(&t, &cfg)?,
        None => solve_lp1_with(&t, a.p, &cfg)?,
    };
    if a.json {
        let mut v = json!({ "p": a.p, "lambda": r.lambda, "feasible": r.feasible });
        if a.witness {
            v["witness"] = serde_json::to_value(&r.witness).expect("labeling serializes");
        }
        if a.stats {
            v["stats"] = serde_json::to_value(&r.stats).expect("stats serialize");
        }
        println!("{v}");
        return Ok(0);
    }
    match a.lambda {
        Some(_) => println!("{}", if r.feasible { "yes" } else { "no" }),
        None => println!("lambda {}", r.lambda),
    }
    if let (true, Some(w)) = (a.witness, &r.witness) {
        println!("{}", w.to_json());
    }
    if a.stats {
        print_stats(&r.stats);
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let t = read_tree(&a.input)?;
    let text = match std::fs::read_to_string(&a.labels) {
        Ok(s) => s,
        Err(_) => a.labels.clone(),
    };
    let f = Labeling::from_json(&text)?;
    if a.q == 0 || a.q > a.p {
        return Err(Fail(2, format!("need p >= q >= 1 (p={}, q={})", a.p, a.q)));
    }
    match first_violation(&t, &f, a.p, a.q)? {
        None => {
            println!("valid");
            Ok(0)
        }
        Some(v) => {
            println!("invalid: {v}");
            Ok(1)
        }
    }
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let t = generate_tree(a.kind, a.n, a.delta, a.seed)?;
    print!("{}", t.to_text());
    Ok(0)
}

fn oracle_cap() -> Result<usize, Fail> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Fail(2, format!("{ORACLE_CAP_VAR}={s:?} is not a size"))),
        Err(_) => Ok(DEFAULT_LAMBDA_CAP),
    }
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let t = read_tree(&a.input)?;
    let (lambda, f) = brute_force_lambda_capped(&t, a.p, a.q, oracle_cap()?)?;
    println!("lambda {lambda}");
    println!("{}", f.to_json());
    Ok(0)
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let spec = BenchSpec {
        kind: a.kind,
        sizes: a.sizes,
        delta: a.delta,
        seed: a.seed,
        algorithms: a.algorithms,
        repeats: a.repeats,
        vm_cap: a.vm_cap,
    };
    print!("{}", to_csv(&run_bench(&spec)?));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let res = match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Bench(a) => cmd_bench(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
