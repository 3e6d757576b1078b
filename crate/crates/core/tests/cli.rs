use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lambdatree::bench::CSV_HEADER;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lambdatree"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Writes `text` to a fresh file under the target temp dir.
fn file(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_examples() {
    let star = file("star5.tree", "6\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    let o = run(&["solve", "--input", p(&star)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "lambda 6\n");

    let p5 = file("p5.tree", "5\n0 1\n1 2\n2 3\n3 4\n");
    let o = run(&["solve", "--input", p(&p5), "--lambda", "3", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no\n");
    let o = run(&["solve", "--input", p(&p5), "--lambda", "4"]);
    assert_eq!(stdout(&o), "yes\n");

    let single = file("single.tree", "1\n");
    assert_eq!(stdout(&run(&["solve", "--input", p(&single)])), "lambda 0\n");
}

#[test]
fn solve_errors() {
    let broken = file("broken.tree", "3\n0 1\n0 x\n");
    assert_eq!(run(&["solve", "--input", p(&broken)]).status.code(), Some(2));
    let cycle = file("cycle.tree", "3\n0 1\n1 0\n");
    assert_eq!(run(&["solve", "--input", p(&cycle)]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--input", "/nonexistent/t.tree"]).status.code(), Some(2));
    let p5 = file("p5e.tree", "5\n0 1\n1 2\n2 3\n3 4\n");
    assert_eq!(run(&["solve", "--input", p(&p5), "--algorithm", "bogus"]).status.code(), Some(2));
}

#[test]
fn solve_json_and_all_algorithms() {
    let t =
        file("cat.tree", &stdout(&run(&["gen", "--kind", "caterpillar", "--n", "30", "--delta", "4", "--seed", "3"])));
    let mut seen = Vec::new();
    for alg in ["ck", "fast", "linear", "auto"] {
        let o = run(&["solve", "--input", p(&t), "--algorithm", alg, "--json", "--witness"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["feasible"], true);
        assert_eq!(v["witness"]["labels"].as_array().unwrap().len(), 30);
        seen.push(v["lambda"].as_u64().unwrap());
    }
    assert!(seen.iter().all(|&l| l == seen[0]));
}

#[test]
fn witness_round_trips_through_verify() {
    let text = stdout(&run(&["gen", "--kind", "random", "--n", "200", "--delta", "6", "--seed", "9"]));
    let t = file("r200.tree", &text);
    let o = run(&["solve", "--input", p(&t), "--witness"]);
    let out = stdout(&o);
    let json = out.lines().nth(1).unwrap();
    let labels = file("r200.json", json);
    let v = run(&["verify", "--input", p(&t), "--labels", p(&labels), "--p", "2", "--q", "1"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    // Inline JSON works too.
    let v = run(&["verify", "--input", p(&t), "--labels", json, "--p", "2", "--q", "1"]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn verify_examples() {
    let p3 = file("p3.tree", "3\n0 1\n1 2\n");
    let ok =
        run(&["verify", "--input", p(&p3), "--labels", r#"{"lambda":3,"labels":[1,3,0]}"#, "--p", "2", "--q", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    let gap =
        run(&["verify", "--input", p(&p3), "--labels", r#"{"lambda":4,"labels":[0,1,4]}"#, "--p", "2", "--q", "1"]);
    assert_eq!(gap.status.code(), Some(1));
    assert!(stdout(&gap).contains("edge (0,1)"), "{}", stdout(&gap));
    let count =
        run(&["verify", "--input", p(&p3), "--labels", r#"{"lambda":3,"labels":[1,3]}"#, "--p", "2", "--q", "1"]);
    assert_eq!(count.status.code(), Some(2));
    let junk = run(&["verify", "--input", p(&p3), "--labels", "{not json", "--p", "2", "--q", "1"]);
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn gen_examples() {
    let o = run(&["gen", "--kind", "path", "--n", "3"]);
    assert_eq!(stdout(&o), "3\n0 1\n1 2\n");
    let a = run(&["gen", "--kind", "random", "--n", "8", "--seed", "1"]);
    let b = run(&["gen", "--kind", "random", "--n", "8", "--seed", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["gen", "--kind", "star", "--n", "5", "--delta", "7"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--kind", "nope", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn stress_instance_reaches_special_classes() {
    let t = file(
        "v45.tree",
        &stdout(&run(&["gen", "--kind", "v45_stress", "--delta", "25", "--n", "5000", "--seed", "1"])),
    );
    // The default generalised-leaf cap (Δ⁵) exceeds n, so lower it to see the partition.
    let o = run(&["solve", "--input", p(&t), "--algorithm", "linear", "--vm-cap", "1500", "--stats"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let classes = out.lines().find(|l| l.starts_with("classes")).unwrap();
    let count =
        |tag: &str| -> u64 { classes.split_whitespace().find_map(|w| w.strip_prefix(tag)).unwrap().parse().unwrap() };
    assert!(count("v4=") > 0 && count("v5=") > 0, "{classes}");
}

#[test]
fn oracle_examples() {
    let k13 = file("k13.tree", "4\n0 1\n0 2\n0 3\n");
    assert!(stdout(&run(&["oracle", "--input", p(&k13), "--p", "2"])).starts_with("lambda 4\n"));
    let p2 = file("p2.tree", "2\n0 1\n");
    assert!(stdout(&run(&["oracle", "--input", p(&p2), "--p", "5"])).starts_with("lambda 5\n"));
    let p30 = file("p30.tree", &stdout(&run(&["gen", "--kind", "path", "--n", "30"])));
    assert_eq!(run(&["oracle", "--input", p(&p30), "--p", "2"]).status.code(), Some(2));
    // The cap can be lowered from the environment.
    let o = bin().args(["oracle", "--input", p(&k13), "--p", "2"]).env("LAMBDATREE_ORACLE_CAP", "3").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_csv() {
    let o = run(&[
        "bench",
        "--sizes",
        "2000,500",
        "--delta",
        "25",
        "--seed",
        "2",
        "--algorithms",
        "ck,linear",
        "--repeats",
        "3",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 4);
    let ns: Vec<usize> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    for r in &rows {
        let hist: u64 = r[5..].iter().map(|x| x.parse::<u64>().unwrap()).sum();
        assert_eq!(hist, r[0].parse::<u64>().unwrap());
    }
}
