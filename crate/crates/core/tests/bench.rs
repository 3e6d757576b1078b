use lambdatree::bench::{run_bench, to_csv, BenchSpec, CSV_HEADER};
use lambdatree::gen::TreeKind;
use lambdatree::Algorithm;

fn spec(sizes: Vec<usize>, algorithms: Vec<Algorithm>) -> BenchSpec {
    BenchSpec { kind: TreeKind::Random, sizes, delta: 25, seed: 5, algorithms, repeats: 3, vm_cap: None }
}

#[test]
fn tiers_report_the_same_lambda() {
    let recs = run_bench(&spec(vec![2000], vec![Algorithm::Ck, Algorithm::Linear])).unwrap();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0].lambda, recs[1].lambda);
    assert!(recs.iter().all(|r| r.n == 2000 && r.delta == 25));
}

#[test]
fn rows_are_sorted_and_histograms_cover_n() {
    let recs = run_bench(&spec(vec![3000, 1000, 2000], vec![Algorithm::Linear])).unwrap();
    let ns: Vec<usize> = recs.iter().map(|r| r.n).collect();
    assert_eq!(ns, [1000, 2000, 3000]);
    for r in &recs {
        assert_eq!(r.classes.iter().sum::<u64>(), r.n as u64);
    }
    let csv = to_csv(&recs);
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn stress_instances_fill_the_histogram() {
    let s = BenchSpec { kind: TreeKind::V45Stress, vm_cap: Some(1500), ..spec(vec![6000], vec![Algorithm::Linear]) };
    let r = &run_bench(&s).unwrap()[0];
    assert_eq!(r.classes.iter().sum::<u64>(), r.n as u64);
    assert!(r.classes[1..].iter().any(|&c| c > 0), "{:?}", r.classes);
    assert!(r.delta_computations > 0);
}
