//! Benchmark CSV on a toy grid: build and solve timings per trial,
//! layered and bit-parallel matchers side by side.

use satlower::pipeline::{bench, BenchConfig, Target};

fn main() {
    let rows = bench(&BenchConfig {
        n_list: vec![2, 4],
        s_list: vec![4, 8],
        trials: 2,
        seed: 0,
        target: Target::Both,
        budget_ms: Some(30_000),
    });
    for row in &rows {
        println!("{row}");
    }

    // the decision column must agree between the two matcher rows of
    // every pmlg trial
    let data: Vec<Vec<&str>> = rows[1..].iter().map(|r| r.split(',').collect()).collect();
    for pair in data.chunks(3) {
        assert_eq!(pair[0][13], pair[1][13]);
    }
    eprintln!("\n{} rows, matchers agreed on every trial", rows.len() - 1);
}
