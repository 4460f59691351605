//! Three-way verification: lower to both targets, solve, and compare
//! every decision against brute force.

use satlower::formula::{parse_formula, random_formula};
use satlower::pipeline::{verify, Target};

fn main() {
    let f = parse_formula("((x1|~x2)&(x2|x3))").unwrap();
    println!("{}\n", verify(&f, Target::Both).unwrap());

    let f = parse_formula("(x1&~x1)").unwrap();
    println!("{}\n", verify(&f, Target::Pmlg).unwrap());

    // a seeded sweep; any disagreement would be a reduction bug
    let mut agreed = 0;
    for seed in 0..50 {
        let f = random_formula(1 + seed as usize % 4, 2 + seed as usize % 6, seed).formula;
        let report = verify(&f, Target::Both).unwrap();
        assert!(report.agree, "disagreement on {}", report.formula);
        agreed += 1;
    }
    println!("{agreed}/50 random formulas agree across brute force, pmlg, and subtree");
}
