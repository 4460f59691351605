//! The half-split: variables 1..=ceil(n/2) become assignment set A,
//! the rest set B, negations fold into the projected bits, and the
//! smaller set pads up to a common size N.

use satlower::formula::parse_formula;
use satlower::fpair::{brute_force_pair, evaluate_pair, split_to_pair};

fn show(text: &str) {
    let f = parse_formula(text).unwrap();
    let inst = split_to_pair(&f);
    println!("{text}");
    println!("  N={} (a {} slots, b {} slots)", inst.n_padded, inst.m_a, inst.m_b);
    for (i, a) in inst.a_set.iter().enumerate() {
        let bits: Vec<u8> = a.iter().map(|&b| b as u8).collect();
        println!("  a[{i}] = {bits:?}");
    }
    for (j, b) in inst.b_set.iter().enumerate() {
        let bits: Vec<u8> = b.iter().map(|&b| b as u8).collect();
        println!("  b[{j}] = {bits:?}");
    }
    match brute_force_pair(&inst).unwrap() {
        Some((i, j)) => println!("  satisfied by pair ({i}, {j}): {}", evaluate_pair(&inst, i, j).unwrap()),
        None => println!("  no satisfying pair"),
    }
    println!();
}

fn main() {
    // negation folds into the a-vector: the slot reads "x1 is false"
    show("(~x1|x2)");
    // odd variable count: B is smaller and pads by repeating its last row
    show("((x1&x2)|x3)");
    // a contradiction has no satisfying pair
    show("(x1&~x1)");
}
