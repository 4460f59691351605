//! Grammar tour: parse, render, inspect, and evaluate formulas.

use satlower::formula::{evaluate, parse_formula, render_formula, Assignment};

fn main() {
    let f = parse_formula("((x1 & ~x2) | (x2 & x3))").unwrap();
    println!("parsed:   {}", render_formula(&f));
    println!("vars:     {}", f.num_vars());
    println!("size:     {} leaves, {} gates", f.size(), f.gate_count());
    println!("height:   {}", f.height());

    // every assignment over three variables
    for index in 0..8u64 {
        let x = Assignment::from_index(f.num_vars(), index);
        let bits: Vec<u8> = x.bits().iter().map(|&b| b as u8).collect();
        println!("x = {:?} -> {}", bits, evaluate(&f, &x).unwrap() as u8);
    }

    // whitespace is free, parentheses and arity are not
    for text in ["x1", "( x1 | ~x2 )", "x1 & x2", "~(x1)", "x01"] {
        match parse_formula(text) {
            Ok(f) => println!("ok:  {text:14} -> {}", render_formula(&f)),
            Err(e) => println!("err: {text:14} -> {e}"),
        }
    }
}
