//! Brute-force satisfiability: the arbiter every reduction is tested
//! against.

use satlower::formula::{brute_force_sat, brute_force_sat_capped, parse_formula, random_formula};

fn main() {
    for text in ["((x1|x2)&(~x1|~x2))", "(x1&~x1)", "((x1&x2)&x3)"] {
        let f = parse_formula(text).unwrap();
        let result = brute_force_sat(&f).unwrap();
        print!("{text:24} sat={}", result.satisfiable);
        if let Some(w) = &result.witness {
            let bits: Vec<u8> = w.bits().iter().map(|&b| b as u8).collect();
            print!("  witness={bits:?}");
        }
        println!("  satisfying={}/{}", result.count, 1u64 << f.num_vars());
    }

    // seeded generation: same seed, same formula
    let g = random_formula(4, 9, 42);
    println!("\nrandom n=4 s=9 seed=42: {}", satlower::formula::render_formula(&g.formula));
    println!("covers all vars: {}", g.covers_all_vars);

    // the default cap refuses 2^25 evaluations; an explicit cap allows
    // callers to opt into bigger sweeps
    let wide = random_formula(25, 30, 7).formula;
    match brute_force_sat(&wide) {
        Err(e) => println!("25 vars, default cap: {e}"),
        Ok(_) => unreachable!(),
    }
    let ok = brute_force_sat_capped(&wide, 25).unwrap();
    println!("25 vars, raised cap: sat={}", ok.satisfiable);
}
