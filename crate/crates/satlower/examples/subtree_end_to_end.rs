//! Formula to a rooted-tree pair and back to a SAT decision.

use satlower::formula::{brute_force_sat, parse_formula};
use satlower::fpair::split_to_pair;
use satlower::rooted_tree::contains;
use satlower::subtree_reduce::build_final_subtree;

fn main() {
    for text in ["x1", "(x1&~x1)", "((x1|x2)&(~x1|~x2))", "((x1&x2)|(~x3&x4))"] {
        let f = parse_formula(text).unwrap();
        let inst = split_to_pair(&f);
        let fin = build_final_subtree(&inst);

        let sat = brute_force_sat(&f).unwrap().satisfiable;
        let embedded = contains(&fin.t_a, &fin.t_b);
        assert_eq!(embedded, sat);

        println!("{text}");
        println!(
            "  T_1: {} nodes, height {}; T_2: {} nodes, height {}",
            fin.t_a.size(),
            fin.t_a.height(),
            fin.t_b.size(),
            fin.t_b.height()
        );
        println!("  sat={sat} contained={embedded}");
    }
}
