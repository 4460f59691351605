//! Formula to pattern + labeled graph and back to a SAT decision.

use satlower::formula::{brute_force_sat, parse_formula};
use satlower::fpair::split_to_pair;
use satlower::labeled_graph::{solve_pmlg, solve_pmlg_bitparallel};
use satlower::pmlg_reduce::build_final_pmlg;

fn main() {
    for text in ["x1", "(x1&~x1)", "((x1|x2)&(~x1|~x2))", "((x1&x2)|(~x3&x4))"] {
        let f = parse_formula(text).unwrap();
        let inst = split_to_pair(&f);
        let fin = build_final_pmlg(&inst);

        let sat = brute_force_sat(&f).unwrap().satisfiable;
        let layered = solve_pmlg(&fin.graph, &fin.pattern);
        let bitparallel = solve_pmlg_bitparallel(&fin.graph, &fin.pattern);
        assert_eq!(layered, sat);
        assert_eq!(bitparallel, sat);

        println!("{text}");
        if fin.pattern.len() <= 32 {
            println!("  pattern: {}", fin.pattern.as_str());
        } else {
            println!("  pattern: {} chars, {} blocks of {}", fin.pattern.len(), fin.n_padded, fin.mu);
        }
        println!(
            "  graph: {} vertices, {} edges, max degree {}",
            fin.graph.vertex_count(),
            fin.graph.edge_count(),
            fin.graph.max_total_degree()
        );
        println!("  sat={sat} layered={layered} bitparallel={bitparallel}");
    }
}
