//! Per-gate pattern and graph gadgets: one pattern per a-assignment,
//! one graph per b-assignment, matching iff the gate outputs 1.

use satlower::formula::parse_formula;
use satlower::fpair::{evaluate_pair_at, split_to_pair};
use satlower::labeled_graph::solve_pmlg;
use satlower::pmlg_reduce::{
    gate_pattern_len, graph_for, pattern_for, uniform_path_length,
};

fn main() {
    let f = parse_formula("((x1&~x2)|x3)").unwrap();
    let inst = split_to_pair(&f);
    println!("formula: ((x1&~x2)|x3), N={}", inst.n_padded);

    // patterns spell the formula tree; only a-leaf bits vary
    for i in 0..inst.n_padded {
        println!("pattern[{i}] = {}", pattern_for(&inst, i).unwrap().as_str());
    }
    println!("block length mu = {}", gate_pattern_len(&inst, inst.root()));

    // graphs are leveled DAGs: every source-to-sink path has exactly
    // the pattern's length
    for j in 0..inst.n_padded {
        let gg = graph_for(&inst, j).unwrap();
        println!(
            "graph[{j}]: {} vertices, {} edges, uniform path length {:?}",
            gg.graph.vertex_count(),
            gg.graph.edge_count(),
            uniform_path_length(&gg)
        );
    }

    // the gadget decision is the gate's output on (a[i], b[j])
    println!("\ndecision table (rows i, cols j):");
    for i in 0..inst.n_padded {
        let p = pattern_for(&inst, i).unwrap();
        let row: Vec<u8> = (0..inst.n_padded)
            .map(|j| {
                let gg = graph_for(&inst, j).unwrap();
                let hit = solve_pmlg(&gg.graph, &p);
                assert_eq!(hit, evaluate_pair_at(&inst, inst.root(), i, j).unwrap());
                hit as u8
            })
            .collect();
        println!("  i={i}: {row:?}");
    }
}
