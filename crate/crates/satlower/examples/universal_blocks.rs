//! The universal block U(x): matches a length-x binary string iff it
//! starts and ends with '1'. OR gadgets and the final assembly use it
//! to let walks skip whatever they are not deciding.

use satlower::labeled_graph::{solve_pmlg, Pattern};
use satlower::pmlg_reduce::{
    uniform_path_length, universal_edge_count, universal_gadget, universal_vertex_count,
};

fn main() {
    let x = 4;
    let gg = universal_gadget(x).unwrap();
    println!(
        "U({x}): {} vertices, {} edges (closed forms {} and {})",
        gg.graph.vertex_count(),
        gg.graph.edge_count(),
        universal_vertex_count(x),
        universal_edge_count(x)
    );
    println!("uniform path length: {:?}", uniform_path_length(&gg));

    let mut matched = Vec::new();
    for bits in 0..(1u32 << x) {
        let text: String = (0..x)
            .map(|k| if bits >> (x - 1 - k) & 1 == 1 { '1' } else { '0' })
            .collect();
        if solve_pmlg(&gg.graph, &Pattern::new(&text).unwrap()) {
            matched.push(text);
        }
    }
    println!("matched {} of {} strings: {matched:?}", matched.len(), 1 << x);

    for x in 3..=8usize {
        let gg = universal_gadget(x).unwrap();
        let count = (0..(1u32 << x))
            .filter(|bits| {
                let text: String = (0..x)
                    .map(|k| if bits >> (x - 1 - k) & 1 == 1 { '1' } else { '0' })
                    .collect();
                solve_pmlg(&gg.graph, &Pattern::new(&text).unwrap())
            })
            .count();
        println!("U({x}) matches {count} strings (2^(x-2) = {})", 1 << (x - 2));
    }
}
