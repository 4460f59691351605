//! On-disk formats: the labeled-graph, pattern, and tree codecs, shown
//! on the smallest satisfiable instance.

use satlower::formula::parse_formula;
use satlower::fpair::split_to_pair;
use satlower::labeled_graph::{read_graph, read_pattern, write_graph, write_pattern};
use satlower::pmlg_reduce::build_final_pmlg;
use satlower::rooted_tree::{canonical_code, read_tree, write_tree};
use satlower::subtree_reduce::build_final_subtree;

fn main() {
    let inst = split_to_pair(&parse_formula("x1").unwrap());

    // graph file: header, labels, then edges
    let fin = build_final_pmlg(&inst);
    let mut graph_text = Vec::new();
    write_graph(&fin.graph, &mut graph_text).unwrap();
    let text = String::from_utf8(graph_text).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    println!("graph file ({} lines), first 8 and last 2:", lines.len());
    for line in &lines[..8] {
        println!("  {line}");
    }
    println!("  ...");
    for line in &lines[lines.len() - 2..] {
        println!("  {line}");
    }
    let back = read_graph(text.as_bytes()).unwrap();
    assert_eq!(back.vertex_count(), fin.graph.vertex_count());
    assert_eq!(back.edge_count(), fin.graph.edge_count());

    // pattern file: one line over {0, 1, $}
    let mut pattern_text = Vec::new();
    write_pattern(&fin.pattern, &mut pattern_text).unwrap();
    print!("\npattern file:\n  {}", String::from_utf8(pattern_text.clone()).unwrap());
    let back = read_pattern(pattern_text.as_slice()).unwrap();
    assert_eq!(back.as_str(), fin.pattern.as_str());

    // tree file: one line of balanced parentheses, children sorted
    let fin = build_final_subtree(&inst);
    let mut tree_text = Vec::new();
    write_tree(&fin.t_a, &mut tree_text).unwrap();
    print!("\ntree file (T_1):\n  {}", String::from_utf8(tree_text.clone()).unwrap());
    let back = read_tree(&mut tree_text.as_slice()).unwrap();
    assert_eq!(canonical_code(&back), canonical_code(&fin.t_a));
    println!("\nall three round-trips preserve the instance");
}
