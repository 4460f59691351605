//! Per-gate tree gadgets: a tree per a-assignment, a tree per
//! b-assignment, embedding iff the gate outputs 1; plus the universal
//! tree that contains every a-side tree.

use satlower::formula::parse_formula;
use satlower::fpair::{evaluate_pair_at, split_to_pair};
use satlower::rooted_tree::{canonical_code, contains, tree_stats};
use satlower::subtree_reduce::{gadget_height, tree_a_for, tree_b_for, universal_tree};

fn main() {
    // a single a-side leaf: bit 0 grows an extra leaf that has nowhere
    // to go, bit 1 embeds
    let inst = split_to_pair(&parse_formula("x1").unwrap());
    for i in 0..2 {
        let a = tree_a_for(&inst, i).unwrap();
        let b = tree_b_for(&inst, 0).unwrap();
        println!(
            "bit {i}: T_a = {} {:?}  T_b = {} {:?}  contained = {}",
            canonical_code(&a),
            tree_stats(&a),
            canonical_code(&b),
            tree_stats(&b),
            contains(&a, &b)
        );
    }

    let f = parse_formula("((x1&~x2)|x3)").unwrap();
    let inst = split_to_pair(&f);
    println!("\n((x1&~x2)|x3), N={}, gadget height {}", inst.n_padded, gadget_height(&inst, inst.root()));

    println!("decision table (rows i, cols j):");
    for i in 0..inst.n_padded {
        let a = tree_a_for(&inst, i).unwrap();
        let row: Vec<u8> = (0..inst.n_padded)
            .map(|j| {
                let b = tree_b_for(&inst, j).unwrap();
                let hit = contains(&a, &b);
                assert_eq!(hit, evaluate_pair_at(&inst, inst.root(), i, j).unwrap());
                hit as u8
            })
            .collect();
        println!("  i={i}: {row:?}");
    }

    // the all-zero-assignment tree contains every a-side tree
    let u = universal_tree(&inst);
    println!("\nuniversal tree: {} nodes, height {}", u.size(), u.height());
    for i in 0..inst.n_padded {
        let a = tree_a_for(&inst, i).unwrap();
        println!("  contains(T_a[{i}], U) = {}", contains(&a, &u));
    }
}
