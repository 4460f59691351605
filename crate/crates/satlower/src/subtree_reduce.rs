//! Compiles a formula-pair instance into two rooted trees whose
//! containment question decides the pair question.
//!
//! Per-gate gadgets: assignment `a_set[i]` yields a tree `T_a`,
//! assignment `b_set[j]` a tree `T_b`, with `contains(T_a, T_b)` iff
//! the gate outputs 1 on `(a_set[i], b_set[j])`. Both trees of a gate
//! always have the same height, so a containment must map root to
//! root; pendant paths of lengths 1 and 2 pin each arm of `T_a` to its
//! matching arm of `T_b`. The OR gadget's `T_b` adds a universal arm
//! holding `U_g`, a tree containing every possible `T_a` of the gate,
//! so exactly one of the two real arms must succeed.
//!
//! The final trees hang all N per-assignment gadgets off complete
//! binary scaffolds of equal height: every a-gadget path in `T_A` must
//! land either on a universal-tree path of `T_B` (always possible, but
//! there are only 2^x - 1 of them for 2^x a-paths) or on the branch
//! holding the b-gadgets, where level alignment leaves exactly the
//! gadget-to-gadget pairings. Containment holds iff some (i, j)
//! satisfies the pair formula.

use crate::formula::Op;
use crate::fpair::{FormulaPairInstance, PairNode, Side};
use crate::rooted_tree::RootedTree;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("assignment index {index} out of range (sets hold {len} vectors)")]
    IndexOutOfRange { index: usize, len: usize },
}

/// The assembled tree pair for one lowered formula.
#[derive(Clone, Debug)]
pub struct FinalSubtreeInstance {
    pub t_a: RootedTree,
    pub t_b: RootedTree,
    /// Common set size N.
    pub n_padded: usize,
    /// Scaffold depth, `ceil(log2 N)`; gadget roots sit at depth `2x`.
    pub x: usize,
    pub source_n: usize,
    pub source_s: usize,
    pub seed: Option<u64>,
}

fn check_index(inst: &FormulaPairInstance, index: usize) -> Result<(), ReduceError> {
    if index >= inst.n_padded {
        return Err(ReduceError::IndexOutOfRange { index, len: inst.n_padded });
    }
    Ok(())
}

/// Assignment-side tree for the whole pair formula.
pub fn tree_a_for(inst: &FormulaPairInstance, i: usize) -> Result<RootedTree, ReduceError> {
    tree_a_for_node(inst, inst.root(), i)
}

/// Assignment-side tree for the subformula rooted at `node`.
pub fn tree_a_for_node(
    inst: &FormulaPairInstance,
    node: usize,
    i: usize,
) -> Result<RootedTree, ReduceError> {
    check_index(inst, i)?;
    let mut t = RootedTree::leaf();
    build_a(&mut t, 0, inst, node, &inst.a_set[i]);
    Ok(t)
}

/// Graph-side tree for the whole pair formula.
pub fn tree_b_for(inst: &FormulaPairInstance, j: usize) -> Result<RootedTree, ReduceError> {
    tree_b_for_node(inst, inst.root(), j)
}

/// Graph-side tree for the subformula rooted at `node`.
pub fn tree_b_for_node(
    inst: &FormulaPairInstance,
    node: usize,
    j: usize,
) -> Result<RootedTree, ReduceError> {
    check_index(inst, j)?;
    let mut t = RootedTree::leaf();
    build_b(&mut t, 0, inst, node, &inst.b_set[j]);
    Ok(t)
}

/// The a-side tree under the all-zero assignment; contains every
/// `tree_a_for(inst, i)`.
pub fn universal_tree(inst: &FormulaPairInstance) -> RootedTree {
    let mut t = RootedTree::leaf();
    build_u(&mut t, 0, inst, inst.root());
    t
}

/// Hangs a chain of `len` fresh nodes under `at`; returns the tip.
fn pendant(t: &mut RootedTree, at: u32, len: usize) -> u32 {
    let mut tip = at;
    for _ in 0..len {
        tip = t.add_child(tip);
    }
    tip
}

/// Adds the a-side gadget for `node` treating `root` as its root.
fn build_a(t: &mut RootedTree, root: u32, inst: &FormulaPairInstance, node: usize, a: &[bool]) {
    match inst.node(node) {
        PairNode::Leaf { side: Side::A, slot } => {
            t.add_child(root);
            if !a[slot] {
                t.add_child(root);
            }
        }
        PairNode::Leaf { side: Side::B, .. } => {
            t.add_child(root);
            t.add_child(root);
        }
        PairNode::Gate { op: Op::And, left, right } => {
            let (g1, g2) = and_skeleton(t, root);
            build_a(t, g1, inst, left, a);
            build_a(t, g2, inst, right, a);
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            let i1 = t.add_child(root);
            let i2 = t.add_child(root);
            let g1 = or_arm(t, i1, 1);
            let g2 = or_arm(t, i2, 2);
            build_a(t, g1, inst, left, a);
            build_a(t, g2, inst, right, a);
        }
    }
}

/// Adds the b-side gadget for `node` treating `root` as its root.
fn build_b(t: &mut RootedTree, root: u32, inst: &FormulaPairInstance, node: usize, b: &[bool]) {
    match inst.node(node) {
        PairNode::Leaf { side: Side::A, .. } => {
            t.add_child(root);
        }
        PairNode::Leaf { side: Side::B, slot } => {
            t.add_child(root);
            if b[slot] {
                t.add_child(root);
            }
        }
        PairNode::Gate { op: Op::And, left, right } => {
            let (g1, g2) = and_skeleton(t, root);
            build_b(t, g1, inst, left, b);
            build_b(t, g2, inst, right, b);
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            // one intermediate holds both real arms, the other the
            // universal arm; T_a's two arms split across them
            let ib1 = t.add_child(root);
            let ib2 = t.add_child(root);
            let g1 = or_arm(t, ib1, 1);
            let g2 = or_arm(t, ib1, 2);
            build_b(t, g1, inst, left, b);
            build_b(t, g2, inst, right, b);
            let vb3 = t.add_child(ib2);
            pendant(t, vb3, 2);
            let vb6 = t.add_child(vb3);
            pendant(t, vb6, 2);
            let conn = t.add_child(vb6);
            let ug = t.add_child(conn);
            build_u(t, ug, inst, left);
            build_u(t, ug, inst, right);
        }
    }
}

/// Adds the universal gadget for `node` (a-side shape, all bits zero)
/// treating `root` as its root. Calling twice on the same `root`
/// merges two universal gadgets at their roots.
fn build_u(t: &mut RootedTree, root: u32, inst: &FormulaPairInstance, node: usize) {
    match inst.node(node) {
        PairNode::Leaf { .. } => {
            t.add_child(root);
            t.add_child(root);
        }
        PairNode::Gate { op: Op::And, left, right } => {
            let (g1, g2) = and_skeleton(t, root);
            build_u(t, g1, inst, left);
            build_u(t, g2, inst, right);
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            let i1 = t.add_child(root);
            let i2 = t.add_child(root);
            let g1 = or_arm(t, i1, 1);
            let g2 = or_arm(t, i2, 2);
            build_u(t, g1, inst, left);
            build_u(t, g2, inst, right);
        }
    }
}

/// Both-sides AND skeleton under `root`: two arms with opposite
/// pendant lengths so neither child tree can cross over. Returns the
/// two attachment points for the child subtrees.
fn and_skeleton(t: &mut RootedTree, root: u32) -> (u32, u32) {
    let v1 = t.add_child(root);
    let v2 = t.add_child(root);
    let g1 = {
        pendant(t, v1, 1);
        let v3 = t.add_child(v1);
        pendant(t, v3, 2);
        let conn = t.add_child(v3);
        t.add_child(conn)
    };
    let g2 = {
        pendant(t, v2, 2);
        let v4 = t.add_child(v2);
        pendant(t, v4, 1);
        let conn = t.add_child(v4);
        t.add_child(conn)
    };
    (g1, g2)
}

/// One OR arm under intermediate `at`: arm 1 carries pendants (1, 2),
/// arm 2 pendants (2, 1). Returns the attachment point.
fn or_arm(t: &mut RootedTree, at: u32, which: usize) -> u32 {
    let (outer, inner) = if which == 1 { (1, 2) } else { (2, 1) };
    let v = t.add_child(at);
    pendant(t, v, outer);
    let w = t.add_child(v);
    pendant(t, w, inner);
    let conn = t.add_child(w);
    t.add_child(conn)
}

/// Node count of `tree_a_for_node(inst, node, i)` in closed form.
pub fn gadget_a_size(inst: &FormulaPairInstance, node: usize, i: usize) -> usize {
    match inst.node(node) {
        PairNode::Leaf { side: Side::A, slot } => {
            if inst.a_set[i][slot] {
                2
            } else {
                3
            }
        }
        PairNode::Leaf { side: Side::B, .. } => 3,
        PairNode::Gate { op: Op::And, left, right } => {
            13 + gadget_a_size(inst, left, i) + gadget_a_size(inst, right, i)
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            15 + gadget_a_size(inst, left, i) + gadget_a_size(inst, right, i)
        }
    }
}

/// Node count of `tree_b_for_node(inst, node, j)` in closed form.
pub fn gadget_b_size(inst: &FormulaPairInstance, node: usize, j: usize) -> usize {
    match inst.node(node) {
        PairNode::Leaf { side: Side::A, .. } => 2,
        PairNode::Leaf { side: Side::B, slot } => {
            if inst.b_set[j][slot] {
                3
            } else {
                2
            }
        }
        PairNode::Gate { op: Op::And, left, right } => {
            13 + gadget_b_size(inst, left, j) + gadget_b_size(inst, right, j)
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            // two real arms, a universal arm, and U_g root-merged from
            // the children's universal gadgets
            22 + gadget_b_size(inst, left, j)
                + gadget_b_size(inst, right, j)
                + universal_size(inst, left)
                + universal_size(inst, right)
                - 1
        }
    }
}

/// Node count of the universal gadget for `node` in closed form.
pub fn universal_size(inst: &FormulaPairInstance, node: usize) -> usize {
    match inst.node(node) {
        PairNode::Leaf { .. } => 3,
        PairNode::Gate { op: Op::And, left, right } => {
            13 + universal_size(inst, left) + universal_size(inst, right)
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            15 + universal_size(inst, left) + universal_size(inst, right)
        }
    }
}

/// Common height of every gadget tree of `node`, either side, any
/// assignment: leaves 1, AND adds 4 levels, OR adds 5.
pub fn gadget_height(inst: &FormulaPairInstance, node: usize) -> usize {
    match inst.node(node) {
        PairNode::Leaf { .. } => 1,
        PairNode::Gate { op, left, right } => {
            let step = match op {
                Op::And => 4,
                Op::Or => 5,
            };
            step + gadget_height(inst, left).max(gadget_height(inst, right))
        }
    }
}

/// Scaffold depth: smallest x with 2^x >= N.
pub fn scaffold_depth(n_padded: usize) -> usize {
    let mut x = 0;
    while (1usize << x) < n_padded {
        x += 1;
    }
    x
}

/// Nodes in a complete binary tree of height x.
pub fn complete_binary_size(x: usize) -> usize {
    (1usize << (x + 1)) - 1
}

/// Predicted node count of the final assignment-side tree.
pub fn final_a_size(inst: &FormulaPairInstance) -> usize {
    let n = inst.n_padded;
    let root = inst.root();
    let x = scaffold_depth(n);
    if x == 0 {
        return gadget_a_size(inst, root, 0);
    }
    let p = 1usize << x;
    let gadgets: usize = (0..p).map(|i| gadget_a_size(inst, root, i.min(n - 1))).sum();
    // scaffold + p paths of x-1 chain nodes + gadgets
    complete_binary_size(x) + p * (x - 1) + gadgets
}

/// Predicted node count of the final graph-side tree.
pub fn final_b_size(inst: &FormulaPairInstance) -> usize {
    let n = inst.n_padded;
    let root = inst.root();
    let x = scaffold_depth(n);
    if x == 0 {
        return gadget_b_size(inst, root, 0);
    }
    let p = 1usize << x;
    let u = universal_size(inst, root);
    let gadgets: usize = (0..n).map(|j| gadget_b_size(inst, root, j) - 1).sum();
    // scaffold + (p-1) universal paths + second scaffold sharing its
    // root with the last leaf + b-gadgets replacing its leaves
    complete_binary_size(x) + (p - 1) * (x - 1 + u) + (complete_binary_size(x) - 1) + gadgets
}

/// Common height of both final trees, `2x + gadget height`.
pub fn final_height(inst: &FormulaPairInstance) -> usize {
    2 * scaffold_depth(inst.n_padded) + gadget_height(inst, inst.root())
}

/// Grows a complete binary scaffold of depth `x` under `at`; returns
/// the 2^x leaves in order.
fn scaffold(t: &mut RootedTree, at: u32, x: usize) -> Vec<u32> {
    let mut frontier = vec![at];
    for _ in 0..x {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for v in frontier {
            next.push(t.add_child(v));
            next.push(t.add_child(v));
        }
        frontier = next;
    }
    frontier
}

/// Assembles the final tree pair.
///
/// T_A: complete binary tree of depth x, a path from every leaf, and
/// the i-th path ending at the root of `tree_a_for(i)` (the last
/// gadget repeated to fill 2^x slots). T_B: same scaffold; the first
/// 2^x - 1 paths end at copies of the universal tree, and the last
/// leaf roots a second scaffold whose first N leaves become the roots
/// of `tree_b_for(j)`, the rest staying bare. Both trees have height
/// 2x + H, so T_A's root must map to T_B's root; counting paths, some
/// a-gadget must land on the b-branch, where it meets every b-gadget
/// at its own level.
pub fn build_final_subtree(inst: &FormulaPairInstance) -> FinalSubtreeInstance {
    let n = inst.n_padded;
    let root = inst.root();
    let x = scaffold_depth(n);

    let mut t_a = RootedTree::leaf();
    let leaves = scaffold(&mut t_a, 0, x);
    for (idx, leaf) in leaves.into_iter().enumerate() {
        let i = idx.min(n - 1);
        let at = pendant(&mut t_a, leaf, x.saturating_sub(1));
        let g = if x == 0 { at } else { t_a.add_child(at) };
        build_a(&mut t_a, g, inst, root, &inst.a_set[i]);
    }

    let mut t_b = RootedTree::leaf();
    let leaves = scaffold(&mut t_b, 0, x);
    let (last, universal_leaves) = leaves.split_last().expect("scaffold has leaves");
    for &leaf in universal_leaves {
        let at = pendant(&mut t_b, leaf, x - 1);
        let u = t_b.add_child(at);
        build_u(&mut t_b, u, inst, root);
    }
    let second = scaffold(&mut t_b, *last, x);
    for (j, leaf) in second.into_iter().enumerate() {
        if j < n {
            build_b(&mut t_b, leaf, inst, root, &inst.b_set[j]);
        }
    }

    FinalSubtreeInstance {
        t_a,
        t_b,
        n_padded: n,
        x,
        source_n: inst.source_n,
        source_s: inst.source_s,
        seed: None,
    }
}
