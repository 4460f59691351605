//! Half-split lowering of Formula-SAT to a formula-pair question: a
//! single-use formula whose leaves read slots of one of two assignment
//! sets A and B, satisfiable iff some (a, b) pair evaluates to 1.
//!
//! Variables 1..=ceil(n/2) go to the A side, the rest to the B side.
//! Each original leaf becomes a fresh slot on its variable's side, and
//! its negation is folded into the projected vectors, so the pair
//! formula itself is negation-free and reads every slot exactly once.

use crate::formula::{Formula, FormulaNode, Op};
use thiserror::Error;

/// Work cap for [`brute_force_pair`]: at most this many (i, j) evaluations.
pub const DEFAULT_PAIR_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairNode {
    Leaf { side: Side, slot: usize },
    Gate { op: Op, left: usize, right: usize },
}

/// Single-use pair formula plus the two projected assignment sets.
///
/// After construction `a_set` and `b_set` both hold `n_padded` vectors;
/// the originally smaller side is padded by repeating its last element,
/// which cannot introduce new satisfying pairs.
#[derive(Clone, Debug)]
pub struct FormulaPairInstance {
    nodes: Vec<PairNode>,
    root: usize,
    pub a_set: Vec<Vec<bool>>,
    pub b_set: Vec<Vec<bool>>,
    pub n_padded: usize,
    pub m_a: usize,
    pub m_b: usize,
    pub source_n: usize,
    pub source_s: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("assignment index {index} out of range (sets hold {len} vectors)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{evals} pair evaluations exceed the cap of {cap}")]
    CapExceeded { evals: u64, cap: u64 },
}

impl FormulaPairInstance {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> PairNode {
        self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Leaf count of the pair formula; equals the source formula's size.
    pub fn size(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, PairNode::Leaf { .. }))
            .count()
    }

    /// Leaves under `id`, the size measure of that subformula.
    pub fn size_of(&self, id: usize) -> usize {
        match self.nodes[id] {
            PairNode::Leaf { .. } => 1,
            PairNode::Gate { left, right, .. } => self.size_of(left) + self.size_of(right),
        }
    }

    /// Position of the half-assignment of variables `1..=ceil(n/2)`
    /// inside `a_set`, given the full original assignment.
    pub fn a_index(&self, x: &crate::formula::Assignment) -> usize {
        let half = self.source_n.div_ceil(2);
        (1..=half).filter(|&v| x.bit(v)).map(|v| 1usize << (v - 1)).sum()
    }

    /// Position of the other half inside the unpadded prefix of `b_set`.
    pub fn b_index(&self, x: &crate::formula::Assignment) -> usize {
        let half = self.source_n.div_ceil(2);
        (half + 1..=self.source_n)
            .filter(|&v| x.bit(v))
            .map(|v| 1usize << (v - half - 1))
            .sum()
    }
}

/// Lowers `f` by splitting its variable range in half.
///
/// `a_set` enumerates all assignments of the first `ceil(n/2)` variables
/// (index encodes bits), projected through each A-leaf's negation;
/// likewise `b_set` for the remaining variables. For every original
/// assignment `x`, `evaluate_pair(inst, a_index(x), b_index(x))` equals
/// `evaluate(f, x)`.
pub fn split_to_pair(f: &Formula) -> FormulaPairInstance {
    let n = f.num_vars();
    let s = f.size();
    let half = n.div_ceil(2);

    // leaf -> (side, slot, var, negated), slots handed out in node order
    let mut nodes = Vec::with_capacity(f.node_count());
    let mut a_leaves: Vec<(usize, bool)> = Vec::new(); // (var, negated) per slot
    let mut b_leaves: Vec<(usize, bool)> = Vec::new();
    for id in 0..f.node_count() {
        nodes.push(match f.node(id) {
            FormulaNode::Leaf { var, negated } => {
                if var <= half {
                    a_leaves.push((var, negated));
                    PairNode::Leaf { side: Side::A, slot: a_leaves.len() - 1 }
                } else {
                    b_leaves.push((var, negated));
                    PairNode::Leaf { side: Side::B, slot: b_leaves.len() - 1 }
                }
            }
            FormulaNode::Gate { op, left, right } => PairNode::Gate { op, left, right },
        });
    }

    let project = |leaves: &[(usize, bool)], first_var: usize, bits: usize| -> Vec<bool> {
        leaves
            .iter()
            .map(|&(var, negated)| ((bits >> (var - first_var)) & 1 == 1) ^ negated)
            .collect()
    };
    let mut a_set: Vec<Vec<bool>> =
        (0..1usize << half).map(|bits| project(&a_leaves, 1, bits)).collect();
    let mut b_set: Vec<Vec<bool>> =
        (0..1usize << (n - half)).map(|bits| project(&b_leaves, half + 1, bits)).collect();

    // pad the smaller side by repeating its last element
    let n_padded = a_set.len().max(b_set.len());
    while a_set.len() < n_padded {
        a_set.push(a_set.last().unwrap().clone());
    }
    while b_set.len() < n_padded {
        b_set.push(b_set.last().unwrap().clone());
    }

    FormulaPairInstance {
        nodes,
        root: f.root(),
        m_a: a_leaves.len(),
        m_b: b_leaves.len(),
        a_set,
        b_set,
        n_padded,
        source_n: n,
        source_s: s,
    }
}

/// Pair formula value with A-leaves reading `a_set[i]`, B-leaves `b_set[j]`.
pub fn evaluate_pair(inst: &FormulaPairInstance, i: usize, j: usize) -> Result<bool, PairError> {
    evaluate_pair_at(inst, inst.root(), i, j)
}

/// Value of the subformula rooted at `node` under `(a_set[i], b_set[j])`;
/// per-gate invariant checks compare this with standalone gadget decisions.
pub fn evaluate_pair_at(
    inst: &FormulaPairInstance,
    node: usize,
    i: usize,
    j: usize,
) -> Result<bool, PairError> {
    check_index(inst, i)?;
    check_index(inst, j)?;
    Ok(eval_pair_node(inst, node, &inst.a_set[i], &inst.b_set[j]))
}

fn check_index(inst: &FormulaPairInstance, index: usize) -> Result<(), PairError> {
    if index >= inst.n_padded {
        return Err(PairError::IndexOutOfRange { index, len: inst.n_padded });
    }
    Ok(())
}

pub(crate) fn eval_pair_node(
    inst: &FormulaPairInstance,
    id: usize,
    a: &[bool],
    b: &[bool],
) -> bool {
    match inst.node(id) {
        PairNode::Leaf { side: Side::A, slot } => a[slot],
        PairNode::Leaf { side: Side::B, slot } => b[slot],
        PairNode::Gate { op, left, right } => {
            let l = eval_pair_node(inst, left, a, b);
            let r = eval_pair_node(inst, right, a, b);
            match op {
                Op::And => l && r,
                Op::Or => l || r,
            }
        }
    }
}

/// Test-only constructor for shapes the splitter never produces (N = 1,
/// custom bit sets); reduction unit tests exercise degenerate assemblies
/// with it.
#[cfg(test)]
pub(crate) fn hand_instance(
    nodes: Vec<PairNode>,
    root: usize,
    a_set: Vec<Vec<bool>>,
    b_set: Vec<Vec<bool>>,
) -> FormulaPairInstance {
    assert_eq!(a_set.len(), b_set.len());
    let m_a = a_set[0].len();
    let m_b = b_set[0].len();
    let n_padded = a_set.len();
    let source_s = nodes
        .iter()
        .filter(|n| matches!(n, PairNode::Leaf { .. }))
        .count();
    FormulaPairInstance {
        nodes,
        root,
        a_set,
        b_set,
        n_padded,
        m_a,
        m_b,
        source_n: 1,
        source_s,
    }
}

/// First (i, j) with `evaluate_pair(inst, i, j) == 1`, scanning row-major.
pub fn brute_force_pair(inst: &FormulaPairInstance) -> Result<Option<(usize, usize)>, PairError> {
    brute_force_pair_capped(inst, DEFAULT_PAIR_CAP)
}

pub fn brute_force_pair_capped(
    inst: &FormulaPairInstance,
    cap: u64,
) -> Result<Option<(usize, usize)>, PairError> {
    let evals = (inst.n_padded as u64) * (inst.n_padded as u64);
    if evals > cap {
        return Err(PairError::CapExceeded { evals, cap });
    }
    for i in 0..inst.n_padded {
        for j in 0..inst.n_padded {
            if eval_pair_node(inst, inst.root(), &inst.a_set[i], &inst.b_set[j]) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}
