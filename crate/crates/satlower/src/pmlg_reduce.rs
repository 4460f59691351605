//! Compiles a formula-pair instance into one pattern + one labeled graph
//! whose pattern occurrence question decides the pair question.
//!
//! Per-gate gadgets: the pattern for assignment `a_set[i]` spells the
//! formula tree with leaves expanded to `1·a_i·1` (A side) or `111`
//! (B side) and every gate wrapped in `1..1`; the graph for `b_set[j]`
//! is a leveled DAG whose maximal source-to-sink paths all have exactly
//! the pattern's length and spell exactly the gate's accepted strings.
//! OR gates splice in universal blocks `U(x)` that match every length-x
//! binary string starting and ending with '1', so a walk can satisfy
//! either branch while spelling both child patterns.
//!
//! The final instance concatenates all N per-assignment patterns with
//! '$' separators ("$$P_1$P_2$...$P_N$$") over a graph holding all N
//! per-assignment gadgets plus '$'-separated universal chains that
//! spell every block except the one a gadget decides. A walk spelling
//! the whole pattern exists iff some pattern block P_i fits through
//! some gadget G_j, i.e. iff some (i, j) satisfies the pair formula.

use crate::fpair::{FormulaPairInstance, PairNode, Side};
use crate::labeled_graph::{LabeledGraph, Pattern};
use crate::formula::Op;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("assignment index {index} out of range (sets hold {len} vectors)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("universal block length {0} must be at least 3")]
    UniversalTooShort(usize),
}

/// A gadget fragment: every maximal path runs `source -> sink`, both
/// labeled '1', and all such paths have the same vertex count.
#[derive(Clone, Debug)]
pub struct GateGraph {
    pub graph: LabeledGraph,
    pub source: u32,
    pub sink: u32,
}

/// The assembled pattern/graph pair for one lowered formula.
#[derive(Clone, Debug)]
pub struct FinalPmlgInstance {
    pub graph: LabeledGraph,
    pub pattern: Pattern,
    /// Common set size N; the pattern holds one block per a-assignment.
    pub n_padded: usize,
    /// Per-block pattern length, `5s - 2`.
    pub mu: usize,
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

/// Pattern length of the gadget for the subformula at `node`: 3 per
/// leaf plus 2 per gate, i.e. `5*size - 2`, independent of assignments.
pub fn gate_pattern_len(inst: &FormulaPairInstance, node: usize) -> usize {
    5 * inst.size_of(node) - 2
}

/// Per-assignment pattern for the whole pair formula.
pub fn pattern_for(inst: &FormulaPairInstance, i: usize) -> Result<Pattern, ReduceError> {
    pattern_for_node(inst, inst.root(), i)
}

/// Per-assignment pattern for the subformula rooted at `node`.
pub fn pattern_for_node(
    inst: &FormulaPairInstance,
    node: usize,
    i: usize,
) -> Result<Pattern, ReduceError> {
    check_index(inst, i)?;
    let mut chars = Vec::with_capacity(gate_pattern_len(inst, node));
    pattern_bytes(inst, node, &inst.a_set[i], &mut chars);
    Ok(Pattern::from_bytes(chars).expect("gadget patterns are nonempty over {0,1}"))
}

fn pattern_bytes(inst: &FormulaPairInstance, node: usize, a: &[bool], out: &mut Vec<u8>) {
    match inst.node(node) {
        PairNode::Leaf { side: Side::A, slot } => {
            out.push(b'1');
            out.push(if a[slot] { b'1' } else { b'0' });
            out.push(b'1');
        }
        PairNode::Leaf { side: Side::B, .. } => out.extend_from_slice(b"111"),
        PairNode::Gate { left, right, .. } => {
            out.push(b'1');
            pattern_bytes(inst, left, a, out);
            pattern_bytes(inst, right, a, out);
            out.push(b'1');
        }
    }
}

/// Standalone per-assignment gadget graph for the whole pair formula.
pub fn graph_for(inst: &FormulaPairInstance, j: usize) -> Result<GateGraph, ReduceError> {
    graph_for_node(inst, inst.root(), j)
}

/// Standalone gadget graph for the subformula rooted at `node`.
pub fn graph_for_node(
    inst: &FormulaPairInstance,
    node: usize,
    j: usize,
) -> Result<GateGraph, ReduceError> {
    check_index(inst, j)?;
    let mut graph = LabeledGraph::new();
    let (source, sink) = append_gate(&mut graph, inst, node, &inst.b_set[j]);
    Ok(GateGraph { graph, source, sink })
}

/// Universal block: matches a length-x string over {0,1} iff it starts
/// and ends with '1'. 2x-2 vertices, 4x-8 edges.
pub fn universal_gadget(x: usize) -> Result<GateGraph, ReduceError> {
    if x < 3 {
        return Err(ReduceError::UniversalTooShort(x));
    }
    let mut graph = LabeledGraph::new();
    let (source, sink) = append_universal(&mut graph, x);
    Ok(GateGraph { graph, source, sink })
}

fn append_universal(g: &mut LabeledGraph, x: usize) -> (u32, u32) {
    debug_assert!(x >= 3);
    let source = g.add_vertex(b'1').unwrap();
    let mut prev = vec![source];
    for _ in 0..x - 2 {
        let zero = g.add_vertex(b'0').unwrap();
        let one = g.add_vertex(b'1').unwrap();
        for &p in &prev {
            g.add_edge(p, zero).unwrap();
            g.add_edge(p, one).unwrap();
        }
        prev = vec![zero, one];
    }
    let sink = g.add_vertex(b'1').unwrap();
    for &p in &prev {
        g.add_edge(p, sink).unwrap();
    }
    (source, sink)
}

fn append_gate(
    g: &mut LabeledGraph,
    inst: &FormulaPairInstance,
    node: usize,
    b: &[bool],
) -> (u32, u32) {
    match inst.node(node) {
        PairNode::Leaf { side, slot } => {
            let mid_label = match side {
                Side::A => b'1',
                Side::B => {
                    if b[slot] {
                        b'1'
                    } else {
                        b'0'
                    }
                }
            };
            let source = g.add_vertex(b'1').unwrap();
            let mid = g.add_vertex(mid_label).unwrap();
            let sink = g.add_vertex(b'1').unwrap();
            g.add_edge(source, mid).unwrap();
            g.add_edge(mid, sink).unwrap();
            (source, sink)
        }
        PairNode::Gate { op: Op::And, left, right } => {
            let source = g.add_vertex(b'1').unwrap();
            let (ls, lk) = append_gate(g, inst, left, b);
            let (rs, rk) = append_gate(g, inst, right, b);
            let sink = g.add_vertex(b'1').unwrap();
            g.add_edge(source, ls).unwrap();
            g.add_edge(lk, rs).unwrap();
            g.add_edge(rk, sink).unwrap();
            (source, sink)
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            // either the walk takes G_left then U(|P_right|), or
            // U(|P_left|) then G_right; both spell P_left P_right
            let p_left = gate_pattern_len(inst, left);
            let p_right = gate_pattern_len(inst, right);
            let source = g.add_vertex(b'1').unwrap();
            let (ls, lk) = append_gate(g, inst, left, b);
            let (uls, ulk) = append_universal(g, p_left);
            let (rs, rk) = append_gate(g, inst, right, b);
            let (urs, urk) = append_universal(g, p_right);
            let sink = g.add_vertex(b'1').unwrap();
            g.add_edge(source, ls).unwrap();
            g.add_edge(source, uls).unwrap();
            g.add_edge(lk, urs).unwrap();
            g.add_edge(ulk, rs).unwrap();
            g.add_edge(urk, sink).unwrap();
            g.add_edge(rk, sink).unwrap();
            (source, sink)
        }
    }
}

/// Checks that a fragment is leveled: the source is the only entry, the
/// sink the only exit, every vertex is on a source-to-sink path, and
/// every edge advances exactly one level. Returns the uniform maximal
/// path length in vertices.
pub fn uniform_path_length(gg: &GateGraph) -> Option<usize> {
    let g = &gg.graph;
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for (u, v) in g.edges() {
        outdeg[u as usize] += 1;
        indeg[v as usize] += 1;
    }
    for v in 0..n {
        let is_source = v == gg.source as usize;
        let is_sink = v == gg.sink as usize;
        if (indeg[v] == 0) != is_source || (outdeg[v] == 0) != is_sink {
            return None;
        }
    }
    let mut level = vec![usize::MAX; n];
    level[gg.source as usize] = 0;
    let mut queue = std::collections::VecDeque::from([gg.source]);
    while let Some(u) = queue.pop_front() {
        for &w in g.out_neighbors(u) {
            let want = level[u as usize] + 1;
            if level[w as usize] == usize::MAX {
                level[w as usize] = want;
                queue.push_back(w);
            } else if level[w as usize] != want {
                return None;
            }
        }
    }
    if level.contains(&usize::MAX) {
        return None;
    }
    Some(level[gg.sink as usize] + 1)
}

/// Predicted final pattern length, `N * (mu + 1) + 3`.
pub fn final_pattern_len(inst: &FormulaPairInstance) -> usize {
    inst.n_padded * (gate_pattern_len(inst, inst.root()) + 1) + 3
}

pub fn universal_vertex_count(x: usize) -> usize {
    2 * x - 2
}

pub fn universal_edge_count(x: usize) -> usize {
    4 * x - 8
}

/// Vertices of the gadget for the subformula at `node` (bit-independent).
pub fn gate_graph_vertex_count(inst: &FormulaPairInstance, node: usize) -> usize {
    match inst.node(node) {
        PairNode::Leaf { .. } => 3,
        PairNode::Gate { op: Op::And, left, right } => {
            gate_graph_vertex_count(inst, left) + gate_graph_vertex_count(inst, right) + 2
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            gate_graph_vertex_count(inst, left)
                + gate_graph_vertex_count(inst, right)
                + universal_vertex_count(gate_pattern_len(inst, left))
                + universal_vertex_count(gate_pattern_len(inst, right))
                + 2
        }
    }
}

/// Edges of the gadget for the subformula at `node` (bit-independent).
pub fn gate_graph_edge_count(inst: &FormulaPairInstance, node: usize) -> usize {
    match inst.node(node) {
        PairNode::Leaf { .. } => 2,
        PairNode::Gate { op: Op::And, left, right } => {
            gate_graph_edge_count(inst, left) + gate_graph_edge_count(inst, right) + 3
        }
        PairNode::Gate { op: Op::Or, left, right } => {
            gate_graph_edge_count(inst, left)
                + gate_graph_edge_count(inst, right)
                + universal_edge_count(gate_pattern_len(inst, left))
                + universal_edge_count(gate_pattern_len(inst, right))
                + 6
        }
    }
}

/// Predicted vertex count of [`build_final_pmlg`]'s graph.
pub fn final_vertex_count(inst: &FormulaPairInstance) -> usize {
    let n = inst.n_padded;
    let vg = gate_graph_vertex_count(inst, inst.root());
    let mu = gate_pattern_len(inst, inst.root());
    if n == 1 {
        // direct entry pair, gadget, separator, tail
        return vg + 4;
    }
    // gadgets + m/f/d per gadget + top-chain '$'s + taps/exit '$'s
    // + universal blocks on both chains
    n * vg + 4 * n + (2 * n - 1) + 3 * (2 * n - 2) + (2 * n - 2) * (4 * mu - 4)
}

/// Predicted edge count of [`build_final_pmlg`]'s graph.
pub fn final_edge_count(inst: &FormulaPairInstance) -> usize {
    let n = inst.n_padded;
    let eg = gate_graph_edge_count(inst, inst.root());
    let mu = gate_pattern_len(inst, inst.root());
    if n == 1 {
        return eg + 4;
    }
    n * eg + 6 * n + 5 * (2 * n - 2) + (2 * n - 3) + (2 * n - 2) * (8 * mu - 16)
}

/// Assembles the final pattern and graph.
///
/// Graph layout for N >= 2 (all named vertices are labeled '$'):
/// * middle row: gadgets `G_1..G_N` (one per b-assignment), each with a
///   separator `m_q` after its sink and a dead-end tail `f_q` behind it
///   (the route when the gadget hosts the last pattern block);
/// * direct entries: `d_q1 -> d_q2 -> source(G_q)` spell the leading
///   "$$" when the gadget hosts the first block;
/// * top chain: '$' vertices `t_1..t_{2N-1}` interleaved with 2N-2
///   universal blocks, entry taps `e_k -> t_k`, and exits
///   `t_{N-1+q} -> source(G_q)`; entering at `e_{N+q-p}` spells
///   "$$P_1$..$P_{p-1}$" before G_q hosts block p (p >= 2);
/// * bottom chain: `m_q` feeds universal block q of a second chain of
///   2N-2 blocks joined by '$' vertices `s_k`, each with a dead-end
///   exit `x_k`; it spells "$P_{p+1}$..$P_N$" plus the final '$'.
///
/// A walk spelling the whole pattern must route exactly one block
/// through one gadget; every other block crosses universal blocks.
pub fn build_final_pmlg(inst: &FormulaPairInstance) -> FinalPmlgInstance {
    let n = inst.n_padded;
    let root = inst.root();
    let mu = gate_pattern_len(inst, root);

    let mut chars = Vec::with_capacity(final_pattern_len(inst));
    chars.extend_from_slice(b"$$");
    for i in 0..n {
        if i > 0 {
            chars.push(b'$');
        }
        pattern_bytes(inst, root, &inst.a_set[i], &mut chars);
    }
    chars.extend_from_slice(b"$$");
    let pattern = Pattern::from_bytes(chars).expect("final patterns are nonempty");

    let mut g = LabeledGraph::new();
    let mut sources = Vec::with_capacity(n);
    let mut sinks = Vec::with_capacity(n);
    for j in 0..n {
        let (s, k) = append_gate(&mut g, inst, root, &inst.b_set[j]);
        sources.push(s);
        sinks.push(k);
    }
    let mut seps = Vec::with_capacity(n); // m_q
    for q in 0..n {
        let m = g.add_vertex(b'$').unwrap();
        let f = g.add_vertex(b'$').unwrap();
        g.add_edge(sinks[q], m).unwrap();
        g.add_edge(m, f).unwrap();
        seps.push(m);
        let d1 = g.add_vertex(b'$').unwrap();
        let d2 = g.add_vertex(b'$').unwrap();
        g.add_edge(d1, d2).unwrap();
        g.add_edge(d2, sources[q]).unwrap();
    }

    if n >= 2 {
        // top chain
        let t: Vec<u32> = (0..2 * n - 1).map(|_| g.add_vertex(b'$').unwrap()).collect();
        for k in 0..2 * n - 2 {
            let (us, uk) = append_universal(&mut g, mu);
            g.add_edge(t[k], us).unwrap();
            g.add_edge(uk, t[k + 1]).unwrap();
            let e = g.add_vertex(b'$').unwrap();
            g.add_edge(e, t[k]).unwrap();
        }
        for q in 0..n {
            g.add_edge(t[n - 1 + q], sources[q]).unwrap();
        }
        // bottom chain
        let mut bsrc = Vec::with_capacity(2 * n - 2);
        let mut sjoin = Vec::with_capacity(2 * n - 2); // s_k
        for _ in 0..2 * n - 2 {
            let (bs, bk) = append_universal(&mut g, mu);
            let s = g.add_vertex(b'$').unwrap();
            let x = g.add_vertex(b'$').unwrap();
            g.add_edge(bk, s).unwrap();
            g.add_edge(s, x).unwrap();
            bsrc.push(bs);
            sjoin.push(s);
        }
        for k in 0..2 * n - 3 {
            g.add_edge(sjoin[k], bsrc[k + 1]).unwrap();
        }
        for q in 0..n {
            g.add_edge(seps[q], bsrc[q]).unwrap();
        }
    }

    FinalPmlgInstance {
        graph: g,
        pattern,
        n_padded: n,
        mu,
        source_n: inst.source_n,
        source_s: inst.source_s,
        seed: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{brute_force_sat, parse_formula, random_formula};
    use crate::fpair::{brute_force_pair, evaluate_pair_at, hand_instance, split_to_pair};
    use crate::labeled_graph::{oracle_pmlg, solve_pmlg, solve_pmlg_bitparallel};

    #[test]
    fn leaf_patterns() {
        let inst = split_to_pair(&parse_formula("x1").unwrap());
        assert_eq!(pattern_for(&inst, 0).unwrap().as_str(), "101");
        assert_eq!(pattern_for(&inst, 1).unwrap().as_str(), "111");
        // B-side leaves always contribute "111"
        let inst_b = split_to_pair(&parse_formula("x2").unwrap());
        assert_eq!(pattern_for(&inst_b, 0).unwrap().as_str(), "111");
        assert_eq!(pattern_for(&inst_b, 1).unwrap().as_str(), "111");
    }

    #[test]
    fn and_gate_pattern_expansion() {
        // two a-side leaves under one AND; x1=1, x2=1 projects (1, 0)
        // through the negation on the second leaf
        let inst = split_to_pair(&parse_formula("((x1&~x2)|x3)").unwrap());
        let crate::fpair::PairNode::Gate { left: and_gate, .. } = inst.node(inst.root()) else {
            panic!("root is the OR gate");
        };
        let p = pattern_for_node(&inst, and_gate, 3).unwrap();
        assert_eq!(p.as_str(), "11111011");
        assert_eq!(p.len(), 5 * 2 - 2);
    }

    #[test]
    fn pattern_length_is_assignment_independent() {
        for seed in 0..30u64 {
            let f = random_formula(1 + (seed as usize % 5), 2 + (seed as usize % 9), seed).formula;
            let inst = split_to_pair(&f);
            let want = 5 * f.size() - 2;
            for i in 0..inst.n_padded {
                assert_eq!(pattern_for(&inst, i).unwrap().len(), want);
            }
        }
    }

    #[test]
    fn a_leaf_graph_ignores_bits_b_leaf_reads_them() {
        let inst = split_to_pair(&parse_formula("x1").unwrap());
        for j in 0..2 {
            let gg = graph_for(&inst, j).unwrap();
            assert!(solve_pmlg(&gg.graph, &Pattern::new("111").unwrap()));
            assert!(!solve_pmlg(&gg.graph, &Pattern::new("101").unwrap()));
        }
        let inst_b = split_to_pair(&parse_formula("x2").unwrap());
        let g0 = graph_for(&inst_b, 0).unwrap(); // x2 = 0 spells 101
        assert!(!solve_pmlg(&g0.graph, &Pattern::new("111").unwrap()));
        let g1 = graph_for(&inst_b, 1).unwrap();
        assert!(solve_pmlg(&g1.graph, &Pattern::new("111").unwrap()));
    }

    #[test]
    fn universal_gadget_language_is_one_anything_one() {
        let gg = universal_gadget(3).unwrap();
        let matched: Vec<String> = (0..8u32)
            .map(|bits| format!("{bits:03b}"))
            .filter(|s| solve_pmlg(&gg.graph, &Pattern::new(s).unwrap()))
            .collect();
        assert_eq!(matched, vec!["101", "111"]);

        let g4 = universal_gadget(4).unwrap();
        let count = (0..16u32)
            .map(|bits| format!("{bits:04b}"))
            .filter(|s| solve_pmlg(&g4.graph, &Pattern::new(s).unwrap()))
            .count();
        assert_eq!(count, 4);
    }

    #[test]
    fn universal_gadget_counts_and_caps() {
        for x in 3..=10 {
            let gg = universal_gadget(x).unwrap();
            assert_eq!(gg.graph.vertex_count(), universal_vertex_count(x));
            assert_eq!(gg.graph.edge_count(), universal_edge_count(x));
            assert_eq!(uniform_path_length(&gg), Some(x));
        }
        assert!(matches!(universal_gadget(2), Err(ReduceError::UniversalTooShort(2))));
    }

    #[test]
    fn universal_gadget_matches_every_gate_pattern() {
        for seed in 0..20u64 {
            let f = random_formula(1 + (seed as usize % 4), 1 + (seed as usize % 7), seed).formula;
            let inst = split_to_pair(&f);
            let mu = gate_pattern_len(&inst, inst.root());
            let gg = universal_gadget(mu).unwrap();
            for i in 0..inst.n_padded {
                let p = pattern_for(&inst, i).unwrap();
                assert!(solve_pmlg(&gg.graph, &p));
            }
        }
    }

    #[test]
    fn gadget_decision_equals_gate_output_at_every_gate() {
        for seed in 0..60u64 {
            let n = 1 + (seed as usize % 4);
            let s = n + (seed as usize % 5);
            let f = random_formula(n, s, seed).formula;
            let inst = split_to_pair(&f);
            for node in 0..inst.node_count() {
                for i in 0..inst.n_padded {
                    let p = pattern_for_node(&inst, node, i).unwrap();
                    for j in 0..inst.n_padded {
                        let gg = graph_for_node(&inst, node, j).unwrap();
                        let want = evaluate_pair_at(&inst, node, i, j).unwrap();
                        assert_eq!(
                            solve_pmlg(&gg.graph, &p),
                            want,
                            "node {node} i {i} j {j} of {}",
                            crate::formula::render_formula(&f)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gadgets_are_leveled_with_one_labeled_endpoints() {
        for seed in 0..40u64 {
            let n = 1 + (seed as usize % 5);
            let s = n + (seed as usize % 6);
            let f = random_formula(n, s, seed).formula;
            let inst = split_to_pair(&f);
            for node in 0..inst.node_count() {
                let want_len = gate_pattern_len(&inst, node);
                for j in 0..inst.n_padded {
                    let gg = graph_for_node(&inst, node, j).unwrap();
                    assert_eq!(gg.graph.label(gg.source), b'1');
                    assert_eq!(gg.graph.label(gg.sink), b'1');
                    assert_eq!(uniform_path_length(&gg), Some(want_len));
                    assert_eq!(gg.graph.vertex_count(), gate_graph_vertex_count(&inst, node));
                    assert_eq!(gg.graph.edge_count(), gate_graph_edge_count(&inst, node));
                }
            }
        }
    }

    #[test]
    fn smallest_sat_instance_matches() {
        let inst = split_to_pair(&parse_formula("x1").unwrap());
        let fin = build_final_pmlg(&inst);
        assert_eq!(fin.pattern.as_str(), "$$101$111$$");
        assert_eq!(fin.pattern.len(), 11);
        assert_eq!(fin.mu, 3);
        // hand-counted assembly: 2 three-vertex gadgets, 8 bookkeeping
        // '$'s, 3 chain '$'s, 2 taps + 2 s + 2 x, 4 universal blocks of 4
        assert_eq!(fin.graph.vertex_count(), 39);
        assert_eq!(fin.graph.edge_count(), 43);
        assert_eq!(fin.graph.vertex_count(), final_vertex_count(&inst));
        assert_eq!(fin.graph.edge_count(), final_edge_count(&inst));
        assert!(solve_pmlg(&fin.graph, &fin.pattern));
        assert!(solve_pmlg_bitparallel(&fin.graph, &fin.pattern));
    }

    #[test]
    fn contradiction_does_not_match() {
        let inst = split_to_pair(&parse_formula("(x1&~x1)").unwrap());
        let fin = build_final_pmlg(&inst);
        assert!(!solve_pmlg(&fin.graph, &fin.pattern));
        assert!(!solve_pmlg_bitparallel(&fin.graph, &fin.pattern));
    }

    #[test]
    fn degenerate_single_assignment_assembly() {
        use crate::fpair::PairNode;
        for (bit, want) in [(true, true), (false, false)] {
            let inst = hand_instance(
                vec![PairNode::Leaf { side: Side::A, slot: 0 }],
                0,
                vec![vec![bit]],
                vec![vec![]],
            );
            let fin = build_final_pmlg(&inst);
            assert_eq!(fin.pattern.len(), 7);
            assert_eq!(fin.graph.vertex_count(), final_vertex_count(&inst));
            assert_eq!(fin.graph.edge_count(), final_edge_count(&inst));
            assert_eq!(solve_pmlg(&fin.graph, &fin.pattern), want);
            assert_eq!(oracle_pmlg(&fin.graph, &fin.pattern).unwrap(), want);
        }
    }

    #[test]
    fn final_counts_match_construction() {
        for seed in 0..40u64 {
            let n = 1 + (seed as usize % 5);
            let s = n + (seed as usize % 8);
            let f = random_formula(n, s, seed).formula;
            let inst = split_to_pair(&f);
            let fin = build_final_pmlg(&inst);
            assert_eq!(fin.pattern.len(), final_pattern_len(&inst), "pattern len");
            assert_eq!(fin.pattern.len(), inst.n_padded * (5 * s - 1) + 3, "closed form");
            assert_eq!(fin.graph.vertex_count(), final_vertex_count(&inst), "vertices");
            assert_eq!(fin.graph.edge_count(), final_edge_count(&inst), "edges");
        }
    }

    #[test]
    fn final_graph_is_a_bounded_degree_dag() {
        for seed in 0..25u64 {
            let n = 1 + (seed as usize % 5);
            let s = n + (seed as usize % 8);
            let f = random_formula(n, s, seed).formula;
            let fin = build_final_pmlg(&split_to_pair(&f));
            assert!(fin.graph.is_acyclic());
            assert!(fin.graph.max_total_degree() <= 4, "seed {seed}");
        }
    }

    #[test]
    fn final_decision_tracks_satisfiability() {
        for seed in 0..80u64 {
            let n = 1 + (seed as usize % 3);
            let s = n + (seed as usize % 4);
            let f = random_formula(n, s, seed).formula;
            let inst = split_to_pair(&f);
            let fin = build_final_pmlg(&inst);
            let sat = brute_force_sat(&f).unwrap().satisfiable;
            assert_eq!(brute_force_pair(&inst).unwrap().is_some(), sat);
            assert_eq!(
                solve_pmlg(&fin.graph, &fin.pattern),
                sat,
                "{}",
                crate::formula::render_formula(&f)
            );
        }
    }

    #[test]
    fn every_block_gadget_pairing_is_routable() {
        // force the match through each (block, gadget) pair by zeroing
        // all other evaluations: distinct-bit sets make row i / column j
        // the only satisfying pair
        use crate::fpair::PairNode;
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let a_set: Vec<Vec<bool>> = (0..n).map(|r| vec![r == i]).collect();
                let b_set: Vec<Vec<bool>> = (0..n).map(|c| vec![c == j]).collect();
                let inst = hand_instance(
                    vec![
                        PairNode::Leaf { side: Side::A, slot: 0 },
                        PairNode::Leaf { side: Side::B, slot: 0 },
                        PairNode::Gate { op: Op::And, left: 0, right: 1 },
                    ],
                    2,
                    a_set,
                    b_set,
                );
                let fin = build_final_pmlg(&inst);
                assert!(
                    solve_pmlg(&fin.graph, &fin.pattern),
                    "block {i} through gadget {j} must route"
                );
            }
        }
    }

    #[test]
    fn index_errors_are_reported() {
        let inst = split_to_pair(&parse_formula("x1").unwrap());
        assert!(matches!(
            pattern_for(&inst, 9),
            Err(ReduceError::IndexOutOfRange { index: 9, len: 2 })
        ));
        assert!(matches!(
            graph_for(&inst, 9),
            Err(ReduceError::IndexOutOfRange { index: 9, len: 2 })
        ));
    }
}
