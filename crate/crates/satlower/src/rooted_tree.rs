//! Unordered rooted trees, a subtree-containment solver, a brute-force
//! oracle, a balanced-parenthesis codec, and summary stats.
//!
//! Containment asks for an injective map from T1 into T2 that sends
//! children to children; the root of T1 may land on any node of T2.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::{Read, Write as IoWrite};
use thiserror::Error;

pub const ORACLE_MAX_TREE_NODES: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("oracle limited to trees of at most {cap} nodes (got {got})")]
    OracleCapExceeded { got: usize, cap: usize },
}

#[derive(Debug, Error)]
pub enum TreeCodecError {
    #[error("malformed tree text at byte {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error("tree i/o failed")]
    Io(#[from] std::io::Error),
}

/// Rooted tree with unordered children. Node ids are dense indices in
/// insertion order; the root is node 0 of a fresh tree.
#[derive(Clone, Debug)]
pub struct RootedTree {
    children: Vec<Vec<u32>>,
    root: u32,
}

impl RootedTree {
    /// Single-node tree.
    pub fn leaf() -> Self {
        RootedTree { children: vec![Vec::new()], root: 0 }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn size(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    /// Adds a fresh leaf under `parent` and returns its id.
    pub fn add_child(&mut self, parent: u32) -> u32 {
        assert!((parent as usize) < self.children.len(), "no such parent");
        let id = self.children.len() as u32;
        self.children.push(Vec::new());
        self.children[parent as usize].push(id);
        id
    }

    /// Copies the subtree of `src` rooted at `src_node` under `parent`;
    /// returns the id of the copied subtree's root.
    pub fn graft_from(&mut self, parent: u32, src: &RootedTree, src_node: u32) -> u32 {
        let new_root = self.add_child(parent);
        let mut stack = vec![(src_node, new_root)];
        while let Some((s, d)) = stack.pop() {
            for &c in src.children(s) {
                let nc = self.add_child(d);
                stack.push((c, nc));
            }
        }
        new_root
    }

    /// Copies all of `src` under `parent`.
    pub fn graft(&mut self, parent: u32, src: &RootedTree) -> u32 {
        self.graft_from(parent, src, src.root)
    }

    /// Longest root-to-leaf edge count.
    pub fn height(&self) -> usize {
        self.node_heights()[self.root as usize]
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Children-before-parent order.
    pub fn postorder(&self) -> Vec<u32> {
        let mut order = Vec::with_capacity(self.size());
        let mut stack = vec![(self.root, false)];
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                order.push(u);
                continue;
            }
            stack.push((u, true));
            for &c in self.children(u) {
                stack.push((c, false));
            }
        }
        order
    }

    /// Per-node height (leaf = 0).
    pub fn node_heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.size()];
        for u in self.postorder() {
            h[u as usize] = self
                .children(u)
                .iter()
                .map(|&c| h[c as usize] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Per-node subtree node counts.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut s = vec![1usize; self.size()];
        for u in self.postorder() {
            s[u as usize] = 1 + self.children(u).iter().map(|&c| s[c as usize]).sum::<usize>();
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub size: usize,
    pub height: usize,
    pub max_children: usize,
}

pub fn tree_stats(t: &RootedTree) -> TreeStats {
    TreeStats { size: t.size(), height: t.height(), max_children: t.max_children() }
}

/// True iff T1 embeds into T2: an injective map sending each node to a
/// node and each child edge to a child edge; T1's root may map to any
/// node of T2.
///
/// Bottom-up over T1 in postorder: `C(u, v)` holds iff u's children can
/// be injectively assigned to distinct children of v with `C` true on
/// every assigned pair, decided by augmenting-path bipartite matching.
/// Rows are bitsets over T2; height/size/arity pruning skips hopeless
/// pairs, and leaf rows are all ones.
pub fn contains(t1: &RootedTree, t2: &RootedTree) -> bool {
    let n1 = t1.size();
    let n2 = t2.size();
    if n1 > n2 {
        return false;
    }
    let h1 = t1.node_heights();
    let s1 = t1.subtree_sizes();
    let h2 = t2.node_heights();
    let s2 = t2.subtree_sizes();
    let words = n2.div_ceil(64);
    let mut rows = vec![0u64; n1 * words];
    let full_tail = if n2.is_multiple_of(64) { !0u64 } else { (1u64 << (n2 % 64)) - 1 };

    let order1 = t1.postorder();
    let mut matched: Vec<usize> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    for &u in &order1 {
        let base = u as usize * words;
        let cu = t1.children(u);
        if cu.is_empty() {
            for w in 0..words {
                rows[base + w] = if w + 1 == words { full_tail } else { !0 };
            }
            continue;
        }
        for v in 0..n2 as u32 {
            let cv = t2.children(v);
            if h1[u as usize] > h2[v as usize]
                || s1[u as usize] > s2[v as usize]
                || cu.len() > cv.len()
            {
                continue;
            }
            matched.clear();
            matched.resize(cv.len(), usize::MAX);
            let mut ok = true;
            for li in 0..cu.len() {
                seen.clear();
                seen.resize(cv.len(), false);
                if !augment(li, cu, cv, &rows, words, &mut matched, &mut seen) {
                    ok = false;
                    break;
                }
            }
            if ok {
                rows[base + v as usize / 64] |= 1u64 << (v % 64);
            }
        }
    }
    let base = t1.root as usize * words;
    rows[base..base + words].iter().any(|&w| w != 0)
}

fn augment(
    li: usize,
    cu: &[u32],
    cv: &[u32],
    rows: &[u64],
    words: usize,
    matched: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for (ri, &d) in cv.iter().enumerate() {
        if seen[ri] {
            continue;
        }
        let c = cu[li];
        if rows[c as usize * words + d as usize / 64] >> (d % 64) & 1 == 0 {
            continue;
        }
        seen[ri] = true;
        if matched[ri] == usize::MAX || augment(matched[ri], cu, cv, rows, words, matched, seen) {
            matched[ri] = li;
            return true;
        }
    }
    false
}

/// Exhaustive containment check: every root placement and every
/// injective child assignment, no matching shortcuts.
pub fn oracle_contains(t1: &RootedTree, t2: &RootedTree) -> Result<bool, TreeError> {
    for t in [t1, t2] {
        if t.size() > ORACLE_MAX_TREE_NODES {
            return Err(TreeError::OracleCapExceeded {
                got: t.size(),
                cap: ORACLE_MAX_TREE_NODES,
            });
        }
    }
    Ok((0..t2.size() as u32).any(|v| embed(t1, t2, t1.root, v)))
}

fn embed(t1: &RootedTree, t2: &RootedTree, u: u32, v: u32) -> bool {
    let cu = t1.children(u);
    let cv = t2.children(v);
    if cu.len() > cv.len() {
        return false;
    }
    assign(t1, t2, cu, cv, 0, 0)
}

fn assign(t1: &RootedTree, t2: &RootedTree, cu: &[u32], cv: &[u32], i: usize, used: u32) -> bool {
    if i == cu.len() {
        return true;
    }
    for (j, &d) in cv.iter().enumerate() {
        if used & (1 << j) != 0 {
            continue;
        }
        if embed(t1, t2, cu[i], d) && assign(t1, t2, cu, cv, i + 1, used | (1 << j)) {
            return true;
        }
    }
    false
}

/// Child-order-insensitive encoding: children encodings sorted, so two
/// trees get equal codes iff they are isomorphic as unordered trees.
pub fn canonical_code(t: &RootedTree) -> String {
    let mut codes: Vec<String> = vec![String::new(); t.size()];
    for u in t.postorder() {
        let mut kids: Vec<&str> =
            t.children(u).iter().map(|&c| codes[c as usize].as_str()).collect();
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
        code.push('(');
        for k in kids {
            code.push_str(k);
        }
        code.push(')');
        codes[u as usize] = code;
    }
    codes[t.root as usize].clone()
}

/// Writes the canonical single-line encoding plus a newline.
pub fn write_tree(t: &RootedTree, dest: &mut impl IoWrite) -> Result<(), TreeCodecError> {
    dest.write_all(canonical_code(t).as_bytes())?;
    dest.write_all(b"\n")?;
    Ok(())
}

/// Parses one balanced-parenthesis tree; surrounding whitespace is
/// ignored, anything else is rejected with its byte offset.
pub fn read_tree(source: &mut impl Read) -> Result<RootedTree, TreeCodecError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let trimmed = text.trim();
    let start = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(TreeCodecError::Malformed {
            offset: 0,
            message: "empty input".to_string(),
        });
    }
    let mut tree: Option<RootedTree> = None;
    let mut stack: Vec<u32> = Vec::new();
    for (i, b) in trimmed.bytes().enumerate() {
        let offset = start + i;
        match b {
            b'(' => {
                let id = match (&mut tree, stack.last()) {
                    (None, _) => {
                        tree = Some(RootedTree::leaf());
                        0
                    }
                    (Some(t), Some(&p)) => t.add_child(p),
                    (Some(_), None) => {
                        return Err(TreeCodecError::Malformed {
                            offset,
                            message: "more than one top-level tree".to_string(),
                        })
                    }
                };
                stack.push(id);
            }
            b')' => {
                if stack.pop().is_none() {
                    return Err(TreeCodecError::Malformed {
                        offset,
                        message: "unmatched ')'".to_string(),
                    });
                }
            }
            other => {
                return Err(TreeCodecError::Malformed {
                    offset,
                    message: format!("unexpected byte {:?}", other as char),
                })
            }
        }
    }
    if !stack.is_empty() {
        return Err(TreeCodecError::Malformed {
            offset: start + trimmed.len(),
            message: "unclosed '('".to_string(),
        });
    }
    Ok(tree.expect("nonempty balanced input yields a tree"))
}

/// Uniform random recursive tree: node k attaches to a uniformly random
/// earlier node. Deterministic in `seed`.
pub fn random_tree(size: usize, seed: u64) -> RootedTree {
    assert!(size >= 1, "trees have at least one node");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = RootedTree::leaf();
    for k in 1..size {
        let parent = rng.gen_range(0..k) as u32;
        t.add_child(parent);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> RootedTree {
        read_tree(&mut text.as_bytes()).unwrap()
    }

    fn star(leaves: usize) -> RootedTree {
        let mut t = RootedTree::leaf();
        for _ in 0..leaves {
            t.add_child(0);
        }
        t
    }

    fn path(nodes: usize) -> RootedTree {
        let mut t = RootedTree::leaf();
        let mut tip = 0;
        for _ in 1..nodes {
            tip = t.add_child(tip);
        }
        t
    }

    fn complete_binary(height: usize) -> RootedTree {
        let mut t = RootedTree::leaf();
        let mut frontier = vec![0u32];
        for _ in 0..height {
            let mut next = Vec::new();
            for v in frontier {
                next.push(t.add_child(v));
                next.push(t.add_child(v));
            }
            frontier = next;
        }
        t
    }

    #[test]
    fn stats_of_tiny_trees() {
        assert_eq!(tree_stats(&parse("()")), TreeStats { size: 1, height: 0, max_children: 0 });
        assert_eq!(
            tree_stats(&parse("(()())")),
            TreeStats { size: 3, height: 1, max_children: 2 }
        );
    }

    #[test]
    fn single_node_embeds_anywhere() {
        for seed in 0..20u64 {
            let t2 = random_tree(1 + (seed as usize % 12), seed);
            assert!(contains(&RootedTree::leaf(), &t2));
            assert!(oracle_contains(&RootedTree::leaf(), &t2).unwrap());
        }
    }

    #[test]
    fn arity_deficit_blocks_embedding() {
        let two = star(2);
        let one = star(1);
        assert!(!contains(&two, &one));
        assert!(!oracle_contains(&two, &one).unwrap());
        assert!(contains(&one, &two));
    }

    #[test]
    fn depth_deficit_blocks_embedding() {
        assert!(!contains(&path(3), &star(3)));
        assert!(!oracle_contains(&path(3), &star(3)).unwrap());
        assert!(contains(&star(1), &path(3)));
    }

    #[test]
    fn complete_binary_trees_nest() {
        assert!(contains(&complete_binary(2), &complete_binary(3)));
        assert!(!contains(&complete_binary(3), &complete_binary(2)));
        // the height-3 tree (15 nodes) exceeds the oracle cap, so the
        // oracle confirms one size down
        assert!(oracle_contains(&complete_binary(1), &complete_binary(2)).unwrap());
        assert!(!oracle_contains(&complete_binary(2), &complete_binary(1)).unwrap());
    }

    #[test]
    fn root_may_land_below_the_root() {
        // star(3) sits strictly inside path+star composite
        let mut t2 = path(3);
        for _ in 0..3 {
            t2.add_child(2);
        }
        assert!(contains(&star(3), &t2));
        assert!(oracle_contains(&star(3), &t2).unwrap());
    }

    #[test]
    fn solver_agrees_with_oracle_on_random_pairs() {
        for seed in 0..300u64 {
            let t1 = random_tree(1 + (seed as usize * 7 % 12), seed * 2 + 1);
            let t2 = random_tree(1 + (seed as usize * 5 % 12), seed * 2 + 2);
            assert_eq!(
                contains(&t1, &t2),
                oracle_contains(&t1, &t2).unwrap(),
                "seed {seed}: {} vs {}",
                canonical_code(&t1),
                canonical_code(&t2)
            );
        }
    }

    #[test]
    fn self_containment_and_leaf_monotonicity() {
        for seed in 0..40u64 {
            let t1 = random_tree(1 + (seed as usize % 10), seed + 500);
            let mut t2 = random_tree(1 + (seed as usize % 12), seed + 900);
            assert!(contains(&t1, &t1));
            let before = contains(&t1, &t2);
            t2.add_child((seed % t2.size() as u64) as u32);
            if before {
                assert!(contains(&t1, &t2), "adding a leaf must not break containment");
            }
        }
    }

    #[test]
    fn grafting_copies_subtrees() {
        let sub = parse("(()())");
        let mut t = path(2);
        let at = t.graft(1, &sub);
        assert_eq!(t.size(), 2 + sub.size());
        assert_eq!(canonical_code(&t), "(((()())))".to_string());
        assert_eq!(t.children(at).len(), 2);
    }

    #[test]
    fn codec_round_trips() {
        for text in ["()", "(()())", "((())()((())))"] {
            let t = parse(text);
            let mut out = Vec::new();
            write_tree(&t, &mut out).unwrap();
            let back = read_tree(&mut &out[..]).unwrap();
            assert_eq!(canonical_code(&t), canonical_code(&back));
        }
        for seed in 0..30u64 {
            let t = random_tree(1 + (seed as usize % 40), seed);
            let mut out = Vec::new();
            write_tree(&t, &mut out).unwrap();
            let back = read_tree(&mut &out[..]).unwrap();
            assert_eq!(canonical_code(&t), canonical_code(&back));
        }
    }

    #[test]
    fn canonical_write_is_child_order_insensitive() {
        // same shape, children inserted in opposite orders
        let mut a = RootedTree::leaf();
        let p = a.add_child(0);
        a.add_child(p);
        a.add_child(0);
        let mut b = RootedTree::leaf();
        b.add_child(0);
        let q = b.add_child(0);
        b.add_child(q);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_code(&a), "((())())");
    }

    #[test]
    fn codes_agree_with_isomorphism() {
        for seed in 0..300u64 {
            let a = random_tree(1 + (seed as usize % 8), seed * 3 + 1);
            let b = random_tree(1 + ((seed as usize + 3) % 8), seed * 3 + 2);
            let iso = a.size() == b.size() && oracle_contains(&a, &b).unwrap();
            assert_eq!(
                canonical_code(&a) == canonical_code(&b),
                iso,
                "seed {seed}: {} vs {}",
                canonical_code(&a),
                canonical_code(&b)
            );
        }
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        for (text, what) in [
            ("", "empty"),
            ("   \n", "empty"),
            ("(", "unclosed"),
            ("())", "unmatched"),
            ("()()", "top-level"),
            (")", "unmatched"),
            ("(x)", "unexpected"),
        ] {
            let err = read_tree(&mut text.as_bytes()).unwrap_err();
            let msg = err.to_string();
            assert!(msg.contains(what) || matches!(err, TreeCodecError::Malformed { .. }), "{text:?}: {msg}");
            assert!(matches!(err, TreeCodecError::Malformed { .. }), "{text:?}");
        }
    }

    #[test]
    fn oracle_enforces_size_cap() {
        let big = random_tree(15, 1);
        let small = random_tree(3, 2);
        assert_eq!(
            oracle_contains(&small, &big),
            Err(TreeError::OracleCapExceeded { got: 15, cap: 14 })
        );
        assert_eq!(
            oracle_contains(&big, &small),
            Err(TreeError::OracleCapExceeded { got: 15, cap: 14 })
        );
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_tree(30, 7);
        let b = random_tree(30, 7);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let c = random_tree(30, 8);
        assert_ne!(canonical_code(&a), canonical_code(&c));
    }
}
