//! deMorgan formulas: binary AND/OR trees whose leaves are possibly
//! negated variables. Size is the number of leaves, a leaf has height 1,
//! and negation appears only at leaves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest variable count accepted by [`brute_force_sat`].
pub const DEFAULT_SAT_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    And,
    Or,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaNode {
    Leaf { var: usize, negated: bool },
    Gate { op: Op, left: usize, right: usize },
}

/// Binary AND/OR tree over variables `1..=num_vars`, negations on leaves only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    nodes: Vec<FormulaNode>,
    root: usize,
    num_vars: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable index 0 at offset {offset}; variables start at x1")]
    ZeroVariable { offset: usize },
    #[error("assignment has {got} bits but the formula reads {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("{vars} variables exceed the brute-force cap of {cap}")]
    SatCapExceeded { vars: usize, cap: usize },
}

impl Formula {
    /// Single-leaf formula `x<var>` or `~x<var>`.
    pub fn leaf(var: usize, negated: bool) -> Formula {
        assert!(var >= 1, "variables are 1-based");
        Formula {
            nodes: vec![FormulaNode::Leaf { var, negated }],
            root: 0,
            num_vars: var,
        }
    }

    /// Joins two formulas under a fresh gate; variable ranges are unioned.
    pub fn gate(op: Op, left: &Formula, right: &Formula) -> Formula {
        let mut nodes = left.nodes.clone();
        let offset = nodes.len();
        for node in &right.nodes {
            nodes.push(match *node {
                FormulaNode::Leaf { var, negated } => FormulaNode::Leaf { var, negated },
                FormulaNode::Gate { op, left, right } => FormulaNode::Gate {
                    op,
                    left: left + offset,
                    right: right + offset,
                },
            });
        }
        let root = nodes.len();
        nodes.push(FormulaNode::Gate {
            op,
            left: left.root,
            right: right.root + offset,
        });
        Formula {
            nodes,
            root,
            num_vars: left.num_vars.max(right.num_vars),
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> FormulaNode {
        self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Leaf count; the size measure `s`.
    pub fn size(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, FormulaNode::Leaf { .. }))
            .count()
    }

    pub fn gate_count(&self) -> usize {
        self.nodes.len() - self.size()
    }

    /// Height with leaves counting as 1.
    pub fn height(&self) -> usize {
        self.height_of(self.root)
    }

    fn height_of(&self, id: usize) -> usize {
        match self.nodes[id] {
            FormulaNode::Leaf { .. } => 1,
            FormulaNode::Gate { left, right, .. } => {
                1 + self.height_of(left).max(self.height_of(right))
            }
        }
    }

    /// Sorted list of distinct variables that actually appear on leaves.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_vars + 1];
        for node in &self.nodes {
            if let FormulaNode::Leaf { var, .. } = *node {
                seen[var] = true;
            }
        }
        (1..=self.num_vars).filter(|&v| seen[v]).collect()
    }
}

/// One bit per variable; bit `v` is read by leaves of variable `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Assignment {
        Assignment { bits }
    }

    /// Assignment encoded as an integer: bit `v-1` of `index` is variable `v`.
    pub fn from_index(num_vars: usize, index: u64) -> Assignment {
        Assignment {
            bits: (0..num_vars).map(|v| (index >> v) & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of 1-based variable `var`.
    pub fn bit(&self, var: usize) -> bool {
        self.bits[var - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Grammar (whitespace ignored):
/// `formula := term | '(' formula op formula ')'`,
/// `term := '~'? 'x' [1-9][0-9]*`, `op := '&' | '|'`.
/// Negation binds only to variables, so deMorgan form is enforced here.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let formula = parse_expr(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(FormulaError::Syntax {
            offset: pos,
            message: format!("unexpected trailing input '{}'", bytes[pos] as char),
        });
    }
    Ok(formula)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_expr(bytes: &[u8], pos: &mut usize) -> Result<Formula, FormulaError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let left = parse_expr(bytes, pos)?;
            skip_ws(bytes, pos);
            let op = match bytes.get(*pos) {
                Some(b'&') => Op::And,
                Some(b'|') => Op::Or,
                other => {
                    return Err(FormulaError::Syntax {
                        offset: *pos,
                        message: match other {
                            Some(c) => format!("expected '&' or '|', found '{}'", *c as char),
                            None => "expected '&' or '|', found end of input".to_string(),
                        },
                    })
                }
            };
            *pos += 1;
            let right = parse_expr(bytes, pos)?;
            skip_ws(bytes, pos);
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(Formula::gate(op, &left, &right))
                }
                other => Err(FormulaError::Syntax {
                    offset: *pos,
                    message: match other {
                        Some(c) => format!("expected ')', found '{}'", *c as char),
                        None => "unbalanced parentheses: expected ')'".to_string(),
                    },
                }),
            }
        }
        _ => parse_term(bytes, pos),
    }
}

fn parse_term(bytes: &[u8], pos: &mut usize) -> Result<Formula, FormulaError> {
    skip_ws(bytes, pos);
    let mut negated = false;
    if bytes.get(*pos) == Some(&b'~') {
        negated = true;
        *pos += 1;
        skip_ws(bytes, pos);
    }
    match bytes.get(*pos) {
        Some(b'x') => {
            *pos += 1;
        }
        other => {
            return Err(FormulaError::Syntax {
                offset: *pos,
                message: match other {
                    Some(b'(') if negated => {
                        "negation applies only to variables, not subformulas".to_string()
                    }
                    Some(c) => format!("expected a variable, found '{}'", *c as char),
                    None => "expected a variable, found end of input".to_string(),
                },
            })
        }
    }
    let digit_start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digit_start {
        return Err(FormulaError::Syntax {
            offset: *pos,
            message: "expected a variable index after 'x'".to_string(),
        });
    }
    if bytes[digit_start] == b'0' {
        if *pos - digit_start == 1 {
            return Err(FormulaError::ZeroVariable {
                offset: digit_start,
            });
        }
        return Err(FormulaError::Syntax {
            offset: digit_start,
            message: "variable indices may not have leading zeros".to_string(),
        });
    }
    let var: usize = std::str::from_utf8(&bytes[digit_start..*pos])
        .unwrap()
        .parse()
        .map_err(|_| FormulaError::Syntax {
            offset: digit_start,
            message: "variable index too large".to_string(),
        })?;
    Ok(Formula::leaf(var, negated))
}

/// Fully parenthesized canonical text; `parse_formula` inverts it exactly.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    render_node(f, f.root(), &mut out);
    out
}

fn render_node(f: &Formula, id: usize, out: &mut String) {
    match f.node(id) {
        FormulaNode::Leaf { var, negated } => {
            if negated {
                out.push('~');
            }
            out.push('x');
            out.push_str(&var.to_string());
        }
        FormulaNode::Gate { op, left, right } => {
            out.push('(');
            render_node(f, left, out);
            out.push(match op {
                Op::And => '&',
                Op::Or => '|',
            });
            render_node(f, right, out);
            out.push(')');
        }
    }
}

/// Root value under `x`: a leaf yields its bit XOR negation, gates combine.
pub fn evaluate(f: &Formula, x: &Assignment) -> Result<bool, FormulaError> {
    if x.len() != f.num_vars() {
        return Err(FormulaError::AssignmentLength {
            got: x.len(),
            want: f.num_vars(),
        });
    }
    Ok(eval_node(f, f.root(), x))
}

fn eval_node(f: &Formula, id: usize, x: &Assignment) -> bool {
    match f.node(id) {
        FormulaNode::Leaf { var, negated } => x.bit(var) ^ negated,
        FormulaNode::Gate { op, left, right } => {
            let l = eval_node(f, left, x);
            let r = eval_node(f, right, x);
            match op {
                Op::And => l && r,
                Op::Or => l || r,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatResult {
    pub satisfiable: bool,
    pub witness: Option<Assignment>,
    pub count: u64,
}

/// Exhaustive satisfiability over all `2^num_vars` assignments.
pub fn brute_force_sat(f: &Formula) -> Result<SatResult, FormulaError> {
    brute_force_sat_capped(f, DEFAULT_SAT_CAP)
}

pub fn brute_force_sat_capped(f: &Formula, cap: usize) -> Result<SatResult, FormulaError> {
    let n = f.num_vars();
    if n > cap {
        return Err(FormulaError::SatCapExceeded { vars: n, cap });
    }
    let mut count = 0u64;
    let mut witness = None;
    for index in 0..(1u64 << n) {
        let x = Assignment::from_index(n, index);
        if eval_node(f, f.root(), &x) {
            count += 1;
            if witness.is_none() {
                witness = Some(x);
            }
        }
    }
    Ok(SatResult {
        satisfiable: witness.is_some(),
        witness,
        count,
    })
}

/// A draw from [`random_formula`]; `covers_all_vars` is false when `s < n`
/// made full variable coverage impossible.
#[derive(Clone, Debug)]
pub struct GeneratedFormula {
    pub formula: Formula,
    pub covers_all_vars: bool,
}

/// Deterministic random formula with exactly `s` leaves over variables
/// `1..=n`. When `s >= n` every variable is used at least once; gate ops
/// and leaf polarities are uniform.
pub fn random_formula(n: usize, s: usize, seed: u64) -> GeneratedFormula {
    assert!(n >= 1 && s >= 1, "need n >= 1 and s >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars: Vec<usize> = if s >= n {
        let mut pool: Vec<usize> = (1..=n).collect();
        pool.extend((0..s - n).map(|_| rng.gen_range(1..=n)));
        pool.shuffle(&mut rng);
        pool
    } else {
        (0..s).map(|_| rng.gen_range(1..=n)).collect()
    };
    let covers_all_vars = {
        let mut seen = vec![false; n + 1];
        for &v in &vars {
            seen[v] = true;
        }
        (1..=n).all(|v| seen[v])
    };
    vars.reverse(); // pop() hands leaves out left to right
    let mut formula = random_shape(s, &mut vars, &mut rng);
    // num_vars must stay n even when a subset is used, so leaves alone
    // decide coverage; rebuild with an explicit num_vars.
    formula.num_vars = n;
    GeneratedFormula {
        formula,
        covers_all_vars,
    }
}

fn random_shape(s: usize, vars: &mut Vec<usize>, rng: &mut ChaCha8Rng) -> Formula {
    if s == 1 {
        let var = vars.pop().expect("one variable per leaf");
        return Formula::leaf(var, rng.gen());
    }
    let split = rng.gen_range(1..s);
    let op = if rng.gen() { Op::And } else { Op::Or };
    let left = random_shape(split, vars, rng);
    let right = random_shape(s - split, vars, rng);
    Formula::gate(op, &left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_smallest_formula() {
        let f = parse_formula("x1").unwrap();
        assert_eq!(f.node(f.root()), FormulaNode::Leaf { var: 1, negated: false });
        assert_eq!(f.size(), 1);
        assert_eq!(f.num_vars(), 1);
        assert_eq!(f.height(), 1);
    }

    #[test]
    fn parses_gate_with_whitespace() {
        let f = parse_formula("(x1 & ~x2)").unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.num_vars(), 2);
        let FormulaNode::Gate { op, left, right } = f.node(f.root()) else {
            panic!("root must be a gate");
        };
        assert_eq!(op, Op::And);
        assert_eq!(f.node(left), FormulaNode::Leaf { var: 1, negated: false });
        assert_eq!(f.node(right), FormulaNode::Leaf { var: 2, negated: true });
    }

    #[test]
    fn parses_nested_formula_shape() {
        let f = parse_formula("((x1&x2)|~x1)").unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.gate_count(), 2);
        assert_eq!(f.height(), 3);
        let hand = Formula::gate(
            Op::Or,
            &Formula::gate(Op::And, &Formula::leaf(1, false), &Formula::leaf(2, false)),
            &Formula::leaf(1, true),
        );
        assert_eq!(render_formula(&f), render_formula(&hand));
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render_formula(&Formula::leaf(1, false)), "x1");
        let f = Formula::gate(Op::And, &Formula::leaf(1, false), &Formula::leaf(2, true));
        assert_eq!(render_formula(&f), "(x1&~x2)");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            parse_formula("x0"),
            Err(FormulaError::ZeroVariable { offset: 1 })
        ));
        assert!(matches!(parse_formula("(x1&x2"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("x1)"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula(""), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("x1 & x2"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("x01"), Err(FormulaError::Syntax { .. })));
        // internal negation is not part of the grammar
        assert!(matches!(parse_formula("~(x1&x2)"), Err(FormulaError::Syntax { .. })));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let Err(FormulaError::Syntax { offset, .. }) = parse_formula("(x1 % x2)") else {
            panic!("expected a syntax error");
        };
        assert_eq!(offset, 4);
    }

    #[test]
    fn evaluates_examples() {
        let f = parse_formula("(x1&~x2)").unwrap();
        assert!(evaluate(&f, &Assignment::new(vec![true, false])).unwrap());
        let g = parse_formula("(x1|x2)").unwrap();
        assert!(!evaluate(&g, &Assignment::new(vec![false, false])).unwrap());
        let h = parse_formula("((x1&x2)|~x3)").unwrap();
        assert!(evaluate(&h, &Assignment::new(vec![false, false, false])).unwrap());
    }

    #[test]
    fn evaluate_rejects_wrong_length() {
        let f = parse_formula("(x1&x2)").unwrap();
        assert_eq!(
            evaluate(&f, &Assignment::new(vec![true])),
            Err(FormulaError::AssignmentLength { got: 1, want: 2 })
        );
    }

    #[test]
    fn brute_force_finds_contradiction_unsat() {
        let f = parse_formula("(x1&~x1)").unwrap();
        let res = brute_force_sat(&f).unwrap();
        assert!(!res.satisfiable);
        assert_eq!(res.witness, None);
        assert_eq!(res.count, 0);
    }

    #[test]
    fn brute_force_counts_models() {
        let f = parse_formula("x1").unwrap();
        let res = brute_force_sat(&f).unwrap();
        assert!(res.satisfiable);
        assert_eq!(res.count, 1);
        assert!(res.witness.unwrap().bit(1));

        let g = parse_formula("((x1&x2)|x3)").unwrap();
        assert_eq!(brute_force_sat(&g).unwrap().count, 5);
    }

    #[test]
    fn brute_force_respects_cap() {
        let f = parse_formula("(x1&x25)").unwrap();
        assert_eq!(
            brute_force_sat(&f),
            Err(FormulaError::SatCapExceeded { vars: 25, cap: 24 })
        );
        assert!(brute_force_sat_capped(&f, 25).is_ok());
    }

    // Independent evaluator: folds the rendered text directly, no AST.
    fn eval_text(text: &str, x: &Assignment) -> bool {
        fn go(bytes: &[u8], pos: &mut usize, x: &Assignment) -> bool {
            if bytes[*pos] == b'(' {
                *pos += 1;
                let left = go(bytes, pos, x);
                let op = bytes[*pos];
                *pos += 1;
                let right = go(bytes, pos, x);
                assert_eq!(bytes[*pos], b')');
                *pos += 1;
                match op {
                    b'&' => left && right,
                    b'|' => left || right,
                    _ => unreachable!(),
                }
            } else {
                let neg = bytes[*pos] == b'~';
                if neg {
                    *pos += 1;
                }
                assert_eq!(bytes[*pos], b'x');
                *pos += 1;
                let start = *pos;
                while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                let var: usize = std::str::from_utf8(&bytes[start..*pos]).unwrap().parse().unwrap();
                x.bit(var) ^ neg
            }
        }
        let mut pos = 0;
        go(text.as_bytes(), &mut pos, x)
    }

    #[test]
    fn evaluate_matches_text_folding_exhaustively() {
        for seed in 0..40u64 {
            let n = 1 + (seed as usize % 4);
            let s = n + (seed as usize % 5);
            let f = random_formula(n, s, seed).formula;
            let text = render_formula(&f);
            for index in 0..(1u64 << n) {
                let x = Assignment::from_index(n, index);
                assert_eq!(evaluate(&f, &x).unwrap(), eval_text(&text, &x), "{text} @ {index}");
            }
        }
    }

    #[test]
    fn brute_force_count_matches_direct_enumeration() {
        for seed in 0..20u64 {
            let n = 1 + (seed as usize % 4);
            let f = random_formula(n, n + 2, seed).formula;
            let direct = (0..(1u64 << n))
                .filter(|&i| evaluate(&f, &Assignment::from_index(n, i)).unwrap())
                .count() as u64;
            assert_eq!(brute_force_sat(&f).unwrap().count, direct);
        }
    }

    #[test]
    fn random_formula_is_deterministic() {
        let a = random_formula(3, 8, 0).formula;
        let b = random_formula(3, 8, 0).formula;
        assert_eq!(a, b);
        assert_ne!(a, random_formula(3, 8, 1).formula);
    }

    #[test]
    fn random_formula_single_leaf_shapes() {
        let f = random_formula(1, 1, 7).formula;
        let text = render_formula(&f);
        assert!(text == "x1" || text == "~x1");
    }

    #[test]
    fn random_formula_invariant_sweep() {
        for seed in 0..1000u64 {
            let gen = random_formula(4, 10, seed);
            let f = &gen.formula;
            assert!(gen.covers_all_vars);
            assert_eq!(f.size(), 10);
            assert_eq!(f.gate_count(), 9);
            assert_eq!(f.num_vars(), 4);
            assert_eq!(f.used_vars(), vec![1, 2, 3, 4]);
            let again = parse_formula(&render_formula(f)).unwrap();
            assert_eq!(render_formula(&again), render_formula(f));
        }
    }

    #[test]
    fn random_formula_flags_missing_coverage() {
        let gen = random_formula(6, 3, 0);
        assert!(!gen.covers_all_vars);
        assert_eq!(gen.formula.num_vars(), 6);
        assert_eq!(gen.formula.size(), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parse_render_round_trip(n in 1usize..6, extra in 0usize..12, seed in any::<u64>()) {
            let f = random_formula(n, n + extra, seed).formula;
            let text = render_formula(&f);
            let back = parse_formula(&text).unwrap();
            // idempotent: the second render is byte-identical
            prop_assert_eq!(render_formula(&back), text);
            prop_assert_eq!(back.size(), f.size());
            prop_assert_eq!(back.height(), f.height());
        }
    }
}
