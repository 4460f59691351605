//! Lower boolean formula satisfiability into two pattern-matching problems
//! and check, end to end, that the answer survives the trip.
//!
//! The pipeline has three stations:
//!
//! 1. [`formula`] — deMorgan formulas: binary AND/OR trees with possibly
//!    negated variable leaves. `Formula-SAT` asks whether any assignment
//!    makes the root output 1.
//! 2. [`fpair`] — the formula is split down the middle of its variable
//!    range into a *formula pair*: a single-use formula whose leaves read
//!    from one of two assignment sets `A` and `B`. Satisfiability becomes
//!    "does some pair `(a, b)` evaluate to 1".
//! 3. [`pmlg_reduce`] / [`subtree_reduce`] — every gate of the pair
//!    formula is compiled into a gadget, and the gadgets are assembled
//!    into a single pattern + labeled graph ([`labeled_graph`]) or a pair
//!    of rooted trees ([`rooted_tree`]). A pattern occurrence (or a
//!    subtree embedding) exists iff the formula is satisfiable.
//!
//! [`pipeline`] wires the stations together: three-way verification
//! against brute force, measured-vs-predicted size accounting, and a CSV
//! benchmark grid. The thin `satlower` binary exposes the same operations
//! as subcommands.
//!
//! The fastest way into the crate is the `examples/` directory; each file
//! is a runnable tour of one capability:
//!
//! ```text
//! cargo run --example parse_and_eval     # grammar, rendering, evaluation
//! cargo run --example sat_search         # brute-force satisfiability
//! cargo run --example split_into_pair    # half-split, negation folding, padding
//! cargo run --example gate_gadgets       # per-gate patterns and graphs
//! cargo run --example universal_blocks   # the U(x) "match anything" gadget
//! cargo run --example pmlg_end_to_end    # formula -> pattern + graph -> decision
//! cargo run --example tree_gadgets       # per-gate tree pairs and universality
//! cargo run --example subtree_end_to_end # formula -> tree pair -> decision
//! cargo run --example verify_report      # three-way agreement reports
//! cargo run --example size_accounting    # measured vs closed-form sizes
//! cargo run --example instance_files     # graph/pattern/tree file formats
//! cargo run --example bench_small        # benchmark CSV on a toy grid
//! ```

pub mod formula;
pub mod fpair;
pub mod labeled_graph;
pub mod pipeline;
pub mod pmlg_reduce;
pub mod rooted_tree;
pub mod subtree_reduce;
