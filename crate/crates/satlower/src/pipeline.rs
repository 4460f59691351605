//! End-to-end drivers: cross-check both lowerings against brute-force
//! satisfiability, report measured vs predicted instance sizes, and
//! benchmark the solvers over an (n, s) grid as CSV.

use crate::formula::{brute_force_sat, render_formula, random_formula, Formula, FormulaError};
use crate::fpair::split_to_pair;
use crate::labeled_graph::{solve_pmlg, solve_pmlg_bitparallel};
use crate::pmlg_reduce::{
    build_final_pmlg, final_edge_count, final_pattern_len, final_vertex_count, gate_pattern_len,
};
use crate::rooted_tree::contains;
use crate::subtree_reduce::{build_final_subtree, final_a_size, final_b_size, final_height};
use std::fmt;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("satisfiability stage failed")]
    Sat(#[from] FormulaError),
}

/// Which lowering(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Pmlg,
    Subtree,
    Both,
}

impl Target {
    pub fn wants_pmlg(self) -> bool {
        matches!(self, Target::Pmlg | Target::Both)
    }

    pub fn wants_subtree(self) -> bool {
        matches!(self, Target::Subtree | Target::Both)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Pmlg => "pmlg",
            Target::Subtree => "subtree",
            Target::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StageTimings {
    pub sat_ms: f64,
    pub pmlg_build_ms: Option<f64>,
    pub pmlg_solve_ms: Option<f64>,
    pub pmlg_bitparallel_solve_ms: Option<f64>,
    pub subtree_build_ms: Option<f64>,
    pub subtree_solve_ms: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct InstanceSizes {
    pub n_padded: usize,
    pub pattern_len: Option<usize>,
    pub graph_v: Option<usize>,
    pub graph_e: Option<usize>,
    pub t_a_size: Option<usize>,
    pub t_b_size: Option<usize>,
}

/// Outcome of running the lowerings against brute-force SAT.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub formula: String,
    pub num_vars: usize,
    pub size: usize,
    /// Brute-force satisfiability, the arbiter.
    pub sat: bool,
    /// Layered matcher on the lowered pattern/graph instance.
    pub pmlg: Option<bool>,
    /// Bit-parallel matcher on the same instance.
    pub pmlg_bitparallel: Option<bool>,
    /// Containment solver on the lowered tree pair.
    pub subtree: Option<bool>,
    /// True iff every decision that ran equals `sat`.
    pub agree: bool,
    pub timings: StageTimings,
    pub sizes: InstanceSizes,
}

fn ms(from: Instant) -> f64 {
    from.elapsed().as_secs_f64() * 1e3
}

/// Lowers `f` to the requested targets, solves them, and compares
/// every decision against brute-force satisfiability.
pub fn verify(f: &Formula, target: Target) -> Result<VerifyReport, PipelineError> {
    let t0 = Instant::now();
    let sat = brute_force_sat(f)?.satisfiable;
    let sat_ms = ms(t0);

    let inst = split_to_pair(f);
    let mut timings = StageTimings { sat_ms, ..StageTimings::default() };
    let mut sizes = InstanceSizes { n_padded: inst.n_padded, ..InstanceSizes::default() };
    let mut pmlg = None;
    let mut pmlg_bitparallel = None;
    let mut subtree = None;

    if target.wants_pmlg() {
        let t = Instant::now();
        let fin = build_final_pmlg(&inst);
        timings.pmlg_build_ms = Some(ms(t));
        sizes.pattern_len = Some(fin.pattern.len());
        sizes.graph_v = Some(fin.graph.vertex_count());
        sizes.graph_e = Some(fin.graph.edge_count());
        let t = Instant::now();
        pmlg = Some(solve_pmlg(&fin.graph, &fin.pattern));
        timings.pmlg_solve_ms = Some(ms(t));
        let t = Instant::now();
        pmlg_bitparallel = Some(solve_pmlg_bitparallel(&fin.graph, &fin.pattern));
        timings.pmlg_bitparallel_solve_ms = Some(ms(t));
    }

    if target.wants_subtree() {
        let t = Instant::now();
        let fin = build_final_subtree(&inst);
        timings.subtree_build_ms = Some(ms(t));
        sizes.t_a_size = Some(fin.t_a.size());
        sizes.t_b_size = Some(fin.t_b.size());
        let t = Instant::now();
        subtree = Some(contains(&fin.t_a, &fin.t_b));
        timings.subtree_solve_ms = Some(ms(t));
    }

    let agree = [pmlg, pmlg_bitparallel, subtree]
        .into_iter()
        .flatten()
        .all(|decision| decision == sat);

    Ok(VerifyReport {
        formula: render_formula(f),
        num_vars: f.num_vars(),
        size: f.size(),
        sat,
        pmlg,
        pmlg_bitparallel,
        subtree,
        agree,
        timings,
        sizes,
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula        {}", self.formula)?;
        writeln!(f, "n, s           {}, {}", self.num_vars, self.size)?;
        writeln!(f, "sat            {}", self.sat)?;
        let opt = |d: Option<bool>| match d {
            Some(v) => v.to_string(),
            None => "-".to_string(),
        };
        writeln!(f, "pmlg           {}", opt(self.pmlg))?;
        writeln!(f, "pmlg (bitpar)  {}", opt(self.pmlg_bitparallel))?;
        writeln!(f, "subtree        {}", opt(self.subtree))?;
        write!(f, "agree          {}", self.agree)
    }
}

/// Measured instance sizes next to their closed-form predictions.
#[derive(Clone, Debug)]
pub struct SizeReport {
    pub formula: String,
    pub num_vars: usize,
    pub size: usize,
    pub n_padded: usize,
    /// Per-block pattern length `5s - 2`.
    pub mu: usize,
    pub pattern_len: usize,
    pub pattern_len_predicted: usize,
    pub graph_v: usize,
    pub graph_v_predicted: usize,
    pub graph_e: usize,
    pub graph_e_predicted: usize,
    /// Universal blocks on the two chains, `2(2N-2)` for N >= 2.
    pub chain_universal_blocks: usize,
    pub graph_max_degree: usize,
    pub t_a_size: usize,
    pub t_a_size_predicted: usize,
    pub t_b_size: usize,
    pub t_b_size_predicted: usize,
    pub t_a_height: usize,
    pub t_b_height: usize,
    pub height_predicted: usize,
    pub max_children: usize,
}

/// Builds both lowerings and measures them against the closed forms.
pub fn stats(f: &Formula) -> SizeReport {
    let inst = split_to_pair(f);
    let fin_g = build_final_pmlg(&inst);
    let fin_t = build_final_subtree(&inst);
    let n = inst.n_padded;
    SizeReport {
        formula: render_formula(f),
        num_vars: f.num_vars(),
        size: f.size(),
        n_padded: n,
        mu: gate_pattern_len(&inst, inst.root()),
        pattern_len: fin_g.pattern.len(),
        pattern_len_predicted: final_pattern_len(&inst),
        graph_v: fin_g.graph.vertex_count(),
        graph_v_predicted: final_vertex_count(&inst),
        graph_e: fin_g.graph.edge_count(),
        graph_e_predicted: final_edge_count(&inst),
        chain_universal_blocks: if n == 1 { 0 } else { 2 * (2 * n - 2) },
        graph_max_degree: fin_g.graph.max_total_degree(),
        t_a_size: fin_t.t_a.size(),
        t_a_size_predicted: final_a_size(&inst),
        t_b_size: fin_t.t_b.size(),
        t_b_size_predicted: final_b_size(&inst),
        t_a_height: fin_t.t_a.height(),
        t_b_height: fin_t.t_b.height(),
        height_predicted: final_height(&inst),
        max_children: fin_t.t_a.max_children().max(fin_t.t_b.max_children()),
    }
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula               {}", self.formula)?;
        writeln!(f, "n, s, N, mu           {}, {}, {}, {}", self.num_vars, self.size, self.n_padded, self.mu)?;
        writeln!(f, "pattern len           {} (predicted {})", self.pattern_len, self.pattern_len_predicted)?;
        writeln!(f, "graph vertices        {} (predicted {})", self.graph_v, self.graph_v_predicted)?;
        writeln!(f, "graph edges           {} (predicted {})", self.graph_e, self.graph_e_predicted)?;
        writeln!(f, "chain U blocks        {}", self.chain_universal_blocks)?;
        writeln!(f, "graph max degree      {}", self.graph_max_degree)?;
        writeln!(f, "tree sizes            {} / {} (predicted {} / {})", self.t_a_size, self.t_b_size, self.t_a_size_predicted, self.t_b_size_predicted)?;
        writeln!(f, "tree heights          {} / {} (predicted {})", self.t_a_height, self.t_b_height, self.height_predicted)?;
        write!(f, "tree max children     {}", self.max_children)
    }
}

pub const BENCH_CSV_HEADER: &str =
    "schema,n,s,seed,target,N,pattern_len,graph_v,graph_e,t1_size,t2_size,build_ms,solve_ms,decision";

const BENCH_SCHEMA: &str = "1";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub s_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub target: Target,
    /// Wall-clock cap; exceeding it stops the run with a marker row.
    pub budget_ms: Option<u64>,
}

/// Runs the grid and returns CSV lines, header first. Instances are
/// generated deterministically: row k of the (n, s, trial) iteration
/// order uses formula seed `seed + k`. A pmlg trial yields two rows,
/// one per matcher, sharing the instance; a subtree trial yields one.
/// When the budget runs out, a `budget_exceeded` marker row naming the
/// next pending trial is appended and the run stops.
pub fn bench(config: &BenchConfig) -> Vec<String> {
    let mut rows = vec![BENCH_CSV_HEADER.to_string()];
    let started = Instant::now();
    let mut k = 0u64;
    'grid: for &n in &config.n_list {
        for &s in &config.s_list {
            for _ in 0..config.trials {
                let trial_seed = config.seed.wrapping_add(k);
                k += 1;
                if let Some(budget) = config.budget_ms {
                    if started.elapsed().as_millis() as u64 >= budget {
                        rows.push(format!(
                            "{BENCH_SCHEMA},{n},{s},{trial_seed},budget_exceeded,,,,,,,,,"
                        ));
                        break 'grid;
                    }
                }
                let f = random_formula(n, s.max(n), trial_seed).formula;
                let inst = split_to_pair(&f);
                let n_padded = inst.n_padded;
                if config.target.wants_pmlg() {
                    let t = Instant::now();
                    let fin = build_final_pmlg(&inst);
                    let build_ms = ms(t);
                    let (v, e, p) =
                        (fin.graph.vertex_count(), fin.graph.edge_count(), fin.pattern.len());
                    let t = Instant::now();
                    let layered = solve_pmlg(&fin.graph, &fin.pattern);
                    let layered_ms = ms(t);
                    let t = Instant::now();
                    let bitpar = solve_pmlg_bitparallel(&fin.graph, &fin.pattern);
                    let bitpar_ms = ms(t);
                    rows.push(format!(
                        "{BENCH_SCHEMA},{n},{s},{trial_seed},pmlg,{n_padded},{p},{v},{e},,,{build_ms:.3},{layered_ms:.3},{}",
                        layered as u8
                    ));
                    rows.push(format!(
                        "{BENCH_SCHEMA},{n},{s},{trial_seed},pmlg_bitparallel,{n_padded},{p},{v},{e},,,{build_ms:.3},{bitpar_ms:.3},{}",
                        bitpar as u8
                    ));
                }
                if config.target.wants_subtree() {
                    let t = Instant::now();
                    let fin = build_final_subtree(&inst);
                    let build_ms = ms(t);
                    let (t1, t2) = (fin.t_a.size(), fin.t_b.size());
                    let t = Instant::now();
                    let decision = contains(&fin.t_a, &fin.t_b);
                    let solve_ms = ms(t);
                    rows.push(format!(
                        "{BENCH_SCHEMA},{n},{s},{trial_seed},subtree,{n_padded},,,,{t1},{t2},{build_ms:.3},{solve_ms:.3},{}",
                        decision as u8
                    ));
                }
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    #[test]
    fn verify_smallest_sat_formula() {
        let f = parse_formula("x1").unwrap();
        let r = verify(&f, Target::Both).unwrap();
        assert!(r.sat);
        assert_eq!(r.pmlg, Some(true));
        assert_eq!(r.pmlg_bitparallel, Some(true));
        assert_eq!(r.subtree, Some(true));
        assert!(r.agree);
        assert_eq!(r.sizes.pattern_len, Some(11));
        assert_eq!(r.sizes.graph_v, Some(39));
        assert_eq!(r.sizes.graph_e, Some(43));
        assert_eq!(r.sizes.t_a_size, Some(8));
        assert_eq!(r.sizes.t_b_size, Some(10));
    }

    #[test]
    fn verify_contradiction() {
        let f = parse_formula("(x1&~x1)").unwrap();
        let r = verify(&f, Target::Both).unwrap();
        assert!(!r.sat);
        assert_eq!(r.pmlg, Some(false));
        assert_eq!(r.pmlg_bitparallel, Some(false));
        assert_eq!(r.subtree, Some(false));
        assert!(r.agree);
    }

    #[test]
    fn verify_respects_target_choice() {
        let f = parse_formula("(x1|x2)").unwrap();
        let r = verify(&f, Target::Pmlg).unwrap();
        assert!(r.pmlg.is_some() && r.subtree.is_none());
        assert!(r.agree);
        let r = verify(&f, Target::Subtree).unwrap();
        assert!(r.pmlg.is_none() && r.subtree.is_some());
        assert!(r.agree);
    }

    #[test]
    fn verify_agrees_on_random_formulas() {
        for seed in 0..60u64 {
            let n = 1 + (seed as usize % 3);
            let s = n + (seed as usize % 4);
            let f = random_formula(n, s, seed).formula;
            let r = verify(&f, Target::Both).unwrap();
            assert!(r.agree, "seed {seed}: {}", r.formula);
        }
    }

    #[test]
    fn stats_match_closed_forms() {
        let f = parse_formula("x1").unwrap();
        let r = stats(&f);
        assert_eq!(r.pattern_len, 11);
        assert_eq!(r.pattern_len, r.pattern_len_predicted);
        assert_eq!(r.graph_v, r.graph_v_predicted);
        assert_eq!(r.graph_e, r.graph_e_predicted);
        assert_eq!(r.t_a_size, r.t_a_size_predicted);
        assert_eq!(r.t_b_size, r.t_b_size_predicted);
        assert_eq!(r.t_a_height, r.height_predicted);
        assert_eq!(r.t_b_height, r.height_predicted);
        assert_eq!(r.chain_universal_blocks, 4);
        assert!(r.graph_max_degree <= 4);
        assert!(r.max_children <= 4);

        for seed in 0..25u64 {
            let n = 1 + (seed as usize % 4);
            let s = n + (seed as usize % 6);
            let f = random_formula(n, s, seed).formula;
            let r = stats(&f);
            assert_eq!(r.pattern_len, r.pattern_len_predicted, "seed {seed}");
            assert_eq!(r.graph_v, r.graph_v_predicted, "seed {seed}");
            assert_eq!(r.graph_e, r.graph_e_predicted, "seed {seed}");
            assert_eq!(r.t_a_size, r.t_a_size_predicted, "seed {seed}");
            assert_eq!(r.t_b_size, r.t_b_size_predicted, "seed {seed}");
            assert_eq!(r.t_a_height, r.height_predicted, "seed {seed}");
            assert_eq!(r.t_b_height, r.height_predicted, "seed {seed}");
        }
    }

    #[test]
    fn bench_emits_pinned_header_and_well_formed_rows() {
        let config = BenchConfig {
            n_list: vec![1, 2],
            s_list: vec![2, 3],
            trials: 1,
            seed: 7,
            target: Target::Both,
            budget_ms: None,
        };
        let rows = bench(&config);
        assert_eq!(rows[0], BENCH_CSV_HEADER);
        // 4 grid cells x (2 pmlg rows + 1 subtree row)
        assert_eq!(rows.len(), 1 + 4 * 3);
        for row in &rows[1..] {
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields.len(), 14, "{row}");
            assert_eq!(fields[0], "1");
            assert!(fields[13] == "0" || fields[13] == "1");
        }
        // matcher rows pair up with identical decisions
        for pair in rows[1..].chunks(3) {
            let d_layered: Vec<&str> = pair[0].split(',').collect();
            let d_bitpar: Vec<&str> = pair[1].split(',').collect();
            assert_eq!(d_layered[4], "pmlg");
            assert_eq!(d_bitpar[4], "pmlg_bitparallel");
            assert_eq!(d_layered[13], d_bitpar[13], "matchers disagree: {pair:?}");
        }
    }

    #[test]
    fn bench_is_deterministic_outside_timing_columns() {
        let config = BenchConfig {
            n_list: vec![2],
            s_list: vec![3],
            trials: 2,
            seed: 11,
            target: Target::Both,
            budget_ms: None,
        };
        let strip = |rows: &[String]| -> Vec<String> {
            rows.iter()
                .map(|r| {
                    let f: Vec<&str> = r.split(',').collect();
                    [&f[..11], &f[13..]].concat().join(",")
                })
                .collect()
        };
        assert_eq!(strip(&bench(&config)), strip(&bench(&config)));
    }

    #[test]
    fn bench_budget_stops_with_marker_row() {
        let config = BenchConfig {
            n_list: vec![2],
            s_list: vec![3],
            trials: 5,
            seed: 3,
            target: Target::Pmlg,
            budget_ms: Some(0),
        };
        let rows = bench(&config);
        assert_eq!(rows.len(), 2);
        let fields: Vec<&str> = rows[1].split(',').collect();
        assert_eq!(fields.len(), 14);
        assert_eq!(fields[4], "budget_exceeded");
        assert_eq!(fields[1], "2");
        assert_eq!(fields[3], "3");
    }
}
