//! Thin command-line front end over the library.
//!
//! Exit codes: 0 for success (or a positive decision / agreement),
//! 1 for a negative decision or a verification disagreement,
//! 2 for usage, parse, or i/o errors.

use clap::{Parser, Subcommand, ValueEnum};
use satlower::formula::{brute_force_sat, parse_formula, Formula};
use satlower::fpair::split_to_pair;
use satlower::labeled_graph::{
    read_graph, read_pattern, solve_pmlg, solve_pmlg_bitparallel, write_graph, write_pattern,
};
use satlower::pipeline::{bench, stats, verify, BenchConfig, Target};
use satlower::pmlg_reduce::build_final_pmlg;
use satlower::rooted_tree::{contains, read_tree, write_tree};
use satlower::subtree_reduce::build_final_subtree;
use std::error::Error;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "satlower", version, about = "Lower boolean formulas to graph pattern matching and subtree containment, solve, and cross-check")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide satisfiability of a formula by brute force
    Sat { formula: PathBuf },
    /// Lower a formula to a target instance and write it out
    Reduce {
        #[command(subcommand)]
        what: ReduceCmd,
    },
    /// Solve an instance from files
    Solve {
        #[command(subcommand)]
        what: SolveCmd,
    },
    /// Lower, solve, and compare every decision against brute force
    Verify {
        formula: PathBuf,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
    },
    /// Measured instance sizes next to their closed-form predictions
    Stats { formula: PathBuf },
    /// Time build and solve over an (n, s) grid; prints CSV
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        s_list: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
        /// Stop after this many milliseconds, appending a marker row
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Pattern + labeled graph instance
    Pmlg {
        formula: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Tree containment instance
    Subtree {
        formula: PathBuf,
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
    },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Does the pattern occur in the graph along a walk?
    Pmlg {
        graph: PathBuf,
        pattern: PathBuf,
        #[arg(long)]
        bitparallel: bool,
    },
    /// Does the first tree embed into the second?
    Subtree { t1: PathBuf, t2: PathBuf },
}

#[derive(Copy, Clone, ValueEnum)]
enum TargetArg {
    Pmlg,
    Subtree,
    Both,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Pmlg => Target::Pmlg,
            TargetArg::Subtree => Target::Subtree,
            TargetArg::Both => Target::Both,
        }
    }
}

fn load_formula(path: &Path) -> Result<Formula, Box<dyn Error>> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_formula(text.trim())?)
}

fn decision_exit(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn Error>> {
    match cli.cmd {
        Cmd::Sat { formula } => {
            let f = load_formula(&formula)?;
            let result = brute_force_sat(&f)?;
            println!("satisfiable: {}", result.satisfiable);
            if let Some(w) = &result.witness {
                let rendered: Vec<String> =
                    (1..=f.num_vars()).map(|v| format!("x{v}={}", w.bit(v) as u8)).collect();
                println!("witness: {}", rendered.join(" "));
            }
            println!("satisfying assignments: {}", result.count);
            Ok(decision_exit(result.satisfiable))
        }
        Cmd::Reduce { what } => {
            match what {
                ReduceCmd::Pmlg { formula, graph, pattern } => {
                    let f = load_formula(&formula)?;
                    let fin = build_final_pmlg(&split_to_pair(&f));
                    write_graph(&fin.graph, File::create(&graph)?)?;
                    write_pattern(&fin.pattern, File::create(&pattern)?)?;
                    println!(
                        "wrote graph ({} vertices, {} edges) and pattern (length {})",
                        fin.graph.vertex_count(),
                        fin.graph.edge_count(),
                        fin.pattern.len()
                    );
                }
                ReduceCmd::Subtree { formula, t1, t2 } => {
                    let f = load_formula(&formula)?;
                    let fin = build_final_subtree(&split_to_pair(&f));
                    write_tree(&fin.t_a, &mut File::create(&t1)?)?;
                    write_tree(&fin.t_b, &mut File::create(&t2)?)?;
                    println!(
                        "wrote trees ({} and {} nodes)",
                        fin.t_a.size(),
                        fin.t_b.size()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Solve { what } => match what {
            SolveCmd::Pmlg { graph, pattern, bitparallel } => {
                let g = read_graph(BufReader::new(File::open(&graph)?))?;
                let p = read_pattern(BufReader::new(File::open(&pattern)?))?;
                let found = if bitparallel {
                    solve_pmlg_bitparallel(&g, &p)
                } else {
                    solve_pmlg(&g, &p)
                };
                println!("occurs: {found}");
                Ok(decision_exit(found))
            }
            SolveCmd::Subtree { t1, t2 } => {
                let a = read_tree(&mut File::open(&t1)?)?;
                let b = read_tree(&mut File::open(&t2)?)?;
                let found = contains(&a, &b);
                println!("contained: {found}");
                Ok(decision_exit(found))
            }
        },
        Cmd::Verify { formula, target } => {
            let f = load_formula(&formula)?;
            let report = verify(&f, target.into())?;
            println!("{report}");
            Ok(decision_exit(report.agree))
        }
        Cmd::Stats { formula } => {
            let f = load_formula(&formula)?;
            println!("{}", stats(&f));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench { n_list, s_list, trials, seed, target, budget_ms, out } => {
            let rows = bench(&BenchConfig {
                n_list,
                s_list,
                trials,
                seed,
                target: target.into(),
                budget_ms,
            });
            match out {
                Some(path) => {
                    let mut file = File::create(&path)?;
                    for row in &rows {
                        writeln!(file, "{row}")?;
                    }
                    println!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => {
                    for row in &rows {
                        println!("{row}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprint!("error: {e}");
            let mut source = e.source();
            while let Some(s) = source {
                eprint!(": {s}");
                source = s.source();
            }
            eprintln!();
            ExitCode::from(2)
        }
    }
}
