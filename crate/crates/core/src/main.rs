use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use paltree::comb::{build_comb, closed_form_counts};
use paltree::experiments::random::{alphabet, random_tree, random_tree_in_family, seeded};
use paltree::experiments::{fit_exponent, run_bound_suite, FitMode, FitOptions};
use paltree::language::{
    classify, tree_palindromes_with, Algorithm, EnumerateOptions, PalindromeReport,
};
use paltree::sidon::{difference_sequence, erdos_turan, primes_in};
use paltree::transforms::{analyze_triple, eliminate_splittings, reduce_to_t3};
use paltree::tree::{parse_edge_list, LabeledTree, NodeId};
use paltree::word::Letter;

type Error = Box<dyn std::error::Error>;

/// Palindromes in edge-labeled trees.
#[derive(Parser)]
#[command(name = "paltree", version)]
struct Cli {
    /// Seed for random tree generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate combs and Sidon sets.
    #[command(subcommand)]
    Gen(Gen),
    /// Count the distinct palindromes of a tree.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Oracle)]
        algorithm: Algorithm,
        /// Include the palindromes themselves.
        #[arg(long)]
        witnesses: bool,
        /// Re-check hash-equal paths letter by letter.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        csv: bool,
        /// Report wall-clock time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Least k such that every factor has at most k blocks.
    Classify { file: PathBuf },
    /// Run the counting-bound suite on trees from files and/or random trees.
    Verify {
        files: Vec<PathBuf>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Reduce a tree to a binary tree with at most three blocks per factor.
    Reduce {
        file: PathBuf,
        /// Write the reduced tree as an edge list.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove splittings on every letter except `keep`.
    Desplit {
        file: PathBuf,
        #[arg(long)]
        keep: char,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a palindromic node triple.
    Triple {
        file: PathBuf,
        u: NodeId,
        v: NodeId,
        w: NodeId,
    },
    /// Fit the growth exponent of the comb family.
    Fit {
        /// Comma-separated primes; overrides --min/--max.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        min: u64,
        #[arg(long, default_value_t = 43)]
        max: u64,
        #[arg(long, value_enum, default_value_t = FitMode::ClosedForm)]
        mode: FitMode,
        /// Largest prime enumerated in enumerate mode.
        #[arg(long, default_value_t = 13)]
        cap: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Render a tree in Graphviz DOT.
    Dot { file: PathBuf },
}

#[derive(Subcommand)]
enum Gen {
    /// Hair comb for a prime p >= 5, as an edge list.
    Comb {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the closed-form palindrome counts instead of the tree.
        #[arg(long)]
        counts: bool,
    },
    /// Erdős–Turán Sidon set for a prime p.
    Sidon {
        #[arg(long)]
        prime: u64,
        /// Print consecutive differences instead.
        #[arg(long)]
        differences: bool,
    },
}

#[derive(Args)]
struct RandomArgs {
    /// Number of random trees to add.
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Restrict random trees to at most this many blocks per factor.
    #[arg(long)]
    family: Option<usize>,
    #[arg(long, default_value_t = 40)]
    max_edges: usize,
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
}

fn read_tree(path: &Path) -> Result<LabeledTree, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn emit_tree(tree: &LabeledTree, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, tree.to_edge_list())?,
        None => print!("{}", tree.to_edge_list()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    match cli.command {
        Command::Gen(Gen::Comb { prime, out, counts }) => {
            if counts {
                emit_json(&closed_form_counts(prime)?)
            } else {
                let (tree, _) = build_comb(prime)?;
                emit_tree(&tree, out.as_deref())
            }
        }
        Command::Gen(Gen::Sidon { prime, differences }) => {
            let a = erdos_turan(prime)?;
            let values = if differences {
                difference_sequence(&a)?.values().to_vec()
            } else {
                a.elements().to_vec()
            };
            let line: Vec<String> = values.iter().map(u64::to_string).collect();
            println!("{}", line.join(","));
            Ok(())
        }
        Command::Enumerate {
            file,
            algorithm,
            witnesses,
            verify,
            csv,
            timing,
        } => {
            let tree = read_tree(&file)?;
            let mut opts = EnumerateOptions::new(algorithm);
            if witnesses {
                opts = opts.with_witnesses();
            }
            if verify {
                opts = opts.verified();
            }
            let mut report = tree_palindromes_with(&tree, &opts)?;
            if !timing {
                report.elapsed_ms = None;
            }
            if csv {
                println!("{}\n{}", PalindromeReport::csv_header(), report.csv_row());
                Ok(())
            } else {
                emit_json(&report)
            }
        }
        Command::Classify { file } => {
            let tree = read_tree(&file)?;
            emit_json(&json!({ "k": classify(&tree), "size": tree.size() }))
        }
        Command::Verify { files, random } => {
            let mut trees = files
                .iter()
                .map(|f| read_tree(f))
                .collect::<Result<Vec<_>, _>>()?;
            if random.random > 0 {
                if !(1..=26).contains(&random.alphabet) {
                    return Err("--alphabet must be in 1..=26".into());
                }
                let letters = alphabet(random.alphabet);
                let mut rng = seeded(cli.seed);
                for _ in 0..random.random {
                    let edges = rand::Rng::gen_range(&mut rng, 0..=random.max_edges);
                    trees.push(match random.family {
                        Some(k) if k >= 1 => random_tree_in_family(&mut rng, edges, &letters, k),
                        Some(_) => return Err("--family must be at least 1".into()),
                        None => random_tree(&mut rng, edges, &letters),
                    });
                }
            }
            let mut report = run_bound_suite(&trees);
            if random.random > 0 {
                report.seed = Some(cli.seed);
            }
            emit_json(&report)?;
            if report.pass {
                Ok(())
            } else {
                Err("a bound failed".into())
            }
        }
        Command::Reduce { file, out } => {
            let tree = read_tree(&file)?;
            let r = reduce_to_t3(&tree)?;
            if let Some(path) = out {
                std::fs::write(path, r.tree.to_edge_list())?;
            }
            emit_json(&r)
        }
        Command::Desplit { file, keep, out } => {
            let tree = read_tree(&file)?;
            let d = eliminate_splittings(&tree, Letter(keep))?;
            emit_tree(&d, out.as_deref())
        }
        Command::Triple { file, u, v, w } => {
            let tree = read_tree(&file)?;
            emit_json(&analyze_triple(&tree, u, v, w)?)
        }
        Command::Fit {
            primes,
            min,
            max,
            mode,
            cap,
            csv,
        } => {
            let primes = if primes.is_empty() {
                primes_in(min, max)
            } else {
                primes
            };
            let opts = FitOptions {
                mode,
                enumerate_cap: cap,
                ..FitOptions::default()
            };
            let fit = fit_exponent(&primes, &opts)?;
            if csv {
                print!("{}", fit.csv());
                Ok(())
            } else {
                emit_json(&fit)
            }
        }
        Command::Dot { file } => {
            print!("{}", read_tree(&file)?.to_dot());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
