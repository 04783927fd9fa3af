use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bdiagram::diagram::{star_expand, BDiagram};
use bdiagram::enumeration::{crosscheck, enumerate_all, hfup_histogram, shard_count};
use bdiagram::fusion::{word_of, FusionSum};
use bdiagram::heisenberg::{normal_order, parse_expr, stirling, Route};
use bdiagram::hopf::{coproduct, eulerian, is_primitive, star};
use bdiagram::partitions::{
    b_of, bwsym_product_oracle, lists_of_m, m_of, partition_of_b, standardize,
    wsym_coproduct_oracle, wsym_product_oracle, SetPartition, SetPartitionIntoLists,
};
use bdiagram::selftest::{run_all, run_criterion, Level};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bdiagram",
    version,
    about = "Computations in the Hopf algebra of B-diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count every diagram of a given weight, by number of free outer half-edges.
    Enumerate {
        #[arg(long)]
        weight: u32,
        /// One `hf_up=q count` line per column.
        #[arg(long)]
        by_hfup: bool,
        /// Compare the histogram with the d_{p,q} recurrence.
        #[arg(long)]
        crosscheck: bool,
        /// Write every diagram as one JSON line.
        #[arg(long, value_name = "FILE")]
        emit_diagrams: Option<PathBuf>,
    },
    /// Star product of two diagrams.
    Star {
        /// Diagram JSON, a file holding it, or `-` for stdin.
        left: String,
        right: String,
        /// Print the path words of the terms instead of the diagrams.
        #[arg(long)]
        words: bool,
    },
    /// Coproduct of a diagram.
    Coproduct { diagram: String },
    /// Eulerian idempotent of a diagram, checked for primitivity.
    Primitive { diagram: String },
    /// Normal-order an expression in a and a+.
    NormalOrder {
        expr: String,
        /// rewrite, diagram, monomial, or all (checks agreement).
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// Generalized Stirling numbers of (a+)^{r_n} a^{s_n} ... (a+)^{r_1} a^{s_1}.
    Stirling {
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<u32>,
        #[arg(long, default_value = "rewrite", value_parser = parse_route)]
        route: Route,
    },
    /// Set partitions, e.g. `{1,3|2}`: oracle against the diagram route.
    Wsym {
        #[command(subcommand)]
        op: PartitionOp,
    },
    /// Set partitions into lists, e.g. `{[3,1]|[2]}`: oracle against the diagram route.
    Bwsym {
        #[command(subcommand)]
        op: PartitionOp,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, default_value = "quick", value_parser = parse_level)]
        level: Level,
        /// Run a single criterion (1-12).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum PartitionOp {
    Mul { left: String, right: String },
    Coproduct { operand: String },
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse()
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse()
}

fn read_diagram(arg: &str) -> Result<BDiagram> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    BDiagram::from_json(&text).map_err(|e| anyhow::anyhow!("{arg}: {e}"))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Prints two sorted columns and reports whether they agree.
fn side_by_side(out: &mut impl Write, oracle: &[String], diagrams: &[String]) -> Result<bool> {
    writeln!(out, "oracle\tdiagram")?;
    for i in 0..oracle.len().max(diagrams.len()) {
        let a = oracle.get(i).map_or("-", String::as_str);
        let b = diagrams.get(i).map_or("-", String::as_str);
        writeln!(out, "{a}\t{b}")?;
    }
    let ok = oracle == diagrams;
    writeln!(
        out,
        "{} terms, {}",
        oracle.len(),
        if ok { "match" } else { "MISMATCH" }
    )?;
    Ok(ok)
}

fn sorted_strings<T: Ord + ToString>(mut v: Vec<T>) -> Vec<String> {
    v.sort();
    v.iter().map(ToString::to_string).collect()
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    match cli.command {
        Command::Enumerate {
            weight,
            by_hfup,
            crosscheck: check,
            emit_diagrams,
        } => {
            if weight > 7 {
                bail!("weights above 7 are not supported");
            }
            let hist = hfup_histogram(weight, shard_count());
            let total: num_bigint::BigUint = hist.iter().sum();
            writeln!(out, "{total}")?;
            writeln!(out, "{}", join(&hist))?;
            if by_hfup {
                for (q, c) in hist.iter().enumerate() {
                    writeln!(out, "hf_up={q} {c}")?;
                }
            }
            if let Some(path) = emit_diagrams {
                let mut file = BufWriter::new(
                    fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?,
                );
                for g in enumerate_all(weight, shard_count()) {
                    writeln!(file, "{g}")?;
                }
                file.flush()?;
            }
            if check {
                let report = crosscheck(weight, shard_count());
                write!(out, "{report}")?;
                return Ok(report.is_ok());
            }
        }
        Command::Star { left, right, words } => {
            let (g, h) = (read_diagram(&left)?, read_diagram(&right)?);
            let product = star(&g.into(), &h.into());
            if words {
                let sum: FusionSum = product.iter().map(|(d, _)| word_of(d)).collect();
                write!(out, "{sum}")?;
            } else {
                write!(out, "{product}")?;
            }
        }
        Command::Coproduct { diagram } => {
            write!(out, "{}", coproduct(&read_diagram(&diagram)?))?;
        }
        Command::Primitive { diagram } => {
            let g = read_diagram(&diagram)?;
            if g.is_empty() {
                bail!("the empty diagram has no primitive part");
            }
            let pi = eulerian(&g)?;
            write!(out, "{pi}")?;
            let ok = is_primitive(&pi);
            writeln!(out, "primitive: {}", if ok { "yes" } else { "no" })?;
            return Ok(ok);
        }
        Command::NormalOrder { expr, route } => {
            let e = parse_expr(&expr).map_err(|err| anyhow::anyhow!("{expr}: {err}"))?;
            if route == "all" {
                let results: Vec<_> = Route::ALL.iter().map(|&r| normal_order(&e, r)).collect();
                write!(out, "{}", results[0])?;
                if results.iter().any(|r| r != &results[0]) {
                    for (r, p) in Route::ALL.iter().zip(&results) {
                        writeln!(out, "# {r}: {}", p.to_string().trim().replace('\n', " + "))?;
                    }
                    writeln!(out, "routes disagree")?;
                    return Ok(false);
                }
            } else {
                let r: Route = route.parse().map_err(anyhow::Error::msg)?;
                write!(out, "{}", normal_order(&e, r))?;
            }
        }
        Command::Stirling { r, s, route } => {
            writeln!(out, "{}", stirling(&r, &s, route)?)?;
        }
        Command::Wsym { op } => match op {
            PartitionOp::Mul { left, right } => {
                let a: SetPartition = left.parse()?;
                let b: SetPartition = right.parse()?;
                let oracle = sorted_strings(wsym_product_oracle(&a, &b));
                let via = star_expand(&b_of(&a), &b_of(&b))
                    .iter()
                    .map(partition_of_b)
                    .collect::<Result<Vec<_>, _>>()?;
                return side_by_side(out, &oracle, &sorted_strings(via));
            }
            PartitionOp::Coproduct { operand } => {
                let a: SetPartition = operand.parse()?;
                let oracle = sorted_strings(
                    wsym_coproduct_oracle(&a)
                        .iter()
                        .map(|(e, f)| format!("{e} (x) {f}"))
                        .collect(),
                );
                let mut via = Vec::new();
                for ((l, r), c) in coproduct(&b_of(&a)).iter() {
                    let term = format!("{} (x) {}", partition_of_b(l)?, partition_of_b(r)?);
                    for _ in 0..c.to_integer().try_into().unwrap_or(0u32) {
                        via.push(term.clone());
                    }
                }
                return side_by_side(out, &oracle, &sorted_strings(via));
            }
        },
        Command::Bwsym { op } => match op {
            PartitionOp::Mul { left, right } => {
                let a: SetPartitionIntoLists = left.parse()?;
                let b: SetPartitionIntoLists = right.parse()?;
                let oracle = sorted_strings(bwsym_product_oracle(&a, &b));
                let via = star_expand(&m_of(&a), &m_of(&b))
                    .iter()
                    .map(lists_of_m)
                    .collect::<Result<Vec<_>, _>>()?;
                return side_by_side(out, &oracle, &sorted_strings(via));
            }
            PartitionOp::Coproduct { operand } => {
                let a: SetPartitionIntoLists = operand.parse()?;
                let mut via = Vec::new();
                for ((l, r), c) in coproduct(&m_of(&a)).iter() {
                    let term = format!("{} (x) {}", lists_of_m(l)?, lists_of_m(r)?);
                    for _ in 0..c.to_integer().try_into().unwrap_or(0u32) {
                        via.push(term.clone());
                    }
                }
                let lists = a.lists();
                let mut oracle = Vec::new();
                for mask in 0..1u64 << lists.len() {
                    let (mut e, mut f) = (Vec::new(), Vec::new());
                    for (i, l) in lists.iter().enumerate() {
                        if mask >> i & 1 == 1 { &mut e } else { &mut f }.push(l.clone());
                    }
                    let e = SetPartitionIntoLists::new(standardize(&e))?;
                    let f = SetPartitionIntoLists::new(standardize(&f))?;
                    oracle.push(format!("{e} (x) {f}"));
                }
                return side_by_side(out, &sorted_strings(oracle), &sorted_strings(via));
            }
        },
        Command::Selftest { level, criterion } => {
            let reports = match criterion {
                Some(id) => run_criterion(id, level).into_iter().collect(),
                None => run_all(level),
            };
            for r in &reports {
                writeln!(out, "{r}")?;
                out.flush()?;
            }
            return Ok(reports.iter().all(|r| r.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), _) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        (Ok(true), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
