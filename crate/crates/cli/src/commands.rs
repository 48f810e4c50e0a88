use std::fs;
use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use domatic_core::mds::{enumerate_minimal_dominating_sets, nth_minimal_dominating_set};
use domatic_core::nae::{build_nae_formula, export_dimacs_cnf, nae_to_sat, parse_dimacs_cnf};
use domatic_core::oracle::{
    brute_force_domatic_at_least, brute_force_domatic_number, OracleLimits,
};
use domatic_core::walk::{restart_budget_with_cap, solve_randomized, WalkConfig};
use domatic_core::{
    solve_exact_with, solve_sat, Decision, Error, ExactConfig, ExactReport, Graph, GraphFormat,
    Partition3, RandomizedDecision, RandomizedReport,
};

use crate::args::{
    EncodeArgs, EnumArgs, GraphInput, InputFormat, OracleArgs, OutputFormat, SatArgs, SolveArgs,
};

/// How a command finished; maps onto the exit status.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Done,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

pub fn load_graph(input: &GraphInput) -> Result<Graph> {
    let text = read_input(&input.input)?;
    let format = match input.input_format {
        InputFormat::Auto => GraphFormat::detect(&text),
        InputFormat::Dimacs => GraphFormat::DimacsEdge,
        InputFormat::EdgeList => GraphFormat::EdgeList,
    };
    Graph::parse(&text, format).with_context(|| format!("parsing {}", input.input.display()))
}

pub fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn write_partition(out: &mut impl Write, p: &Partition3) -> io::Result<()> {
    for (label, part) in p.parts().iter().enumerate() {
        writeln!(out, "part {label}: {}", part.to_one_indexed_string())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ExactEnvelope<'a> {
    mode: &'static str,
    #[serde(flatten)]
    report: &'a ExactReport,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct RandomizedEnvelope<'a> {
    mode: &'static str,
    #[serde(flatten)]
    report: &'a RandomizedReport,
    walk_length: usize,
    max_trials: u64,
    budget_capped: bool,
    elapsed_ms: f64,
}

pub fn solve(args: &SolveArgs, format: OutputFormat, out: &mut impl Write) -> Result<Outcome> {
    let g = load_graph(&args.graph)?;
    if args.workers == 0 {
        bail!("--workers must be at least 1");
    }
    let start = Instant::now();
    if args.randomized {
        solve_randomized_cmd(args, &g, format, start, out)
    } else {
        let report = solve_exact_with(
            &g,
            &ExactConfig {
                workers: args.workers,
            },
        )?;
        let elapsed_ms = millis(start);
        match format {
            OutputFormat::Json => {
                let env = ExactEnvelope {
                    mode: "exact",
                    report: &report,
                    elapsed_ms,
                };
                writeln!(out, "{}", serde_json::to_string(&env)?)?;
            }
            OutputFormat::Text => {
                writeln!(out, "decision: {}", decision_str(report.decision))?;
                if let Some(w) = &report.witness {
                    write_partition(out, w)?;
                }
                if let Some(reason) = &report.reason {
                    writeln!(out, "reason: {reason}")?;
                }
                writeln!(
                    out,
                    "candidates_tried={} sat_calls={} elapsed_ms={elapsed_ms:.3}",
                    report.candidates_tried, report.sat_calls
                )?;
            }
        }
        Ok(match report.decision {
            Decision::Yes => Outcome::Yes,
            Decision::No => Outcome::No,
        })
    }
}

fn decision_str(d: Decision) -> &'static str {
    match d {
        Decision::Yes => "yes",
        Decision::No => "no",
    }
}

fn solve_randomized_cmd(
    args: &SolveArgs,
    g: &Graph,
    format: OutputFormat,
    start: Instant,
    out: &mut impl Write,
) -> Result<Outcome> {
    let (max_trials, capped) = match args.max_trials {
        Some(t) => (t, false),
        None => match restart_budget_with_cap(g, args.lambda, args.trial_cap) {
            Ok(b) => (b.trials, b.capped),
            // no edges at all: nothing to walk towards
            Err(Error::InvalidConfig(_)) if g.max_degree() == 0 => (1, false),
            Err(e) => return Err(e.into()),
        },
    };
    if capped {
        eprintln!("warning: budget exceeds cap, clamped to {max_trials} trials");
    }
    let cfg = WalkConfig {
        seed: args.seed,
        walk_length: args.walk_len.unwrap_or(3 * g.n()),
        max_trials,
        workers: args.workers,
    };
    let report = solve_randomized(g, &cfg)?;
    let elapsed_ms = millis(start);
    match format {
        OutputFormat::Json => {
            let env = RandomizedEnvelope {
                mode: "randomized",
                report: &report,
                walk_length: cfg.walk_length,
                max_trials,
                budget_capped: capped,
                elapsed_ms,
            };
            writeln!(out, "{}", serde_json::to_string(&env)?)?;
        }
        OutputFormat::Text => {
            let decision = match report.decision {
                RandomizedDecision::Yes => "yes",
                RandomizedDecision::ProbablyNo => "probably-no",
            };
            writeln!(out, "decision: {decision}")?;
            if let Some(w) = &report.witness {
                write_partition(out, w)?;
            }
            writeln!(
                out,
                "seed={} trials_used={} steps_used={} max_trials={max_trials} elapsed_ms={elapsed_ms:.3}",
                report.seed, report.trials_used, report.steps_used
            )?;
        }
    }
    Ok(match report.decision {
        RandomizedDecision::Yes => Outcome::Yes,
        RandomizedDecision::ProbablyNo => Outcome::No,
    })
}

#[derive(Serialize)]
struct EnumJson {
    sets: Vec<Vec<usize>>,
    count: u64,
    nodes_visited: u64,
    max_depth: usize,
}

pub fn enum_mds(args: &EnumArgs, format: OutputFormat, out: &mut impl Write) -> Result<Outcome> {
    let g = load_graph(&args.graph)?;
    match format {
        OutputFormat::Text => {
            let mut io_err = None;
            let stats = enumerate_minimal_dominating_sets(&g, |d| {
                match writeln!(out, "{}", d.to_one_indexed_string()) {
                    Ok(()) => ControlFlow::Continue(()),
                    Err(e) => {
                        io_err = Some(e);
                        ControlFlow::Break(())
                    }
                }
            });
            if let Some(e) = io_err {
                return Err(e.into());
            }
            writeln!(out, "count={}", stats.count)?;
        }
        OutputFormat::Json => {
            let mut sets = Vec::new();
            let stats = enumerate_minimal_dominating_sets(&g, |d| {
                sets.push(d.iter().map(|v| v + 1).collect());
                ControlFlow::Continue(())
            });
            let json = EnumJson {
                sets,
                count: stats.count,
                nodes_visited: stats.nodes_visited,
                max_depth: stats.max_depth,
            };
            writeln!(out, "{}", serde_json::to_string(&json)?)?;
        }
    }
    Ok(Outcome::Done)
}

pub fn encode(args: &EncodeArgs, out: &mut impl Write) -> Result<Outcome> {
    let g = load_graph(&args.graph)?;
    let Some(d) = nth_minimal_dominating_set(&g, args.index) else {
        let count = domatic_core::count_minimal_dominating_sets(&g);
        bail!(
            "index {} out of range: the graph has {count} minimal dominating sets",
            args.index
        );
    };
    let f = build_nae_formula(&g, &d)?;
    let cnf = nae_to_sat(&f);
    writeln!(
        out,
        "c minimal dominating set #{}: {}",
        args.index,
        d.to_one_indexed_string()
    )?;
    writeln!(out, "c vertices={}", g.n())?;
    writeln!(out, "c nae_clauses={}", cnf.pre_dedup_clauses())?;
    for (var, &v) in f.variables().iter().enumerate() {
        writeln!(out, "c var {} = vertex {}", var + 1, v + 1)?;
    }
    write!(out, "{}", export_dimacs_cnf(&cnf))?;
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct OracleJson {
    delta: usize,
    witness: Option<Partition3>,
}

pub fn oracle(args: &OracleArgs, format: OutputFormat, out: &mut impl Write) -> Result<Outcome> {
    let g = load_graph(&args.graph)?;
    let limits = OracleLimits {
        partition_limit: args.oracle_limit,
        subset_limit: args.oracle_limit.max(OracleLimits::default().subset_limit),
    };
    let delta = match brute_force_domatic_number(&g, &limits) {
        Err(Error::OracleLimit { n, limit }) => {
            bail!("n = {n} exceeds oracle limit {limit}; use `solve --exact` instead")
        }
        other => other?,
    };
    let witness = brute_force_domatic_at_least(&g, 3, &limits)?
        .map(|parts| {
            let [a, b, c]: [_; 3] = parts.try_into().expect("three parts");
            Partition3::from_parts([a, b, c])
        })
        .transpose()?;
    match format {
        OutputFormat::Text => {
            writeln!(out, "delta={delta}")?;
            if let Some(w) = &witness {
                write_partition(out, w)?;
            }
        }
        OutputFormat::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&OracleJson { delta, witness })?
            )?;
        }
    }
    Ok(if delta >= 3 {
        Outcome::Yes
    } else {
        Outcome::No
    })
}

pub fn sat(args: &SatArgs, out: &mut impl Write) -> Result<Outcome> {
    let text = read_input(&args.input)?;
    let cnf =
        parse_dimacs_cnf(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let r = solve_sat(&cnf);
    writeln!(
        out,
        "c decisions={} propagations={} conflicts={}",
        r.stats.decisions, r.stats.propagations, r.stats.conflicts
    )?;
    match &r.model {
        Some(model) => {
            writeln!(out, "s SATISFIABLE")?;
            let mut line = String::from("v");
            for (i, &b) in model.iter().enumerate() {
                line.push_str(&format!(" {}{}", if b { "" } else { "-" }, i + 1));
            }
            writeln!(out, "{line} 0")?;
            Ok(Outcome::Yes)
        }
        None => {
            writeln!(out, "s UNSATISFIABLE")?;
            Ok(Outcome::No)
        }
    }
}
