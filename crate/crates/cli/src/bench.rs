use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use domatic_core::corpus::{generate, CorpusSpec, Instance};
use domatic_core::{
    count_minimal_dominating_sets, solve_exact, solve_randomized, Decision, RandomizedDecision,
    WalkConfig,
};

use crate::args::{BenchArgs, BenchMode, OutputFormat};
use crate::commands::{millis, Outcome};

/// One solver run on one instance. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub delta_max: usize,
    pub mode: String,
    pub decision: String,
    pub mds_count: Option<u64>,
    pub sat_calls: Option<u64>,
    pub trials: Option<u64>,
    pub wall_ms: f64,
}

fn record_base(inst: &Instance, mode: &str) -> BenchRecord {
    BenchRecord {
        id: inst.id.clone(),
        n: inst.graph.n(),
        m: inst.graph.m_edges(),
        delta_max: inst.graph.max_degree(),
        mode: mode.to_string(),
        decision: String::new(),
        mds_count: None,
        sat_calls: None,
        trials: None,
        wall_ms: 0.0,
    }
}

fn run_exact(inst: &Instance) -> Result<BenchRecord> {
    let start = Instant::now();
    let report = solve_exact(&inst.graph)?;
    let wall_ms = millis(start);
    Ok(BenchRecord {
        decision: match report.decision {
            Decision::Yes => "yes",
            Decision::No => "no",
        }
        .into(),
        mds_count: Some(count_minimal_dominating_sets(&inst.graph)),
        sat_calls: Some(report.sat_calls),
        wall_ms,
        ..record_base(inst, "exact")
    })
}

fn run_randomized(inst: &Instance, seed: u64) -> Result<BenchRecord> {
    let cfg = WalkConfig::for_graph(&inst.graph, seed);
    let start = Instant::now();
    let report = solve_randomized(&inst.graph, &cfg)?;
    let wall_ms = millis(start);
    Ok(BenchRecord {
        decision: match report.decision {
            RandomizedDecision::Yes => "yes",
            RandomizedDecision::ProbablyNo => "probably-no",
        }
        .into(),
        trials: Some(report.trials_used),
        wall_ms,
        ..record_base(inst, "randomized")
    })
}

pub fn records(args: &BenchArgs) -> Result<Vec<BenchRecord>> {
    if args.workers == 0 {
        bail!("--workers must be at least 1");
    }
    let spec = CorpusSpec {
        generator: args.generator,
        n_min: args.n_min,
        n_max: args.n_max,
        per_n: args.per_n,
        seed: args.seed,
    };
    let corpus = generate(&spec)?;
    let modes: &[BenchMode] = match args.mode {
        BenchMode::Both => &[BenchMode::Exact, BenchMode::Randomized],
        BenchMode::Exact => &[BenchMode::Exact],
        BenchMode::Randomized => &[BenchMode::Randomized],
    };
    let jobs: Vec<(usize, &Instance, BenchMode)> = corpus
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| modes.iter().map(move |&m| (i, inst, m)))
        .collect();
    let run = |&(i, inst, mode): &(usize, &Instance, BenchMode)| match mode {
        BenchMode::Randomized => run_randomized(inst, args.seed.wrapping_add(i as u64)),
        _ => run_exact(inst),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()?;
    pool.install(|| jobs.par_iter().map(run).collect())
}

pub fn run(args: &BenchArgs, format: OutputFormat, out: &mut impl Write) -> Result<Outcome> {
    let records = records(args)?;
    match format {
        OutputFormat::Text => {
            let mut w = csv::Writer::from_writer(out);
            for r in &records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            for r in &records {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
    }
    Ok(Outcome::Done)
}
