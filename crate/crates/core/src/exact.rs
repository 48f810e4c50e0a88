//! Exact 3-domatic decision: enumerate minimal dominating sets `D`, encode
//! each as an NAE formula, reduce to CNF, and solve. The first satisfiable
//! candidate yields a partition with `D` as part 2.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{mpsc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::mds::enumerate_minimal_dominating_sets;
use crate::nae::{build_nae_formula, evaluate_nae, nae_to_sat, NaeFormula};
use crate::oracle::{verify_partition, Partition3, TernaryAssignment};
use crate::sat::solve_sat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactReport {
    pub decision: Decision,
    pub witness: Option<Partition3>,
    pub candidates_tried: u64,
    pub sat_calls: u64,
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactConfig {
    /// 1 runs sequentially; more dispatches candidates to a worker pool.
    pub workers: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig { workers: 1 }
    }
}

pub const ISOLATED_REASON: &str =
    "isolated vertex: it lies in every dominating set, so the domatic number is 1";

/// Turns an NAE model for `φ_D` into a partition: part 2 is `D`, part 1 the
/// vertices whose variable is true, part 0 the rest.
pub fn decode_partition(
    g: &Graph,
    d: &VertexSet,
    f: &NaeFormula,
    model: &[bool],
) -> Result<Partition3> {
    if !evaluate_nae(f, model)? {
        return Err(Error::ModelNotNae);
    }
    let values = (0..g.n())
        .map(|v| match f.var_of_vertex(v) {
            None => 2,
            Some(x) => u8::from(model[x]),
        })
        .collect();
    let p = Partition3::from_assignment(TernaryAssignment::new(values)?);
    if p.part(2) != d || !verify_partition(g, &p)? {
        return Err(Error::WitnessRejected);
    }
    Ok(p)
}

/// Encodes, reduces and solves one candidate.
fn try_candidate(g: &Graph, d: &VertexSet) -> Result<Option<Partition3>> {
    let f = build_nae_formula(g, d)?;
    let result = solve_sat(&nae_to_sat(&f));
    match result.model {
        Some(model) => decode_partition(g, d, &f, &model).map(Some),
        None => Ok(None),
    }
}

fn isolated_report() -> ExactReport {
    ExactReport {
        decision: Decision::No,
        witness: None,
        candidates_tried: 0,
        sat_calls: 0,
        reason: Some(ISOLATED_REASON.to_string()),
    }
}

/// Decides whether `g` has three disjoint dominating sets, sequentially.
pub fn solve_exact(g: &Graph) -> Result<ExactReport> {
    solve_exact_with(g, &ExactConfig::default())
}

pub fn solve_exact_with(g: &Graph, cfg: &ExactConfig) -> Result<ExactReport> {
    if cfg.workers == 0 {
        return Err(Error::InvalidConfig("workers must be at least 1".into()));
    }
    if !g.isolated_vertices().is_empty() {
        return Ok(isolated_report());
    }
    if cfg.workers == 1 {
        solve_sequential(g)
    } else {
        solve_parallel(g, cfg.workers)
    }
}

fn solve_sequential(g: &Graph) -> Result<ExactReport> {
    let mut tried = 0;
    let mut outcome: Result<Option<Partition3>> = Ok(None);
    enumerate_minimal_dominating_sets(g, |d| {
        tried += 1;
        match try_candidate(g, d) {
            Ok(None) => ControlFlow::Continue(()),
            other => {
                outcome = other;
                ControlFlow::Break(())
            }
        }
    });
    let witness = outcome?;
    Ok(ExactReport {
        decision: if witness.is_some() {
            Decision::Yes
        } else {
            Decision::No
        },
        witness,
        candidates_tried: tried,
        sat_calls: tried,
        reason: None,
    })
}

fn solve_parallel(g: &Graph, workers: usize) -> Result<ExactReport> {
    let stop = AtomicBool::new(false);
    let tried = AtomicU64::new(0);
    let found: Mutex<Option<Result<Partition3>>> = Mutex::new(None);
    let (tx, rx) = mpsc::sync_channel::<VertexSet>(workers * 4);
    let rx = Mutex::new(rx);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let next = rx.lock().unwrap().recv();
                let Ok(d) = next else { break };
                if stop.load(Ordering::Relaxed) {
                    continue;
                }
                tried.fetch_add(1, Ordering::Relaxed);
                match try_candidate(g, &d) {
                    Ok(None) => {}
                    hit => {
                        let mut slot = found.lock().unwrap();
                        // keep the first result; a later one must not replace it
                        if slot.is_none() {
                            *slot = hit.transpose();
                        }
                        stop.store(true, Ordering::Relaxed);
                    }
                }
            });
        }
        enumerate_minimal_dominating_sets(g, |d| {
            if stop.load(Ordering::Relaxed) || tx.send(d.clone()).is_err() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        drop(tx);
    });

    let witness = found.into_inner().unwrap().transpose()?;
    let tried = tried.into_inner();
    Ok(ExactReport {
        decision: if witness.is_some() {
            Decision::Yes
        } else {
            Decision::No
        },
        witness,
        candidates_tried: tried,
        sat_calls: tried,
        reason: None,
    })
}
