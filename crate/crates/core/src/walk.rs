//! Randomized 3-domatic search as a CSP over `{0, 1, 2}`.
//!
//! Each vertex `v` gets a constraint over `N[v]` that holds iff all three
//! values occur there; a solution is exactly a partition into three
//! dominating sets. The solver is a random walk with restarts: start from a
//! uniform assignment, then repeatedly pick a violated constraint, a variable
//! in its scope, and one of the other two values, all uniformly.
//!
//! Trial `t` draws from its own ChaCha stream `t` under the configured seed,
//! so results do not depend on how trials are spread over workers.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{verify_partition, Partition3, TernaryAssignment};

pub const DEFAULT_LAMBDA: f64 = 20.0;
pub const DEFAULT_TRIAL_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    num_vars: usize,
    /// Scope of constraint `v`: `N[v]`, ascending.
    scopes: Vec<Vec<usize>>,
    /// Constraints whose scope contains each variable.
    occurrences: Vec<Vec<usize>>,
    max_order: usize,
}

impl CspInstance {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn domain_size(&self) -> usize {
        3
    }

    pub fn num_constraints(&self) -> usize {
        self.scopes.len()
    }

    pub fn scope(&self, c: usize) -> &[usize] {
        &self.scopes[c]
    }

    pub fn order(&self, c: usize) -> usize {
        self.scopes[c].len()
    }

    /// `ℓ = Δ(G) + 1`.
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn is_satisfied(&self, c: usize, values: &[u8]) -> bool {
        let mut seen = 0u8;
        for &x in &self.scopes[c] {
            seen |= 1 << values[x];
        }
        seen == 0b111
    }
}

pub fn build_csp(g: &Graph) -> CspInstance {
    let n = g.n();
    let scopes: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut s = g.neighbors(v).to_vec();
            s.push(v);
            s.sort_unstable();
            s
        })
        .collect();
    let mut occurrences = vec![Vec::new(); n];
    for (c, scope) in scopes.iter().enumerate() {
        for &x in scope {
            occurrences[x].push(c);
        }
    }
    CspInstance {
        num_vars: n,
        scopes,
        occurrences,
        max_order: g.max_degree() + 1,
    }
}

/// Ids of constraints missing one of the three values, ascending.
pub fn violated_constraints(csp: &CspInstance, a: &TernaryAssignment) -> Vec<usize> {
    assert_eq!(a.len(), csp.num_vars, "assignment must be total");
    (0..csp.num_constraints())
        .filter(|&c| !csp.is_satisfied(c, a.values()))
        .collect()
}

/// `3 (1 - 1/(Δ+1))`, the per-variable base of the expected running time.
pub fn restart_base(max_degree: usize) -> f64 {
    3.0 * (1.0 - 1.0 / (max_degree as f64 + 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RestartBudget {
    pub base: f64,
    /// `λ · base^n` before rounding and capping.
    pub raw: f64,
    pub trials: u64,
    /// True when the budget exceeded the cap and was clamped to it.
    pub capped: bool,
}

pub fn restart_budget(g: &Graph, lambda: f64) -> Result<RestartBudget> {
    restart_budget_with_cap(g, lambda, DEFAULT_TRIAL_CAP)
}

/// `ceil(λ · base^n)` trials, clamped to `cap`.
pub fn restart_budget_with_cap(g: &Graph, lambda: f64, cap: u64) -> Result<RestartBudget> {
    let delta = g.max_degree();
    if delta == 0 {
        return Err(Error::InvalidConfig(
            "restart budget needs max degree >= 1".into(),
        ));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if cap == 0 {
        return Err(Error::InvalidConfig("trial cap must be at least 1".into()));
    }
    let base = restart_base(delta);
    let raw = lambda * base.powi(g.n() as i32);
    let wanted = raw.ceil().max(1.0);
    // `as` saturates, but be explicit about the cap
    let (trials, capped) = if !wanted.is_finite() || wanted >= cap as f64 {
        (cap, wanted > cap as f64)
    } else {
        (wanted as u64, false)
    };
    Ok(RestartBudget {
        base,
        raw,
        trials,
        capped,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub seed: u64,
    /// Steps per trial.
    pub walk_length: usize,
    /// Restart budget.
    pub max_trials: u64,
    pub workers: usize,
}

impl WalkConfig {
    /// Walk length `3n` and the `λ = 20` budget under the default cap.
    pub fn for_graph(g: &Graph, seed: u64) -> WalkConfig {
        let max_trials = restart_budget(g, DEFAULT_LAMBDA).map_or(1, |b| b.trials);
        WalkConfig {
            seed,
            walk_length: 3 * g.n(),
            max_trials,
            workers: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.walk_length == 0 {
            return Err(Error::InvalidConfig(
                "walk length must be at least 1".into(),
            ));
        }
        if self.max_trials == 0 {
            return Err(Error::InvalidConfig("max trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomizedDecision {
    Yes,
    ProbablyNo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomizedReport {
    pub decision: RandomizedDecision,
    pub witness: Option<Partition3>,
    pub trials_used: u64,
    pub steps_used: u64,
    pub seed: u64,
}

/// One walk move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub constraint: usize,
    pub var: usize,
    pub old: u8,
    pub new: u8,
}

/// Random-walk state with incrementally maintained violated constraints.
pub struct Walker<'c> {
    csp: &'c CspInstance,
    values: Vec<u8>,
    /// Per constraint, how many scope variables hold each value.
    counts: Vec<[u32; 3]>,
    violated: Vec<usize>,
    /// Index of each constraint in `violated`, or `usize::MAX`.
    slot: Vec<usize>,
}

impl<'c> Walker<'c> {
    pub fn new(csp: &'c CspInstance, values: Vec<u8>) -> Walker<'c> {
        assert_eq!(values.len(), csp.num_vars);
        assert!(values.iter().all(|&x| x < 3));
        let counts: Vec<[u32; 3]> = csp
            .scopes
            .iter()
            .map(|scope| {
                let mut k = [0u32; 3];
                for &x in scope {
                    k[values[x] as usize] += 1;
                }
                k
            })
            .collect();
        let mut w = Walker {
            csp,
            values,
            violated: Vec::new(),
            slot: vec![usize::MAX; counts.len()],
            counts,
        };
        for c in 0..w.counts.len() {
            w.refresh(c);
        }
        w
    }

    pub fn random(csp: &'c CspInstance, rng: &mut impl Rng) -> Walker<'c> {
        let values = (0..csp.num_vars)
            .map(|_| rng.random_range(0..3u8))
            .collect();
        Walker::new(csp, values)
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Currently violated constraints, in no particular order.
    pub fn violated(&self) -> &[usize] {
        &self.violated
    }

    pub fn is_solution(&self) -> bool {
        self.violated.is_empty()
    }

    fn refresh(&mut self, c: usize) {
        let bad = self.counts[c].contains(&0);
        let listed = self.slot[c] != usize::MAX;
        if bad && !listed {
            self.slot[c] = self.violated.len();
            self.violated.push(c);
        } else if !bad && listed {
            let i = self.slot[c];
            self.violated.swap_remove(i);
            if let Some(&moved) = self.violated.get(i) {
                self.slot[moved] = i;
            }
            self.slot[c] = usize::MAX;
        }
    }

    /// Resamples one variable of a uniformly chosen violated constraint.
    /// Returns `None` if nothing is violated.
    pub fn step(&mut self, rng: &mut impl Rng) -> Option<Step> {
        if self.violated.is_empty() {
            return None;
        }
        let constraint = self.violated[rng.random_range(0..self.violated.len())];
        let scope = &self.csp.scopes[constraint];
        let var = scope[rng.random_range(0..scope.len())];
        let old = self.values[var];
        let new = (old + 1 + rng.random_range(0..2u8)) % 3;
        self.values[var] = new;
        for &c in &self.csp.occurrences[var] {
            self.counts[c][old as usize] -= 1;
            self.counts[c][new as usize] += 1;
            self.refresh(c);
        }
        Some(Step {
            constraint,
            var,
            old,
            new,
        })
    }
}

/// The RNG for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One restart: random start plus up to `walk_length` steps. Returns the
/// solution, if reached, and the number of steps taken.
pub fn run_trial(
    csp: &CspInstance,
    walk_length: usize,
    rng: &mut impl Rng,
) -> (Option<Vec<u8>>, u64) {
    let mut w = Walker::random(csp, rng);
    let mut steps = 0;
    while !w.is_solution() && steps < walk_length as u64 {
        w.step(rng);
        steps += 1;
    }
    let found = if w.is_solution() {
        Some(w.values)
    } else {
        None
    };
    (found, steps)
}

fn certify(g: &Graph, values: Vec<u8>) -> Result<Partition3> {
    let p = Partition3::from_assignment(TernaryAssignment::new(values)?);
    if verify_partition(g, &p)? {
        Ok(p)
    } else {
        Err(Error::WitnessRejected)
    }
}

/// Monte Carlo 3-domatic search. `Yes` answers carry a verified witness;
/// `ProbablyNo` means the budget ran out.
pub fn solve_randomized(g: &Graph, cfg: &WalkConfig) -> Result<RandomizedReport> {
    cfg.validate()?;
    let csp = build_csp(g);
    let (hit, trials_used, steps_used) = if cfg.workers == 1 {
        walk_sequential(&csp, cfg)
    } else {
        walk_parallel(&csp, cfg)
    };
    let witness = hit.map(|values| certify(g, values)).transpose()?;
    Ok(RandomizedReport {
        decision: if witness.is_some() {
            RandomizedDecision::Yes
        } else {
            RandomizedDecision::ProbablyNo
        },
        witness,
        trials_used,
        steps_used,
        seed: cfg.seed,
    })
}

fn walk_sequential(csp: &CspInstance, cfg: &WalkConfig) -> (Option<Vec<u8>>, u64, u64) {
    let mut steps_used = 0;
    for trial in 0..cfg.max_trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let (found, steps) = run_trial(csp, cfg.walk_length, &mut rng);
        steps_used += steps;
        if found.is_some() {
            return (found, trial + 1, steps_used);
        }
    }
    (None, cfg.max_trials, steps_used)
}

/// Workers pull trial indices from a shared counter. The lowest successful
/// index wins, which makes the witness identical to the sequential one;
/// only the counters depend on scheduling.
fn walk_parallel(csp: &CspInstance, cfg: &WalkConfig) -> (Option<Vec<u8>>, u64, u64) {
    let next = AtomicU64::new(0);
    let best = AtomicU64::new(u64::MAX);
    let trials = AtomicU64::new(0);
    let steps = AtomicU64::new(0);
    let winner: Mutex<Option<(u64, Vec<u8>)>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..cfg.workers {
            scope.spawn(|| loop {
                let trial = next.fetch_add(1, Ordering::Relaxed);
                if trial >= cfg.max_trials || trial > best.load(Ordering::Relaxed) {
                    break;
                }
                let mut rng = trial_rng(cfg.seed, trial);
                let (found, used) = run_trial(csp, cfg.walk_length, &mut rng);
                trials.fetch_add(1, Ordering::Relaxed);
                steps.fetch_add(used, Ordering::Relaxed);
                if let Some(values) = found {
                    best.fetch_min(trial, Ordering::Relaxed);
                    let mut slot = winner.lock().unwrap();
                    if slot.as_ref().is_none_or(|(t, _)| trial < *t) {
                        *slot = Some((trial, values));
                    }
                }
            });
        }
    });

    let hit = winner.into_inner().unwrap().map(|(_, v)| v);
    (hit, trials.into_inner(), steps.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assignment(values: &[u8]) -> TernaryAssignment {
        TernaryAssignment::new(values.to_vec()).unwrap()
    }

    #[test]
    fn csp_shapes() {
        let k3 = build_csp(&Graph::complete(3).unwrap());
        assert_eq!(k3.num_constraints(), 3);
        assert!((0..3).all(|c| k3.scope(c) == [0, 1, 2]));
        assert_eq!(k3.max_order(), 3);

        let p3 = build_csp(&Graph::path(3).unwrap());
        assert_eq!((p3.order(0), p3.order(1), p3.order(2)), (2, 3, 2));

        let star = build_csp(&Graph::star(3).unwrap());
        assert_eq!(star.order(0), 4);
        assert!((1..4).all(|c| star.order(c) == 2));
        assert_eq!(star.max_order(), 4);
    }

    #[test]
    fn violations() {
        let k3 = build_csp(&Graph::complete(3).unwrap());
        assert!(violated_constraints(&k3, &assignment(&[0, 1, 2])).is_empty());
        assert_eq!(
            violated_constraints(&k3, &assignment(&[0, 0, 0])),
            vec![0, 1, 2]
        );
        let c6 = build_csp(&Graph::cycle(6).unwrap());
        assert!(violated_constraints(&c6, &assignment(&[0, 1, 2, 0, 1, 2])).is_empty());
    }

    #[test]
    fn bases_follow_degree() {
        assert_eq!(restart_base(2), 2.0);
        assert!((restart_base(3) - 2.25).abs() < 1e-12);
        assert!((restart_base(5) - 2.5).abs() < 1e-12);
        assert!((restart_base(8) - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn budget_rounds_up_and_caps() {
        let p3 = Graph::path(3).unwrap();
        let b = restart_budget(&p3, 20.0).unwrap();
        assert_eq!(b.trials, 160);
        assert!(!b.capped);
        let capped = restart_budget_with_cap(&Graph::cycle(60).unwrap(), 20.0, 1000).unwrap();
        assert_eq!(capped.trials, 1000);
        assert!(capped.capped);
        let huge =
            restart_budget_with_cap(&Graph::complete(2000).unwrap(), 20.0, u64::MAX).unwrap();
        assert!(huge.capped);
        assert_eq!(huge.trials, u64::MAX);
        assert!(restart_budget(&Graph::empty(3).unwrap(), 20.0).is_err());
        assert!(restart_budget(&p3, 0.0).is_err());
    }

    #[test]
    fn walker_tracks_violations() {
        let csp = build_csp(&Graph::cycle(6).unwrap());
        let mut rng = trial_rng(3, 0);
        let mut w = Walker::random(&csp, &mut rng);
        for _ in 0..200 {
            let a = assignment(w.values());
            let mut expected = violated_constraints(&csp, &a);
            let mut actual = w.violated().to_vec();
            actual.sort_unstable();
            expected.sort_unstable();
            assert_eq!(actual, expected);
            if w.step(&mut rng).is_none() {
                w = Walker::random(&csp, &mut rng);
            }
        }
    }

    #[test]
    fn k3_found_quickly() {
        let g = Graph::complete(3).unwrap();
        for seed in 0..50 {
            let r = solve_randomized(&g, &WalkConfig::for_graph(&g, seed)).unwrap();
            assert_eq!(r.decision, RandomizedDecision::Yes);
            assert!(verify_partition(&g, r.witness.as_ref().unwrap()).unwrap());
            assert_eq!(r.seed, seed);
        }
    }

    #[test]
    fn p3_never_yes() {
        let g = Graph::path(3).unwrap();
        let cfg = WalkConfig::for_graph(&g, 1);
        let r = solve_randomized(&g, &cfg).unwrap();
        assert_eq!(r.decision, RandomizedDecision::ProbablyNo);
        assert_eq!(r.witness, None);
        assert_eq!(r.trials_used, cfg.max_trials);
    }

    #[test]
    fn invalid_configs() {
        let g = Graph::complete(3).unwrap();
        let base = WalkConfig::for_graph(&g, 0);
        for cfg in [
            WalkConfig {
                walk_length: 0,
                ..base
            },
            WalkConfig {
                max_trials: 0,
                ..base
            },
            WalkConfig { workers: 0, ..base },
        ] {
            assert!(solve_randomized(&g, &cfg).is_err());
        }
    }

    #[test]
    fn parallel_witness_matches_sequential() {
        let g = Graph::cycle(12).unwrap();
        for seed in 0..5 {
            let cfg = WalkConfig::for_graph(&g, seed);
            let seq = solve_randomized(&g, &cfg).unwrap();
            let par = solve_randomized(&g, &WalkConfig { workers: 4, ..cfg }).unwrap();
            assert_eq!(seq.decision, par.decision);
            assert_eq!(seq.witness, par.witness);
        }
    }
}
