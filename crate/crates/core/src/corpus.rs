//! Seeded graph generators for tests, benchmarks and the `bench` command.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{Partition3, TernaryAssignment};
use crate::walk::trial_rng;

const MAX_REJECTIONS: usize = 100_000;

/// G(n, p) conditioned on having no isolated vertex (rejection sampling).
pub fn gnp_no_isolated(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    if n < 2 || !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "gnp needs n >= 2 and 0 < p <= 1, got n={n} p={p}"
        )));
    }
    for _ in 0..MAX_REJECTIONS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.isolated_vertices().is_empty() {
            return Ok(g);
        }
    }
    Err(Error::InvalidConfig(format!(
        "no isolated-free G({n}, {p}) found"
    )))
}

/// Random graph with maximum degree at most `max_degree` and no isolated
/// vertex: random pairs are added while both endpoints have spare degree.
pub fn bounded_degree(n: usize, max_degree: usize, rng: &mut impl Rng) -> Result<Graph> {
    if n < 2 || max_degree == 0 {
        return Err(Error::InvalidConfig(format!(
            "bounded generator needs n >= 2 and degree >= 1, got n={n} d={max_degree}"
        )));
    }
    for _ in 0..MAX_REJECTIONS {
        let mut degree = vec![0; n];
        let mut edges = Vec::new();
        for _ in 0..n * max_degree * 2 {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v || degree[u] >= max_degree || degree[v] >= max_degree {
                continue;
            }
            if edges.contains(&(u.min(v), u.max(v))) {
                continue;
            }
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u.min(v), u.max(v)));
        }
        if degree.iter().all(|&d| d > 0) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::InvalidConfig(format!(
        "no isolated-free bounded graph for n={n} d={max_degree}"
    )))
}

/// A graph built around a hidden 3-domatic partition.
///
/// Vertices are split into three balanced random parts, each pair is joined
/// with probability `p`, then for every vertex `v` and part `P` missing from
/// `N[v]` an edge from `v` to a random member of `P` is added.
pub fn planted(n: usize, p: f64, rng: &mut impl Rng) -> Result<(Graph, Partition3)> {
    if n < 3 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!(
            "planted needs n >= 3 and 0 <= p <= 1, got n={n} p={p}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut label = vec![0u8; n];
    let mut members: [Vec<usize>; 3] = Default::default();
    for (i, &v) in order.iter().enumerate() {
        label[v] = (i % 3) as u8;
        members[i % 3].push(v);
    }
    for m in &mut members {
        m.sort_unstable();
    }

    let mut adj = vec![vec![false; n]; n];
    #[allow(clippy::needless_range_loop)]
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    for v in 0..n {
        for (part, m) in members.iter().enumerate() {
            if label[v] as usize == part || m.iter().any(|&w| adj[v][w]) {
                continue;
            }
            let w = m[rng.random_range(0..m.len())];
            adj[v][w] = true;
            adj[w][v] = true;
        }
    }
    let edges = (0..n).flat_map(|u| {
        let row = &adj[u];
        (u + 1..n).filter(move |&v| row[v]).map(move |v| (u, v))
    });
    let g = Graph::from_edges(n, edges.collect::<Vec<_>>())?;
    let partition = Partition3::from_assignment(TernaryAssignment::new(label)?);
    Ok((g, partition))
}

/// Every labeled graph on `n` vertices (`2^(n(n-1)/2)` of them), in edge-mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!((1..=8).contains(&n), "all_graphs supports 1 <= n <= 8");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("valid pairs")
    })
}

/// Named generator families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Generator {
    Cycles,
    Gnp { p: f64 },
    Bounded { max_degree: usize },
    Planted { p: f64 },
}

impl FromStr for Generator {
    type Err = Error;

    /// `cycles`, `gnp:<p>`, `bounded:<max degree>`, or `planted:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("invalid generator `{s}`"));
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        match (name, arg) {
            ("cycles", None) => Ok(Generator::Cycles),
            ("gnp", Some(a)) => Ok(Generator::Gnp {
                p: a.parse().map_err(|_| bad())?,
            }),
            ("gnp", None) => Ok(Generator::Gnp { p: 0.3 }),
            ("bounded", Some(a)) => Ok(Generator::Bounded {
                max_degree: a.parse().map_err(|_| bad())?,
            }),
            ("bounded", None) => Ok(Generator::Bounded { max_degree: 4 }),
            ("planted", Some(a)) => Ok(Generator::Planted {
                p: a.parse().map_err(|_| bad())?,
            }),
            ("planted", None) => Ok(Generator::Planted { p: 0.1 }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cycles => write!(f, "cycles"),
            Generator::Gnp { p } => write!(f, "gnp:{p}"),
            Generator::Bounded { max_degree } => write!(f, "bounded:{max_degree}"),
            Generator::Planted { p } => write!(f, "planted:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub generator: Generator,
    pub n_min: usize,
    pub n_max: usize,
    /// Instances per `n` (ignored for cycles, which have one per `n`).
    pub per_n: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    /// Known witness for planted instances.
    pub planted: Option<Partition3>,
}

/// Generates a corpus deterministically. Instance `i` of size `n` draws from
/// its own RNG stream, so growing `per_n` never changes earlier instances.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<Instance>> {
    if spec.n_min > spec.n_max {
        return Err(Error::InvalidConfig(format!(
            "empty size range {}..={}",
            spec.n_min, spec.n_max
        )));
    }
    let mut out = Vec::new();
    for n in spec.n_min..=spec.n_max {
        let count = if spec.generator == Generator::Cycles {
            1
        } else {
            spec.per_n
        };
        for i in 0..count {
            let mut rng: ChaCha8Rng = trial_rng(spec.seed, ((n as u64) << 32) | i as u64);
            let id = format!("{}-n{n}-{i}", spec.generator);
            let (graph, planted) = match spec.generator {
                Generator::Cycles => (Graph::cycle(n)?, None),
                Generator::Gnp { p } => (gnp_no_isolated(n, p, &mut rng)?, None),
                Generator::Bounded { max_degree } => {
                    (bounded_degree(n, max_degree, &mut rng)?, None)
                }
                Generator::Planted { p } => {
                    let (g, w) = planted(n, p, &mut rng)?;
                    (g, Some(w))
                }
            };
            out.push(Instance { id, graph, planted });
        }
    }
    Ok(out)
}
