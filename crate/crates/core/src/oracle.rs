//! Ground-truth domination predicates and exhaustive oracles.
//!
//! Everything here is deliberately naive: the oracles enumerate all subsets
//! or all assignments and are only meant for small graphs, where they certify
//! the real solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A map from vertices to values in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryAssignment(Vec<u8>);

impl TernaryAssignment {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        if let Some(v) = values.iter().position(|&x| x > 2) {
            return Err(Error::InvalidConfig(format!(
                "vertex {v} has value {} outside {{0, 1, 2}}",
                values[v]
            )));
        }
        Ok(TernaryAssignment(values))
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A partition of the vertex set into three labeled parts.
///
/// Serialized as three lists of 1-indexed vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[Vec<usize>; 3]", try_from = "[Vec<usize>; 3]")]
pub struct Partition3 {
    assignment: TernaryAssignment,
    parts: [VertexSet; 3],
}

impl Partition3 {
    pub fn from_assignment(assignment: TernaryAssignment) -> Self {
        let n = assignment.len();
        let mut parts = [VertexSet::new(n), VertexSet::new(n), VertexSet::new(n)];
        for (v, &p) in assignment.values().iter().enumerate() {
            parts[p as usize].insert(v);
        }
        Partition3 { assignment, parts }
    }

    /// Fails if the parts overlap or miss a vertex.
    pub fn from_parts(parts: [VertexSet; 3]) -> Result<Self> {
        let n = parts[0].universe();
        if parts.iter().any(|p| p.universe() != n) {
            return Err(Error::MalformedPartition(
                "parts over different universes".into(),
            ));
        }
        let mut values = vec![u8::MAX; n];
        for (label, part) in parts.iter().enumerate() {
            for v in part.iter() {
                if values[v] != u8::MAX {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {} lies in parts {} and {label}",
                        v + 1,
                        values[v]
                    )));
                }
                values[v] = label as u8;
            }
        }
        if let Some(v) = values.iter().position(|&x| x == u8::MAX) {
            return Err(Error::MalformedPartition(format!(
                "vertex {} is in no part",
                v + 1
            )));
        }
        Ok(Partition3 {
            assignment: TernaryAssignment(values),
            parts,
        })
    }

    pub fn assignment(&self) -> &TernaryAssignment {
        &self.assignment
    }

    pub fn parts(&self) -> &[VertexSet; 3] {
        &self.parts
    }

    pub fn part(&self, label: usize) -> &VertexSet {
        &self.parts[label]
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// The three parts as sorted 1-indexed vertex lists.
    pub fn to_one_indexed(&self) -> [Vec<usize>; 3] {
        self.parts
            .clone()
            .map(|p| p.iter().map(|v| v + 1).collect())
    }
}

impl From<Partition3> for [Vec<usize>; 3] {
    fn from(p: Partition3) -> Self {
        p.to_one_indexed()
    }
}

impl TryFrom<[Vec<usize>; 3]> for Partition3 {
    type Error = Error;

    fn try_from(lists: [Vec<usize>; 3]) -> Result<Self> {
        let n: usize = lists.iter().map(Vec::len).sum();
        let mut parts = [VertexSet::new(n), VertexSet::new(n), VertexSet::new(n)];
        for (part, list) in parts.iter_mut().zip(&lists) {
            for &id in list {
                if id == 0 || id > n {
                    return Err(Error::VertexOutOfRange { vertex: id, n });
                }
                if !part.insert(id - 1) {
                    return Err(Error::MalformedPartition(format!("vertex {id} repeated")));
                }
            }
        }
        Partition3::from_parts(parts)
    }
}

/// Size limits for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `n` for 2^n subset enumeration.
    pub subset_limit: usize,
    /// Largest `n` for k^n partition search.
    pub partition_limit: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            subset_limit: 16,
            partition_limit: 12,
        }
    }
}

/// `N[D] = V`.
pub fn is_dominating(g: &Graph, d: &VertexSet) -> bool {
    match g.closed_neighborhood_of_set(d) {
        Ok(covered) => covered.len() == g.n(),
        Err(_) => false,
    }
}

/// `d` dominates and no proper subset does.
///
/// Removing single vertices is enough: if some proper subset `C` dominated,
/// every set between `C` and `d` would too, including one of size `|d| - 1`.
pub fn is_minimal_dominating(g: &Graph, d: &VertexSet) -> bool {
    if !is_dominating(g, d) {
        return false;
    }
    let mut smaller = d.clone();
    d.iter().all(|v| {
        smaller.remove(v);
        let redundant = is_dominating(g, &smaller);
        smaller.insert(v);
        !redundant
    })
}

fn closed_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &w| m | 1 << w))
        .collect()
}

fn covered_by(masks: &[u64], set: u64) -> u64 {
    let mut covered = 0;
    let mut rest = set;
    while rest != 0 {
        covered |= masks[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    covered
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit || n > 63 {
        Err(Error::OracleLimit {
            n,
            limit: limit.min(63),
        })
    } else {
        Ok(())
    }
}

/// All minimal dominating sets, found by testing every subset of `V`.
/// Returned in canonical (bitmask) order.
pub fn brute_force_minimal_dominating_sets(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<Vec<VertexSet>> {
    let n = g.n();
    check_limit(n, limits.subset_limit)?;
    let masks = closed_masks(g);
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for set in 0..=full {
        if covered_by(&masks, set) != full {
            continue;
        }
        let mut rest = set;
        let mut minimal = true;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if covered_by(&masks, set & !bit) == full {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(VertexSet::from_mask(n, set));
        }
    }
    Ok(out)
}

/// A partition of `V` into `k` dominating sets, if one exists.
///
/// Searches all `k^(n-1)` assignments with vertex 0 pinned to part 0 (any
/// solution can be relabeled so that holds).
pub fn brute_force_domatic_at_least(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<Option<Vec<VertexSet>>> {
    let n = g.n();
    check_limit(n, limits.partition_limit)?;
    if k == 0 {
        return Err(Error::InvalidConfig("k must be positive".into()));
    }
    if k > n {
        return Ok(None);
    }
    let masks = closed_masks(g);
    let full = (1u64 << n) - 1;
    let mut labels = vec![0usize; n];
    loop {
        let mut parts = vec![0u64; k];
        for (v, &l) in labels.iter().enumerate() {
            parts[l] |= 1 << v;
        }
        if parts.iter().all(|&p| covered_by(&masks, p) == full) {
            return Ok(Some(
                parts
                    .into_iter()
                    .map(|p| VertexSet::from_mask(n, p))
                    .collect(),
            ));
        }
        // odometer over labels[1..]
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(None);
            }
            labels[i] += 1;
            if labels[i] < k {
                break;
            }
            labels[i] = 0;
            i -= 1;
        }
    }
}

/// `δ(G)` by exhaustive search.
pub fn brute_force_domatic_number(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    check_limit(g.n(), limits.partition_limit)?;
    if !g.isolated_vertices().is_empty() {
        return Ok(1);
    }
    // each part needs a member in every N[v], so δ <= min degree + 1
    let mut best = 1;
    for k in 2..=g.min_degree() + 1 {
        if brute_force_domatic_at_least(g, k, limits)?.is_none() {
            break;
        }
        best = k;
    }
    Ok(best)
}

/// The 3-domatic certificate check: every part dominates `g`.
pub fn verify_partition(g: &Graph, p: &Partition3) -> Result<bool> {
    if p.n() != g.n() {
        return Err(Error::MalformedPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.n(),
            g.n()
        )));
    }
    Ok(p.parts().iter().all(|part| is_dominating(g, part)))
}
