//! Enumeration of all minimal dominating sets.
//!
//! Branches on vertices from `n-1` down to `0`, trying "exclude" before
//! "select". Every leaf fixes a distinct selected set, so there are no
//! duplicates, and the leaves come out in increasing bitmask order, the same
//! canonical order the brute-force oracle uses.
//!
//! Two prunings keep the tree small:
//! - a vertex whose closed neighborhood is entirely excluded can never be
//!   dominated;
//! - a selected vertex whose every closed neighbor is already dominated by
//!   another selected vertex has no private neighbor, and selections only
//!   grow, so the branch can only produce non-minimal sets.

use std::ops::ControlFlow;

use crate::graph::{Graph, VertexSet};
use crate::oracle::is_minimal_dominating;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Minimal dominating sets emitted.
    pub count: u64,
    /// Search-tree nodes, root included.
    pub nodes_visited: u64,
    /// Deepest decision level reached.
    pub max_depth: usize,
    /// False if the visitor stopped the enumeration early.
    pub complete: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Undecided,
    Selected,
    Excluded,
}

struct Enumerator<'g, F> {
    g: &'g Graph,
    closed: Vec<Vec<usize>>,
    state: Vec<State>,
    /// Non-excluded vertices in `N[w]`.
    avail: Vec<usize>,
    /// Selected vertices in `N[w]`.
    dom: Vec<usize>,
    stats: EnumerationStats,
    visit: F,
}

impl<F> Enumerator<'_, F>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    fn search(&mut self, depth: usize) -> ControlFlow<()> {
        self.stats.nodes_visited += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let n = self.g.n();
        if depth == n {
            return self.leaf();
        }
        let v = n - 1 - depth;

        if self.exclude(v) {
            self.search(depth + 1)?;
        }
        self.undo_exclude(v);

        if self.select(v) {
            self.search(depth + 1)?;
        }
        self.undo_select(v);
        ControlFlow::Continue(())
    }

    fn leaf(&mut self) -> ControlFlow<()> {
        let n = self.g.n();
        let set = VertexSet::from_vertices(n, (0..n).filter(|&v| self.state[v] == State::Selected));
        if is_minimal_dominating(self.g, &set) {
            self.stats.count += 1;
            (self.visit)(&set)?;
        }
        ControlFlow::Continue(())
    }

    /// Returns false if some vertex became undominatable.
    fn exclude(&mut self, v: usize) -> bool {
        self.state[v] = State::Excluded;
        let mut ok = true;
        for &w in &self.closed[v] {
            self.avail[w] -= 1;
            ok &= self.avail[w] > 0;
        }
        ok
    }

    fn undo_exclude(&mut self, v: usize) {
        for &w in &self.closed[v] {
            self.avail[w] += 1;
        }
        self.state[v] = State::Undecided;
    }

    /// Returns false if some selected vertex lost its last private neighbor.
    fn select(&mut self, v: usize) -> bool {
        self.state[v] = State::Selected;
        for &w in &self.closed[v] {
            self.dom[w] += 1;
        }
        // only selected vertices within distance two of v can be affected
        for &w in &self.closed[v] {
            for &s in &self.closed[w] {
                if self.state[s] == State::Selected && !self.has_private(s) {
                    return false;
                }
            }
        }
        true
    }

    fn undo_select(&mut self, v: usize) {
        for &w in &self.closed[v] {
            self.dom[w] -= 1;
        }
        self.state[v] = State::Undecided;
    }

    fn has_private(&self, s: usize) -> bool {
        self.closed[s].iter().any(|&w| self.dom[w] == 1)
    }
}

/// Streams every minimal dominating set of `g` to `visit`, in increasing
/// bitmask order. Returning `ControlFlow::Break` stops the enumeration.
pub fn enumerate_minimal_dominating_sets<F>(g: &Graph, visit: F) -> EnumerationStats
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    let closed: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    let avail = closed.iter().map(Vec::len).collect();
    let mut e = Enumerator {
        g,
        closed,
        state: vec![State::Undecided; g.n()],
        avail,
        dom: vec![0; g.n()],
        stats: EnumerationStats::default(),
        visit,
    };
    let flow = e.search(0);
    e.stats.complete = flow.is_continue();
    e.stats
}

/// Collects all minimal dominating sets.
pub fn minimal_dominating_sets(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    enumerate_minimal_dominating_sets(g, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    });
    out
}

/// The `index`-th minimal dominating set in canonical order.
pub fn nth_minimal_dominating_set(g: &Graph, index: u64) -> Option<VertexSet> {
    let mut seen = 0;
    let mut hit = None;
    enumerate_minimal_dominating_sets(g, |s| {
        if seen == index {
            hit = Some(s.clone());
            return ControlFlow::Break(());
        }
        seen += 1;
        ControlFlow::Continue(())
    });
    hit
}

pub fn count_minimal_dominating_sets(g: &Graph) -> u64 {
    enumerate_minimal_dominating_sets(g, |_| ControlFlow::Continue(())).count
}
