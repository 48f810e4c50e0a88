//! A complete DPLL solver: unit propagation, pure-literal elimination, and
//! branching on the unassigned variable occurring in the most open clauses
//! (lowest index on ties), trying `true` first. Fully deterministic.

use serde::{Deserialize, Serialize};

use crate::nae::{nae_to_sat, CnfFormula, Lit, NaeFormula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SatStatus {
    Satisfiable,
    Unsatisfiable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatResult {
    pub status: SatStatus,
    /// Total model, present iff satisfiable.
    pub model: Option<Vec<bool>>,
    pub stats: SatStats,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        self.status == SatStatus::Satisfiable
    }
}

enum Simplified {
    Conflict,
    Satisfied,
    Open,
}

struct Dpll<'f> {
    f: &'f CnfFormula,
    values: Vec<Option<bool>>,
    trail: Vec<usize>,
    stats: SatStats,
}

impl Dpll<'_> {
    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.values[l.var()].map(|v| v != l.is_negative())
    }

    fn assign(&mut self, l: Lit) {
        self.values[l.var()] = Some(!l.is_negative());
        self.trail.push(l.var());
    }

    fn backtrack(&mut self, mark: usize) {
        for var in self.trail.drain(mark..) {
            self.values[var] = None;
        }
    }

    fn is_clause_satisfied(&self, c: &[Lit]) -> bool {
        c.iter().any(|&l| self.lit_value(l) == Some(true))
    }

    /// Unit propagation and pure literals to a fixpoint.
    fn simplify(&mut self) -> Simplified {
        let f = self.f;
        loop {
            let mut progress = false;
            let mut all_satisfied = true;
            for c in f.clauses() {
                if self.is_clause_satisfied(c) {
                    continue;
                }
                all_satisfied = false;
                let mut open = c.iter().filter(|&&l| self.lit_value(l).is_none());
                match (open.next(), open.next()) {
                    (None, _) => {
                        self.stats.conflicts += 1;
                        return Simplified::Conflict;
                    }
                    (Some(&unit), None) => {
                        self.assign(unit);
                        self.stats.propagations += 1;
                        progress = true;
                    }
                    _ => {}
                }
            }
            if all_satisfied {
                return Simplified::Satisfied;
            }
            if progress {
                continue;
            }

            // polarity[v]: bit 0 = seen positive, bit 1 = seen negative
            let mut polarity = vec![0u8; f.num_vars()];
            for c in f.clauses().iter().filter(|c| !self.is_clause_satisfied(c)) {
                for &l in c.iter().filter(|&&l| self.lit_value(l).is_none()) {
                    polarity[l.var()] |= if l.is_negative() { 2 } else { 1 };
                }
            }
            for (var, &p) in polarity.iter().enumerate() {
                if p == 1 || p == 2 {
                    self.assign(Lit::new(var, p == 2));
                    self.stats.propagations += 1;
                    progress = true;
                }
            }
            if !progress {
                return Simplified::Open;
            }
        }
    }

    fn branch_variable(&self) -> Option<usize> {
        let mut counts = vec![0usize; self.f.num_vars()];
        for c in self
            .f
            .clauses()
            .iter()
            .filter(|c| !self.is_clause_satisfied(c))
        {
            for &l in c.iter().filter(|&&l| self.lit_value(l).is_none()) {
                counts[l.var()] += 1;
            }
        }
        counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            // max_by_key keeps the last maximum, so compare on reversed index
            .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
            .map(|(v, _)| v)
    }

    fn search(&mut self) -> bool {
        let mark = self.trail.len();
        match self.simplify() {
            Simplified::Conflict => {
                self.backtrack(mark);
                return false;
            }
            Simplified::Satisfied => return true,
            Simplified::Open => {}
        }
        let Some(var) = self.branch_variable() else {
            return true;
        };
        for value in [true, false] {
            self.stats.decisions += 1;
            let inner = self.trail.len();
            self.assign(Lit::new(var, !value));
            if self.search() {
                return true;
            }
            self.backtrack(inner);
        }
        self.backtrack(mark);
        false
    }
}

/// Decides `f`. On SAT, variables left unconstrained are set to `false`.
pub fn solve_sat(f: &CnfFormula) -> SatResult {
    let mut dpll = Dpll {
        f,
        values: vec![None; f.num_vars()],
        trail: Vec::new(),
        stats: SatStats::default(),
    };
    let sat = dpll.search();
    let model = sat.then(|| dpll.values.iter().map(|v| v.unwrap_or(false)).collect());
    SatResult {
        status: if sat {
            SatStatus::Satisfiable
        } else {
            SatStatus::Unsatisfiable
        },
        model,
        stats: dpll.stats,
    }
}

/// NAE satisfiability through the CNF reduction. The returned assignment is
/// indexed by `f`'s variables.
pub fn solve_nae_direct(f: &NaeFormula) -> Option<Vec<bool>> {
    solve_sat(&nae_to_sat(f)).model
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, VertexSet};
    use crate::nae::{build_nae_formula, evaluate_nae, parse_dimacs_cnf};

    fn cnf(text: &str) -> CnfFormula {
        parse_dimacs_cnf(text).unwrap()
    }

    #[test]
    fn unit_clause() {
        let r = solve_sat(&cnf("p cnf 1 1\n1 0\n"));
        assert!(r.is_sat());
        assert_eq!(r.model, Some(vec![true]));
    }

    #[test]
    fn contradictory_units() {
        let r = solve_sat(&cnf("p cnf 1 2\n1 0\n-1 0\n"));
        assert_eq!(r.status, SatStatus::Unsatisfiable);
        assert_eq!(r.model, None);
        assert!(r.stats.conflicts > 0);
    }

    #[test]
    fn xor_of_two() {
        let f = cnf("p cnf 2 2\n1 2 0\n-1 -2 0\n");
        let m = solve_sat(&f).model.unwrap();
        assert_ne!(m[0], m[1]);
        assert!(f.is_satisfied_by(&m));
    }

    #[test]
    fn empty_formula_and_empty_clause() {
        let r = solve_sat(&cnf("p cnf 3 0\n"));
        assert!(r.is_sat());
        assert_eq!(r.model.unwrap().len(), 3);
        assert!(!solve_sat(&cnf("p cnf 2 2\n1 2 0\n0\n")).is_sat());
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p_{i,h}: pigeon i in hole h, var = 2i + h + 1
        let mut text = String::from("p cnf 6 9\n1 2 0\n3 4 0\n5 6 0\n");
        for h in 0..2 {
            for i in 0..3 {
                for j in i + 1..3 {
                    text.push_str(&format!("-{} -{} 0\n", 2 * i + h + 1, 2 * j + h + 1));
                }
            }
        }
        let r = solve_sat(&cnf(&text));
        assert!(!r.is_sat());
        assert!(r.stats.decisions > 0);
    }

    #[test]
    fn nae_direct() {
        let k3 = build_nae_formula(
            &Graph::complete(3).unwrap(),
            &VertexSet::from_vertices(3, [0]),
        )
        .unwrap();
        let a = solve_nae_direct(&k3).unwrap();
        assert_ne!(a[0], a[1]);
        assert!(evaluate_nae(&k3, &a).unwrap());

        let star =
            build_nae_formula(&Graph::star(3).unwrap(), &VertexSet::from_vertices(4, [0])).unwrap();
        assert_eq!(solve_nae_direct(&star), None);

        let empty = NaeFormula::from_clauses(2, vec![]).unwrap();
        assert_eq!(solve_nae_direct(&empty).map(|a| a.len()), Some(2));
    }

    #[test]
    fn deterministic() {
        let f = cnf("p cnf 4 4\n1 2 0\n-1 3 0\n-3 4 -2 0\n2 -4 0\n");
        assert_eq!(solve_sat(&f), solve_sat(&f));
    }
}
