//! The NAE-SAT encoding of "D can be completed to a 3-domatic partition",
//! and its reduction to plain CNF.
//!
//! For a dominating set `D`, each vertex `v` contributes the clause
//! `{x_u : u ∈ N[v] \ D}`. An assignment that is not-all-equal on every
//! clause splits `V \ D` into two sets that both meet every `N[v]`, which
//! together with `D` is a partition into three dominating sets.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A literal over a 0-indexed variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn positive(var: usize) -> Lit {
        Lit((var as u32) << 1)
    }

    pub fn negative(var: usize) -> Lit {
        Lit(((var as u32) << 1) | 1)
    }

    pub fn new(var: usize, negated: bool) -> Lit {
        if negated {
            Lit::negative(var)
        } else {
            Lit::positive(var)
        }
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Truth value under a total assignment.
    pub fn eval(self, model: &[bool]) -> bool {
        model[self.var()] != self.is_negative()
    }

    /// Signed, 1-indexed DIMACS form.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64 + 1;
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Lit> {
        match x {
            0 => None,
            x if x > 0 => Some(Lit::positive(x as usize - 1)),
            x => Some(Lit::negative(x.unsigned_abs() as usize - 1)),
        }
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// NAE formula with one all-positive clause per graph vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeFormula {
    /// Vertex behind each variable, ascending.
    variables: Vec<usize>,
    /// Variable of each vertex; `None` for members of `D`.
    var_of_vertex: Vec<Option<usize>>,
    /// `clauses[v]` is `C_v`, sorted variable indices.
    clauses: Vec<Vec<usize>>,
}

impl NaeFormula {
    /// Builds from explicit clauses over `num_vars` variables; variable `i`
    /// is attributed to vertex `i`.
    pub fn from_clauses(num_vars: usize, clauses: Vec<Vec<usize>>) -> Result<NaeFormula> {
        let mut clauses = clauses;
        for c in &mut clauses {
            if let Some(&bad) = c.iter().find(|&&x| x >= num_vars) {
                return Err(Error::InvalidConfig(format!(
                    "variable {bad} out of range for {num_vars} variables"
                )));
            }
            c.sort_unstable();
            c.dedup();
        }
        Ok(NaeFormula {
            variables: (0..num_vars).collect(),
            var_of_vertex: (0..num_vars).map(Some).collect(),
            clauses,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn var_of_vertex(&self, v: usize) -> Option<usize> {
        self.var_of_vertex.get(v).copied().flatten()
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    /// `C_v` for vertex `v`.
    pub fn clause_of_vertex(&self, v: usize) -> &[usize] {
        &self.clauses[v]
    }
}

/// `φ_D`: for each vertex `v`, the clause `{x_u : u ∈ N[v], u ∉ D}`.
///
/// Only vertices outside `D` get variables; they are numbered in ascending
/// vertex order.
pub fn build_nae_formula(g: &Graph, d: &VertexSet) -> Result<NaeFormula> {
    g.check_set(d)?;
    let n = g.n();
    let mut var_of_vertex = vec![None; n];
    let mut variables = Vec::with_capacity(n - d.len());
    for v in (0..n).filter(|&v| !d.contains(v)) {
        var_of_vertex[v] = Some(variables.len());
        variables.push(v);
    }
    let clauses = (0..n)
        .map(|v| {
            let mut c: Vec<usize> = std::iter::once(v)
                .chain(g.neighbors(v).iter().copied())
                .filter_map(|u| var_of_vertex[u])
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(NaeFormula {
        variables,
        var_of_vertex,
        clauses,
    })
}

/// True iff every clause has a true and a false literal. Clauses with fewer
/// than two literals can never satisfy this.
pub fn evaluate_nae(f: &NaeFormula, assignment: &[bool]) -> Result<bool> {
    if assignment.len() != f.num_vars() {
        return Err(Error::PartialAssignment {
            expected: f.num_vars(),
            found: assignment.len(),
        });
    }
    Ok(f.clauses
        .iter()
        .all(|c| c.iter().any(|&x| assignment[x]) && c.iter().any(|&x| !assignment[x])))
}

/// A CNF formula with clauses normalized to sorted, duplicate-free literal
/// lists and no tautologies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    /// Clauses produced before deduplication (for `nae_to_sat`, `2n`).
    pre_dedup_clauses: usize,
}

impl CnfFormula {
    /// Normalizes each clause; tautological clauses are dropped.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Result<CnfFormula> {
        let pre_dedup_clauses = clauses.len();
        let mut out = Vec::with_capacity(clauses.len());
        for mut c in clauses {
            if let Some(l) = c.iter().find(|l| l.var() >= num_vars) {
                return Err(Error::InvalidConfig(format!(
                    "literal {} out of range for {num_vars} variables",
                    l.to_dimacs()
                )));
            }
            c.sort_unstable();
            c.dedup();
            if c.windows(2).any(|w| w[0].var() == w[1].var()) {
                continue;
            }
            out.push(c);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
            pre_dedup_clauses,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// `m`.
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn pre_dedup_clauses(&self) -> usize {
        self.pre_dedup_clauses
    }

    /// Independent model check.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        model.len() == self.num_vars && self.clauses.iter().all(|c| c.iter().any(|l| l.eval(model)))
    }
}

/// The standard NAE-to-SAT reduction: every clause plus its negation.
///
/// Positive copies come first, then negated copies, then textual duplicates
/// are removed keeping first occurrences. `pre_dedup_clauses` records the
/// count before that (twice the number of NAE clauses).
pub fn nae_to_sat(f: &NaeFormula) -> CnfFormula {
    let positive = f
        .clauses
        .iter()
        .map(|c| c.iter().map(|&x| Lit::positive(x)).collect::<Vec<_>>());
    let negative = f
        .clauses
        .iter()
        .map(|c| c.iter().map(|&x| Lit::negative(x)).collect::<Vec<_>>());
    let mut seen = HashSet::new();
    let mut clauses = Vec::new();
    for c in positive.chain(negative) {
        if seen.insert(c.clone()) {
            clauses.push(c);
        }
    }
    CnfFormula {
        num_vars: f.num_vars(),
        clauses,
        pre_dedup_clauses: 2 * f.clauses.len(),
    }
}

/// DIMACS CNF text: `p cnf <vars> <clauses>` and one 0-terminated line per clause.
pub fn export_dimacs_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Clauses may span lines; `c` and `%` lines are skipped.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let syntax = |line: usize, message: String| Error::Syntax { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(syntax(line, "duplicate problem line".into()));
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(syntax(
                    line,
                    format!("expected `p cnf <vars> <clauses>`, got `{trimmed}`"),
                ));
            }
            let vars = toks[2]
                .parse()
                .map_err(|_| syntax(line, format!("invalid variable count `{}`", toks[2])))?;
            let count = toks[3]
                .parse()
                .map_err(|_| syntax(line, format!("invalid clause count `{}`", toks[3])))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| syntax(line, "clause before problem line".into()))?;
        for tok in trimmed.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| syntax(line, format!("invalid literal `{tok}`")))?;
            match Lit::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var() >= vars => {
                    return Err(syntax(
                        line,
                        format!("literal {x} exceeds {vars} variables"),
                    ))
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (vars, _) = header.ok_or_else(|| syntax(1, "missing problem line".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    CnfFormula::new(vars, clauses)
}
