//! Exact branch-and-reduce solvers written once against [`SearchGraph`].
//!
//! Every branching and reduction decision depends only on the current
//! vertex and edge sets, with ties broken by vertex id. Neighbor iteration
//! order is representation specific, so whenever it could influence a
//! decision the neighbors are sorted first. As a result the hybrid and the
//! baseline representation explore identical search trees.

mod ce;
mod ds;
mod vc;

pub use ce::solve_ce_parm;
pub use ds::solve_ds_opt;
pub use vc::{solve_vc_opt, solve_vc_parm, solve_vc_parm_fold};

use crate::counters::Counters;
use crate::error::GraphError;
use crate::repr::SearchGraph;
use crate::{BaselineGraph, Hybrid};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Vc,
    VcParm,
    Ds,
    Ce,
}

impl Problem {
    pub fn is_decision(self) -> bool {
        matches!(self, Problem::VcParm | Problem::Ce)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Vc => "vc",
            Problem::VcParm => "vc-parm",
            Problem::Ds => "ds",
            Problem::Ce => "ce",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vc" => Ok(Problem::Vc),
            "vc-parm" => Ok(Problem::VcParm),
            "ds" => Ok(Problem::Ds),
            "ce" => Ok(Problem::Ce),
            _ => Err(format!("unknown problem {s:?} (expected vc, vc-parm, ds or ce)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Repr {
    Hybrid,
    Alist,
}

impl Repr {
    pub fn as_str(self) -> &'static str {
        match self {
            Repr::Hybrid => "hybrid",
            Repr::Alist => "alist",
        }
    }
}

impl fmt::Display for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Repr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hybrid" => Ok(Repr::Hybrid),
            "alist" => Ok(Repr::Alist),
            _ => Err(format!("unknown representation {s:?} (expected hybrid or alist)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Optimum(usize),
    Decision(bool),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Optimum(s) => write!(f, "{s}"),
            Answer::Decision(true) => f.write_str("yes"),
            Answer::Decision(false) => f.write_str("no"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditKind {
    Delete,
    Add,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edit {
    pub kind: EditKind,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    None,
    Vertices(Vec<usize>),
    Edits(Vec<Edit>),
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverResult {
    pub problem: Problem,
    pub answer: Answer,
    pub witness: Witness,
    /// Search-tree nodes visited, incumbent heuristics excluded.
    pub nodes: u64,
    /// Cell accesses during the search.
    pub counters: Counters,
    /// Wall time of the search, graph construction excluded.
    pub elapsed: Duration,
    pub k: Option<usize>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search timed out after {nodes} nodes")]
    Timeout { nodes: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub deadline: Option<Instant>,
}

impl SolveOptions {
    pub fn with_timeout(timeout: Duration) -> Self {
        SolveOptions { deadline: Some(Instant::now() + timeout) }
    }
}

/// Node counter with a cheap deadline check.
pub(crate) struct Budget {
    pub nodes: u64,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(opts: &SolveOptions) -> Self {
        Budget { nodes: 0, deadline: opts.deadline }
    }

    #[inline]
    pub fn enter(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(SolveError::Timeout { nodes: self.nodes });
                }
            }
        }
        Ok(())
    }
}

/// Active neighbors of `v` in increasing id order.
pub(crate) fn sorted_neighbors<G: SearchGraph>(g: &G, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g.neighbors(v).collect();
    out.sort_unstable();
    out
}

pub(crate) fn edge_count<G: SearchGraph>(g: &G) -> usize {
    g.active_vertices().map(|v| g.degree(v)).sum::<usize>() / 2
}

/// Full request, used by the command-line front end.
#[derive(Debug, Clone, Copy)]
pub struct SolveRequest {
    pub problem: Problem,
    pub repr: Repr,
    pub k: Option<usize>,
    pub fold: bool,
}

/// Dispatches a request to the matching solver and representation.
pub fn solve(
    req: &SolveRequest,
    n: usize,
    edges: &[(usize, usize)],
    opts: &SolveOptions,
) -> Result<SolverResult, SolveError> {
    if req.fold && req.problem != Problem::VcParm {
        return Err(SolveError::Unsupported("folding applies only to vc-parm".into()));
    }
    let need_k = || req.k.ok_or_else(|| SolveError::Unsupported(format!("{} needs a parameter k", req.problem)));
    match (req.problem, req.repr) {
        (Problem::Vc, Repr::Hybrid) => solve_vc_opt::<Hybrid>(n, edges, opts),
        (Problem::Vc, Repr::Alist) => solve_vc_opt::<BaselineGraph>(n, edges, opts),
        (Problem::VcParm, Repr::Hybrid) if req.fold => solve_vc_parm_fold(n, edges, need_k()?, opts),
        (Problem::VcParm, Repr::Alist) if req.fold => {
            Err(SolveError::Unsupported("folding needs the hybrid representation".into()))
        }
        (Problem::VcParm, Repr::Hybrid) => solve_vc_parm::<Hybrid>(n, edges, need_k()?, opts),
        (Problem::VcParm, Repr::Alist) => solve_vc_parm::<BaselineGraph>(n, edges, need_k()?, opts),
        (Problem::Ds, Repr::Hybrid) => solve_ds_opt::<Hybrid>(n, edges, opts),
        (Problem::Ds, Repr::Alist) => solve_ds_opt::<BaselineGraph>(n, edges, opts),
        (Problem::Ce, Repr::Hybrid) => solve_ce_parm::<Hybrid>(n, edges, need_k()?, opts),
        (Problem::Ce, Repr::Alist) => solve_ce_parm::<BaselineGraph>(n, edges, need_k()?, opts),
    }
}

/// Checks a result against the original edge list, independently of any
/// representation. Results without a witness are rejected.
pub fn verify_solution(n: usize, edges: &[(usize, usize)], result: &SolverResult) -> bool {
    match (&result.witness, result.problem) {
        (Witness::Vertices(set), Problem::Vc | Problem::VcParm) => {
            let Some(chosen) = membership(n, set) else { return false };
            let size_ok = match result.answer {
                Answer::Optimum(s) => s == set.len(),
                Answer::Decision(true) => result.k.is_some_and(|k| set.len() <= k),
                Answer::Decision(false) => false,
            };
            size_ok && edges.iter().all(|&(u, v)| chosen[u] || chosen[v])
        }
        (Witness::Vertices(set), Problem::Ds) => {
            let Some(chosen) = membership(n, set) else { return false };
            let mut dominated = chosen.clone();
            for &(u, v) in edges {
                dominated[u] |= chosen[v];
                dominated[v] |= chosen[u];
            }
            result.answer == Answer::Optimum(set.len()) && dominated.iter().all(|&d| d)
        }
        (Witness::Edits(edits), Problem::Ce) => {
            result.answer == Answer::Decision(true)
                && result.k.is_some_and(|k| edits.len() <= k)
                && edits_yield_cluster_graph(n, edges, edits)
        }
        _ => false,
    }
}

fn membership(n: usize, set: &[usize]) -> Option<Vec<bool>> {
    let mut chosen = vec![false; n];
    for &v in set {
        if v >= n || chosen[v] {
            return None;
        }
        chosen[v] = true;
    }
    Some(chosen)
}

fn edits_yield_cluster_graph(n: usize, edges: &[(usize, usize)], edits: &[Edit]) -> bool {
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut present: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| key(u, v)).collect();
    let mut touched = HashSet::new();
    for e in edits {
        if e.u >= n || e.v >= n || e.u == e.v || !touched.insert(key(e.u, e.v)) {
            return false;
        }
        let applied = match e.kind {
            EditKind::Delete => present.remove(&key(e.u, e.v)),
            EditKind::Add => present.insert(key(e.u, e.v)),
        };
        if !applied {
            return false;
        }
    }
    // cluster graph iff adjacency is transitive
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &present {
        adj[u].push(v);
        adj[v].push(u);
    }
    (0..n).all(|y| {
        adj[y].iter().all(|&x| adj[y].iter().all(|&z| x == z || present.contains(&key(x, z))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(problem: Problem, answer: Answer, witness: Witness, k: Option<usize>) -> SolverResult {
        SolverResult {
            problem,
            answer,
            witness,
            nodes: 0,
            counters: Counters::default(),
            elapsed: Duration::ZERO,
            k,
        }
    }

    #[test]
    fn verify_rejects_tampered_witnesses() {
        let tri = [(0, 1), (1, 2), (0, 2)];
        let good = result(Problem::Vc, Answer::Optimum(2), Witness::Vertices(vec![0, 1]), None);
        assert!(verify_solution(3, &tri, &good));
        let dropped = result(Problem::Vc, Answer::Optimum(1), Witness::Vertices(vec![0]), None);
        assert!(!verify_solution(3, &tri, &dropped));
        let dup = result(Problem::Vc, Answer::Optimum(2), Witness::Vertices(vec![0, 0]), None);
        assert!(!verify_solution(3, &tri, &dup));
        let no = result(Problem::VcParm, Answer::Decision(false), Witness::None, Some(1));
        assert!(!verify_solution(3, &tri, &no));
    }

    #[test]
    fn verify_cluster_edits() {
        let p3 = [(0, 1), (1, 2)];
        let add = Edit { kind: EditKind::Add, u: 0, v: 2 };
        let del = Edit { kind: EditKind::Delete, u: 1, v: 0 };
        let ok = |edits: Vec<Edit>, k| {
            verify_solution(3, &p3, &result(Problem::Ce, Answer::Decision(true), Witness::Edits(edits), Some(k)))
        };
        assert!(ok(vec![add], 1));
        assert!(ok(vec![del], 1));
        assert!(!ok(vec![add], 0));
        assert!(!ok(vec![], 1));
        assert!(!ok(vec![Edit { kind: EditKind::Delete, u: 0, v: 2 }], 1));
    }

    #[test]
    fn problem_and_repr_names_round_trip() {
        for p in [Problem::Vc, Problem::VcParm, Problem::Ds, Problem::Ce] {
            assert_eq!(p.as_str().parse::<Problem>().unwrap(), p);
        }
        for r in [Repr::Hybrid, Repr::Alist] {
            assert_eq!(r.as_str().parse::<Repr>().unwrap(), r);
        }
        assert!("tsp".parse::<Problem>().is_err());
    }
}
