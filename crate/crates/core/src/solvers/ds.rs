//! Dominating set through minimum set cover.
//!
//! The set system (sets `N[v]` over the universe `V`) is stored as a
//! bipartite graph in the same representation as everything else: nodes
//! `0..n` are sets, nodes `n..2n` are elements, and set `v` is joined to
//! element `n + u` for every `u` in `N[v]`. A set node's degree is then its
//! cardinality among uncovered elements and an element node's degree its
//! frequency among remaining sets.

use super::{Answer, Budget, Problem, SolveError, SolveOptions, SolverResult, Witness};
use crate::repr::{FromEdges, SearchGraph};
use std::time::Instant;

struct SetCover<G: SearchGraph> {
    g: G,
    n: usize,
    budget: Budget,
    chosen: Vec<usize>,
    best: usize,
    best_sets: Vec<usize>,
}

fn incidence(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n + 2 * edges.len());
    for v in 0..n {
        out.push((v, n + v));
    }
    for &(u, v) in edges {
        out.push((u, n + v));
        out.push((v, n + u));
    }
    out
}

impl<G: SearchGraph> SetCover<G> {
    /// Puts set `s` in the solution and removes the elements it covers.
    fn choose(&mut self, s: usize) {
        let covered: Vec<usize> = self.g.neighbors(s).collect();
        for e in covered {
            self.g.delete_vertex(e);
        }
        self.g.delete_vertex(s);
        self.chosen.push(s);
    }

    /// Unique-element rule, then removal of empty sets. Choosing a set only
    /// deletes elements it covers, so the frequencies of the remaining
    /// elements are unchanged and one pass in any order reaches the same
    /// fixpoint. Returns false if some element can no longer be covered.
    fn reduce(&mut self) -> bool {
        let n = self.n;
        let active: Vec<usize> = self.g.active_vertices().collect();
        for &e in active.iter().filter(|&&x| x >= n) {
            if !self.g.is_active(e) {
                continue;
            }
            match self.g.degree(e) {
                0 => return false,
                1 => {
                    let s = self.g.neighbors(e).next().expect("frequency one");
                    self.choose(s);
                }
                _ => {}
            }
        }
        for &s in active.iter().filter(|&&x| x < n) {
            if self.g.is_active(s) && self.g.degree(s) == 0 {
                self.g.delete_vertex(s);
            }
        }
        true
    }

    fn uncovered(&self) -> usize {
        self.g.active_vertices().filter(|&x| x >= self.n).count()
    }

    /// Remaining set of maximum cardinality, lowest id on ties.
    fn largest_set(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for s in self.g.active_vertices().filter(|&x| x < self.n) {
            let d = self.g.degree(s);
            best = match best {
                Some((bd, bs)) if bd > d || (bd == d && bs < s) => Some((bd, bs)),
                _ => Some((d, s)),
            };
        }
        best.map(|(_, s)| s)
    }

    fn greedy(&mut self) -> Vec<usize> {
        let cp = self.g.checkpoint();
        let mark = self.chosen.len();
        while self.uncovered() > 0 {
            let s = self.largest_set().expect("every element lies in its own closed neighborhood");
            self.choose(s);
        }
        let sets = self.chosen.split_off(mark);
        self.g.rollback(&cp);
        sets
    }

    fn search(&mut self) -> Result<(), SolveError> {
        self.budget.enter()?;
        if !self.reduce() {
            return Ok(());
        }
        let remaining = self.uncovered();
        if remaining == 0 {
            if self.chosen.len() < self.best {
                self.best = self.chosen.len();
                self.best_sets = self.chosen.clone();
            }
            return Ok(());
        }
        let s = self.largest_set().expect("uncovered elements have frequency at least two");
        let lb = remaining.div_ceil(self.g.degree(s));
        if self.chosen.len() + lb >= self.best {
            return Ok(());
        }
        let cp = self.g.checkpoint();
        let mark = self.chosen.len();
        self.choose(s);
        self.search()?;
        self.g.rollback(&cp);
        self.chosen.truncate(mark);
        self.g.delete_vertex(s);
        self.search()
    }
}

/// Minimum dominating set: include or exclude a largest remaining set,
/// with the unique-element rule and the bound `ceil(uncovered / largest)`.
pub fn solve_ds_opt<G: SearchGraph + FromEdges>(
    n: usize,
    edges: &[(usize, usize)],
    opts: &SolveOptions,
) -> Result<SolverResult, SolveError> {
    // validate the input graph itself; the incidence graph is simple by construction
    crate::error::validate_edges(n, edges)?;
    let g = G::from_edges(2 * n, &incidence(n, edges))?;
    let before = g.counters();
    let start = Instant::now();
    let mut s = SetCover { g, n, budget: Budget::new(opts), chosen: Vec::new(), best: usize::MAX, best_sets: Vec::new() };
    let greedy = s.greedy();
    s.best = greedy.len();
    s.best_sets = greedy;
    let root = s.g.checkpoint();
    s.search()?;
    s.g.rollback(&root);
    let elapsed = start.elapsed();
    let mut sets = s.best_sets;
    sets.sort_unstable();
    Ok(SolverResult {
        problem: Problem::Ds,
        answer: Answer::Optimum(sets.len()),
        witness: Witness::Vertices(sets),
        nodes: s.budget.nodes,
        counters: s.g.counters().since(&before),
        elapsed,
        k: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::solvers::verify_solution;
    use crate::{BaselineGraph, Hybrid};

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn star_cycle_petersen() {
        let star: Vec<_> = (1..10).map(|v| (0, v)).collect();
        let c9: Vec<_> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        let mut pet = Vec::new();
        for i in 0..5 {
            pet.push((i, (i + 1) % 5));
            pet.push((i, i + 5));
            pet.push((5 + i, 5 + (i + 2) % 5));
        }
        for (n, edges, gamma) in [(10, &star, 1), (9, &c9, 3), (10, &pet, 3)] {
            let r = solve_ds_opt::<Hybrid>(n, edges, &opts()).unwrap();
            assert_eq!(r.answer, Answer::Optimum(gamma));
            assert!(verify_solution(n, edges, &r));
            let b = solve_ds_opt::<BaselineGraph>(n, edges, &opts()).unwrap();
            assert_eq!(b.answer, r.answer);
            assert_eq!(b.nodes, r.nodes);
        }
    }

    #[test]
    fn edgeless_and_empty() {
        let r = solve_ds_opt::<Hybrid>(4, &[], &opts()).unwrap();
        assert_eq!(r.answer, Answer::Optimum(4));
        let r = solve_ds_opt::<Hybrid>(0, &[], &opts()).unwrap();
        assert_eq!(r.answer, Answer::Optimum(0));
    }

    #[test]
    fn random_graphs_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let n = rng.gen_range(1..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.25) {
                        edges.push((u, v));
                    }
                }
            }
            let r = solve_ds_opt::<Hybrid>(n, &edges, &opts()).unwrap();
            assert_eq!(r.answer, Answer::Optimum(oracle::brute_ds(n, &edges).unwrap()));
            assert!(verify_solution(n, &edges, &r));
        }
    }
}
