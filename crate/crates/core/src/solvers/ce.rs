//! Cluster editing by branching on conflict triples.
//!
//! A conflict triple is an induced path `x - y - z`. Some edit among its
//! three pairs is unavoidable, so the search deletes `xy`, deletes `yz` or
//! adds `xz`. An edited pair is frozen for the whole subtree, which keeps a
//! deleted pair from being re-added and an added edge from being deleted.

use super::{sorted_neighbors, Answer, Budget, Edit, EditKind, Problem, SolveError, SolveOptions, SolverResult, Witness};
use crate::repr::AddEdges;
use std::collections::VecDeque;
use std::time::Instant;

/// Bitset over ordered vertex pairs, always set symmetrically.
#[derive(Clone)]
struct PairSet {
    n: usize,
    words: Vec<u64>,
}

impl PairSet {
    fn new(n: usize) -> Self {
        PairSet { n, words: vec![0; (n * n).div_ceil(64)] }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        let i = u * self.n + v;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        for i in [u * self.n + v, v * self.n + u] {
            self.words[i / 64] |= 1 << (i % 64);
        }
    }

    fn clear(&mut self) {
        self.words.fill(0);
    }
}

struct ClusterEditing<G: AddEdges> {
    g: G,
    budget: Budget,
    frozen: PairSet,
    /// Pairs claimed by the edit-disjoint packing (scratch).
    used: PairSet,
    edits: Vec<Edit>,
    solution: Vec<Edit>,
    seen: Vec<bool>,
}

impl<G: AddEdges> ClusterEditing<G> {
    /// Deletes every connected component that is already a clique.
    fn remove_clique_components(&mut self) {
        let n = self.g.order();
        self.seen.fill(false);
        let mut queue = VecDeque::new();
        let mut comp = Vec::new();
        for s in 0..n {
            if !self.g.is_active(s) || self.seen[s] {
                continue;
            }
            comp.clear();
            self.seen[s] = true;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for u in self.g.neighbors(v) {
                    if !self.seen[u] {
                        self.seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            if comp.iter().all(|&v| self.g.degree(v) + 1 == comp.len()) {
                for &v in &comp {
                    self.g.delete_vertex(v);
                }
            }
        }
    }

    /// First conflict triple in scan order (center by id, then its
    /// neighbors pairwise by id), and the size of a greedy packing of
    /// pair-disjoint triples in the same order, capped just above `k`.
    fn conflicts(&mut self, k: usize) -> (Option<(usize, usize, usize)>, usize) {
        self.used.clear();
        let mut first = None;
        let mut packed = 0;
        for y in 0..self.g.order() {
            if !self.g.is_active(y) || self.g.degree(y) < 2 {
                continue;
            }
            let nb = sorted_neighbors(&self.g, y);
            for (i, &x) in nb.iter().enumerate() {
                for &z in &nb[i + 1..] {
                    if self.g.is_adjacent(x, z) {
                        continue;
                    }
                    first.get_or_insert((x, y, z));
                    if !self.used.get(x, y) && !self.used.get(y, z) && !self.used.get(x, z) {
                        self.used.set(x, y);
                        self.used.set(y, z);
                        self.used.set(x, z);
                        packed += 1;
                        if packed > k {
                            return (first, packed);
                        }
                    }
                }
            }
        }
        (first, packed)
    }

    fn apply(&mut self, e: Edit) {
        self.frozen.set(e.u, e.v);
        match e.kind {
            EditKind::Delete => self.g.delete_edge(e.u, e.v),
            EditKind::Add => self.g.add_edge(e.u, e.v),
        }
        self.edits.push(e);
    }

    fn search(&mut self, k: usize) -> Result<bool, SolveError> {
        self.budget.enter()?;
        self.remove_clique_components();
        let (first, lower) = self.conflicts(k);
        let Some((x, y, z)) = first else {
            self.solution = self.edits.clone();
            return Ok(true);
        };
        if k == 0 || lower > k {
            return Ok(false);
        }
        let branches = [
            Edit { kind: EditKind::Delete, u: x.min(y), v: x.max(y) },
            Edit { kind: EditKind::Delete, u: y.min(z), v: y.max(z) },
            Edit { kind: EditKind::Add, u: x, v: z },
        ];
        let cp = self.g.checkpoint();
        let saved = self.frozen.clone();
        let mark = self.edits.len();
        for e in branches {
            if saved.get(e.u, e.v) {
                continue;
            }
            self.apply(e);
            if self.search(k - 1)? {
                return Ok(true);
            }
            self.g.rollback(&cp);
            self.frozen.words.copy_from_slice(&saved.words);
            self.edits.truncate(mark);
        }
        Ok(false)
    }
}

/// Can at most `k` edge insertions and deletions turn the graph into a
/// disjoint union of cliques? Connected components that are cliques are
/// removed at every node, and a node fails when a packing of pair-disjoint
/// conflict triples exceeds `k`.
pub fn solve_ce_parm<G: AddEdges>(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
    opts: &SolveOptions,
) -> Result<SolverResult, SolveError> {
    let g = G::with_addition(n, edges)?;
    let before = g.counters();
    let start = Instant::now();
    let mut s = ClusterEditing {
        g,
        budget: Budget::new(opts),
        frozen: PairSet::new(n),
        used: PairSet::new(n),
        edits: Vec::new(),
        solution: Vec::new(),
        seen: vec![false; n],
    };
    let yes = s.search(k)?;
    let elapsed = start.elapsed();
    Ok(SolverResult {
        problem: Problem::Ce,
        answer: Answer::Decision(yes),
        witness: if yes { Witness::Edits(s.solution) } else { Witness::None },
        nodes: s.budget.nodes,
        counters: s.g.counters().since(&before),
        elapsed,
        k: Some(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::verify_solution;
    use crate::{oracle, BaselineGraph, Hybrid};

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn trivial_cases() {
        let p3 = [(0, 1), (1, 2)];
        let r = solve_ce_parm::<Hybrid>(3, &p3, 1, &opts()).unwrap();
        assert_eq!(r.answer, Answer::Decision(true));
        assert!(verify_solution(3, &p3, &r));
        let cliques = [(0, 1), (0, 2), (1, 2), (3, 4)];
        let r = solve_ce_parm::<Hybrid>(6, &cliques, 0, &opts()).unwrap();
        assert_eq!(r.answer, Answer::Decision(true));
        let c4 = [(0, 1), (1, 2), (2, 3), (0, 3)];
        for (k, yes) in [(1, false), (2, true)] {
            let h = solve_ce_parm::<Hybrid>(4, &c4, k, &opts()).unwrap();
            let b = solve_ce_parm::<BaselineGraph>(4, &c4, k, &opts()).unwrap();
            assert_eq!(h.answer, Answer::Decision(yes));
            assert_eq!(b.answer, h.answer);
            assert_eq!(b.nodes, h.nodes);
        }
    }

    #[test]
    fn random_graphs_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let best = oracle::brute_ce_min(n, &edges).unwrap();
            for k in 0..=5 {
                let r = solve_ce_parm::<Hybrid>(n, &edges, k, &opts()).unwrap();
                assert_eq!(r.answer, Answer::Decision(k >= best), "{edges:?} k={k}");
                if k >= best {
                    assert!(verify_solution(n, &edges, &r));
                }
            }
        }
    }
}
