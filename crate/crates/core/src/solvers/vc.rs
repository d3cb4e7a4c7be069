//! Vertex cover: optimization and parameterized decision, the latter
//! optionally with degree-2 folding through color contraction.

use super::{edge_count, sorted_neighbors, Answer, Budget, Problem, SolveError, SolveOptions, SolverResult, Witness};
use crate::contraction::ContractionGraph;
use crate::repr::{FromEdges, SearchGraph};
use std::time::Instant;

/// A vertex of the current (possibly folded) instance, in terms of the
/// original graph.
#[derive(Clone, Copy, Debug)]
enum Entity {
    Leaf(usize),
    /// `u` was a degree-2 vertex folded with its non-adjacent neighbors
    /// `v` and `w`.
    Fold { u: usize, v: usize, w: usize },
}

type Contract<G> = fn(&mut G, usize, usize);

struct Cover<G: SearchGraph> {
    g: G,
    budget: Budget,
    /// Entities placed in the cover on the current path.
    taken: Vec<usize>,
    /// Entities removed without entering the cover (fold mode only).
    removed: Vec<usize>,
    entities: Vec<Entity>,
    /// Current vertex (color) to entity map (fold mode only).
    entity_of: Vec<usize>,
    contract: Option<Contract<G>>,
    matched: Vec<bool>,
    best: usize,
    best_cover: Vec<usize>,
}

impl<G: SearchGraph> Cover<G> {
    fn new(g: G, opts: &SolveOptions, contract: Option<Contract<G>>) -> Self {
        let n = g.order();
        Cover {
            g,
            budget: Budget::new(opts),
            taken: Vec::new(),
            removed: Vec::new(),
            entities: (0..n).map(Entity::Leaf).collect(),
            entity_of: (0..n).collect(),
            contract,
            matched: vec![false; n],
            best: usize::MAX,
            best_cover: Vec::new(),
        }
    }

    fn folding(&self) -> bool {
        self.contract.is_some()
    }

    fn take(&mut self, v: usize) {
        self.taken.push(self.entity_of[v]);
        self.g.delete_vertex(v);
    }

    fn drop_isolated(&mut self, v: usize) {
        if self.folding() {
            self.removed.push(self.entity_of[v]);
        }
        self.g.delete_vertex(v);
    }

    fn take_neighborhood(&mut self, v: usize) {
        for u in sorted_neighbors(&self.g, v) {
            self.take(u);
        }
    }

    /// Degree-0 and degree-1 rules to a fixpoint, scanning by vertex id.
    fn reduce_low_degree(&mut self) {
        loop {
            let mut changed = false;
            for v in 0..self.g.order() {
                if !self.g.is_active(v) {
                    continue;
                }
                match self.g.degree(v) {
                    0 => self.drop_isolated(v),
                    1 => {
                        let u = self.g.neighbors(v).next().expect("degree one");
                        self.take(u);
                        self.drop_isolated(v);
                    }
                    _ => continue,
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
    }

    /// Size of the greedy matching that visits vertices by increasing id and
    /// pairs each with its lowest-id free neighbor.
    fn matching_bound(&mut self) -> usize {
        let n = self.g.order();
        self.matched.fill(false);
        let mut size = 0;
        for v in 0..n {
            if !self.g.is_active(v) || self.matched[v] {
                continue;
            }
            let partner = self.g.neighbors(v).filter(|&u| !self.matched[u]).min();
            if let Some(u) = partner {
                self.matched[u] = true;
                self.matched[v] = true;
                size += 1;
            }
        }
        size
    }

    fn max_degree(&self) -> usize {
        self.g.max_degree_vertex().map_or(0, |v| self.g.degree(v))
    }

    fn lower_bound(&mut self, m: usize) -> usize {
        let delta = self.max_degree();
        let trivial = if delta == 0 { 0 } else { m.div_ceil(delta) };
        trivial.max(self.matching_bound())
    }

    /// Greedy cover: low-degree rules, otherwise a maximum-degree vertex.
    fn greedy(&mut self) -> Vec<usize> {
        let cp = self.g.checkpoint();
        let mark = self.taken.len();
        loop {
            self.reduce_low_degree();
            match self.g.max_degree_vertex() {
                Some(v) if self.g.degree(v) > 0 => self.take(v),
                _ => break,
            }
        }
        let cover = self.taken.split_off(mark);
        self.g.rollback(&cp);
        cover
    }

    fn opt(&mut self) -> Result<(), SolveError> {
        self.budget.enter()?;
        self.reduce_low_degree();
        let m = edge_count(&self.g);
        if m == 0 {
            if self.taken.len() < self.best {
                self.best = self.taken.len();
                self.best_cover = self.taken.clone();
            }
            return Ok(());
        }
        if self.taken.len() + self.lower_bound(m) >= self.best {
            return Ok(());
        }
        let v = self.g.max_degree_vertex().expect("edges remain");
        let cp = self.g.checkpoint();
        let mark = self.taken.len();
        self.take(v);
        self.opt()?;
        self.g.rollback(&cp);
        self.taken.truncate(mark);
        self.take_neighborhood(v);
        self.opt()
    }

    fn fold(&mut self, u: usize, v: usize, w: usize) {
        let contract = self.contract.expect("fold mode");
        let e = Entity::Fold { u: self.entity_of[u], v: self.entity_of[v], w: self.entity_of[w] };
        contract(&mut self.g, u, v);
        contract(&mut self.g, u, w);
        self.entities.push(e);
        self.entity_of[u] = self.entities.len() - 1;
    }

    /// Reduction rules for the decision version. Returns the remaining
    /// parameter, or `None` when the rules prove a no-instance.
    fn reduce_parm(&mut self, mut k: usize) -> Option<usize> {
        loop {
            let mut changed = false;
            for v in 0..self.g.order() {
                if !self.g.is_active(v) {
                    continue;
                }
                let d = self.g.degree(v);
                if d == 0 {
                    self.drop_isolated(v);
                } else if k == 0 {
                    return None;
                } else if d == 1 {
                    let u = self.g.neighbors(v).next().expect("degree one");
                    self.take(u);
                    k -= 1;
                } else if d > k {
                    self.take(v);
                    k -= 1;
                } else if d == 2 && self.folding() {
                    let nb = sorted_neighbors(&self.g, v);
                    let (a, b) = (nb[0], nb[1]);
                    if self.g.is_adjacent(a, b) {
                        if k < 2 {
                            return None;
                        }
                        self.take(a);
                        self.take(b);
                        k -= 2;
                    } else {
                        self.fold(v, a, b);
                        k -= 1;
                    }
                } else {
                    continue;
                }
                changed = true;
            }
            if !changed {
                return Some(k);
            }
        }
    }

    fn expand(&self, e: usize, in_cover: bool, out: &mut Vec<usize>) {
        match self.entities[e] {
            Entity::Leaf(x) => {
                if in_cover {
                    out.push(x);
                }
            }
            Entity::Fold { u, v, w } => {
                if in_cover {
                    self.expand(v, true, out);
                    self.expand(w, true, out);
                    self.expand(u, false, out);
                } else {
                    self.expand(u, true, out);
                    self.expand(v, false, out);
                    self.expand(w, false, out);
                }
            }
        }
    }

    fn record_solution(&mut self) {
        let mut cover = Vec::new();
        for &e in &self.taken {
            self.expand(e, true, &mut cover);
        }
        if self.folding() {
            for &e in &self.removed {
                self.expand(e, false, &mut cover);
            }
            let rest: Vec<usize> = self.g.active_vertices().map(|c| self.entity_of[c]).collect();
            for e in rest {
                self.expand(e, false, &mut cover);
            }
        }
        cover.sort_unstable();
        self.best = cover.len();
        self.best_cover = cover;
    }

    fn parm(&mut self, k: usize) -> Result<bool, SolveError> {
        self.budget.enter()?;
        let Some(k) = self.reduce_parm(k) else { return Ok(false) };
        let m = edge_count(&self.g);
        if m == 0 {
            self.record_solution();
            return Ok(true);
        }
        if k == 0 || m > k * self.max_degree() || self.matching_bound() > k {
            return Ok(false);
        }
        let v = self.g.max_degree_vertex().expect("edges remain");
        let d = self.g.degree(v);
        let cp = self.g.checkpoint();
        let marks = (self.taken.len(), self.removed.len(), self.entities.len());
        let saved_entities = self.folding().then(|| self.entity_of.clone());
        self.take(v);
        if self.parm(k - 1)? {
            return Ok(true);
        }
        self.g.rollback(&cp);
        self.taken.truncate(marks.0);
        self.removed.truncate(marks.1);
        self.entities.truncate(marks.2);
        if let Some(saved) = saved_entities {
            self.entity_of = saved;
        }
        if d > k {
            return Ok(false);
        }
        self.take_neighborhood(v);
        self.parm(k - d)
    }
}

fn finish<G: SearchGraph>(
    s: Cover<G>,
    problem: Problem,
    answer: Answer,
    k: Option<usize>,
    before: crate::Counters,
    start: Instant,
) -> SolverResult {
    let elapsed = start.elapsed();
    let witness = match answer {
        Answer::Decision(false) => Witness::None,
        _ => {
            let mut c = s.best_cover;
            c.sort_unstable();
            Witness::Vertices(c)
        }
    };
    SolverResult {
        problem,
        answer,
        witness,
        nodes: s.budget.nodes,
        counters: s.g.counters().since(&before),
        elapsed,
        k,
    }
}

/// Minimum vertex cover by branching on a maximum-degree vertex (take it,
/// or take all its neighbors), with degree-0/1 reductions and a matching
/// lower bound. The incumbent starts from a greedy cover.
pub fn solve_vc_opt<G: SearchGraph + FromEdges>(
    n: usize,
    edges: &[(usize, usize)],
    opts: &SolveOptions,
) -> Result<SolverResult, SolveError> {
    let g = G::from_edges(n, edges)?;
    let before = g.counters();
    let start = Instant::now();
    let mut s = Cover::new(g, opts, None);
    let greedy = s.greedy();
    s.best = greedy.len();
    s.best_cover = greedy;
    let root = s.g.checkpoint();
    s.opt()?;
    s.g.rollback(&root);
    let answer = Answer::Optimum(s.best);
    Ok(finish(s, Problem::Vc, answer, None, before, start))
}

fn run_parm<G: SearchGraph>(
    g: G,
    k: usize,
    opts: &SolveOptions,
    contract: Option<Contract<G>>,
) -> Result<SolverResult, SolveError> {
    let before = g.counters();
    let start = Instant::now();
    let mut s = Cover::new(g, opts, contract);
    let yes = s.parm(k)?;
    Ok(finish(s, Problem::VcParm, Answer::Decision(yes), Some(k), before, start))
}

/// Is there a vertex cover with at most `k` vertices?
pub fn solve_vc_parm<G: SearchGraph + FromEdges>(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
    opts: &SolveOptions,
) -> Result<SolverResult, SolveError> {
    run_parm(G::from_edges(n, edges)?, k, opts, None)
}

/// Decision version with degree-2 folding: a degree-2 vertex whose
/// neighbors are adjacent puts both neighbors in the cover; otherwise the
/// vertex and its neighbors are contracted into one and `k` drops by one.
pub fn solve_vc_parm_fold(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
    opts: &SolveOptions,
) -> Result<SolverResult, SolveError> {
    let g = ContractionGraph::from_edges(n, edges)?;
    run_parm(g, k, opts, Some(|g: &mut ContractionGraph, a, b| g.contract_edge(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::solvers::verify_solution;
    use crate::{BaselineGraph, Hybrid};

    fn petersen() -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        e
    }

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn triangle_and_petersen() {
        let k3 = [(0, 1), (1, 2), (0, 2)];
        let r = solve_vc_opt::<Hybrid>(3, &k3, &opts()).unwrap();
        assert_eq!(r.answer, Answer::Optimum(2));
        assert!(verify_solution(3, &k3, &r));
        let p = petersen();
        let r = solve_vc_opt::<BaselineGraph>(10, &p, &opts()).unwrap();
        assert_eq!(r.answer, Answer::Optimum(6));
        assert!(verify_solution(10, &p, &r));
        for (k, yes) in [(1, false), (2, true)] {
            assert_eq!(solve_vc_parm::<Hybrid>(3, &k3, k, &opts()).unwrap().answer, Answer::Decision(yes));
            assert_eq!(solve_vc_parm_fold(3, &k3, k, &opts()).unwrap().answer, Answer::Decision(yes));
        }
    }

    #[test]
    fn folding_on_a_path_and_cycle() {
        // P5 has tau = 2; C5 has tau = 3 and is folded repeatedly
        let p5 = [(0, 1), (1, 2), (2, 3), (3, 4)];
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        for (n, edges, tau) in [(5, &p5[..], 2), (5, &c5[..], 3)] {
            let r = solve_vc_parm_fold(n, edges, tau, &opts()).unwrap();
            assert_eq!(r.answer, Answer::Decision(true));
            assert!(verify_solution(n, edges, &r), "{:?}", r.witness);
            let r = solve_vc_parm_fold(n, edges, tau - 1, &opts()).unwrap();
            assert_eq!(r.answer, Answer::Decision(false));
        }
    }

    #[test]
    fn small_random_graphs_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(1..=11);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let tau = oracle::brute_vc(n, &edges).unwrap();
            let a = solve_vc_opt::<Hybrid>(n, &edges, &opts()).unwrap();
            let b = solve_vc_opt::<BaselineGraph>(n, &edges, &opts()).unwrap();
            assert_eq!(a.answer, Answer::Optimum(tau));
            assert_eq!(a.nodes, b.nodes);
            assert!(verify_solution(n, &edges, &a));
            for k in tau.saturating_sub(1)..=tau {
                let f = solve_vc_parm_fold(n, &edges, k, &opts()).unwrap();
                assert_eq!(f.answer, Answer::Decision(k >= tau), "n={n} k={k} {edges:?}");
                if k >= tau {
                    assert!(verify_solution(n, &edges, &f), "{edges:?} {:?}", f.witness);
                }
            }
        }
    }
}
