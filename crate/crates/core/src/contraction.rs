//! Edge contraction by vertex coloring.
//!
//! Vertices sharing a color are treated as one vertex. Contracting an edge
//! recolors one endpoint's color class into the other's. Per search node we
//! keep `vcolor`, `cc` (class cardinality) and `cd` (class degree) next to
//! the degree vector; the member lists `csl` are global, and only their
//! first `cc[c]` entries are meaningful, so restoring `cc` is enough to
//! roll them back.
//!
//! Member-level edges are kept so that any two classes share at most one
//! active edge and no class has an internal active edge. Under that
//! invariant `cd[c]` is the sum of the member degrees and the color
//! neighborhood of `c` is read off the member rows without duplicates.
//!
//! In this mode `list`/`idxlist` hold the active colors. Colors are named
//! by vertex ids: initially vertex `v` has color `v`.

use crate::counters::{Counters, OpClass};
use crate::error::GraphError;
use crate::hybrid::{HybridGraph, SearchFrame};

/// Frame-local color vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorState {
    pub(crate) vcolor: Vec<u32>,
    pub(crate) cc: Vec<u32>,
    pub(crate) cd: Vec<u32>,
}

impl ColorState {
    pub fn color_of(&self, v: usize) -> usize {
        self.vcolor[v] as usize
    }

    pub fn cardinality(&self, c: usize) -> usize {
        self.cc[c] as usize
    }

    pub fn color_degree(&self, c: usize) -> usize {
        self.cd[c] as usize
    }
}

/// Everything one search node needs to roll the colored graph back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionFrame {
    frame: SearchFrame,
    colors: ColorState,
}

#[derive(Clone, Debug)]
pub struct ContractionGraph {
    graph: HybridGraph,
    frame: SearchFrame,
    colors: ColorState,
    /// Member lists, `n` slots per color.
    csl: Vec<u32>,
    /// Scratch marks for contraction, cleared by bumping `generation`.
    stamp: Vec<u32>,
    generation: u32,
}

impl ContractionGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let (graph, frame) = HybridGraph::build_from_edges(n, edges)?;
        let mut csl = vec![0u32; n * n];
        for v in 0..n {
            csl[v * n] = v as u32;
        }
        let colors = ColorState {
            vcolor: (0..n as u32).collect(),
            cc: vec![1; n],
            cd: frame.deg.clone(),
        };
        Ok(ContractionGraph {
            graph,
            frame,
            colors,
            csl,
            stamp: vec![0; n],
            generation: 0,
        })
    }

    pub fn order(&self) -> usize {
        self.graph.n
    }

    pub fn graph(&self) -> &HybridGraph {
        &self.graph
    }

    pub fn frame(&self) -> &SearchFrame {
        &self.frame
    }

    pub fn colors(&self) -> &ColorState {
        &self.colors
    }

    pub fn counters(&self) -> Counters {
        self.graph.counters()
    }

    /// Members of color `c`.
    pub fn members(&self, c: usize) -> &[u32] {
        let n = self.graph.n;
        &self.csl[c * n..c * n + self.colors.cc[c] as usize]
    }

    pub fn is_active_color(&self, c: usize) -> bool {
        self.graph.is_active(&self.frame, c)
    }

    pub fn active_colors(&self) -> &[u32] {
        self.graph.active_vertices(&self.frame)
    }

    pub fn color_degree(&self, c: usize) -> usize {
        self.colors.cd[c] as usize
    }

    /// Distinct active colors adjacent to `c`, in member-row order.
    pub fn color_neighbors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.members(c).iter().flat_map(move |&m| {
            self.graph
                .active_neighbors(&self.frame, m as usize)
                .iter()
                .map(move |&x| self.colors.vcolor[x as usize] as usize)
        })
    }

    /// Color adjacency; scans the member rows of the lower-degree class.
    pub fn colors_adjacent(&self, a: usize, b: usize) -> bool {
        let (scan, other) = if self.colors.cd[a] <= self.colors.cd[b] { (a, b) } else { (b, a) };
        let found = self.color_neighbors(scan).any(|c| c == other);
        self.graph.tally.record(OpClass::Adjacency, self.colors.cd[scan] as u64 + 2, 0);
        found
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        self.generation
    }

    /// Contracts the edge between the classes of `u` and `v`. The class of
    /// `u` survives and absorbs the class of `v`.
    pub fn contract_edge(&mut self, u: usize, v: usize) {
        let n = self.graph.n;
        let cu = self.colors.vcolor[u] as usize;
        let cv = self.colors.vcolor[v] as usize;
        debug_assert!(cu != cv, "contract_edge({u}, {v}): same color");
        debug_assert!(self.is_active_color(cu) && self.is_active_color(cv));
        debug_assert!(self.colors_adjacent(cu, cv), "contract_edge({u}, {v}): colors not adjacent");

        let gen = self.next_generation();
        let mut reads = 0u64;
        let mut writes = 0u64;
        for i in 0..self.colors.cc[cu] as usize {
            let m = self.csl[cu * n + i] as usize;
            for &x in self.graph.active_neighbors(&self.frame, m) {
                self.stamp[self.colors.vcolor[x as usize] as usize] = gen;
            }
            reads += 2 + 2 * self.frame.deg[m] as u64;
            writes += self.frame.deg[m] as u64;
        }

        // Drop member edges of cv that become internal or parallel.
        for i in 0..self.colors.cc[cv] as usize {
            let m = self.csl[cv * n + i] as usize;
            let mut j = self.frame.deg[m] as usize;
            reads += 2;
            while j > 0 {
                j -= 1;
                let y = self.graph.al[self.graph.row_start[m] + j] as usize;
                let w = self.colors.vcolor[y] as usize;
                reads += 3;
                if w == cu || self.stamp[w] == gen {
                    self.graph.delete_edge(&mut self.frame, m, y);
                    self.colors.cd[w] -= 1;
                    self.colors.cd[cv] -= 1;
                    writes += 2;
                }
            }
        }

        // Recolor and append the members of cv to cu.
        let base = self.colors.cc[cu] as usize;
        let moved = self.colors.cc[cv] as usize;
        for i in 0..moved {
            let m = self.csl[cv * n + i];
            self.colors.vcolor[m as usize] = cu as u32;
            self.csl[cu * n + base + i] = m;
        }
        self.colors.cc[cu] += self.colors.cc[cv];
        self.colors.cc[cv] = 0;
        self.colors.cd[cu] += self.colors.cd[cv];
        self.colors.cd[cv] = 0;
        self.graph.deactivate(&mut self.frame, cv);
        reads += moved as u64 + 4;
        writes += 2 * moved as u64 + 4;
        self.graph.tally.record(OpClass::Contraction, reads, writes);
    }

    /// Removes color `c` and all member edges.
    pub fn delete_color(&mut self, c: usize) {
        let n = self.graph.n;
        for i in 0..self.colors.cc[c] as usize {
            let m = self.csl[c * n + i] as usize;
            while self.frame.deg[m] > 0 {
                let last = self.frame.deg[m] as usize - 1;
                let x = self.graph.al[self.graph.row_start[m] + last] as usize;
                let cx = self.colors.vcolor[x] as usize;
                self.colors.cd[cx] -= 1;
                self.graph.delete_edge(&mut self.frame, x, m);
            }
        }
        self.colors.cd[c] = 0;
        self.colors.cc[c] = 0;
        self.graph.deactivate(&mut self.frame, c);
    }

    /// Deletes the single member edge joining colors `a` and `b`.
    pub fn delete_color_edge(&mut self, a: usize, b: usize) {
        let n = self.graph.n;
        for i in 0..self.colors.cc[a] as usize {
            let m = self.csl[a * n + i] as usize;
            let hit = self
                .graph
                .active_neighbors(&self.frame, m)
                .iter()
                .find(|&&x| self.colors.vcolor[x as usize] as usize == b)
                .copied();
            if let Some(x) = hit {
                self.graph.delete_edge(&mut self.frame, m, x as usize);
                self.colors.cd[a] -= 1;
                self.colors.cd[b] -= 1;
                return;
            }
        }
        debug_assert!(false, "delete_color_edge({a}, {b}): colors not adjacent");
    }

    pub fn snapshot(&self) -> ContractionFrame {
        ContractionFrame { frame: self.frame.clone(), colors: self.colors.clone() }
    }

    /// Restores the degree and color vectors. Member lists need no rollback.
    pub fn restore_colors(&mut self, saved: &ContractionFrame) {
        self.graph.restore(&mut self.frame, &saved.frame);
        self.colors.vcolor.copy_from_slice(&saved.colors.vcolor);
        self.colors.cc.copy_from_slice(&saved.colors.cc);
        self.colors.cd.copy_from_slice(&saved.colors.cd);
        let cells = 3 * self.graph.n as u64;
        self.graph.tally.charge(OpClass::Restore, cells, cells);
    }

    /// The quotient graph recomputed from member-level edges: active colors
    /// and, per color, its sorted color neighborhood. Test support.
    pub fn quotient(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.graph.n;
        let mut colors: Vec<usize> = self.active_colors().iter().map(|&c| c as usize).collect();
        colors.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &c in &colors {
            let mut nb: Vec<usize> = self.color_neighbors(c).collect();
            nb.sort_unstable();
            adj[c] = nb;
        }
        (colors, adj)
    }

    /// Checks the partition and degree invariants of the color classes.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.graph.n;
        self.graph.check_invariants(&self.frame)?;
        let mut owner = vec![usize::MAX; n];
        for &c in self.active_colors() {
            let c = c as usize;
            if self.colors.cc[c] == 0 {
                return Err(format!("active color {c} has no members"));
            }
            for &m in self.members(c) {
                let m = m as usize;
                if self.colors.vcolor[m] as usize != c {
                    return Err(format!("member {m} of {c} has color {}", self.colors.vcolor[m]));
                }
                if owner[m] != usize::MAX {
                    return Err(format!("vertex {m} in two classes"));
                }
                owner[m] = c;
            }
            let mut seen = std::collections::HashSet::new();
            let mut sum = 0usize;
            for &m in self.members(c) {
                for &x in self.graph.active_neighbors(&self.frame, m as usize) {
                    let cx = self.colors.vcolor[x as usize] as usize;
                    if cx == c {
                        return Err(format!("internal edge in class {c}"));
                    }
                    if !seen.insert(cx) {
                        return Err(format!("parallel adjacency {c}-{cx}"));
                    }
                    if !self.is_active_color(cx) {
                        return Err(format!("edge from {c} into retired color {cx}"));
                    }
                    sum += 1;
                }
            }
            if sum != self.colors.cd[c] as usize {
                return Err(format!("cd[{c}] = {} but {} adjacent colors", self.colors.cd[c], sum));
            }
        }
        for c in 0..n {
            if !self.is_active_color(c) && self.colors.cc[c] != 0 {
                return Err(format!("retired color {c} has cc = {}", self.colors.cc[c]));
            }
        }
        Ok(())
    }
}
