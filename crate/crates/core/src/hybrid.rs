//! The hybrid representation: adjacency-list rows indexed through an
//! n×n position table, with per-search-node degree vectors.
//!
//! Global state ([`HybridGraph`]):
//!
//! * `al`: one row per vertex holding its neighbors. The first `deg[v]`
//!   slots of row `v` are exactly the active neighbors of `v`; deleted
//!   neighbors are swapped past that boundary and left in place.
//! * `im`: `im[u][v]` is the position of `u` inside row `v`, or `-1` if
//!   the two vertices were never adjacent.
//! * `list` / `idxlist`: a permutation of the vertices whose first `n_c`
//!   entries are the active vertices, and its inverse.
//!
//! Search-node state ([`SearchFrame`]): the degree vector and `n_c`.
//! Restoring a saved frame undoes every deletion made since it was saved;
//! there is no undo log. Row contents may come back in a different order,
//! but the set of active neighbors of every vertex is the saved one.

use crate::counters::{Counters, OpClass, Tally};
use crate::error::{validate_edges, GraphError};

/// Cells read by one adjacency query.
pub const ADJACENCY_READS: u64 = 2;
/// Cells read by one edge deletion.
pub const DELETE_EDGE_READS: u64 = 6;
/// Cells written by one edge deletion.
pub const DELETE_EDGE_WRITES: u64 = 10;
/// Cells touched when unlinking a vertex from the active list.
pub const DEACTIVATE_READS: u64 = 3;
pub const DEACTIVATE_WRITES: u64 = 5;
/// Upper bound `c` with `accesses(delete_vertex(v)) <= c * (d(v) + 1)`,
/// counting the edge deletions it performs.
pub const VERTEX_DELETION_FACTOR: u64 = DELETE_EDGE_READS + DELETE_EDGE_WRITES + 1;

#[derive(Clone, Debug)]
pub struct HybridGraph {
    pub(crate) n: usize,
    /// Offset of each row inside `al`; row `v` spans `row_start[v]..row_start[v + 1]`.
    pub(crate) row_start: Vec<usize>,
    pub(crate) al: Vec<u32>,
    /// Row-major: `im[u * n + v]` is the index of `u` in row `v`.
    pub(crate) im: Vec<i32>,
    pub(crate) list: Vec<u32>,
    pub(crate) idxlist: Vec<u32>,
    /// Rows were allocated with `n` slots for permanent edge addition.
    pub(crate) full_rows: bool,
    pub(crate) tally: Tally,
}

/// Degree vector and active-vertex count of one search-tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchFrame {
    pub(crate) deg: Vec<u32>,
    pub(crate) active: usize,
}

impl SearchFrame {
    /// An independent copy of this frame.
    pub fn snapshot(&self) -> SearchFrame {
        self.clone()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.deg[v] as usize
    }

    pub fn degrees(&self) -> &[u32] {
        &self.deg
    }

    /// Number of active vertices, `n_c`.
    pub fn active_count(&self) -> usize {
        self.active
    }
}

impl HybridGraph {
    /// Builds the representation with each row sized to the vertex degree.
    ///
    /// Row `v` lists the neighbors of `v` in input order.
    pub fn build_from_edges(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<(HybridGraph, SearchFrame), GraphError> {
        Self::build(n, edges, false)
    }

    /// Builds the representation with `n` slots per row, leaving room for
    /// permanent edge additions at the tail of every row.
    pub fn build_for_addition(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<(HybridGraph, SearchFrame), GraphError> {
        Self::build(n, edges, true)
    }

    fn build(
        n: usize,
        edges: &[(usize, usize)],
        full_rows: bool,
    ) -> Result<(HybridGraph, SearchFrame), GraphError> {
        let degree = validate_edges(n, edges)?;
        let mut row_start = Vec::with_capacity(n + 1);
        let mut offset = 0usize;
        for &d in &degree {
            row_start.push(offset);
            offset += if full_rows { n } else { d as usize };
        }
        row_start.push(offset);

        let mut al = vec![0u32; offset];
        let mut im = vec![-1i32; n * n];
        let mut fill = vec![0u32; n];
        for &(u, v) in edges {
            // u goes into row v and vice versa
            for (a, b) in [(u, v), (v, u)] {
                let pos = fill[b];
                al[row_start[b] + pos as usize] = a as u32;
                im[a * n + b] = pos as i32;
                fill[b] += 1;
            }
        }

        let graph = HybridGraph {
            n,
            row_start,
            al,
            im,
            list: (0..n as u32).collect(),
            idxlist: (0..n as u32).collect(),
            full_rows,
            tally: Tally::default(),
        };
        let frame = SearchFrame { deg: degree, active: n };
        Ok((graph, frame))
    }

    /// Number of vertices `n`.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Allocated slots of row `v`.
    pub fn capacity(&self, v: usize) -> usize {
        self.row_start[v + 1] - self.row_start[v]
    }

    /// Whole row `v`, including slots past the active prefix.
    pub fn row(&self, v: usize) -> &[u32] {
        &self.al[self.row_start[v]..self.row_start[v + 1]]
    }

    /// Raw index-table entry: position of `u` in row `v`, or `-1`.
    pub fn im(&self, u: usize, v: usize) -> i32 {
        self.im[u * self.n + v]
    }

    pub fn list(&self) -> &[u32] {
        &self.list
    }

    pub fn idxlist(&self) -> &[u32] {
        &self.idxlist
    }

    pub fn counters(&self) -> Counters {
        self.tally.snapshot()
    }

    pub fn reset_counters(&self) {
        self.tally.reset();
    }

    /// `-1 < im[u][v] < deg[v]`.
    #[inline]
    pub fn is_adjacent(&self, f: &SearchFrame, u: usize, v: usize) -> bool {
        self.tally.record(OpClass::Adjacency, ADJACENCY_READS, 0);
        self.adjacent_unrecorded(f, u, v)
    }

    #[inline]
    pub(crate) fn adjacent_unrecorded(&self, f: &SearchFrame, u: usize, v: usize) -> bool {
        let i = self.im[u * self.n + v];
        i >= 0 && (i as u32) < f.deg[v]
    }

    #[inline]
    pub fn is_active(&self, f: &SearchFrame, v: usize) -> bool {
        (self.idxlist[v] as usize) < f.active
    }

    /// The first `deg[v]` slots of row `v`.
    #[inline]
    pub fn active_neighbors<'a>(&'a self, f: &SearchFrame, v: usize) -> &'a [u32] {
        let start = self.row_start[v];
        &self.al[start..start + f.deg[v] as usize]
    }

    /// The first `n_c` entries of the vertex list.
    #[inline]
    pub fn active_vertices<'a>(&'a self, f: &SearchFrame) -> &'a [u32] {
        &self.list[..f.active]
    }

    /// Active vertex of maximum degree, ties broken towards the lowest id.
    pub fn max_degree_active_vertex(&self, f: &SearchFrame) -> Option<usize> {
        let mut best: Option<(u32, u32)> = None;
        for &v in self.active_vertices(f) {
            let d = f.deg[v as usize];
            best = match best {
                Some((bd, bv)) if bd > d || (bd == d && bv < v) => Some((bd, bv)),
                _ => Some((d, v)),
            };
        }
        best.map(|(_, v)| v as usize)
    }

    /// Removes `v` from the active prefix of row `u`: swap with the last
    /// active slot, fix both index entries, shrink the prefix.
    #[inline]
    fn unlink(&mut self, f: &mut SearchFrame, u: usize, v: usize) {
        let n = self.n;
        let base = self.row_start[u];
        let i = self.im[v * n + u] as usize;
        let j = f.deg[u] as usize - 1;
        let x = self.al[base + j];
        self.al[base + i] = x;
        self.al[base + j] = v as u32;
        self.im[x as usize * n + u] = i as i32;
        self.im[v * n + u] = j as i32;
        f.deg[u] -= 1;
    }

    /// Deletes the active edge `(u, v)` in constant time.
    pub fn delete_edge(&mut self, f: &mut SearchFrame, u: usize, v: usize) {
        debug_assert!(
            u != v && self.adjacent_unrecorded(f, u, v) && self.adjacent_unrecorded(f, v, u),
            "delete_edge({u}, {v}): edge is not active"
        );
        self.unlink(f, u, v);
        self.unlink(f, v, u);
        self.tally.record(OpClass::EdgeDeletion, DELETE_EDGE_READS, DELETE_EDGE_WRITES);
    }

    /// Moves `v` out of the active prefix of `list` without touching its edges.
    pub fn deactivate(&mut self, f: &mut SearchFrame, v: usize) {
        debug_assert!(self.is_active(f, v), "vertex {v} is not active");
        let last_pos = f.active - 1;
        let last = self.list[last_pos];
        let i = self.idxlist[v];
        self.list[i as usize] = last;
        self.list[last_pos] = v as u32;
        self.idxlist[last as usize] = i;
        self.idxlist[v] = last_pos as u32;
        f.active -= 1;
    }

    /// Deactivates `v` and deletes each of its active edges, last slot first.
    pub fn delete_vertex(&mut self, f: &mut SearchFrame, v: usize) {
        self.deactivate(f, v);
        let d = f.deg[v] as usize;
        let base = self.row_start[v];
        for j in (0..d).rev() {
            let u = self.al[base + j] as usize;
            self.delete_edge(f, u, v);
        }
        self.tally
            .record(OpClass::VertexDeletion, DEACTIVATE_READS + d as u64, DEACTIVATE_WRITES);
    }

    /// Copies a saved frame back over `f`. This is the whole undo: the
    /// index table and rows are left as they are.
    pub fn restore(&self, f: &mut SearchFrame, saved: &SearchFrame) {
        debug_assert_eq!(f.deg.len(), saved.deg.len());
        f.deg.copy_from_slice(&saved.deg);
        f.active = saved.active;
        let cells = self.n as u64 + 1;
        self.tally.record(OpClass::Restore, cells, cells);
    }

    /// Checks the structural invariants; used by tests.
    pub fn check_invariants(&self, f: &SearchFrame) -> Result<(), String> {
        let n = self.n;
        for (i, &v) in self.list.iter().enumerate() {
            if self.idxlist[v as usize] as usize != i {
                return Err(format!("idxlist[list[{i}]] != {i}"));
            }
        }
        if f.active > n {
            return Err("n_c exceeds n".into());
        }
        for v in 0..n {
            let d = f.deg[v] as usize;
            if d > self.capacity(v) {
                return Err(format!("deg[{v}] exceeds row capacity"));
            }
            for (i, &u) in self.active_neighbors(f, v).iter().enumerate() {
                let u = u as usize;
                if self.im[u * n + v] as usize != i {
                    return Err(format!("im[{u}][{v}] != {i}"));
                }
                if !self.active_neighbors(f, u).contains(&(v as u32)) {
                    return Err(format!("{u} in row {v} but {v} not active in row {u}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// The 8-vertex example graph; row order matches the worked example.
    pub(crate) fn example_edges() -> Vec<(usize, usize)> {
        vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 4),
            (2, 3),
            (2, 5),
            (3, 6),
            (4, 5),
            (4, 7),
            (5, 6),
            (5, 7),
            (6, 7),
        ]
    }

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    #[test]
    fn example_graph_layout() {
        let (g, f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        assert_eq!(f.degrees(), &[3, 3, 4, 3, 3, 4, 3, 3]);
        assert_eq!(g.row(0), &[1, 2, 3]);
        assert_eq!(g.row(2), &[0, 1, 3, 5]);
        assert_eq!(g.row(5), &[2, 4, 6, 7]);
        assert_eq!(g.im(1, 0), 0);
        assert_eq!(g.im(2, 0), 1);
        assert_eq!(g.im(3, 0), 2);
        // row 2 / column 5 and row 5 / column 2 of the worked example
        assert_eq!(g.im(2, 5), 0);
        assert_eq!(g.im(5, 2), 3);
        assert_eq!(g.im(4, 0), -1);
        assert_eq!(f.active_count(), 8);
        assert_eq!(g.list(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        g.check_invariants(&f).unwrap();
    }

    #[test]
    fn edgeless_and_single_edge() {
        let (g, f) = HybridGraph::build_from_edges(3, &[]).unwrap();
        assert_eq!(f.degrees(), &[0, 0, 0]);
        assert_eq!(f.active_count(), 3);
        assert!((0..3).all(|u| (0..3).all(|v| g.im(u, v) == -1)));

        let (g, f) = HybridGraph::build_from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(f.degrees(), &[1, 1]);
        assert_eq!(g.row(0), &[1]);
        assert_eq!(g.row(1), &[0]);
        assert_eq!(g.im(0, 1), 0);
        assert_eq!(g.im(1, 0), 0);
    }

    #[test]
    fn empty_graph_is_legal() {
        let (g, f) = HybridGraph::build_from_edges(0, &[]).unwrap();
        assert_eq!(g.order(), 0);
        assert!(g.active_vertices(&f).is_empty());
        assert_eq!(g.max_degree_active_vertex(&f), None);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            HybridGraph::build_from_edges(3, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            HybridGraph::build_from_edges(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(1, 0)
        );
        assert_eq!(
            HybridGraph::build_from_edges(3, &[(0, 3)]).unwrap_err(),
            GraphError::OutOfRange { u: 0, v: 3, n: 3 }
        );
    }

    #[test]
    fn adjacency_queries() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        assert!(g.is_adjacent(&f, 1, 0));
        assert!(!g.is_adjacent(&f, 4, 0));
        g.delete_edge(&mut f, 0, 3);
        assert!(!g.is_adjacent(&f, 3, 0));
        assert!(!g.is_adjacent(&f, 0, 3));
    }

    #[test]
    fn delete_edge_matches_worked_example() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        g.delete_edge(&mut f, 0, 3);
        assert_eq!(g.row(3), &[6, 2, 0]);
        assert_eq!(g.im(6, 3), 0);
        assert_eq!(g.im(0, 3), 2);
        assert_eq!(f.degree(0), 2);
        assert_eq!(f.degree(3), 2);
        assert_eq!(set(g.active_neighbors(&f, 3)), set(&[6, 2]));
        assert_eq!(set(g.active_neighbors(&f, 0)), set(&[1, 2]));
        g.check_invariants(&f).unwrap();
    }

    #[test]
    fn delete_edge_k2() {
        let (mut g, mut f) = HybridGraph::build_from_edges(2, &[(0, 1)]).unwrap();
        g.delete_edge(&mut f, 0, 1);
        assert_eq!(f.degrees(), &[0, 0]);
        assert!(g.active_neighbors(&f, 0).is_empty());
    }

    #[test]
    fn delete_edge_against_mirrored_edge_set() {
        let edges = example_edges();
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &edges).unwrap();
        let mut oracle: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
        g.delete_edge(&mut f, 2, 5);
        oracle.remove(&(2, 5));
        for u in 0..8 {
            for v in (u + 1)..8 {
                assert_eq!(g.is_adjacent(&f, u, v), oracle.contains(&(u, v)), "({u},{v})");
                assert_eq!(g.is_adjacent(&f, v, u), oracle.contains(&(u, v)), "({v},{u})");
            }
        }
    }

    #[test]
    fn delete_vertex_five() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        g.delete_vertex(&mut f, 5);
        assert_eq!(f.degrees(), &[3, 3, 3, 3, 2, 0, 2, 2]);
        assert_eq!(f.active_count(), 7);
        let active = set(g.active_vertices(&f));
        assert_eq!(active, (0..8).filter(|&v| v != 5).collect());
        g.check_invariants(&f).unwrap();
    }

    #[test]
    fn delete_isolated_vertex_only_touches_list() {
        let (mut g, mut f) = HybridGraph::build_from_edges(3, &[(0, 1)]).unwrap();
        let before = f.degrees().to_vec();
        g.delete_vertex(&mut f, 2);
        assert_eq!(f.degrees(), &before[..]);
        assert_eq!(f.active_count(), 2);
        assert!(!g.is_active(&f, 2));
    }

    #[test]
    fn delete_every_vertex() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        for v in 0..8 {
            g.delete_vertex(&mut f, v);
            g.check_invariants(&f).unwrap();
        }
        assert_eq!(f.active_count(), 0);
        assert!(f.degrees().iter().all(|&d| d == 0));
        assert!(g.active_vertices(&f).is_empty());
    }

    #[test]
    fn snapshot_is_independent() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        let saved = f.snapshot();
        assert_eq!(saved, f);
        g.delete_edge(&mut f, 0, 1);
        assert_eq!(saved.degree(0), 3);
        assert_ne!(saved, f);
    }

    #[test]
    fn restore_undoes_edge_deletion() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        let saved = f.snapshot();
        g.delete_edge(&mut f, 0, 3);
        g.restore(&mut f, &saved);
        assert!(g.is_adjacent(&f, 0, 3));
        assert!(g.is_adjacent(&f, 3, 0));
        // the rows keep their permuted order
        assert_eq!(g.row(3), &[6, 2, 0]);
        g.check_invariants(&f).unwrap();
    }

    #[test]
    fn restore_right_after_snapshot_is_a_no_op() {
        let (g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        let before = f.clone();
        let saved = f.snapshot();
        g.restore(&mut f, &saved);
        assert_eq!(f, before);
    }

    #[test]
    fn max_degree_selection() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        assert_eq!(g.max_degree_active_vertex(&f), Some(2));
        g.delete_vertex(&mut f, 2);
        g.delete_vertex(&mut f, 5);
        // every remaining vertex has degree 2
        assert_eq!(g.max_degree_active_vertex(&f), Some(0));

        let (g, f) = HybridGraph::build_from_edges(4, &[]).unwrap();
        assert_eq!(g.max_degree_active_vertex(&f), Some(0));
    }

    #[cfg(feature = "counters")]
    #[test]
    fn cost_constants() {
        let (mut g, mut f) = HybridGraph::build_from_edges(8, &example_edges()).unwrap();
        let c0 = g.counters();
        g.is_adjacent(&f, 0, 1);
        let c1 = g.counters();
        assert_eq!(c1.since(&c0).adjacency.reads, ADJACENCY_READS);
        g.delete_edge(&mut f, 0, 1);
        let c2 = g.counters();
        let d = c2.since(&c1).edge_deletion;
        assert_eq!((d.reads, d.writes), (DELETE_EDGE_READS, DELETE_EDGE_WRITES));
        let deg = f.degree(5) as u64;
        g.delete_vertex(&mut f, 5);
        let delta = g.counters().since(&c2);
        let total = delta.vertex_deletion.accesses() + delta.edge_deletion.accesses();
        assert_eq!(delta.edge_deletion.calls, deg);
        assert!(total <= VERTEX_DELETION_FACTOR * (deg + 1));
    }
}
