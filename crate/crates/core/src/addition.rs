//! Permanent edge addition.
//!
//! With rows allocated at full length `n`, an added neighbor of `v` is
//! written to the tail of row `v`: the `i`-th addition lands at position
//! `n - 1 - i`. A second frame-local counter `ndeg[v]` tracks how many tail
//! slots are live, so restoring `ndeg` discards additions the same way
//! restoring `deg` discards deletions.
//!
//! Because `im` is never rolled back, a tail slot can be claimed by a
//! different pair after backtracking while `im` of the old pair still
//! points at it. The tail test therefore also checks that the slot holds
//! the queried vertex. A live tail slot always holds the pair that last
//! claimed it, and that claim rewrote `im` for the pair, so the check is
//! exact.
//!
//! Within one search path the tail of a row only ever grows, so restoring
//! `ndeg` is enough to undo additions. Deleting a vertex therefore leaves
//! its entries in other tails where they are and bumps a third frame-local
//! counter, `dead[u]`, for every active added neighbor `u`: the live tail
//! of `u` holds `ndeg[u]` entries of which `dead[u]` are inactive vertices.
//!
//! Callers must not re-add a pair that was deleted on the current search
//! path (its base-region slot would be clobbered), and [`HybridGraph::delete_edge`]
//! applies to base edges only; added edges go away with their endpoints.
//! As in the base mode, adjacency queries are defined between active
//! vertices.

use crate::counters::OpClass;
use crate::hybrid::{HybridGraph, SearchFrame, DEACTIVATE_READS, DEACTIVATE_WRITES};

/// Cells written by one permanent edge addition.
pub const ADD_EDGE_WRITES: u64 = 6;
pub const ADD_EDGE_READS: u64 = 2;
/// Cells read by one extended adjacency query (worst case).
pub const ADJACENCY_EXT_READS: u64 = 4;

/// Per-search-node tail counters of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditionState {
    /// Live tail slots.
    pub(crate) ndeg: Vec<u32>,
    /// Live tail slots holding inactive vertices.
    pub(crate) dead: Vec<u32>,
}

impl AdditionState {
    pub fn new(n: usize) -> Self {
        AdditionState { ndeg: vec![0; n], dead: vec![0; n] }
    }

    /// Number of active added neighbors of `v`.
    pub fn added_degree(&self, v: usize) -> usize {
        (self.ndeg[v] - self.dead[v]) as usize
    }

    pub fn restore(&mut self, saved: &AdditionState) {
        self.ndeg.copy_from_slice(&saved.ndeg);
        self.dead.copy_from_slice(&saved.dead);
    }
}

impl HybridGraph {
    pub fn supports_addition(&self) -> bool {
        self.full_rows
    }

    /// Adds the edge `(u, v)` in the tail region of both rows.
    pub fn add_edge_permanent(
        &mut self,
        f: &SearchFrame,
        a: &mut AdditionState,
        u: usize,
        v: usize,
    ) {
        assert!(self.full_rows, "graph was not built for edge addition");
        debug_assert!(u != v && self.is_active(f, u) && self.is_active(f, v));
        debug_assert!(
            !self.adjacent_ext_unrecorded(f, a, u, v),
            "add_edge_permanent({u}, {v}): edge already present"
        );
        let n = self.n;
        for (x, y) in [(u, v), (v, u)] {
            // x goes into the tail of row y
            let pos = n - 1 - a.ndeg[y] as usize;
            self.al[self.row_start[y] + pos] = x as u32;
            self.im[x * n + y] = pos as i32;
            a.ndeg[y] += 1;
        }
        self.tally.record(OpClass::EdgeAddition, ADD_EDGE_READS, ADD_EDGE_WRITES);
    }

    /// Adjacency including permanently added edges.
    #[inline]
    pub fn is_adjacent_ext(&self, f: &SearchFrame, a: &AdditionState, u: usize, v: usize) -> bool {
        self.tally.record(OpClass::Adjacency, ADJACENCY_EXT_READS, 0);
        self.adjacent_ext_unrecorded(f, a, u, v)
    }

    #[inline]
    pub(crate) fn adjacent_ext_unrecorded(
        &self,
        f: &SearchFrame,
        a: &AdditionState,
        u: usize,
        v: usize,
    ) -> bool {
        let i = self.im[u * self.n + v];
        if i < 0 {
            return false;
        }
        let i = i as usize;
        if i < f.deg[v] as usize {
            return true;
        }
        self.n - 1 - i < a.ndeg[v] as usize && self.al[self.row_start[v] + i] as usize == u
    }

    /// Live tail slots of row `v`, most recent addition first. May contain
    /// inactive vertices; see [`Self::added_neighbors`].
    #[inline]
    pub fn tail<'a>(&'a self, a: &AdditionState, v: usize) -> &'a [u32] {
        let end = self.row_start[v] + self.n;
        &self.al[end - a.ndeg[v] as usize..end]
    }

    /// Active added neighbors of `v`, from position `n - 1` down.
    pub fn added_neighbors<'a>(
        &'a self,
        f: &'a SearchFrame,
        a: &AdditionState,
        v: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        let skip = a.dead[v] != 0;
        self.tail(a, v)
            .iter()
            .rev()
            .map(|&x| x as usize)
            .filter(move |&x| !skip || self.is_active(f, x))
    }

    /// Base-region neighbors, then added neighbors from position `n - 1` down.
    pub fn active_neighbors_ext<'a>(
        &'a self,
        f: &'a SearchFrame,
        a: &AdditionState,
        v: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        let base = self.active_neighbors(f, v).iter().map(|&x| x as usize);
        base.chain(self.added_neighbors(f, a, v))
    }

    /// Vertex deletion that also drops the added edges of `v`.
    pub fn delete_vertex_ext(&mut self, f: &mut SearchFrame, a: &mut AdditionState, v: usize) {
        self.deactivate(f, v);
        let d = f.deg[v] as usize;
        let base = self.row_start[v];
        for j in (0..d).rev() {
            let u = self.al[base + j] as usize;
            self.delete_edge(f, u, v);
        }
        let added = a.ndeg[v] as usize;
        let mut bumped = 0;
        for j in 0..added {
            let u = self.al[base + self.n - 1 - j] as usize;
            if self.is_active(f, u) {
                a.dead[u] += 1;
                bumped += 1;
            }
        }
        self.tally.record(
            OpClass::VertexDeletion,
            DEACTIVATE_READS + (d + 3 * added) as u64,
            DEACTIVATE_WRITES + bumped,
        );
    }

    /// Restores both degree vectors.
    pub fn restore_ext(
        &self,
        f: &mut SearchFrame,
        a: &mut AdditionState,
        saved_frame: &SearchFrame,
        saved_added: &AdditionState,
    ) {
        self.restore(f, saved_frame);
        a.restore(saved_added);
        let cells = 2 * self.n as u64;
        self.tally.charge(OpClass::Restore, cells, cells);
    }
}
