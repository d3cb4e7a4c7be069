//! Classical adjacency lists with an explicit undo log.
//!
//! Every mutation pushes a record; rolling back to a mark pops records and
//! applies their inverse. Membership tests scan a neighbor list, so
//! adjacency queries and edge deletions cost O(d) and vertex deletion
//! costs O(sum of neighbor degrees).

use crate::counters::{Counters, OpClass, Tally};
use crate::error::{validate_edges, GraphError};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("undo mark {mark} is beyond the log length {len}")]
pub struct InvalidMark {
    pub mark: usize,
    pub len: usize,
}

/// Position in the undo log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mark(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Undo {
    EdgeDeleted(u32, u32),
    EdgeAdded(u32, u32),
    VertexDeactivated(u32),
}

#[derive(Debug, Clone)]
pub struct BaselineGraph {
    adj: Vec<Vec<u32>>,
    active: Vec<bool>,
    active_count: usize,
    log: Vec<Undo>,
    tally: Tally,
}

impl BaselineGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let degree = validate_edges(n, edges)?;
        let mut adj: Vec<Vec<u32>> = degree.iter().map(|&d| Vec::with_capacity(d as usize)).collect();
        for &(u, v) in edges {
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        Ok(BaselineGraph {
            adj,
            active: vec![true; n],
            active_count: n,
            log: Vec::new(),
            tally: Tally::default(),
        })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn counters(&self) -> Counters {
        self.tally.snapshot()
    }

    pub fn reset_counters(&self) {
        self.tally.reset();
    }

    /// Scans the list of `v` for `u`.
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        let row = &self.adj[v];
        let pos = row.iter().position(|&x| x as usize == u);
        let scanned = pos.map_or(row.len(), |p| p + 1);
        self.tally.record(OpClass::Adjacency, scanned as u64 + 1, 0);
        pos.is_some()
    }

    /// Removes `v` from the list of `u`; returns the number of cells scanned.
    fn unlink(&mut self, u: usize, v: usize) -> u64 {
        let row = &mut self.adj[u];
        let pos = row
            .iter()
            .position(|&x| x as usize == v)
            .unwrap_or_else(|| panic!("{v} is not a neighbor of {u}"));
        row.swap_remove(pos);
        pos as u64 + 2
    }

    pub fn delete_edge(&mut self, u: usize, v: usize) {
        let reads = self.unlink(u, v) + self.unlink(v, u);
        self.log.push(Undo::EdgeDeleted(u as u32, v as u32));
        self.tally.record(OpClass::EdgeDeletion, reads, 5);
    }

    /// Removes `v` from every neighbor's list, then deactivates it.
    pub fn delete_vertex(&mut self, v: usize) {
        assert!(self.active[v], "vertex {v} is not active");
        let mut reads = 1u64;
        let mut writes = 2u64;
        while let Some(u) = self.adj[v].pop() {
            reads += self.unlink(u as usize, v) + 1;
            writes += 4;
            self.log.push(Undo::EdgeDeleted(v as u32, u));
        }
        self.active[v] = false;
        self.active_count -= 1;
        self.log.push(Undo::VertexDeactivated(v as u32));
        self.tally.record(OpClass::VertexDeletion, reads, writes);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && !self.adj[u].contains(&(v as u32)));
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
        self.log.push(Undo::EdgeAdded(u as u32, v as u32));
        self.tally.record(OpClass::EdgeAddition, 2, 3);
    }

    pub fn mark(&self) -> Mark {
        Mark(self.log.len())
    }

    /// Pops and reverses log records until the log is back at `mark`.
    pub fn undo_to(&mut self, mark: Mark) -> Result<(), InvalidMark> {
        if mark.0 > self.log.len() {
            return Err(InvalidMark { mark: mark.0, len: self.log.len() });
        }
        let mut reads = 0u64;
        let mut writes = 0u64;
        while self.log.len() > mark.0 {
            match self.log.pop().expect("log length checked") {
                Undo::EdgeDeleted(u, v) => {
                    self.adj[u as usize].push(v);
                    self.adj[v as usize].push(u);
                    reads += 1;
                    writes += 2;
                }
                Undo::EdgeAdded(u, v) => {
                    reads += self.unlink(u as usize, v as usize) + self.unlink(v as usize, u as usize);
                    writes += 2;
                }
                Undo::VertexDeactivated(v) => {
                    self.active[v as usize] = true;
                    self.active_count += 1;
                    reads += 1;
                    writes += 2;
                }
            }
        }
        self.tally.record(OpClass::Restore, reads, writes);
        Ok(())
    }
}
