//! Cell-access instrumentation.
//!
//! Every representation records, per operation class, how many times the
//! operation ran and how many array cells it read and wrote. The counts are
//! what the complexity tests assert against, so each mutator records the
//! exact number of cells its code path touches.
//!
//! With the `counters` feature disabled the tally is a zero-sized type and
//! every `record` call compiles to nothing.

use serde::Serialize;

#[cfg(feature = "counters")]
use std::cell::Cell;

/// Operation classes, one per row of the representation cost table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpClass {
    Adjacency = 0,
    EdgeDeletion = 1,
    VertexDeletion = 2,
    EdgeAddition = 3,
    Contraction = 4,
    Restore = 5,
}

#[cfg(feature = "counters")]
const CLASSES: usize = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCount {
    pub calls: u64,
    pub reads: u64,
    pub writes: u64,
}

impl OpCount {
    pub fn accesses(&self) -> u64 {
        self.reads + self.writes
    }

    fn since(&self, earlier: &OpCount) -> OpCount {
        OpCount {
            calls: self.calls - earlier.calls,
            reads: self.reads - earlier.reads,
            writes: self.writes - earlier.writes,
        }
    }
}

/// A snapshot of all counters of one representation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub adjacency: OpCount,
    pub edge_deletion: OpCount,
    pub vertex_deletion: OpCount,
    pub edge_addition: OpCount,
    pub contraction: OpCount,
    pub restore: OpCount,
}

impl Counters {
    pub fn get(&self, class: OpClass) -> OpCount {
        match class {
            OpClass::Adjacency => self.adjacency,
            OpClass::EdgeDeletion => self.edge_deletion,
            OpClass::VertexDeletion => self.vertex_deletion,
            OpClass::EdgeAddition => self.edge_addition,
            OpClass::Contraction => self.contraction,
            OpClass::Restore => self.restore,
        }
    }

    /// Counter delta between `earlier` and `self`.
    pub fn since(&self, earlier: &Counters) -> Counters {
        Counters {
            adjacency: self.adjacency.since(&earlier.adjacency),
            edge_deletion: self.edge_deletion.since(&earlier.edge_deletion),
            vertex_deletion: self.vertex_deletion.since(&earlier.vertex_deletion),
            edge_addition: self.edge_addition.since(&earlier.edge_addition),
            contraction: self.contraction.since(&earlier.contraction),
            restore: self.restore.since(&earlier.restore),
        }
    }

    /// Total cell accesses over all classes.
    pub fn total_accesses(&self) -> u64 {
        [
            self.adjacency,
            self.edge_deletion,
            self.vertex_deletion,
            self.edge_addition,
            self.contraction,
            self.restore,
        ]
        .iter()
        .map(OpCount::accesses)
        .sum()
    }
}

/// Interior-mutable counter storage, so read-only queries can be counted.
///
/// Holding a `Tally` makes a structure `!Sync` while the `counters`
/// feature is enabled.
#[derive(Default)]
pub(crate) struct Tally {
    #[cfg(feature = "counters")]
    cells: [[Cell<u64>; 3]; CLASSES],
}

impl Tally {
    #[inline(always)]
    #[allow(unused_variables)]
    pub(crate) fn record(&self, class: OpClass, reads: u64, writes: u64) {
        #[cfg(feature = "counters")]
        {
            let row = &self.cells[class as usize];
            row[0].set(row[0].get() + 1);
            row[1].set(row[1].get() + reads);
            row[2].set(row[2].get() + writes);
        }
    }

    /// Adds cell accesses to a class without counting a call.
    #[inline(always)]
    #[allow(unused_variables)]
    pub(crate) fn charge(&self, class: OpClass, reads: u64, writes: u64) {
        #[cfg(feature = "counters")]
        {
            let row = &self.cells[class as usize];
            row[1].set(row[1].get() + reads);
            row[2].set(row[2].get() + writes);
        }
    }

    pub(crate) fn snapshot(&self) -> Counters {
        #[cfg(feature = "counters")]
        {
            let get = |class: OpClass| {
                let row = &self.cells[class as usize];
                OpCount {
                    calls: row[0].get(),
                    reads: row[1].get(),
                    writes: row[2].get(),
                }
            };
            Counters {
                adjacency: get(OpClass::Adjacency),
                edge_deletion: get(OpClass::EdgeDeletion),
                vertex_deletion: get(OpClass::VertexDeletion),
                edge_addition: get(OpClass::EdgeAddition),
                contraction: get(OpClass::Contraction),
                restore: get(OpClass::Restore),
            }
        }
        #[cfg(not(feature = "counters"))]
        {
            Counters::default()
        }
    }

    pub(crate) fn reset(&self) {
        #[cfg(feature = "counters")]
        for row in &self.cells {
            for cell in row {
                cell.set(0);
            }
        }
    }
}

impl Clone for Tally {
    fn clone(&self) -> Self {
        let tally = Tally::default();
        #[cfg(feature = "counters")]
        for (dst, src) in tally.cells.iter().zip(&self.cells) {
            for (d, s) in dst.iter().zip(src) {
                d.set(s.get());
            }
        }
        tally
    }
}

impl std::fmt::Debug for Tally {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.snapshot().fmt(f)
    }
}

#[cfg(all(test, feature = "counters"))]
mod tests {
    use super::*;

    #[test]
    fn record_and_delta() {
        let t = Tally::default();
        t.record(OpClass::Adjacency, 2, 0);
        let before = t.snapshot();
        t.record(OpClass::Adjacency, 2, 0);
        t.charge(OpClass::EdgeDeletion, 1, 1);
        let delta = t.snapshot().since(&before);
        assert_eq!(delta.adjacency, OpCount { calls: 1, reads: 2, writes: 0 });
        assert_eq!(delta.edge_deletion, OpCount { calls: 0, reads: 1, writes: 1 });
        assert_eq!(delta.total_accesses(), 4);
        t.reset();
        assert_eq!(t.snapshot(), Counters::default());
    }
}
