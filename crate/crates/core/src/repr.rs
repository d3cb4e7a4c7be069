//! The representation interface the solvers are written against.
//!
//! Solvers save a checkpoint before branching and roll back to it
//! afterwards. For the hybrid representation a checkpoint is a copy of the
//! frame-local vectors; for the baseline it is a position in the undo log.

use crate::addition::AdditionState;
use crate::baseline::{BaselineGraph, Mark};
use crate::contraction::{ContractionFrame, ContractionGraph};
use crate::counters::Counters;
use crate::error::GraphError;
use crate::hybrid::{HybridGraph, SearchFrame};

pub trait SearchGraph {
    type Checkpoint;

    /// Total number of vertices, active or not.
    fn order(&self) -> usize;
    fn active_count(&self) -> usize;
    fn is_active(&self, v: usize) -> bool;
    fn active_vertices(&self) -> impl Iterator<Item = usize> + '_;
    fn degree(&self, v: usize) -> usize;
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;
    fn is_adjacent(&self, u: usize, v: usize) -> bool;
    fn delete_edge(&mut self, u: usize, v: usize);
    fn delete_vertex(&mut self, v: usize);
    fn checkpoint(&self) -> Self::Checkpoint;
    fn rollback(&mut self, cp: &Self::Checkpoint);
    fn counters(&self) -> Counters;

    /// Active vertex of maximum degree, lowest id on ties.
    fn max_degree_vertex(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in self.active_vertices() {
            let d = self.degree(v);
            best = match best {
                Some((bd, bv)) if bd > d || (bd == d && bv < v) => Some((bd, bv)),
                _ => Some((d, v)),
            };
        }
        best.map(|(_, v)| v)
    }
}

/// Representations constructible from a validated simple edge list.
pub trait FromEdges: Sized {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError>;
}

/// Representations supporting permanent edge addition.
pub trait AddEdges: SearchGraph + Sized {
    fn with_addition(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError>;
    fn add_edge(&mut self, u: usize, v: usize);
}

/// The hybrid representation together with its current search frame.
#[derive(Clone, Debug)]
pub struct Hybrid {
    graph: HybridGraph,
    frame: SearchFrame,
    added: Option<AdditionState>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridCheckpoint {
    frame: SearchFrame,
    added: Option<AdditionState>,
}

impl Hybrid {
    pub fn graph(&self) -> &HybridGraph {
        &self.graph
    }

    pub fn frame(&self) -> &SearchFrame {
        &self.frame
    }
}

impl FromEdges for Hybrid {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let (graph, frame) = HybridGraph::build_from_edges(n, edges)?;
        Ok(Hybrid { graph, frame, added: None })
    }
}

impl AddEdges for Hybrid {
    fn with_addition(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let (graph, frame) = HybridGraph::build_for_addition(n, edges)?;
        Ok(Hybrid { graph, frame, added: Some(AdditionState::new(n)) })
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        let added = self.added.as_mut().expect("graph was not built for edge addition");
        self.graph.add_edge_permanent(&self.frame, added, u, v);
    }
}

impl SearchGraph for Hybrid {
    type Checkpoint = HybridCheckpoint;

    fn order(&self) -> usize {
        self.graph.order()
    }

    fn active_count(&self) -> usize {
        self.frame.active_count()
    }

    #[inline]
    fn is_active(&self, v: usize) -> bool {
        self.graph.is_active(&self.frame, v)
    }

    fn active_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.graph.active_vertices(&self.frame).iter().map(|&v| v as usize)
    }

    #[inline]
    fn degree(&self, v: usize) -> usize {
        match &self.added {
            Some(a) => self.frame.degree(v) + a.added_degree(v),
            None => self.frame.degree(v),
        }
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let base = self.graph.active_neighbors(&self.frame, v).iter().map(|&x| x as usize);
        let tail = self.added.as_ref().map(|a| self.graph.added_neighbors(&self.frame, a, v));
        base.chain(tail.into_iter().flatten())
    }

    #[inline]
    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        match &self.added {
            Some(a) => self.graph.is_adjacent_ext(&self.frame, a, u, v),
            None => self.graph.is_adjacent(&self.frame, u, v),
        }
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        self.graph.delete_edge(&mut self.frame, u, v);
    }

    fn delete_vertex(&mut self, v: usize) {
        match &mut self.added {
            Some(a) => self.graph.delete_vertex_ext(&mut self.frame, a, v),
            None => self.graph.delete_vertex(&mut self.frame, v),
        }
    }

    fn checkpoint(&self) -> HybridCheckpoint {
        HybridCheckpoint { frame: self.frame.snapshot(), added: self.added.clone() }
    }

    fn rollback(&mut self, cp: &HybridCheckpoint) {
        match (&mut self.added, &cp.added) {
            (Some(a), Some(sa)) => self.graph.restore_ext(&mut self.frame, a, &cp.frame, sa),
            _ => self.graph.restore(&mut self.frame, &cp.frame),
        }
    }

    fn counters(&self) -> Counters {
        self.graph.counters()
    }

    fn max_degree_vertex(&self) -> Option<usize> {
        if self.added.is_none() {
            self.graph.max_degree_active_vertex(&self.frame)
        } else {
            let mut best: Option<(usize, usize)> = None;
            for v in self.active_vertices() {
                let d = self.degree(v);
                best = match best {
                    Some((bd, bv)) if bd > d || (bd == d && bv < v) => Some((bd, bv)),
                    _ => Some((d, v)),
                };
            }
            best.map(|(_, v)| v)
        }
    }
}

impl FromEdges for BaselineGraph {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        BaselineGraph::new(n, edges)
    }
}

impl AddEdges for BaselineGraph {
    fn with_addition(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        BaselineGraph::new(n, edges)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        BaselineGraph::add_edge(self, u, v);
    }
}

impl SearchGraph for BaselineGraph {
    type Checkpoint = Mark;

    fn order(&self) -> usize {
        BaselineGraph::order(self)
    }

    fn active_count(&self) -> usize {
        BaselineGraph::active_count(self)
    }

    fn is_active(&self, v: usize) -> bool {
        BaselineGraph::is_active(self, v)
    }

    fn active_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&v| BaselineGraph::is_active(self, v))
    }

    fn degree(&self, v: usize) -> usize {
        BaselineGraph::degree(self, v)
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BaselineGraph::neighbors(self, v).iter().map(|&x| x as usize)
    }

    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        BaselineGraph::is_adjacent(self, u, v)
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        BaselineGraph::delete_edge(self, u, v);
    }

    fn delete_vertex(&mut self, v: usize) {
        BaselineGraph::delete_vertex(self, v);
    }

    fn checkpoint(&self) -> Mark {
        self.mark()
    }

    fn rollback(&mut self, cp: &Mark) {
        self.undo_to(*cp).expect("checkpoint taken on this graph");
    }

    fn counters(&self) -> Counters {
        BaselineGraph::counters(self)
    }
}

impl FromEdges for ContractionGraph {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        ContractionGraph::new(n, edges)
    }
}

/// Vertices of a contraction graph are its color classes.
impl SearchGraph for ContractionGraph {
    type Checkpoint = ContractionFrame;

    fn order(&self) -> usize {
        ContractionGraph::order(self)
    }

    fn active_count(&self) -> usize {
        self.frame().active_count()
    }

    fn is_active(&self, c: usize) -> bool {
        self.is_active_color(c)
    }

    fn active_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.active_colors().iter().map(|&c| c as usize)
    }

    fn degree(&self, c: usize) -> usize {
        self.color_degree(c)
    }

    fn neighbors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.color_neighbors(c)
    }

    fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.colors_adjacent(a, b)
    }

    fn delete_edge(&mut self, a: usize, b: usize) {
        self.delete_color_edge(a, b);
    }

    fn delete_vertex(&mut self, c: usize) {
        self.delete_color(c);
    }

    fn checkpoint(&self) -> ContractionFrame {
        self.snapshot()
    }

    fn rollback(&mut self, cp: &ContractionFrame) {
        self.restore_colors(cp);
    }

    fn counters(&self) -> Counters {
        ContractionGraph::counters(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::tests::example_edges;

    fn exercise<G: SearchGraph>(mut g: G) -> Vec<(usize, usize)> {
        let cp = g.checkpoint();
        g.delete_vertex(5);
        g.delete_edge(0, 1);
        let mut after: Vec<(usize, usize)> = Vec::new();
        for v in g.active_vertices() {
            for u in g.neighbors(v) {
                if v < u {
                    after.push((v, u));
                }
            }
        }
        after.sort_unstable();
        g.rollback(&cp);
        assert_eq!(g.active_count(), 8);
        assert!(g.is_adjacent(0, 1));
        assert_eq!(g.max_degree_vertex(), Some(2));
        after
    }

    #[test]
    fn all_representations_agree() {
        let edges = example_edges();
        let a = exercise(Hybrid::from_edges(8, &edges).unwrap());
        let b = exercise(BaselineGraph::from_edges(8, &edges).unwrap());
        let c = exercise(ContractionGraph::from_edges(8, &edges).unwrap());
        let d = exercise(Hybrid::with_addition(8, &edges).unwrap());
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, d);
        assert_eq!(a.len(), 13 - 4 - 1);
    }
}
