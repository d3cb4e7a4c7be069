use thiserror::Error;

/// Rejections raised while building a graph from an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
}

/// Checks an edge list against the simple-graph contract shared by every
/// representation. Returns the degree of every vertex.
pub(crate) fn validate_edges(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u32>, GraphError> {
    let mut degree = vec![0u32; n];
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::OutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    Ok(degree)
}
