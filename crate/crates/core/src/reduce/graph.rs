use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

/// A simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    edges: BTreeSet<(usize, usize)>,
    /// Neighbors of vertex `v` at index `v - 1`, ascending.
    adjacency: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex_range: edge {u}-{v} leaves 1..={vertices}")]
    VertexOutOfRange { u: usize, v: usize, vertices: usize },
    #[error("no_self_loops: edge {0}-{0} is a loop")]
    SelfLoop(usize),
    #[error("distinct_edges: edge {0}-{1} is listed twice")]
    DuplicateEdge(usize, usize),
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        let mut adjacency = alloc::vec![Vec::new(); vertices];
        for (u, v) in edges {
            if u == 0 || v == 0 || u > vertices || v > vertices {
                return Err(GraphError::VertexOutOfRange { u, v, vertices });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        adjacency.iter_mut().for_each(|n| n.sort_unstable());
        Ok(Graph { edges: set, adjacency })
    }

    pub fn path(vertices: usize) -> Self {
        Graph::new(vertices, (1..vertices).map(|v| (v, v + 1))).expect("path edges are valid")
    }

    pub fn complete(vertices: usize) -> Self {
        let edges = (1..=vertices).flat_map(|u| (u + 1..=vertices).map(move |v| (u, v)));
        Graph::new(vertices, edges).expect("complete edges are valid")
    }

    pub fn vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}
