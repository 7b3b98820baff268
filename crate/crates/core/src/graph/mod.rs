//! Undirected simple graphs with dense node ids.

mod generate;
mod io;

use std::collections::VecDeque;
use std::fmt;

pub use generate::TopologySpec;
pub use io::{load_edge_list, read_edge_list_file, to_edge_list};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Immutable undirected simple graph.
///
/// Node ids are `0..n`. Every link is stored once in canonical form `(u, v)`
/// with `u < v`, and the edge list is kept sorted. Neighbor lists are sorted
/// ascending, which the routing tie-break relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    // incident[u][i] is the edge index of the link (u, adjacency[u][i])
    incident: Vec<Vec<usize>>,
    edges: Vec<(NodeId, NodeId)>,
    labels: Option<Vec<u64>>,
}

/// A graph obtained by deleting nodes, together with the map back to the
/// ids of the graph it came from.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `survivors[new_id] == old_id`, ascending.
    pub survivors: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub component_id: Vec<usize>,
    pub component_sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.component_sizes.len()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph::from_canonical(n, Vec::new(), None)
    }

    /// Builds a graph on `n` nodes. Self-loops are dropped and duplicate
    /// links (in either orientation) collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u != v {
                canon.push((u.min(v), u.max(v)));
            }
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Graph::from_canonical(n, canon, None))
    }

    /// `edges` must already be canonical, sorted and deduplicated.
    pub(crate) fn from_canonical(
        n: usize,
        edges: Vec<(NodeId, NodeId)>,
        labels: Option<Vec<u64>>,
    ) -> Graph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adjacency = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        // Sorted (u, v) order pushes every neighbor list in ascending order:
        // lower neighbors of x all arrive before any (x, w).
        for (idx, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push(v);
            incident[u].push(idx);
            adjacency[v].push(u);
            incident[v].push(idx);
        }
        Graph {
            adjacency,
            incident,
            edges,
            labels,
        }
    }

    pub(crate) fn with_labels(mut self, labels: Vec<u64>) -> Graph {
        debug_assert_eq!(labels.len(), self.node_count());
        self.labels = Some(labels);
        self
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u]
    }

    /// Neighbors of `u` paired with the index of the connecting link.
    pub fn neighbor_edges(&self, u: NodeId) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.adjacency[u]
            .iter()
            .copied()
            .zip(self.incident[u].iter().copied())
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        if u >= self.node_count() || v >= self.node_count() {
            return None;
        }
        let pos = self.adjacency[u].binary_search(&v).ok()?;
        Some(self.incident[u][pos])
    }

    /// External id for each dense node id, when the graph was loaded from a file.
    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn label(&self, u: NodeId) -> u64 {
        match &self.labels {
            Some(l) => l[u],
            None => u as u64,
        }
    }

    pub fn connected_components(&self) -> ComponentLabeling {
        let n = self.node_count();
        let mut component_id = vec![usize::MAX; n];
        let mut component_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if component_id[start] != usize::MAX {
                continue;
            }
            let id = component_sizes.len();
            component_id[start] = id;
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in &self.adjacency[u] {
                    if component_id[v] == usize::MAX {
                        component_id[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            component_sizes.push(size);
        }
        ComponentLabeling {
            component_id,
            component_sizes,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().count() <= 1
    }

    /// Returns a new graph without `victims` and every link touching them.
    /// Survivors are renumbered densely, preserving their relative order.
    pub fn remove_nodes(&self, victims: &[NodeId]) -> Result<Subgraph> {
        let n = self.node_count();
        let mut dead = vec![false; n];
        for &v in victims {
            if v >= n {
                return Err(Error::arg(format!("node {v} out of range for {n} nodes")));
            }
            dead[v] = true;
        }
        let mut new_id = vec![usize::MAX; n];
        let mut survivors = Vec::with_capacity(n);
        for u in 0..n {
            if !dead[u] {
                new_id[u] = survivors.len();
                survivors.push(u);
            }
        }
        // Renumbering is monotone, so the filtered list stays sorted.
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| !dead[u] && !dead[v])
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| survivors.iter().map(|&u| l[u]).collect());
        let graph = Graph::from_canonical(survivors.len(), edges, labels);
        Ok(Subgraph { graph, survivors })
    }

    /// Returns a new graph over the same node set without the `victims` links.
    /// Links may be given in either orientation.
    pub fn remove_links(&self, victims: &[(NodeId, NodeId)]) -> Result<Graph> {
        let mut dead = vec![false; self.edge_count()];
        for &(u, v) in victims {
            let idx = self
                .edge_index(u, v)
                .ok_or_else(|| Error::arg(format!("link ({u}, {v}) not present")))?;
            dead[idx] = true;
        }
        let edges = self
            .edges
            .iter()
            .zip(&dead)
            .filter(|(_, &d)| !d)
            .map(|(&e, _)| e)
            .collect();
        Ok(Graph::from_canonical(
            self.node_count(),
            edges,
            self.labels.clone(),
        ))
    }

    /// Links expressed in external ids, canonical and sorted.
    pub fn labelled_edges(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.node_count(), self.edge_count())
    }
}
