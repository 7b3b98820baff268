//! All-pairs shortest-path routing and the bottleneck throughput model.
//!
//! Every ordered origin-destination pair carries one unit of demand. Each
//! deliverable pair is routed along a single shortest path, chosen as the
//! lexicographically smallest node sequence from origin to destination. With
//! unit link capacities the common per-flow rate saturates the busiest link
//! at `1 / f_max`, so total throughput is `delivered / f_max`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Graph, NodeId};

/// Per-link flow counts for all-pairs shortest-path routing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    /// Indexed like `Graph::edges`. Counts flows in both directions.
    pub link_load: Vec<u64>,
    /// Number of ordered pairs `(j, k)`, `j != k`, joined by a path.
    pub delivered: u64,
    pub f_max: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThroughputSample {
    /// `delivered / f_max`, or 0 when nothing is deliverable.
    pub raw: f64,
    pub delivered: u64,
    pub f_max: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThroughputMode {
    /// Bottleneck-normalized throughput, recomputing `f_max` on the degraded graph.
    #[default]
    #[serde(rename = "eq2")]
    Eq2,
    /// Fraction of the original flows still deliverable.
    #[serde(rename = "flow-ratio")]
    FlowRatio,
}

impl fmt::Display for ThroughputMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThroughputMode::Eq2 => "eq2",
            ThroughputMode::FlowRatio => "flow-ratio",
        })
    }
}

impl FromStr for ThroughputMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "eq2" => Ok(ThroughputMode::Eq2),
            "flow-ratio" => Ok(ThroughputMode::FlowRatio),
            _ => Err(Error::arg(format!(
                "unknown throughput mode {s:?} (eq2, flow-ratio)"
            ))),
        }
    }
}

struct Scratch {
    visited: Vec<bool>,
    parent_edge: Vec<usize>,
    order: Vec<NodeId>,
    subtree: Vec<u64>,
    queue: VecDeque<NodeId>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            visited: vec![false; n],
            parent_edge: vec![usize::MAX; n],
            order: Vec::with_capacity(n),
            subtree: vec![0; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    /// FIFO BFS over ascending neighbor lists; each node keeps the link it was
    /// first discovered through. Within a level, nodes come off the queue in
    /// lexicographic order of their tree paths, so the first discoverer is the
    /// predecessor with the smallest path and every tree path is the
    /// lexicographically smallest shortest path from `source`.
    fn bfs(&mut self, g: &Graph, source: NodeId) {
        for &u in &self.order {
            self.visited[u] = false;
        }
        self.order.clear();
        self.visited[source] = true;
        self.parent_edge[source] = usize::MAX;
        self.queue.push_back(source);
        while let Some(u) = self.queue.pop_front() {
            self.order.push(u);
            for (v, e) in g.neighbor_edges(u) {
                if !self.visited[v] {
                    self.visited[v] = true;
                    self.parent_edge[v] = e;
                    self.queue.push_back(v);
                }
            }
        }
    }

    fn accumulate(&mut self, g: &Graph, load: &mut [u64]) -> u64 {
        // Reverse BFS order visits children before parents; the load a source
        // puts on a tree link equals the number of destinations below it.
        for &u in self.order.iter().rev() {
            self.subtree[u] += 1;
            let e = self.parent_edge[u];
            if e != usize::MAX {
                load[e] += self.subtree[u];
                let (a, b) = g.edges()[e];
                let parent = if a == u { b } else { a };
                self.subtree[parent] += self.subtree[u];
            }
        }
        for &u in &self.order {
            self.subtree[u] = 0;
        }
        (self.order.len() - 1) as u64
    }
}

/// Routes every ordered pair over its selected shortest path and tallies
/// per-link loads. Sources are processed in parallel; integer tallies make
/// the result independent of scheduling.
pub fn route_all_pairs(g: &Graph) -> FlowAssignment {
    let n = g.node_count();
    let m = g.edge_count();
    let (link_load, delivered) = (0..n)
        .into_par_iter()
        .fold(
            || (Scratch::new(n), vec![0u64; m], 0u64),
            |(mut scratch, mut load, mut delivered), s| {
                scratch.bfs(g, s);
                delivered += scratch.accumulate(g, &mut load);
                (scratch, load, delivered)
            },
        )
        .map(|(_, load, delivered)| (load, delivered))
        .reduce(
            || (vec![0u64; m], 0),
            |(mut a, da), (b, db)| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                (a, da + db)
            },
        );
    let f_max = link_load.iter().copied().max().unwrap_or(0);
    FlowAssignment {
        link_load,
        delivered,
        f_max,
    }
}

/// The node sequence the router selects for `source -> target`, or `None`
/// when the target is unreachable.
pub fn route(g: &Graph, source: NodeId, target: NodeId) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    if source >= n || target >= n {
        return None;
    }
    let mut scratch = Scratch::new(n);
    scratch.bfs(g, source);
    if !scratch.visited[target] {
        return None;
    }
    let mut path = vec![target];
    let mut u = target;
    while u != source {
        let (a, b) = g.edges()[scratch.parent_edge[u]];
        u = if a == u { b } else { a };
        path.push(u);
    }
    path.reverse();
    Some(path)
}

pub fn raw_throughput(fa: &FlowAssignment) -> ThroughputSample {
    let raw = if fa.f_max == 0 {
        0.0
    } else {
        fa.delivered as f64 / fa.f_max as f64
    };
    ThroughputSample {
        raw,
        delivered: fa.delivered,
        f_max: fa.f_max,
    }
}

pub fn throughput(g: &Graph) -> ThroughputSample {
    raw_throughput(&route_all_pairs(g))
}

impl ThroughputSample {
    /// This sample relative to `baseline`. Returns 0 when the baseline
    /// carries no throughput. Not clamped: in eq2 mode a degraded graph can
    /// exceed its baseline when `f_max` drops faster than `delivered`.
    pub fn normalized(&self, baseline: &ThroughputSample, mode: ThroughputMode) -> f64 {
        match mode {
            ThroughputMode::Eq2 if baseline.raw > 0.0 => self.raw / baseline.raw,
            ThroughputMode::FlowRatio if baseline.delivered > 0 => {
                self.delivered as f64 / baseline.delivered as f64
            }
            _ => 0.0,
        }
    }
}

pub fn normalized_throughput(
    current: &Graph,
    baseline: &ThroughputSample,
    mode: ThroughputMode,
) -> f64 {
    throughput(current).normalized(baseline, mode)
}
