//! Removal sequences for the three attack strategies.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackStrategy {
    /// Repeatedly remove the highest-degree node, recomputing degrees after
    /// each removal.
    Degree,
    /// Remove nodes in order of their degree in the intact graph.
    DegreeStatic,
    RandomNode,
    RandomLink,
}

impl AttackStrategy {
    pub fn is_stochastic(self) -> bool {
        matches!(
            self,
            AttackStrategy::RandomNode | AttackStrategy::RandomLink
        )
    }

    pub fn targets_links(self) -> bool {
        self == AttackStrategy::RandomLink
    }

    /// Builds a plan of `count` removals. `seed` is ignored by the targeted
    /// strategies.
    pub fn plan(self, g: &Graph, count: usize, seed: u64) -> Result<AttackPlan> {
        match self {
            AttackStrategy::Degree => plan_targeted_degree(g, count, true),
            AttackStrategy::DegreeStatic => plan_targeted_degree(g, count, false),
            AttackStrategy::RandomNode => plan_random_nodes(g, count, seed),
            AttackStrategy::RandomLink => plan_random_links(g, count, seed),
        }
    }
}

impl fmt::Display for AttackStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackStrategy::Degree => "degree",
            AttackStrategy::DegreeStatic => "degree-static",
            AttackStrategy::RandomNode => "random-node",
            AttackStrategy::RandomLink => "random-link",
        })
    }
}

impl FromStr for AttackStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(AttackStrategy::Degree),
            "degree-static" => Ok(AttackStrategy::DegreeStatic),
            "random-node" => Ok(AttackStrategy::RandomNode),
            "random-link" => Ok(AttackStrategy::RandomLink),
            _ => Err(Error::arg(format!(
                "unknown attack {s:?} (degree, degree-static, random-node, random-link)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "target", content = "order", rename_all = "lowercase")]
pub enum Removal {
    Node(Vec<NodeId>),
    Link(Vec<(NodeId, NodeId)>),
}

/// An ordered removal sequence against one initial graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackPlan {
    pub strategy: AttackStrategy,
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub removal: Removal,
}

impl AttackPlan {
    pub fn len(&self) -> usize {
        match &self.removal {
            Removal::Node(v) => v.len(),
            Removal::Link(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn targets_links(&self) -> bool {
        matches!(self.removal, Removal::Link(_))
    }

    pub fn nodes(&self) -> Option<&[NodeId]> {
        match &self.removal {
            Removal::Node(v) => Some(v),
            Removal::Link(_) => None,
        }
    }

    pub fn links(&self) -> Option<&[(NodeId, NodeId)]> {
        match &self.removal {
            Removal::Link(v) => Some(v),
            Removal::Node(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plan serializes")
    }
}

/// Highest-degree-first node removal, ties to the lowest id.
///
/// With `recompute` the degree of every survivor is updated after each pick,
/// so each choice is a maximum-degree node of the degraded graph. Without it
/// nodes are ranked once by their initial degree.
pub fn plan_targeted_degree(g: &Graph, count: usize, recompute: bool) -> Result<AttackPlan> {
    let n = g.node_count();
    if count > n {
        return Err(Error::arg(format!("cannot remove {count} of {n} nodes")));
    }
    let order = if recompute {
        let mut degree = g.degrees();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(count);
        for _ in 0..count {
            // Strict `>` keeps the first (lowest) id among ties.
            let mut best = usize::MAX;
            for u in (0..n).filter(|&u| alive[u]) {
                if best == usize::MAX || degree[u] > degree[best] {
                    best = u;
                }
            }
            alive[best] = false;
            for &v in g.neighbors(best) {
                if alive[v] {
                    degree[v] -= 1;
                }
            }
            order.push(best);
        }
        order
    } else {
        let mut nodes: Vec<NodeId> = (0..n).collect();
        nodes.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
        nodes.truncate(count);
        nodes
    };
    let strategy = if recompute {
        AttackStrategy::Degree
    } else {
        AttackStrategy::DegreeStatic
    };
    Ok(AttackPlan {
        strategy,
        seed: None,
        removal: Removal::Node(order),
    })
}

/// First `count` entries of a Fisher–Yates shuffle of `0..len` driven by
/// `ChaCha8Rng::seed_from_u64(seed)`: step `i` swaps position `i` with a
/// uniform position in `i..len`.
fn partial_shuffle(len: usize, count: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items: Vec<usize> = (0..len).collect();
    for i in 0..count {
        let j = rng.gen_range(i..len);
        items.swap(i, j);
    }
    items.truncate(count);
    items
}

pub fn plan_random_nodes(g: &Graph, count: usize, seed: u64) -> Result<AttackPlan> {
    let n = g.node_count();
    if count > n {
        return Err(Error::arg(format!("cannot remove {count} of {n} nodes")));
    }
    Ok(AttackPlan {
        strategy: AttackStrategy::RandomNode,
        seed: Some(seed),
        removal: Removal::Node(partial_shuffle(n, count, seed)),
    })
}

pub fn plan_random_links(g: &Graph, count: usize, seed: u64) -> Result<AttackPlan> {
    let m = g.edge_count();
    if count > m {
        return Err(Error::arg(format!("cannot remove {count} of {m} links")));
    }
    let order = partial_shuffle(m, count, seed)
        .into_iter()
        .map(|i| g.edges()[i])
        .collect();
    Ok(AttackPlan {
        strategy: AttackStrategy::RandomLink,
        seed: Some(seed),
        removal: Removal::Link(order),
    })
}
