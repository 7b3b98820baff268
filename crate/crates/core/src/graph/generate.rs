use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

impl Graph {
    pub fn path(n: usize) -> Result<Graph> {
        require(n >= 1, "path needs n >= 1")?;
        Ok(canonical(n, (1..n).map(|v| (v - 1, v)).collect()))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        require(n >= 3, "cycle needs n >= 3")?;
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Ok(canonical(n, edges))
    }

    pub fn complete(n: usize) -> Result<Graph> {
        require(n >= 1, "complete graph needs n >= 1")?;
        Ok(canonical(n, complete_edges(n)))
    }

    /// Hub 0 joined to leaves `1..n`.
    pub fn star(n: usize) -> Result<Graph> {
        require(n >= 1, "star needs n >= 1")?;
        Ok(canonical(n, (1..n).map(|v| (0, v)).collect()))
    }

    /// Hub 0 joined to every node of the rim cycle `1..n`.
    pub fn wheel(n: usize) -> Result<Graph> {
        require(n >= 4, "wheel needs n >= 4")?;
        let mut edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        edges.extend((2..n).map(|v| (v - 1, v)));
        edges.push((1, n - 1));
        Ok(canonical(n, edges))
    }

    /// 4-neighbor lattice, node `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
        require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1")?;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let u = r * cols + c;
                if c + 1 < cols {
                    edges.push((u, u + 1));
                }
                if r + 1 < rows {
                    edges.push((u, u + cols));
                }
            }
        }
        Ok(canonical(rows * cols, edges))
    }

    /// G(n, p): each pair linked independently with probability `p`.
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
        require(n >= 1, "erdos_renyi needs n >= 1")?;
        require((0.0..=1.0).contains(&p), "erdos_renyi needs 0 <= p <= 1")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Ok(canonical(n, edges))
    }

    /// Barabási–Albert preferential attachment.
    ///
    /// Starts from a complete graph on `m0` nodes; every later node links to
    /// `links_per_node` distinct existing nodes drawn with probability
    /// proportional to their current degree. A draw that hits an already
    /// chosen target is repeated.
    pub fn scale_free_ba(n: usize, m0: usize, links_per_node: usize, seed: u64) -> Result<Graph> {
        require(m0 >= 1, "scale_free_ba needs m0 >= 1")?;
        require(n >= m0, "scale_free_ba needs n >= m0")?;
        require(
            (1..=m0).contains(&links_per_node),
            "scale_free_ba needs 1 <= links_per_node <= m0",
        )?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = complete_edges(m0);
        // Each link contributes both endpoints, so a uniform pick from this
        // list is a degree-proportional pick of a node.
        let mut ends: Vec<NodeId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let mut chosen = Vec::with_capacity(links_per_node);
        for new in m0..n {
            chosen.clear();
            while chosen.len() < links_per_node {
                let t = if ends.is_empty() {
                    rng.gen_range(0..new)
                } else {
                    ends[rng.gen_range(0..ends.len())]
                };
                if !chosen.contains(&t) {
                    chosen.push(t);
                }
            }
            for &t in &chosen {
                edges.push((t, new));
                ends.push(t);
                ends.push(new);
            }
        }
        Ok(canonical(n, edges))
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::arg(msg))
    }
}

fn complete_edges(n: usize) -> Vec<(NodeId, NodeId)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn canonical(n: usize, mut edges: Vec<(NodeId, NodeId)>) -> Graph {
    edges.sort_unstable();
    Graph::from_canonical(n, edges, None)
}

/// A synthetic topology in `kind:param[:param...]` form, e.g. `wheel:6`,
/// `grid:32:32`, `er:100:0.05`, `ba:1000:3:3`.
#[derive(Clone, Debug, PartialEq)]
pub enum TopologySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Wheel(usize),
    Grid {
        rows: usize,
        cols: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    ScaleFreeBa {
        n: usize,
        m0: usize,
        links_per_node: usize,
    },
}

impl TopologySpec {
    /// Deterministic in `(self, seed)`; the seed is ignored by the
    /// deterministic kinds.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            TopologySpec::Path(n) => Graph::path(n),
            TopologySpec::Cycle(n) => Graph::cycle(n),
            TopologySpec::Complete(n) => Graph::complete(n),
            TopologySpec::Star(n) => Graph::star(n),
            TopologySpec::Wheel(n) => Graph::wheel(n),
            TopologySpec::Grid { rows, cols } => Graph::grid(rows, cols),
            TopologySpec::ErdosRenyi { n, p } => Graph::erdos_renyi(n, p, seed),
            TopologySpec::ScaleFreeBa {
                n,
                m0,
                links_per_node,
            } => Graph::scale_free_ba(n, m0, links_per_node, seed),
        }
    }
}

impl FromStr for TopologySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let params: Vec<&str> = parts.collect();
        let bad = || Error::arg(format!("bad topology spec {s:?}"));
        let int = |i: usize| -> Result<usize> {
            params.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad)
        };
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let spec = match kind {
            "path" => arity(1).and(int(0).map(TopologySpec::Path))?,
            "cycle" => arity(1).and(int(0).map(TopologySpec::Cycle))?,
            "complete" => arity(1).and(int(0).map(TopologySpec::Complete))?,
            "star" => arity(1).and(int(0).map(TopologySpec::Star))?,
            "wheel" => arity(1).and(int(0).map(TopologySpec::Wheel))?,
            "grid" => {
                arity(2)?;
                TopologySpec::Grid {
                    rows: int(0)?,
                    cols: int(1)?,
                }
            }
            "er" | "erdos_renyi" => {
                arity(2)?;
                let p = params[1].parse().map_err(|_| bad())?;
                TopologySpec::ErdosRenyi { n: int(0)?, p }
            }
            "ba" | "scale_free_ba" => {
                arity(3)?;
                TopologySpec::ScaleFreeBa {
                    n: int(0)?,
                    m0: int(1)?,
                    links_per_node: int(2)?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologySpec::Path(n) => write!(f, "path:{n}"),
            TopologySpec::Cycle(n) => write!(f, "cycle:{n}"),
            TopologySpec::Complete(n) => write!(f, "complete:{n}"),
            TopologySpec::Star(n) => write!(f, "star:{n}"),
            TopologySpec::Wheel(n) => write!(f, "wheel:{n}"),
            TopologySpec::Grid { rows, cols } => write!(f, "grid:{rows}:{cols}"),
            TopologySpec::ErdosRenyi { n, p } => write!(f, "er:{n}:{p}"),
            TopologySpec::ScaleFreeBa {
                n,
                m0,
                links_per_node,
            } => {
                write!(f, "ba:{n}:{m0}:{links_per_node}")
            }
        }
    }
}
