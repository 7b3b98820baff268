//! Test-only oracles, independent of the library's routing code.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use elasticity::Graph;

/// Hop distances to `target` by plain BFS.
pub fn distances_to(g: &Graph, target: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    dist[target] = Some(0);
    let mut q = VecDeque::from([target]);
    while let Some(u) = q.pop_front() {
        let d = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                q.push_back(v);
            }
        }
    }
    dist
}

/// The lexicographically smallest shortest path from `s` to `t`, built by a
/// greedy forward walk: always step to the smallest neighbor one hop closer
/// to `t`.
pub fn lex_shortest_path(g: &Graph, s: usize, t: usize) -> Option<Vec<usize>> {
    let dist = distances_to(g, t);
    dist[s]?;
    let mut path = vec![s];
    let mut cur = s;
    while cur != t {
        let d = dist[cur].unwrap();
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&x| dist[x] == Some(d - 1))
            .min()
            .unwrap();
        path.push(cur);
    }
    Some(path)
}

pub struct OracleFlows {
    /// Keyed by canonical link `(u, v)`, `u < v`.
    pub load: BTreeMap<(usize, usize), u64>,
    pub delivered: u64,
    pub f_max: u64,
}

/// Enumerates every ordered pair and recounts the links on its path.
pub fn brute_force_flows(g: &Graph) -> OracleFlows {
    let n = g.node_count();
    let mut load: BTreeMap<(usize, usize), u64> = g.edges().iter().map(|&e| (e, 0)).collect();
    let mut delivered = 0;
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            if let Some(path) = lex_shortest_path(g, s, t) {
                delivered += 1;
                for w in path.windows(2) {
                    *load.get_mut(&(w[0].min(w[1]), w[0].max(w[1]))).unwrap() += 1;
                }
            }
        }
    }
    let f_max = load.values().copied().max().unwrap_or(0);
    OracleFlows {
        load,
        delivered,
        f_max,
    }
}

/// Checks the library's assignment against the oracle, returning a
/// description of the first mismatch.
pub fn check_against_oracle(g: &Graph) -> Result<(), String> {
    let fa = elasticity::routing::route_all_pairs(g);
    let oracle = brute_force_flows(g);
    if fa.delivered != oracle.delivered {
        return Err(format!(
            "delivered {} vs oracle {}",
            fa.delivered, oracle.delivered
        ));
    }
    if fa.f_max != oracle.f_max {
        return Err(format!("f_max {} vs oracle {}", fa.f_max, oracle.f_max));
    }
    for (idx, e) in g.edges().iter().enumerate() {
        if fa.link_load[idx] != oracle.load[e] {
            return Err(format!(
                "link {e:?}: {} vs oracle {}",
                fa.link_load[idx], oracle.load[e]
            ));
        }
    }
    Ok(())
}

/// Named small fixtures used across suites.
pub fn named_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("P3", Graph::path(3).unwrap()),
        ("P4", Graph::path(4).unwrap()),
        ("K3", Graph::complete(3).unwrap()),
        ("K5", Graph::complete(5).unwrap()),
        ("C4", Graph::cycle(4).unwrap()),
        ("C7", Graph::cycle(7).unwrap()),
        ("S5", Graph::star(5).unwrap()),
        ("W6", Graph::wheel(6).unwrap()),
        ("grid4x5", Graph::grid(4, 5).unwrap()),
        ("ba30", Graph::scale_free_ba(30, 3, 2, 1).unwrap()),
        ("two-K2", Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()),
        ("edgeless3", Graph::empty(3)),
        ("single", Graph::empty(1)),
    ]
}
