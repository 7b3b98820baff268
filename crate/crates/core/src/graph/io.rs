use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` and blank lines are skipped. External ids are
/// relabeled to `0..n` in order of first appearance and kept as labels.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |ext: u64| {
        *ids.entry(ext).or_insert_with(|| {
            labels.push(ext);
            labels.len() - 1
        })
    };

    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected two node ids, got {line:?}"),
                })
            }
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("{tok:?} is not a nonnegative integer"),
            })
        };
        let (a, b) = (parse(a)?, parse(b)?);
        let u = intern(a);
        let v = intern(b);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(Graph::from_canonical(labels.len(), edges, None).with_labels(labels))
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    load_edge_list(&std::fs::read_to_string(path)?)
}

/// Canonical serialization: one `u v` line per link in external ids with
/// `u < v`, sorted, newline-terminated. Isolated nodes are not represented.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 8);
    for (u, v) in g.labelled_edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
