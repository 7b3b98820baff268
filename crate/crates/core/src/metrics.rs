//! Degree assortativity, degree histograms and summary metrics.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Degree correlation across links. Undefined when every link end has the
/// same degree (e.g. regular graphs), where the correlation does not exist.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Assortativity {
    Defined(f64),
    Undefined,
}

impl Assortativity {
    pub fn value(self) -> Option<f64> {
        match self {
            Assortativity::Defined(r) => Some(r),
            Assortativity::Undefined => None,
        }
    }
}

impl fmt::Display for Assortativity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assortativity::Defined(r) => write!(f, "{r}"),
            Assortativity::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for Assortativity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Assortativity::Defined(r) => s.serialize_f64(*r),
            Assortativity::Undefined => s.serialize_str("undefined"),
        }
    }
}

/// Newman's degree assortativity in per-link form:
///
/// ```text
///      M⁻¹ Σ jᵢkᵢ − [M⁻¹ Σ ½(jᵢ + kᵢ)]²
/// r = ───────────────────────────────────
///     M⁻¹ Σ ½(jᵢ² + kᵢ²) − [M⁻¹ Σ ½(jᵢ + kᵢ)]²
/// ```
///
/// where `(jᵢ, kᵢ)` are the end degrees of link `i`. Both numerator and
/// denominator are scaled by `4M²` and evaluated in integers, so the
/// zero-variance case is detected exactly.
pub fn assortativity(g: &Graph) -> Result<Assortativity> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::arg("assortativity needs at least one link"));
    }
    let deg = g.degrees();
    let (mut prod, mut sum, mut sq) = (0i128, 0i128, 0i128);
    for &(u, v) in g.edges() {
        let (j, k) = (deg[u] as i128, deg[v] as i128);
        prod += j * k;
        sum += j + k;
        sq += j * j + k * k;
    }
    let m = m as i128;
    let num = 4 * m * prod - sum * sum;
    let den = 2 * m * sq - sum * sum;
    if den == 0 {
        return Ok(Assortativity::Undefined);
    }
    Ok(Assortativity::Defined(num as f64 / den as f64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: BTreeMap<usize, usize>,
    n: usize,
}

impl DegreeHistogram {
    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// P(k), the fraction of nodes with degree `k`.
    pub fn fraction(&self, k: usize) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.count(k) as f64 / self.n as f64
        }
    }

    pub fn mean_degree(&self) -> f64 {
        let total: usize = self.counts.iter().map(|(k, c)| k * c).sum();
        total as f64 / self.n as f64
    }

    /// `degree,count,fraction` rows in ascending degree.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,count,fraction\n");
        for (&k, &c) in &self.counts {
            let _ = writeln!(out, "{k},{c},{:.6}", self.fraction(k));
        }
        out
    }
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    let mut counts = BTreeMap::new();
    for d in g.degrees() {
        *counts.entry(d).or_insert(0) += 1;
    }
    DegreeHistogram {
        counts,
        n: g.node_count(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsSummary {
    pub r: Assortativity,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
}

pub fn summarize(g: &Graph) -> Result<MetricsSummary> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::arg("cannot summarize an empty graph"));
    }
    let m = g.edge_count();
    let r = if m == 0 {
        Assortativity::Undefined
    } else {
        assortativity(g)?
    };
    Ok(MetricsSummary {
        r,
        n,
        m,
        max_degree: g.degrees().into_iter().max().unwrap_or(0),
        avg_degree: (2 * m) as f64 / n as f64,
    })
}
