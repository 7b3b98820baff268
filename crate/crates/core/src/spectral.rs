//! Graph Laplacian spectrum and algebraic connectivity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Largest node count the dense eigensolver accepts by default.
pub const DEFAULT_MAX_NODES: usize = 4000;
const MAX_SWEEPS: usize = 100;

/// Dense row-major `L = D - A`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianMatrix {
    n: usize,
    data: Vec<f64>,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Second-smallest eigenvalue; `None` for fewer than two nodes.
    pub lambda2: Option<f64>,
    pub mean_eigenvalue: f64,
}

pub fn laplacian(g: &Graph) -> LaplacianMatrix {
    let n = g.node_count();
    let mut data = vec![0.0; n * n];
    for u in 0..n {
        data[u * n + u] = g.degree(u) as f64;
    }
    for &(u, v) in g.edges() {
        data[u * n + v] = -1.0;
        data[v * n + u] = -1.0;
    }
    LaplacianMatrix { n, data }
}

/// Full spectrum of a Laplacian, with the default size guard.
pub fn eigenvalues(l: &LaplacianMatrix, tol: f64) -> Result<SpectralSummary> {
    eigenvalues_with_limit(l, tol, DEFAULT_MAX_NODES)
}

pub fn eigenvalues_with_limit(
    l: &LaplacianMatrix,
    tol: f64,
    max_nodes: usize,
) -> Result<SpectralSummary> {
    if l.n > max_nodes {
        return Err(Error::Resource(format!(
            "dense eigendecomposition of {} nodes exceeds the limit of {max_nodes}; \
             use a sparse lambda2-only solver for graphs this large",
            l.n
        )));
    }
    let mut values = symmetric_eigenvalues(l.data.clone(), l.n, tol)?;
    values.sort_by(f64::total_cmp);
    let mean_eigenvalue = if l.n == 0 {
        0.0
    } else {
        values.iter().sum::<f64>() / l.n as f64
    };
    Ok(SpectralSummary {
        lambda2: values.get(1).copied(),
        eigenvalues: values,
        mean_eigenvalue,
    })
}

/// Algebraic connectivity: the second-smallest Laplacian eigenvalue.
pub fn lambda2(g: &Graph, tol: f64) -> Result<f64> {
    if g.node_count() < 2 {
        return Err(Error::arg("lambda2 needs at least two nodes"));
    }
    let summary = eigenvalues(&laplacian(g), tol)?;
    Ok(summary.eigenvalues[1])
}

/// Cyclic Jacobi eigenvalue iteration on a dense symmetric matrix.
///
/// Sweeps every off-diagonal pair `(p, q)` in row order, annihilating it
/// with a plane rotation, until the largest off-diagonal magnitude drops
/// below `tol` times the Frobenius norm. Returns the (unsorted) diagonal.
fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize, tol: f64) -> Result<Vec<f64>> {
    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * frobenius;
    let idx = |i: usize, j: usize| i * n + j;

    for _ in 0..MAX_SWEEPS {
        let mut off_max = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off_max = off_max.max(a[idx(p, q)].abs());
            }
        }
        if off_max <= threshold {
            return Ok((0..n).map(|i| a[idx(i, i)]).collect());
        }

        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                // t = tan(phi) for the smaller of the two annihilating angles.
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[idx(p, p)] = app - t * apq;
                a[idx(q, q)] = aqq + t * apq;
                a[idx(p, q)] = 0.0;
                a[idx(q, p)] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[idx(k, p)] = new_kp;
                    a[idx(p, k)] = new_kp;
                    a[idx(k, q)] = new_kq;
                    a[idx(q, k)] = new_kq;
                }
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}
