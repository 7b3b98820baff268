//! Network robustness toolkit.
//!
//! The central quantity is *elasticity*: the area under the curve of
//! normalized shortest-path throughput against the fraction of the network
//! still standing while nodes (or links) are removed by an attack. A value of
//! 1 means throughput never degraded over the swept range, 0 means it
//! collapsed immediately.
//!
//! Alongside it the crate exposes the usual companion diagnostics:
//! Laplacian spectrum and algebraic connectivity, degree assortativity and
//! node degree distributions, plus a handful of seeded topology generators.
//!
//! ```
//! use elasticity::{engine, Graph, ThroughputMode};
//! use elasticity::attacks::plan_targeted_degree;
//!
//! let g = Graph::wheel(6).unwrap();
//! let plan = plan_targeted_degree(&g, 1, true).unwrap();
//! let curve = engine::sweep(&g, &plan, 1.0 / 6.0, 1, ThroughputMode::FlowRatio).unwrap();
//! assert!((curve.samples()[1].throughput - 20.0 / 30.0).abs() < 1e-12);
//! ```

pub mod attacks;
pub mod cli;
pub mod engine;
mod error;
pub mod graph;
pub mod metrics;
pub mod routing;
pub mod spectral;

pub use attacks::{AttackPlan, AttackStrategy};
pub use engine::{ElasticityResult, ThroughputCurve};
pub use error::{Error, Result};
pub use graph::{ComponentLabeling, Graph, NodeId, TopologySpec};
pub use routing::{FlowAssignment, ThroughputMode, ThroughputSample};
