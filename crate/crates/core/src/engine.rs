//! Attack sweeps, throughput curves and the elasticity integral.
//!
//! A sweep removes entities from the intact graph in plan order, in equal
//! batches, re-routing from scratch after every batch. The x-axis is the
//! nominal percentage of the attacked entity still present: batch `k` of
//! `steps` sits at `100 - k * 100 * max_removal / steps`, while the number
//! actually removed is that target rounded to the nearest integer.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attacks::{AttackPlan, AttackStrategy, Removal};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::routing::{throughput, ThroughputMode, ThroughputSample};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Node,
    Link,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub percent_remaining: f64,
    pub throughput: f64,
}

impl CurvePoint {
    pub fn fraction_remaining(&self) -> f64 {
        self.percent_remaining / 100.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThroughputCurve {
    samples: Vec<CurvePoint>,
    pub mode: ThroughputMode,
    pub kind: EntityKind,
    /// Fraction of the x-axis covered, `(first - last) / 100`.
    pub width: f64,
    pub steps: usize,
    pub strategy: Option<AttackStrategy>,
    pub seed: Option<u64>,
    /// Samples where eq2 throughput exceeded the baseline and was capped at 1.
    pub clamp_events: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepParams {
    pub max_removal_fraction: f64,
    pub steps: usize,
    pub mode: ThroughputMode,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            max_removal_fraction: 0.8,
            steps: 80,
            mode: ThroughputMode::Eq2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElasticityResult {
    pub strategy: Option<AttackStrategy>,
    pub mode: ThroughputMode,
    pub trials: usize,
    pub seed: Option<u64>,
    pub steps: usize,
    pub max_removal_fraction: f64,
    /// Area under the curve with the x-axis in percent.
    pub area: f64,
    pub elasticity: f64,
    pub clamp_events: usize,
    /// Population standard deviation of per-trial elasticity.
    pub elasticity_std: f64,
}

/// Mean result over trials, with every curve that went into it.
#[derive(Clone, Debug)]
pub struct AveragedElasticity {
    pub result: ElasticityResult,
    pub mean_curve: ThroughputCurve,
    pub trial_plans: Vec<AttackPlan>,
    pub trial_curves: Vec<ThroughputCurve>,
    pub trial_results: Vec<ElasticityResult>,
}

impl ThroughputCurve {
    /// A curve from `(percent_remaining, throughput)` pairs. Percentages must
    /// be strictly decreasing within `[0, 100]` and throughput within `[0, 1]`.
    pub fn from_points(
        points: impl IntoIterator<Item = (f64, f64)>,
        mode: ThroughputMode,
        kind: EntityKind,
    ) -> Result<ThroughputCurve> {
        let samples: Vec<CurvePoint> = points
            .into_iter()
            .map(|(percent_remaining, throughput)| CurvePoint {
                percent_remaining,
                throughput,
            })
            .collect();
        if samples.is_empty() {
            return Err(Error::arg("curve needs at least one sample"));
        }
        if samples
            .windows(2)
            .any(|w| w[1].percent_remaining >= w[0].percent_remaining)
        {
            return Err(Error::arg("percent remaining must be strictly decreasing"));
        }
        if samples.iter().any(|p| {
            !(0.0..=100.0).contains(&p.percent_remaining) || !(0.0..=1.0).contains(&p.throughput)
        }) {
            return Err(Error::arg("curve sample out of range"));
        }
        let width =
            (samples[0].percent_remaining - samples[samples.len() - 1].percent_remaining) / 100.0;
        Ok(ThroughputCurve {
            steps: samples.len() - 1,
            samples,
            mode,
            kind,
            width,
            strategy: None,
            seed: None,
            clamp_events: 0,
        })
    }

    pub fn samples(&self) -> &[CurvePoint] {
        &self.samples
    }

    /// Header `percent_remaining,throughput`, six decimals, descending percent.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("percent_remaining,throughput\n");
        for p in &self.samples {
            let _ = writeln!(out, "{:.6},{:.6}", p.percent_remaining, p.throughput);
        }
        out
    }
}

/// Runs one attack sweep.
///
/// Removes `round(k * max_removal_fraction * N / steps)` entities cumulatively
/// at batch `k`, where `N` is the node or link count matching the plan, and
/// records throughput normalized against the intact graph. Sample 0 is the
/// intact graph at (100%, 1).
pub fn sweep(
    g: &Graph,
    plan: &AttackPlan,
    max_removal_fraction: f64,
    steps: usize,
    mode: ThroughputMode,
) -> Result<ThroughputCurve> {
    if !(max_removal_fraction > 0.0 && max_removal_fraction <= 1.0) {
        return Err(Error::arg(format!(
            "max removal fraction must be in (0, 1], got {max_removal_fraction}"
        )));
    }
    let (kind, total) = match plan.removal {
        Removal::Node(_) => (EntityKind::Node, g.node_count()),
        Removal::Link(_) => (EntityKind::Link, g.edge_count()),
    };
    let target = |k: usize| -> usize {
        let t = (k as f64 * max_removal_fraction * total as f64 / steps as f64).round() as usize;
        t.min(total)
    };
    if steps > 0 && plan.len() < target(steps) {
        return Err(Error::arg(format!(
            "plan removes {} entities but the sweep needs {}",
            plan.len(),
            target(steps)
        )));
    }

    let baseline = throughput(g);
    let step_width = 100.0 * max_removal_fraction / steps as f64;
    let mut samples = vec![CurvePoint {
        percent_remaining: 100.0,
        throughput: 1.0,
    }];
    let mut clamp_events = 0;
    let mut removed = 0;
    let mut last = 1.0;
    for k in 1..=steps {
        let t = target(k);
        if t != removed || k == 1 {
            removed = t;
            let sample = degraded_throughput(g, plan, removed)?;
            let mut tp = sample.normalized(&baseline, mode);
            if tp > 1.0 {
                clamp_events += 1;
                tp = 1.0;
            }
            last = tp;
        }
        samples.push(CurvePoint {
            percent_remaining: 100.0 - k as f64 * step_width,
            throughput: last,
        });
    }
    Ok(ThroughputCurve {
        samples,
        mode,
        kind,
        width: if steps == 0 {
            0.0
        } else {
            max_removal_fraction
        },
        steps,
        strategy: Some(plan.strategy),
        seed: plan.seed,
        clamp_events,
    })
}

fn degraded_throughput(g: &Graph, plan: &AttackPlan, removed: usize) -> Result<ThroughputSample> {
    let current = match &plan.removal {
        Removal::Node(order) => g.remove_nodes(&order[..removed])?.graph,
        Removal::Link(order) => g.remove_links(&order[..removed])?,
    };
    Ok(throughput(&current))
}

/// Trapezoidal area with the x-axis in percent, so a constant-1 curve over
/// 80 percentage points has area 80.
pub fn area_under_curve(c: &ThroughputCurve) -> f64 {
    c.samples
        .windows(2)
        .map(|w| {
            (w[0].percent_remaining - w[1].percent_remaining) * (w[0].throughput + w[1].throughput)
                / 2.0
        })
        .sum()
}

/// Normalizes a percent-unit area by the swept fraction: `area / (100 * width)`.
pub fn normalize_area(area: f64, width: f64) -> f64 {
    area / (100.0 * width)
}

/// Elasticity of a single curve, `E = area / (100 * width)`.
pub fn elasticity(c: &ThroughputCurve) -> Result<ElasticityResult> {
    if c.width.is_nan() || c.width <= 0.0 {
        return Err(Error::arg("elasticity needs a sweep of nonzero width"));
    }
    let area = area_under_curve(c);
    Ok(ElasticityResult {
        strategy: c.strategy,
        mode: c.mode,
        trials: 1,
        seed: c.seed,
        steps: c.steps,
        max_removal_fraction: c.width,
        area,
        elasticity: normalize_area(area, c.width),
        clamp_events: c.clamp_events,
        elasticity_std: 0.0,
    })
}

/// Runs `trials` independent sweeps (trial `i` seeded with `seed + i`) and
/// averages them. Targeted strategies are deterministic and always run once.
///
/// Trials run on the current rayon pool; means are summed in trial order so
/// the result does not depend on the number of workers.
pub fn averaged_elasticity(
    g: &Graph,
    strategy: AttackStrategy,
    trials: usize,
    seed: u64,
    params: SweepParams,
) -> Result<AveragedElasticity> {
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    let trials = if strategy.is_stochastic() { trials } else { 1 };
    let total = if strategy.targets_links() {
        g.edge_count()
    } else {
        g.node_count()
    };
    let count = ((params.max_removal_fraction * total as f64).round() as usize).min(total);

    let (trial_plans, trial_curves): (Vec<_>, Vec<_>) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let plan = strategy.plan(g, count, seed.wrapping_add(i as u64))?;
            let curve = sweep(
                g,
                &plan,
                params.max_removal_fraction,
                params.steps,
                params.mode,
            )?;
            Ok((plan, curve))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    let trial_results = trial_curves
        .iter()
        .map(elasticity)
        .collect::<Result<Vec<_>>>()?;

    let t = trials as f64;
    let mean_e = trial_results.iter().map(|r| r.elasticity).sum::<f64>() / t;
    let mean_area = trial_results.iter().map(|r| r.area).sum::<f64>() / t;
    let var = trial_results
        .iter()
        .map(|r| (r.elasticity - mean_e).powi(2))
        .sum::<f64>()
        / t;
    let clamp_events = trial_curves.iter().map(|c| c.clamp_events).sum();

    let mut mean_curve = trial_curves[0].clone();
    for (i, p) in mean_curve.samples.iter_mut().enumerate() {
        p.throughput = trial_curves
            .iter()
            .map(|c| c.samples[i].throughput)
            .sum::<f64>()
            / t;
    }
    mean_curve.seed = Some(seed);
    mean_curve.clamp_events = clamp_events;

    let result = ElasticityResult {
        strategy: Some(strategy),
        mode: params.mode,
        trials,
        seed: Some(seed),
        steps: params.steps,
        max_removal_fraction: params.max_removal_fraction,
        area: mean_area,
        elasticity: mean_e,
        clamp_events,
        elasticity_std: var.sqrt(),
    };
    Ok(AveragedElasticity {
        result,
        mean_curve,
        trial_plans,
        trial_curves,
        trial_results,
    })
}
