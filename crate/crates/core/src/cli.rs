//! Command-line front end. The binary only parses arguments and calls [`run`].

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::attacks::AttackStrategy;
use crate::engine::{averaged_elasticity, SweepParams};
use crate::error::{Error, Result};
use crate::graph::{read_edge_list_file, to_edge_list, Graph, TopologySpec};
use crate::metrics::{assortativity, degree_histogram, summarize, Assortativity};
use crate::routing::ThroughputMode;
use crate::spectral::{self, DEFAULT_MAX_NODES, DEFAULT_TOLERANCE};

#[derive(Debug, Parser)]
#[command(
    name = "elasticity",
    version,
    about = "Network robustness under node and link attacks"
)]
pub struct Cli {
    /// Worker threads for routing and trials (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep an attack and report the elasticity of the throughput curve.
    Elasticity(ElasticityArgs),
    /// Laplacian spectrum and algebraic connectivity.
    Spectral(SpectralArgs),
    /// Assortativity, size and degree summary.
    Metrics(MetricsArgs),
    /// Node degree distribution as CSV.
    Ndd(NddArgs),
    /// Write a synthetic topology as a canonical edge list.
    Generate(GenerateArgs),
    /// Elasticity against assortativity for several graphs, as CSV.
    Scatter(ScatterArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Edge-list file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generator spec such as `wheel:6`, `grid:32:32` or `ba:1000:3:3`.
    #[arg(long)]
    pub generate: Option<TopologySpec>,
}

#[derive(Debug, Clone, Args)]
pub struct AttackArgs {
    #[arg(long, default_value = "degree")]
    pub attack: AttackStrategy,
    #[arg(long, default_value = "eq2")]
    pub mode: ThroughputMode,
    /// Trials to average for random attacks; targeted attacks run once.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 80)]
    pub steps: usize,
    #[arg(long = "max-removal", default_value_t = 0.8)]
    pub max_removal_fraction: f64,
}

#[derive(Debug, Args)]
pub struct ElasticityArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub attack: AttackArgs,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Name used in the summary line and default output file names.
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Curve CSV path (default `<out-dir>/<label>.curve.csv`).
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Result JSON path (default `<out-dir>/<label>.elasticity.json`).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Also write every trial's removal order as a JSON array, for replay.
    #[arg(long)]
    pub plans: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Off-diagonal convergence tolerance, relative to the Frobenius norm.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    pub max_nodes: usize,
    /// Include the full sorted spectrum.
    #[arg(long)]
    pub full: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NddArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub spec: TopologySpec,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub generate: Vec<TopologySpec>,
    #[command(flatten)]
    pub attack: AttackArgs,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Everything that determines a run's numbers; echoed into JSON outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub input: Option<String>,
    pub generate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attack: Option<AttackStrategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ThroughputMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_removal_fraction: Option<f64>,
}

impl RunConfig {
    fn for_source(source: &Source, seed: u64) -> RunConfig {
        RunConfig {
            input: source.input.as_ref().map(|p| p.display().to_string()),
            generate: source.generate.as_ref().map(ToString::to_string),
            attack: None,
            mode: None,
            trials: None,
            seed,
            steps: None,
            max_removal_fraction: None,
        }
    }

    fn with_attack(mut self, a: &AttackArgs) -> RunConfig {
        self.attack = Some(a.attack);
        self.mode = Some(a.mode);
        self.trials = Some(if a.attack.is_stochastic() {
            a.trials
        } else {
            1
        });
        self.steps = Some(a.steps);
        self.max_removal_fraction = Some(a.max_removal_fraction);
        self
    }
}

impl AttackArgs {
    fn validate(&self) -> Result<SweepParams> {
        if self.trials == 0 {
            return Err(Error::arg("--trials must be at least 1"));
        }
        if !(self.max_removal_fraction > 0.0 && self.max_removal_fraction <= 1.0) {
            return Err(Error::arg("--max-removal must be in (0, 1]"));
        }
        if self.steps == 0 {
            return Err(Error::arg("--steps must be at least 1"));
        }
        Ok(SweepParams {
            max_removal_fraction: self.max_removal_fraction,
            steps: self.steps,
            mode: self.mode,
        })
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let work = move || match cli.command {
        Command::Elasticity(a) => cmd_elasticity(&a),
        Command::Spectral(a) => cmd_spectral(&a),
        Command::Metrics(a) => cmd_metrics(&a),
        Command::Ndd(a) => cmd_ndd(&a),
        Command::Generate(a) => cmd_generate(&a),
        Command::Scatter(a) => cmd_scatter(&a),
    };
    match cli.jobs {
        Some(0) => Err(Error::arg("--jobs must be at least 1")),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Resource(e.to_string()))?
            .install(work),
        None => work(),
    }
}

fn load(source: &Source, seed: u64) -> Result<Graph> {
    match (&source.input, &source.generate) {
        (Some(path), None) => read_edge_list_file(path).map_err(|e| match e {
            Error::Io(io) => Error::Io(io::Error::new(
                io.kind(),
                format!("{}: {io}", path.display()),
            )),
            Error::Parse { line, msg } => Error::Parse {
                line,
                msg: format!("{}: {msg}", path.display()),
            },
            other => other,
        }),
        (None, Some(spec)) => spec.generate(seed),
        _ => Err(Error::arg(
            "exactly one of --input or --generate is required",
        )),
    }
}

fn default_label(source: &Source) -> String {
    match (&source.input, &source.generate) {
        (Some(path), _) => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".to_owned()),
        (_, Some(spec)) => spec.to_string().replace(':', "_"),
        _ => "graph".to_owned(),
    }
}

/// Writes through a temporary sibling and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::arg(format!("bad output path {}", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(output: Option<&Path>, contents: &str) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, contents),
        None => {
            io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

/// Rounds to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

pub fn cmd_elasticity(a: &ElasticityArgs) -> Result<()> {
    let params = a.attack.validate()?;
    let g = load(&a.source, a.seed)?;
    let config = RunConfig::for_source(&a.source, a.seed).with_attack(&a.attack);
    let label = a.label.clone().unwrap_or_else(|| default_label(&a.source));

    let run = averaged_elasticity(&g, a.attack.attack, a.attack.trials, a.seed, params)?;
    let r = &run.result;
    let mut result = serde_json::to_value(r).expect("result serializes");
    let obj = result.as_object_mut().expect("result is an object");
    obj.insert("label".into(), json!(label));
    obj.insert("n".into(), json!(g.node_count()));
    obj.insert("m".into(), json!(g.edge_count()));
    obj.insert(
        "config".into(),
        serde_json::to_value(&config).expect("config serializes"),
    );

    let curve_path = a
        .curve
        .clone()
        .unwrap_or_else(|| a.out_dir.join(format!("{label}.curve.csv")));
    let json_path = a
        .json
        .clone()
        .unwrap_or_else(|| a.out_dir.join(format!("{label}.elasticity.json")));
    write_atomic(&curve_path, &run.mean_curve.to_csv())?;
    write_atomic(&json_path, &to_json(&result))?;
    if let Some(path) = &a.plans {
        let plans = serde_json::to_value(&run.trial_plans).expect("plans serialize");
        write_atomic(path, &to_json(&plans))?;
    }
    println!("{label} area={:.6} E={:.6}", r.area, r.elasticity);
    Ok(())
}

pub fn cmd_spectral(a: &SpectralArgs) -> Result<()> {
    let g = load(&a.source, a.seed)?;
    let summary = spectral::eigenvalues_with_limit(&spectral::laplacian(&g), a.tol, a.max_nodes)?;
    let mut out = json!({
        "n": g.node_count(),
        "m": g.edge_count(),
        "lambda2": summary.lambda2.map(|l| round_significant(l, 6)),
        "mean_eigenvalue": summary.mean_eigenvalue,
    });
    if a.full {
        out["spectrum"] = json!(summary.eigenvalues);
    }
    out["config"] = serde_json::to_value(RunConfig::for_source(&a.source, a.seed)).expect("config");
    emit(a.output.as_deref(), &to_json(&out))
}

pub fn cmd_metrics(a: &MetricsArgs) -> Result<()> {
    let g = load(&a.source, a.seed)?;
    let mut out = serde_json::to_value(summarize(&g)?).expect("summary serializes");
    out["config"] = serde_json::to_value(RunConfig::for_source(&a.source, a.seed)).expect("config");
    emit(a.output.as_deref(), &to_json(&out))
}

pub fn cmd_ndd(a: &NddArgs) -> Result<()> {
    let g = load(&a.source, a.seed)?;
    emit(a.output.as_deref(), &degree_histogram(&g).to_csv())
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<()> {
    let g = a.spec.generate(a.seed)?;
    emit(a.output.as_deref(), &to_edge_list(&g))
}

/// `graph_label,r,E` rows; labels follow the `name_r` legend convention.
pub fn cmd_scatter(a: &ScatterArgs) -> Result<()> {
    let params = a.attack.validate()?;
    let mut sources: Vec<Source> = a
        .input
        .iter()
        .map(|p| Source {
            input: Some(p.clone()),
            generate: None,
        })
        .collect();
    sources.extend(a.generate.iter().map(|s| Source {
        input: None,
        generate: Some(s.clone()),
    }));
    if sources.is_empty() {
        return Err(Error::arg(
            "scatter needs at least one --input or --generate",
        ));
    }
    let mut out = String::from("graph_label,r,E\n");
    for source in &sources {
        let g = load(source, a.seed)?;
        let r = if g.edge_count() == 0 {
            Assortativity::Undefined
        } else {
            assortativity(&g)?
        };
        let run = averaged_elasticity(&g, a.attack.attack, a.attack.trials, a.seed, params)?;
        let (label, r_col) = match r {
            Assortativity::Defined(v) => (
                format!("{}_{v:.3}", default_label(source)),
                format!("{v:.6}"),
            ),
            Assortativity::Undefined => (
                format!("{}_undefined", default_label(source)),
                "undefined".into(),
            ),
        };
        out.push_str(&format!("{label},{r_col},{:.6}\n", run.result.elasticity));
    }
    emit(a.output.as_deref(), &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(round_significant(2.381966011250105, 6), 2.38197);
        assert_eq!(round_significant(0.000123456789, 3), 0.000123);
        assert_eq!(round_significant(0.0, 6), 0.0);
    }

    #[test]
    fn parses_elasticity_flags() {
        let cli = Cli::try_parse_from([
            "elasticity",
            "elasticity",
            "--generate",
            "star:5",
            "--attack",
            "degree",
            "--steps",
            "4",
            "--mode",
            "flow-ratio",
        ])
        .unwrap();
        let Command::Elasticity(a) = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(a.source.generate, Some(TopologySpec::Star(5)));
        assert_eq!(a.attack.steps, 4);
        assert_eq!(a.attack.mode, ThroughputMode::FlowRatio);
        assert_eq!(a.attack.max_removal_fraction, 0.8);
        assert_eq!(a.seed, 42);
    }

    #[test]
    fn requires_exactly_one_source() {
        assert!(Cli::try_parse_from(["elasticity", "metrics"]).is_err());
        assert!(Cli::try_parse_from([
            "elasticity",
            "metrics",
            "--input",
            "g.txt",
            "--generate",
            "star:5"
        ])
        .is_err());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Cli::try_parse_from(["elasticity", "elasticity", "--generate", "hex:3"]).is_err());
        assert!(Cli::try_parse_from([
            "elasticity",
            "elasticity",
            "--generate",
            "star:5",
            "--attack",
            "betweenness"
        ])
        .is_err());
    }

    #[test]
    fn config_echo_marks_targeted_as_single_trial() {
        let a = AttackArgs {
            attack: AttackStrategy::Degree,
            mode: ThroughputMode::Eq2,
            trials: 20,
            steps: 80,
            max_removal_fraction: 0.8,
        };
        let src = Source {
            input: None,
            generate: Some(TopologySpec::Wheel(6)),
        };
        let cfg = RunConfig::for_source(&src, 42).with_attack(&a);
        let v = serde_json::to_value(cfg).unwrap();
        assert_eq!(v["trials"], 1);
        assert_eq!(v["generate"], "wheel:6");
        assert_eq!(v["attack"], "degree");
    }
}
