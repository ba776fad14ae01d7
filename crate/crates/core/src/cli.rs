//! Command-line front end: `train`, `run`, `sweep` and `report`.
//!
//! Runs are described by a flat TOML manifest:
//!
//! ```toml
//! schema_version = 1
//! master_seed = 42
//! domain = "cartpole"
//! agent_modes = ["frozen", "napping"]
//! trials = 10
//! novelty = "middle_half"      # sample | identity | middle_half (cartpole only)
//! output_dir = "results"       # relative to the manifest's directory
//! # policy = "cartpole.json"   # trained on the fly when absent
//! # train_seed = 1             # defaults to master_seed
//! # grid_size = 8              # sweep resolution
//! ```
//!
//! `run` draws one novelty per trial. `sweep` instead walks a fixed grid and
//! runs `trials` trials per grid cell: every CartPole parameter at `grid_size`
//! evenly spaced values, a `grid_size x grid_size` MountainCar force/gravity
//! grid, or all eight CrossRoad layout bases.
//!
//! Both write `episodes.csv`, `trials.csv`, the policy used and one principle
//! store snapshot per NAPPING trial. `NAPPING_OUTPUT_DIR` overrides the output
//! directory and `NAPPING_WORKERS` bounds the worker pool; neither affects the
//! bytes written.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseline::{self, BaselineError, BaselinePolicy, TrainConfig};
use crate::envs::{
    self, CartPoleParam, CartPoleParams, CrossRoadNovelty, Domain, EnvParams, TerminalCause,
};
use crate::trial::{self, AgentMode, EpisodeRecord, Summary, TrialConfig, TrialRecord, LAST10};

pub const SCHEMA_VERSION: u32 = 1;
pub const OUTPUT_DIR_ENV: &str = "NAPPING_OUTPUT_DIR";
pub const WORKERS_ENV: &str = "NAPPING_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error("{0}")]
    TargetMiss(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::TargetMiss(_) => 3,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "napping", version, about = "Novelty adaptation principles lab")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a baseline policy on the default environment and save its weights.
    Train {
        domain: Domain,
        /// TOML training config; domain defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, short)]
        out: PathBuf,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run trials with one sampled novelty per trial.
    Run { manifest: PathBuf },
    /// Run trials over a fixed novelty grid.
    Sweep { manifest: PathBuf },
    /// Summarize a results directory into curves.csv and summary.csv.
    Report { results_dir: PathBuf },
}

/// Entry point shared by the binary and tests; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Train {
            domain,
            config,
            out,
            seed,
        } => cmd_train(domain, config.as_deref(), &out, seed).map(|p| {
            println!(
                "{domain}: validation score {:.3}, weights written to {}",
                p.meta.train_score,
                out.display()
            );
        }),
        Command::Run { manifest } => cmd_run(&manifest).map(|o| print_outputs(&o)),
        Command::Sweep { manifest } => cmd_sweep(&manifest).map(|o| print_outputs(&o)),
        Command::Report { results_dir } => cmd_report(&results_dir).map(|r| print!("{}", r.table)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn print_outputs(o: &RunOutputs) {
    println!(
        "{} trial records, {} episode rows written to {}",
        o.records.len(),
        o.episode_rows,
        o.output_dir.display()
    );
}

pub fn cmd_train(
    domain: Domain,
    config_path: Option<&Path>,
    out: &Path,
    seed: Option<u64>,
) -> Result<BaselinePolicy, CliError> {
    let mut config = match config_path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!(
                    "cannot read training config {}: {e}",
                    path.display()
                ))
            })?;
            toml::from_str::<TrainConfig>(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => TrainConfig::default_for(domain),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let policy = train_policy(domain, &config)?;
    baseline::save(&policy, out).map_err(runtime)?;
    Ok(policy)
}

fn train_policy(domain: Domain, config: &TrainConfig) -> Result<BaselinePolicy, CliError> {
    match baseline::train(&EnvParams::default_for(domain), config) {
        Ok(p) => Ok(p),
        Err(BaselineError::TargetUnmet { score, target, .. }) => Err(CliError::TargetMiss(
            format!("{domain} baseline missed its target: {score:.3} < {target}"),
        )),
        Err(BaselineError::InvalidConfig(m)) => Err(CliError::Usage(m)),
        Err(e) => Err(runtime(e)),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoveltySpec {
    /// The domain's full novelty distribution.
    #[default]
    Sample,
    /// Post-novelty parameters equal the defaults.
    Identity,
    /// CartPole: one parameter from the middle half of its range.
    MiddleHalf,
}

fn default_trials() -> usize {
    1
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_grid_size() -> usize {
    8
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub schema_version: u32,
    pub master_seed: u64,
    pub domain: Domain,
    pub agent_modes: Vec<AgentMode>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub novelty: NoveltySpec,
    #[serde(default)]
    pub policy: Option<PathBuf>,
    #[serde(default)]
    pub train_seed: Option<u64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
}

impl RunManifest {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let m: RunManifest =
            toml::from_str(text).map_err(|e| CliError::Usage(format!("manifest: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read manifest {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Usage(format!("manifest: {m}")));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.agent_modes.is_empty() {
            return bad("agent_modes is empty".into());
        }
        for (i, m) in self.agent_modes.iter().enumerate() {
            if self.agent_modes[..i].contains(m) {
                return bad(format!("agent mode {m} listed twice"));
            }
        }
        if self.novelty == NoveltySpec::MiddleHalf && self.domain != Domain::CartPole {
            return bad("novelty = \"middle_half\" applies to cartpole only".into());
        }
        if self.grid_size == 0 {
            return bad("grid_size must be at least 1".into());
        }
        Ok(())
    }
}

/// One novelty with the seed its trials run under.
#[derive(Clone, Debug, PartialEq)]
pub struct PlannedTrial {
    pub trial_id: u64,
    pub novelty: EnvParams,
    pub seed: u64,
}

/// Per-trial generator: stream `trial_id` of the master seed.
fn trial_rng(master_seed: u64, trial_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_id);
    rng
}

/// Novelties and seeds for `run`.
pub fn plan_run(m: &RunManifest) -> Vec<PlannedTrial> {
    (0..m.trials as u64)
        .map(|trial_id| {
            let mut rng = trial_rng(m.master_seed, trial_id);
            let novelty = match m.novelty {
                NoveltySpec::Sample => envs::sample_novelty(m.domain, &mut rng),
                NoveltySpec::Identity => EnvParams::default_for(m.domain),
                NoveltySpec::MiddleHalf => trial::cartpole_middle_half(&mut rng),
            };
            PlannedTrial {
                trial_id,
                novelty,
                seed: rng.random(),
            }
        })
        .collect()
}

/// Grid cells for `sweep`; CrossRoad cells are layout bases whose noise is
/// drawn per trial.
enum Cell {
    Fixed(EnvParams),
    Base(CrossRoadNovelty),
}

fn sweep_cells(domain: Domain, n: usize) -> Vec<Cell> {
    match domain {
        Domain::CartPole => CartPoleParam::ALL
            .iter()
            .flat_map(|&param| {
                let (lo, hi) = param.range();
                (0..n).map(move |i| {
                    let v = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
                    Cell::Fixed(EnvParams::CartPole(
                        CartPoleParams::default().with(param, v),
                    ))
                })
            })
            .collect(),
        Domain::MountainCar => trial::mountaincar_grid(n)
            .into_iter()
            .map(Cell::Fixed)
            .collect(),
        Domain::CrossRoad => CrossRoadNovelty::ALL
            .iter()
            .map(|&b| Cell::Base(b))
            .collect(),
    }
}

/// Novelties and seeds for `sweep`: `trials` trials per cell, cell-major.
pub fn plan_sweep(m: &RunManifest) -> Vec<PlannedTrial> {
    let cells = sweep_cells(m.domain, m.grid_size);
    let mut out = Vec::with_capacity(cells.len() * m.trials);
    for (c, cell) in cells.iter().enumerate() {
        for k in 0..m.trials {
            let trial_id = (c * m.trials + k) as u64;
            let mut rng = trial_rng(m.master_seed, trial_id);
            let novelty = match cell {
                Cell::Fixed(p) => p.clone(),
                Cell::Base(b) => EnvParams::CrossRoad(envs::crossroad_novelty(*b, &mut rng)),
            };
            out.push(PlannedTrial {
                trial_id,
                novelty,
                seed: rng.random(),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRow {
    pub trial_id: u64,
    pub domain: Domain,
    pub agent_mode: AgentMode,
    pub novelty_json: String,
    pub episode_index: i32,
    pub reward: f64,
    pub steps: u32,
    pub detected: bool,
    pub principles_open: usize,
    pub principles_closed: usize,
    pub terminal_cause: TerminalCause,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial_id: u64,
    pub domain: Domain,
    pub agent_mode: AgentMode,
    pub novelty_json: String,
    pub seed: u64,
    pub post_median_reward: f64,
    pub post_last10_mean: f64,
    pub failed: bool,
}

#[derive(Debug)]
pub struct RunOutputs {
    pub output_dir: PathBuf,
    /// `(trial_id, record)` in output order.
    pub records: Vec<(u64, TrialRecord)>,
    pub episode_rows: usize,
}

pub fn cmd_run(manifest_path: &Path) -> Result<RunOutputs, CliError> {
    let m = RunManifest::load(manifest_path)?;
    execute(&m, manifest_dir(manifest_path), &plan_run(&m))
}

pub fn cmd_sweep(manifest_path: &Path) -> Result<RunOutputs, CliError> {
    let m = RunManifest::load(manifest_path)?;
    execute(&m, manifest_dir(manifest_path), &plan_sweep(&m))
}

fn manifest_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn worker_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got `{v}`"
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(runtime)
}

/// Runs every (planned trial, agent mode) pair and writes the results.
pub fn execute(
    m: &RunManifest,
    base: &Path,
    plan: &[PlannedTrial],
) -> Result<RunOutputs, CliError> {
    let output_dir = match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => resolve(base, &m.output_dir),
    };
    let policy = match &m.policy {
        Some(p) => {
            let path = resolve(base, p);
            let policy = baseline::load(&path)
                .map_err(|e| CliError::Usage(format!("policy {}: {e}", path.display())))?;
            if policy.domain != m.domain {
                return Err(CliError::Usage(format!(
                    "policy {} is for {}, manifest runs {}",
                    path.display(),
                    policy.domain,
                    m.domain
                )));
            }
            policy
        }
        None => {
            let seed = m.train_seed.unwrap_or(m.master_seed);
            train_policy(
                m.domain,
                &TrainConfig {
                    seed,
                    ..TrainConfig::default_for(m.domain)
                },
            )?
        }
    };

    let jobs: Vec<(u64, TrialConfig)> = plan
        .iter()
        .flat_map(|t| {
            m.agent_modes.iter().map(move |&mode| {
                (
                    t.trial_id,
                    TrialConfig::new(mode, t.novelty.clone(), t.seed),
                )
            })
        })
        .collect();
    let configs: Vec<TrialConfig> = jobs.iter().map(|(_, c)| c.clone()).collect();
    let records = worker_pool()?
        .install(|| trial::run_trials(&configs, &policy))
        .map_err(runtime)?;
    let records: Vec<(u64, TrialRecord)> = jobs.iter().map(|(id, _)| *id).zip(records).collect();

    let episode_rows = write_results(&output_dir, &policy, &records)?;
    Ok(RunOutputs {
        output_dir,
        records,
        episode_rows,
    })
}

fn trial_row(trial_id: u64, r: &TrialRecord) -> TrialRow {
    let post = r.post_rewards();
    let last = r.post_window(LAST10.0, LAST10.1);
    TrialRow {
        trial_id,
        domain: r.config.domain,
        agent_mode: r.config.agent_mode,
        novelty_json: r.novelty().to_json(),
        seed: r.config.seed,
        post_median_reward: trial::median(&post).unwrap_or(f64::NAN),
        post_last10_mean: last.iter().sum::<f64>() / last.len().max(1) as f64,
        failed: trial::failed(r),
    }
}

fn write_results(
    dir: &Path,
    policy: &BaselinePolicy,
    records: &[(u64, TrialRecord)],
) -> Result<usize, CliError> {
    let io =
        |p: &Path, e: &dyn std::fmt::Display| CliError::Runtime(format!("{}: {e}", p.display()));
    let stores = dir.join("stores");
    fs::create_dir_all(&stores).map_err(|e| io(&stores, &e))?;

    let episodes_path = dir.join("episodes.csv");
    let mut episodes =
        csv::Writer::from_path(&episodes_path).map_err(|e| io(&episodes_path, &e))?;
    let trials_path = dir.join("trials.csv");
    let mut trials = csv::Writer::from_path(&trials_path).map_err(|e| io(&trials_path, &e))?;
    let mut rows = 0;
    for (trial_id, r) in records {
        let novelty_json = r.novelty().to_json();
        for e in &r.episodes {
            episodes
                .serialize(EpisodeRow {
                    trial_id: *trial_id,
                    domain: r.config.domain,
                    agent_mode: r.config.agent_mode,
                    novelty_json: novelty_json.clone(),
                    episode_index: e.episode_index,
                    reward: e.total_reward,
                    steps: e.steps,
                    detected: e.detected,
                    principles_open: e.principles_open,
                    principles_closed: e.principles_closed,
                    terminal_cause: e.terminal_cause,
                })
                .map_err(|e| io(&episodes_path, &e))?;
            rows += 1;
        }
        trials
            .serialize(trial_row(*trial_id, r))
            .map_err(|e| io(&trials_path, &e))?;
        if let Some(snap) = &r.store {
            let path = stores.join(format!("{trial_id}-{}.json", r.config.agent_mode));
            let text = serde_json::to_string_pretty(snap).map_err(|e| io(&path, &e))?;
            fs::write(&path, text).map_err(|e| io(&path, &e))?;
        }
    }
    episodes.flush().map_err(|e| io(&episodes_path, &e))?;
    trials.flush().map_err(|e| io(&trials_path, &e))?;
    let policy_path = dir.join("policy.json");
    baseline::save(policy, &policy_path).map_err(|e| io(&policy_path, &e))?;
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
struct CurveRow {
    agent_mode: AgentMode,
    episode_index: i32,
    median_reward: f64,
    mean_reward: f64,
    trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
struct SummaryRow {
    agent_mode: AgentMode,
    trials: usize,
    first5_median: f64,
    first5_mean: f64,
    last10_median: f64,
    last10_mean: f64,
    failed: usize,
    solve_rate: f64,
    mean_principles_open: f64,
    mean_principles_closed: f64,
    uncovered_updates: u64,
}

#[derive(Debug)]
pub struct Report {
    pub summary: Summary,
    /// Human-readable rendering of `summary`.
    pub table: String,
}

/// Rebuilds trial records from `episodes.csv` and `trials.csv`.
pub fn load_results(dir: &Path) -> Result<Vec<TrialRecord>, CliError> {
    let episodes_path = dir.join("episodes.csv");
    if !episodes_path.is_file() {
        return Err(CliError::Usage(format!(
            "no data: {} has no episodes.csv",
            dir.display()
        )));
    }
    let bad =
        |p: &Path, e: &dyn std::fmt::Display| CliError::Runtime(format!("{}: {e}", p.display()));
    let trials_path = dir.join("trials.csv");
    let mut seeds = BTreeMap::new();
    if trials_path.is_file() {
        let mut rdr = csv::Reader::from_path(&trials_path).map_err(|e| bad(&trials_path, &e))?;
        for row in rdr.deserialize::<TrialRow>() {
            let row = row.map_err(|e| bad(&trials_path, &e))?;
            seeds.insert((row.trial_id, row.agent_mode), row.seed);
        }
    }

    let mut grouped: BTreeMap<(u64, AgentMode), (String, Vec<EpisodeRecord>)> = BTreeMap::new();
    let mut order = Vec::new();
    let mut rdr = csv::Reader::from_path(&episodes_path).map_err(|e| bad(&episodes_path, &e))?;
    for row in rdr.deserialize::<EpisodeRow>() {
        let row = row.map_err(|e| bad(&episodes_path, &e))?;
        let key = (row.trial_id, row.agent_mode);
        let entry = grouped.entry(key).or_insert_with(|| {
            order.push(key);
            (row.novelty_json.clone(), Vec::new())
        });
        entry.1.push(EpisodeRecord {
            episode_index: row.episode_index,
            total_reward: row.reward,
            steps: row.steps,
            detected: row.detected,
            principles_open: row.principles_open,
            principles_closed: row.principles_closed,
            terminal_cause: row.terminal_cause,
        });
    }
    if order.is_empty() {
        return Err(CliError::Usage(format!(
            "no data: {} is empty",
            episodes_path.display()
        )));
    }

    order
        .into_iter()
        .map(|key| {
            let (novelty_json, episodes) = grouped.remove(&key).expect("grouped key");
            let novelty: EnvParams =
                serde_json::from_str(&novelty_json).map_err(|e| bad(&episodes_path, &e))?;
            let seed = seeds.get(&key).copied().unwrap_or(0);
            let store_path = dir.join("stores").join(format!("{}-{}.json", key.0, key.1));
            let store = match fs::read_to_string(&store_path) {
                Ok(text) => Some(serde_json::from_str(&text).map_err(|e| bad(&store_path, &e))?),
                Err(_) => None,
            };
            let uncovered_updates = store
                .as_ref()
                .map_or(0, |s: &crate::napping::StoreSnapshot| s.uncovered_hits);
            Ok(TrialRecord {
                config: TrialConfig::new(key.1, novelty, seed),
                episodes,
                uncovered_updates,
                store,
                wall_time_ms: 0.0,
            })
        })
        .collect()
}

pub fn cmd_report(dir: &Path) -> Result<Report, CliError> {
    let records = load_results(dir)?;
    let summary = trial::aggregate(&records).map_err(runtime)?;
    let io =
        |p: &Path, e: &dyn std::fmt::Display| CliError::Runtime(format!("{}: {e}", p.display()));

    let curves_path = dir.join("curves.csv");
    let mut curves = csv::Writer::from_path(&curves_path).map_err(|e| io(&curves_path, &e))?;
    let summary_path = dir.join("summary.csv");
    let mut rows = csv::Writer::from_path(&summary_path).map_err(|e| io(&summary_path, &e))?;
    for m in &summary.modes {
        for p in &m.curve {
            curves
                .serialize(CurveRow {
                    agent_mode: m.agent_mode,
                    episode_index: p.episode_index,
                    median_reward: p.median,
                    mean_reward: p.mean,
                    trials: p.trials,
                })
                .map_err(|e| io(&curves_path, &e))?;
        }
        rows.serialize(SummaryRow {
            agent_mode: m.agent_mode,
            trials: m.trials,
            first5_median: m.first5_median,
            first5_mean: m.first5_mean,
            last10_median: m.last10_median,
            last10_mean: m.last10_mean,
            failed: m.failed,
            solve_rate: m.solve_rate,
            mean_principles_open: m.mean_principles_open,
            mean_principles_closed: m.mean_principles_closed,
            uncovered_updates: m.uncovered_updates,
        })
        .map_err(|e| io(&summary_path, &e))?;
    }
    curves.flush().map_err(|e| io(&curves_path, &e))?;
    rows.flush().map_err(|e| io(&summary_path, &e))?;

    let table = render_table(&summary);
    Ok(Report { summary, table })
}

pub fn render_table(summary: &Summary) -> String {
    let mut out = format!(
        "{}\n{:<9} {:>6} {:>9} {:>9} {:>9} {:>7} {:>6} {:>6} {:>7}\n",
        summary.domain,
        "mode",
        "trials",
        "first5",
        "last10",
        "l10 mean",
        "failed",
        "solve",
        "open",
        "closed"
    );
    for m in &summary.modes {
        out.push_str(&format!(
            "{:<9} {:>6} {:>9.2} {:>9.2} {:>9.2} {:>7} {:>6.2} {:>6.1} {:>7.1}\n",
            m.agent_mode.as_str(),
            m.trials,
            m.first5_median,
            m.last10_median,
            m.last10_mean,
            m.failed,
            m.solve_rate,
            m.mean_principles_open,
            m.mean_principles_closed
        ));
    }
    match summary.failure_reduction_pct() {
        Some(pct) => out.push_str(&format!(
            "failed-trial reduction (napping vs frozen): {pct:.1}%\n"
        )),
        None if summary.mode(AgentMode::Frozen).is_some()
            && summary.mode(AgentMode::Napping).is_some() =>
        {
            out.push_str("failed-trial reduction: undefined (frozen never failed)\n")
        }
        None => {}
    }
    out
}
