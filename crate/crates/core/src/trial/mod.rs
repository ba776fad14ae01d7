//! The open-world trial protocol.
//!
//! A trial is 40 pre-novelty episodes (indices -40..=-1) on default parameters
//! followed by 40 post-novelty episodes (0..=39) on the transformed parameters.
//! From index 5 onward the agent checks the 5-episode rolling mean reward against
//! a domain threshold; once raised, the detection flag stays up. Four agents are
//! compared:
//!
//! - `frozen`: the trained policy, never updated.
//! - `online` / `finetune`: the comparator updates from [`crate::baseline::adapt`],
//!   applied from episode 0.
//! - `napping`: the trained policy composed with a [`PrincipleStore`], selecting
//!   and updating at every step once novelty has been detected.

mod aggregate;
mod suite;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use aggregate::{aggregate, failed, median, CurvePoint, ModeSummary, Summary, FIRST5, LAST10};

pub use suite::{cartpole_middle_half, mountaincar_grid, run_trials};

use crate::baseline::adapt::ComparatorConfig;
use crate::baseline::{self, BaselineError, BaselinePolicy, EpisodeOutcome};
use crate::envs::{self, Domain, EnvError, EnvParams, TerminalCause};
use crate::napping::{EvalSpec, NappingError, PrincipleStore, StoreSnapshot};

pub const DETECTION_WINDOW: usize = 5;

#[derive(Debug, Error)]
pub enum TrialError {
    #[error("novelty detection needs {DETECTION_WINDOW} completed episodes, got {0}")]
    TooFewEpisodes(usize),
    #[error("invalid trial config: {0}")]
    Config(String),
    #[error("cannot aggregate: {0}")]
    Aggregate(String),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Napping(#[from] NappingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentMode {
    Frozen,
    Online,
    FineTune,
    Napping,
}

impl AgentMode {
    pub const ALL: [AgentMode; 4] = [
        AgentMode::Frozen,
        AgentMode::Online,
        AgentMode::FineTune,
        AgentMode::Napping,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AgentMode::Frozen => "frozen",
            AgentMode::Online => "online",
            AgentMode::FineTune => "finetune",
            AgentMode::Napping => "napping",
        }
    }
}

impl fmt::Display for AgentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AgentMode {
    type Err = TrialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgentMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| TrialError::Config(format!("unknown agent mode `{s}`")))
    }
}

/// Rolling-mean novelty detector over the last five episode rewards.
pub fn detect_novelty(recent_rewards: &[f64], domain: Domain) -> Result<bool, TrialError> {
    if recent_rewards.len() < DETECTION_WINDOW {
        return Err(TrialError::TooFewEpisodes(recent_rewards.len()));
    }
    let window = &recent_rewards[recent_rewards.len() - DETECTION_WINDOW..];
    let mean = window.iter().sum::<f64>() / DETECTION_WINDOW as f64;
    Ok(match domain {
        Domain::CartPole => mean < 150.0,
        Domain::MountainCar => !(-120.0..=-80.0).contains(&mean),
        Domain::CrossRoad => mean < 1.0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub domain: Domain,
    pub agent_mode: AgentMode,
    pub novelty: EnvParams,
    pub pre_episodes: usize,
    pub post_episodes: usize,
    pub detection_start_index: i32,
    pub seed: u64,
    pub eval: EvalSpec,
    pub comparator: ComparatorConfig,
}

impl TrialConfig {
    pub fn new(agent_mode: AgentMode, novelty: EnvParams, seed: u64) -> Self {
        let domain = novelty.domain();
        TrialConfig {
            domain,
            agent_mode,
            novelty,
            pre_episodes: 40,
            post_episodes: 40,
            detection_start_index: 5,
            seed,
            eval: EvalSpec::default_for(domain),
            comparator: ComparatorConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), TrialError> {
        if self.novelty.domain() != self.domain || self.eval.domain != self.domain {
            return Err(TrialError::Config(
                "novelty/eval domain differs from trial domain".into(),
            ));
        }
        if self.pre_episodes < DETECTION_WINDOW || self.post_episodes == 0 {
            return Err(TrialError::Config(format!(
                "need at least {DETECTION_WINDOW} pre-novelty and one post-novelty episode"
            )));
        }
        if self.comparator.window == 0 {
            return Err(TrialError::Config("comparator window must be > 0".into()));
        }
        self.novelty.validate()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub episode_index: i32,
    pub total_reward: f64,
    pub steps: u32,
    pub detected: bool,
    pub principles_open: usize,
    pub principles_closed: usize,
    pub terminal_cause: TerminalCause,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub config: TrialConfig,
    pub episodes: Vec<EpisodeRecord>,
    /// Updates that hit the branch with no defined rule (napping only).
    pub uncovered_updates: u64,
    pub store: Option<StoreSnapshot>,
    #[serde(default)]
    pub wall_time_ms: f64,
}

impl TrialRecord {
    pub fn novelty(&self) -> &EnvParams {
        &self.config.novelty
    }

    pub fn post(&self) -> impl Iterator<Item = &EpisodeRecord> {
        self.episodes.iter().filter(|e| e.episode_index >= 0)
    }

    pub fn post_rewards(&self) -> Vec<f64> {
        self.post().map(|e| e.total_reward).collect()
    }

    /// Post-novelty rewards at indices `from..to`.
    pub fn post_window(&self, from: i32, to: i32) -> Vec<f64> {
        self.post()
            .filter(|e| e.episode_index >= from && e.episode_index < to)
            .map(|e| e.total_reward)
            .collect()
    }

    pub fn first_detection(&self) -> Option<i32> {
        self.episodes
            .iter()
            .find(|e| e.detected)
            .map(|e| e.episode_index)
    }
}

/// One decision of the composite (baseline + principles) policy.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeStep {
    pub action: usize,
    pub baseline_action: usize,
    pub model_state: Vec<f64>,
}

/// The baseline's greedy action, replaced by the principle store where a
/// principle applies.
pub fn composite_action<R: Rng + ?Sized>(
    policy: &BaselinePolicy,
    store: &PrincipleStore,
    observation: &[f64],
    rng: &mut R,
) -> Result<CompositeStep, TrialError> {
    let (logits, model_state) = policy.forward(observation)?;
    let baseline_action = baseline::argmax(&logits);
    let action = store.select(&model_state, baseline_action, rng)?;
    Ok(CompositeStep {
        action,
        baseline_action,
        model_state,
    })
}

/// What picks actions during one episode.
enum Behavior {
    Trained,
    Candidate(BaselinePolicy),
    Napping,
}

struct Agent {
    mode: AgentMode,
    comparator: ComparatorConfig,
    /// Online: incumbent. Fine-tune: CEM mean.
    current: BaselinePolicy,
    window: Vec<EpisodeOutcome>,
    store: PrincipleStore,
}

impl Agent {
    fn new(trained: &BaselinePolicy, config: &TrialConfig) -> Self {
        Agent {
            mode: config.agent_mode,
            comparator: config.comparator.clone(),
            current: trained.clone(),
            window: Vec::new(),
            store: PrincipleStore::new(trained.action_count()),
        }
    }

    fn behavior<R: Rng>(&self, episode_index: i32, detected: bool, rng: &mut R) -> Behavior {
        if episode_index < 0 {
            return Behavior::Trained;
        }
        match self.mode {
            AgentMode::Frozen => Behavior::Trained,
            AgentMode::Napping if detected => Behavior::Napping,
            AgentMode::Napping => Behavior::Trained,
            AgentMode::Online if self.window.is_empty() => {
                Behavior::Candidate(self.current.clone())
            }
            AgentMode::Online => Behavior::Candidate(baseline::perturb(
                &self.current,
                self.comparator.online_sigma,
                rng,
            )),
            AgentMode::FineTune => Behavior::Candidate(baseline::perturb(
                &self.current,
                self.comparator.finetune_sigma,
                rng,
            )),
        }
    }

    fn finish_episode(&mut self, behavior: Behavior, total_reward: f64) {
        let Behavior::Candidate(policy) = behavior else {
            return;
        };
        self.window.push(EpisodeOutcome {
            policy,
            total_reward,
        });
        if self.window.len() == self.comparator.window {
            self.current = match self.mode {
                AgentMode::Online => baseline::online_step(&self.current, &self.window),
                _ => baseline::fine_tune(
                    &self.current,
                    &self.window,
                    self.comparator.finetune_elite_fraction,
                ),
            };
            self.window.clear();
        }
    }
}

/// Runs the full trial. All randomness derives from `config.seed`: initial states
/// come from a stream shared by every agent mode, so modes face identical starts.
pub fn run_trial(config: &TrialConfig, policy: &BaselinePolicy) -> Result<TrialRecord, TrialError> {
    config.validate()?;
    if policy.domain != config.domain {
        return Err(TrialError::Config(format!(
            "policy trained for {}, trial runs {}",
            policy.domain, config.domain
        )));
    }
    let started = Instant::now();
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut env_rng = ChaCha8Rng::seed_from_u64(master.random());
    let mut agent_rng = ChaCha8Rng::seed_from_u64(master.random());

    let default_params = EnvParams::default_for(config.domain);
    let mut agent = Agent::new(policy, config);
    let mut rewards: Vec<f64> = Vec::with_capacity(config.pre_episodes + config.post_episodes);
    let mut episodes = Vec::with_capacity(rewards.capacity());
    let mut detected = false;

    let first = -(config.pre_episodes as i32);
    for episode_index in first..config.post_episodes as i32 {
        if !detected && episode_index >= config.detection_start_index {
            detected = detect_novelty(&rewards, config.domain)?;
        }
        let params = if episode_index < 0 {
            &default_params
        } else {
            &config.novelty
        };
        let behavior = agent.behavior(episode_index, detected, &mut agent_rng);

        let mut state = envs::initial_state(params, &mut env_rng);
        let mut total = 0.0;
        let (steps, cause) = loop {
            let (logits, ms) = policy.forward(&state.observation)?;
            let a_agent = baseline::argmax(&logits);
            let r = match &behavior {
                Behavior::Trained => envs::step(&state, a_agent, params)?,
                Behavior::Candidate(p) => envs::step(&state, p.act(&state.observation)?, params)?,
                Behavior::Napping => {
                    let a_ap = agent.store.select(&ms, a_agent, &mut agent_rng)?;
                    let r = envs::step(&state, a_ap, params)?;
                    agent
                        .store
                        .update(&ms, a_agent, a_ap, &state, &r, &config.eval)?;
                    r
                }
            };
            total += r.reward;
            if r.terminated {
                break (r.next_state.step_count, r.terminal_cause);
            }
            state = r.next_state;
        };

        agent.finish_episode(behavior, total);
        rewards.push(total);
        let (principles_open, principles_closed) = agent.store.counts();
        episodes.push(EpisodeRecord {
            episode_index,
            total_reward: total,
            steps,
            detected,
            principles_open,
            principles_closed,
            terminal_cause: cause,
        });
    }

    let napping = config.agent_mode == AgentMode::Napping;
    Ok(TrialRecord {
        config: config.clone(),
        episodes,
        uncovered_updates: agent.store.uncovered_hits(),
        store: napping.then(|| agent.store.snapshot()),
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}
