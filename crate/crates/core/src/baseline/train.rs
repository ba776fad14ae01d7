//! Cross-entropy-method training and rollout evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BaselineError, BaselinePolicy, DEFAULT_HIDDEN};
use crate::envs::{self, Domain, EnvParams, EnvState, Internal, TerminalCause};

/// Validation bar a trained policy must clear.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TrainTarget {
    MeanReturn(f64),
    SolveRate(f64),
}

impl TrainTarget {
    pub fn default_for(domain: Domain) -> Self {
        match domain {
            Domain::CartPole => TrainTarget::MeanReturn(195.0),
            Domain::MountainCar => TrainTarget::MeanReturn(-140.0),
            Domain::CrossRoad => TrainTarget::SolveRate(0.95),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            TrainTarget::MeanReturn(v) | TrainTarget::SolveRate(v) => v,
        }
    }

    pub fn score(self, stats: &RolloutStats) -> f64 {
        match self {
            TrainTarget::MeanReturn(_) => stats.mean_return,
            TrainTarget::SolveRate(_) => stats.solve_rate,
        }
    }

    pub fn met_by(self, stats: &RolloutStats) -> bool {
        self.score(stats) >= self.value()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub population: usize,
    pub elite_fraction: f64,
    /// Initial per-parameter standard deviation.
    pub noise_scale: f64,
    /// Extra variance added to the elite spread, decayed linearly to zero.
    pub extra_noise: f64,
    pub max_generations: usize,
    pub episodes_per_candidate: usize,
    pub validation_episodes: usize,
    pub hidden: [usize; 2],
    pub target: TrainTarget,
    pub seed: u64,
}

impl TrainConfig {
    pub fn default_for(domain: Domain) -> Self {
        let (population, max_generations, episodes) = match domain {
            Domain::CartPole => (48, 60, 3),
            Domain::MountainCar => (64, 80, 4),
            Domain::CrossRoad => (64, 80, 1),
        };
        TrainConfig {
            population,
            elite_fraction: 0.2,
            noise_scale: 0.5,
            extra_noise: 0.05,
            max_generations,
            episodes_per_candidate: episodes,
            validation_episodes: 20,
            hidden: DEFAULT_HIDDEN,
            target: TrainTarget::default_for(domain),
            seed: 0,
        }
    }

    pub fn elite_count(&self) -> usize {
        ((self.population as f64 * self.elite_fraction).ceil() as usize).max(1)
    }

    pub fn validate(&self) -> Result<(), BaselineError> {
        let bad = |m: &str| Err(BaselineError::InvalidConfig(m.to_string()));
        if !(self.elite_fraction > 0.0 && self.elite_fraction < 1.0) {
            return bad("elite_fraction must lie in (0, 1)");
        }
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if self.elite_count() >= self.population {
            return bad("elite set must be smaller than the population");
        }
        if self.noise_scale.is_nan() || self.noise_scale <= 0.0 || self.extra_noise < 0.0 {
            return bad("noise_scale must be > 0 and extra_noise >= 0");
        }
        if self.max_generations == 0 || self.episodes_per_candidate == 0 {
            return bad("max_generations and episodes_per_candidate must be > 0");
        }
        if self.validation_episodes == 0 {
            return bad("validation_episodes must be > 0");
        }
        if self.hidden.contains(&0) {
            return bad("hidden sizes must be > 0");
        }
        Ok(())
    }
}

/// Outcome of one episode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpisodeSummary {
    pub total_reward: f64,
    pub steps: u32,
    pub cause: TerminalCause,
    /// MountainCar: highest x reached. CrossRoad: rows climbed. CartPole: steps.
    pub progress: f64,
}

/// Whether an episode ending with `cause` counts as solving the task.
pub fn solved(domain: Domain, cause: TerminalCause) -> bool {
    match domain {
        Domain::CartPole => cause == TerminalCause::Timeout,
        Domain::MountainCar | Domain::CrossRoad => cause == TerminalCause::Goal,
    }
}

/// Plays one episode with `act` choosing actions from the current state.
pub fn run_episode<R, F>(
    params: &EnvParams,
    rng: &mut R,
    mut act: F,
) -> Result<EpisodeSummary, BaselineError>
where
    R: Rng + ?Sized,
    F: FnMut(&EnvState) -> Result<usize, BaselineError>,
{
    let mut state = envs::initial_state(params, rng);
    let mut total = 0.0;
    let mut progress = progress_of(&state, f64::NEG_INFINITY, params);
    loop {
        let action = act(&state)?;
        let r = envs::step(&state, action, params)?;
        total += r.reward;
        progress = progress_of(&r.next_state, progress, params);
        if r.terminated {
            return Ok(EpisodeSummary {
                total_reward: total,
                steps: r.next_state.step_count,
                cause: r.terminal_cause,
                progress,
            });
        }
        state = r.next_state;
    }
}

fn progress_of(state: &EnvState, best: f64, params: &EnvParams) -> f64 {
    match (&state.internal, params) {
        (Internal::MountainCar([x, _]), _) => best.max(*x),
        (Internal::CrossRoad(c), EnvParams::CrossRoad(p)) => {
            best.max((p.start_cell().1 - c.player.1) as f64)
        }
        _ => state.step_count as f64,
    }
}

pub fn rollout<R: Rng + ?Sized>(
    policy: &BaselinePolicy,
    params: &EnvParams,
    rng: &mut R,
) -> Result<EpisodeSummary, BaselineError> {
    run_episode(params, rng, |s| policy.act(&s.observation))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RolloutStats {
    pub episodes: usize,
    pub mean_return: f64,
    pub solve_rate: f64,
}

/// Mean return and solve rate over `episodes` fresh episodes.
pub fn validate(
    policy: &BaselinePolicy,
    params: &EnvParams,
    episodes: usize,
    seed: u64,
) -> Result<RolloutStats, BaselineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    let mut solves = 0usize;
    for _ in 0..episodes {
        let e = rollout(policy, params, &mut rng)?;
        total += e.total_reward;
        solves += solved(policy.domain, e.cause) as usize;
    }
    Ok(RolloutStats {
        episodes,
        mean_return: total / episodes as f64,
        solve_rate: solves as f64 / episodes as f64,
    })
}

/// Training objective. Sparse-reward domains get a progress term so the search
/// has a gradient before the first success.
pub(crate) fn shaped_fitness(domain: Domain, e: &EpisodeSummary) -> f64 {
    match domain {
        Domain::CartPole => e.total_reward,
        Domain::MountainCar => {
            if e.cause == TerminalCause::Goal {
                1000.0 + e.total_reward
            } else {
                300.0 * (e.progress + 1.2) / 1.7
            }
        }
        Domain::CrossRoad => {
            if e.cause == TerminalCause::Goal {
                20.0 - e.steps as f64 / 100.0
            } else {
                -10.0 + e.progress
            }
        }
    }
}

fn fitness(
    policy: &BaselinePolicy,
    params: &EnvParams,
    episode_seeds: &[u64],
) -> Result<f64, BaselineError> {
    let mut total = 0.0;
    for &seed in episode_seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        total += shaped_fitness(policy.domain, &rollout(policy, params, &mut rng)?);
    }
    Ok(total / episode_seeds.len() as f64)
}

/// One CEM generation's bookkeeping: sampling distribution over flat weights.
#[derive(Clone, Debug)]
pub(crate) struct Search {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Search {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.mean
            .iter()
            .zip(&self.std)
            .map(|(m, s)| m + s * rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    /// Refits mean and spread to `elites`, adding `extra` variance.
    pub fn refit(&mut self, elites: &[&[f64]], extra: f64) {
        let n = elites.len() as f64;
        for j in 0..self.mean.len() {
            let m = elites.iter().map(|e| e[j]).sum::<f64>() / n;
            let var = elites.iter().map(|e| (e[j] - m).powi(2)).sum::<f64>() / n;
            self.mean[j] = m;
            self.std[j] = (var + extra).sqrt();
        }
    }
}

/// Indices of the `k` highest `scores`, descending, ties to the lower index.
pub(crate) fn elite_indices(scores: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order.truncate(k);
    order
}

/// Trains a policy for the pre-novelty environment `params`.
///
/// Returns the first candidate (generation best or elite mean) whose validation
/// score meets `config.target`; otherwise `TargetUnmet` carrying the best policy seen.
pub fn train(params: &EnvParams, config: &TrainConfig) -> Result<BaselinePolicy, BaselineError> {
    train_from(
        BaselinePolicy::zeros(params.domain(), config.hidden),
        params,
        config,
    )
}

/// CEM started with its mean at `init`'s weights.
pub fn train_from(
    init: BaselinePolicy,
    params: &EnvParams,
    config: &TrainConfig,
) -> Result<BaselinePolicy, BaselineError> {
    config.validate()?;
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut validation_rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x05ee_d0f7_a11d);
    let template = init;
    let mut search = Search {
        mean: template.params(),
        std: vec![config.noise_scale; template.param_count()],
    };
    let elite_k = config.elite_count();
    let mut best: Option<(f64, BaselinePolicy)> = None;

    for generation in 0..config.max_generations {
        let episode_seeds: Vec<u64> = (0..config.episodes_per_candidate)
            .map(|_| rng.random())
            .collect();
        let candidates: Vec<Vec<f64>> = (0..config.population)
            .map(|_| search.sample(&mut rng))
            .collect();
        let scores = candidates
            .par_iter()
            .map(|c| fitness(&template.with_params(c), params, &episode_seeds))
            .collect::<Result<Vec<f64>, _>>()?;

        let elites = elite_indices(&scores, elite_k);
        let decay = 1.0 - generation as f64 / config.max_generations as f64;
        let elite_refs: Vec<&[f64]> = elites.iter().map(|&i| candidates[i].as_slice()).collect();
        let gen_best = template.with_params(&candidates[elites[0]]);
        search.refit(&elite_refs, config.extra_noise * decay);
        let mean_policy = template.with_params(&search.mean);

        for mut policy in [gen_best, mean_policy] {
            let stats = validate(
                &policy,
                params,
                config.validation_episodes,
                validation_rng.random(),
            )?;
            let score = config.target.score(&stats);
            policy.meta.seed = config.seed;
            policy.meta.train_score = stats.mean_return;
            if config.target.met_by(&stats) {
                return Ok(policy);
            }
            if best.as_ref().is_none_or(|(s, _)| score > *s) {
                best = Some((score, policy));
            }
        }
    }
    let (score, best) = best.expect("at least one generation ran");
    Err(BaselineError::TargetUnmet {
        best: Box::new(best),
        score,
        target: config.target.value(),
    })
}
