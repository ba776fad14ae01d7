//! Online and fine-tune comparator updates.
//!
//! Both comparators learn only from the episodes a trial actually plays: each
//! post-novelty episode is played by one candidate weight vector and its return is
//! the candidate's fitness. Every `window` episodes the candidates are reduced to a
//! new policy.
//!
//! - online: a (1 + λ) hill-climb around the current policy. The incumbent plays
//!   the first episode of each window and the best-return candidate survives.
//! - fine-tune: CEM restarted at the trained weights; each window's candidates are
//!   drawn around the current mean and the elite mean becomes the new mean.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::train::elite_indices;
use super::BaselinePolicy;

#[derive(Clone, Debug, PartialEq)]
pub struct EpisodeOutcome {
    pub policy: BaselinePolicy,
    pub total_reward: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparatorConfig {
    /// Episodes per update.
    pub window: usize,
    pub online_sigma: f64,
    pub finetune_sigma: f64,
    pub finetune_elite_fraction: f64,
}

impl Default for ComparatorConfig {
    fn default() -> Self {
        ComparatorConfig {
            window: 4,
            online_sigma: 0.05,
            finetune_sigma: 0.1,
            finetune_elite_fraction: 0.5,
        }
    }
}

/// `policy` with i.i.d. Gaussian noise of scale `sigma` on every weight.
pub fn perturb<R: Rng + ?Sized>(
    policy: &BaselinePolicy,
    sigma: f64,
    rng: &mut R,
) -> BaselinePolicy {
    let flat: Vec<f64> = policy
        .params()
        .iter()
        .map(|w| w + sigma * rng.sample::<f64, _>(StandardNormal))
        .collect();
    policy.with_params(&flat)
}

/// Highest-return candidate of `batch`, ties to the earliest; `policy` when empty.
pub fn online_step(policy: &BaselinePolicy, batch: &[EpisodeOutcome]) -> BaselinePolicy {
    let returns: Vec<f64> = batch.iter().map(|e| e.total_reward).collect();
    match elite_indices(&returns, 1).first() {
        Some(&i) => batch[i].policy.clone(),
        None => policy.clone(),
    }
}

/// Mean weights of the top `elite_fraction` of `batch`; `policy` when empty.
pub fn fine_tune(
    policy: &BaselinePolicy,
    batch: &[EpisodeOutcome],
    elite_fraction: f64,
) -> BaselinePolicy {
    if batch.is_empty() {
        return policy.clone();
    }
    let returns: Vec<f64> = batch.iter().map(|e| e.total_reward).collect();
    let k = ((batch.len() as f64 * elite_fraction).ceil() as usize).clamp(1, batch.len());
    let elites = elite_indices(&returns, k);
    let mut mean = vec![0.0; policy.param_count()];
    for &i in &elites {
        for (m, w) in mean.iter_mut().zip(batch[i].policy.params()) {
            *m += w;
        }
    }
    mean.iter_mut().for_each(|m| *m /= k as f64);
    policy.with_params(&mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::train::Search;
    use crate::baseline::DEFAULT_HIDDEN;
    use crate::envs::Domain;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn outcome(p: BaselinePolicy, r: f64) -> EpisodeOutcome {
        EpisodeOutcome {
            policy: p,
            total_reward: r,
        }
    }

    #[test]
    fn no_data_leaves_policy_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = perturb(
            &BaselinePolicy::zeros(Domain::CartPole, DEFAULT_HIDDEN),
            1.0,
            &mut rng,
        );
        assert_eq!(online_step(&p, &[]), p);
        assert_eq!(fine_tune(&p, &[], 0.5), p);
    }

    #[test]
    fn online_keeps_incumbent_on_ties() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = perturb(
            &BaselinePolicy::zeros(Domain::CartPole, DEFAULT_HIDDEN),
            1.0,
            &mut rng,
        );
        let q = perturb(&p, 0.1, &mut rng);
        let batch = [outcome(p.clone(), 50.0), outcome(q.clone(), 50.0)];
        assert_eq!(online_step(&p, &batch), p);
        let batch = [outcome(p.clone(), 50.0), outcome(q.clone(), 51.0)];
        assert_eq!(online_step(&p, &batch), q);
    }

    #[test]
    fn fine_tune_from_zero_weights_is_a_fresh_cem_generation() {
        let zero = BaselinePolicy::zeros(Domain::MountainCar, DEFAULT_HIDDEN);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut search = Search {
            mean: zero.params(),
            std: vec![0.5; zero.param_count()],
        };
        let cands: Vec<Vec<f64>> = (0..8).map(|_| search.sample(&mut rng)).collect();
        let returns = [
            -500.0, -200.0, -300.0, -150.0, -500.0, -400.0, -180.0, -220.0,
        ];
        let batch: Vec<_> = cands
            .iter()
            .zip(returns)
            .map(|(c, r)| outcome(zero.with_params(c), r))
            .collect();
        let tuned = fine_tune(&zero, &batch, 0.5);

        let elites = elite_indices(&returns, 4);
        let refs: Vec<&[f64]> = elites.iter().map(|&i| cands[i].as_slice()).collect();
        search.refit(&refs, 0.0);
        for (a, b) in tuned.params().iter().zip(&search.mean) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn online_on_unchanged_env_keeps_competence() {
        use crate::baseline::{rollout, train, validate, TrainConfig};
        use crate::envs::EnvParams;
        let params = EnvParams::default_for(Domain::CartPole);
        let trained = train(
            &params,
            &TrainConfig {
                seed: 4,
                ..TrainConfig::default_for(Domain::CartPole)
            },
        )
        .unwrap();
        let before = validate(&trained, &params, 100, 5).unwrap().mean_return;
        let config = ComparatorConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut current = trained.clone();
        for _ in 0..10 {
            let batch: Vec<_> = (0..config.window)
                .map(|i| {
                    let p = if i == 0 {
                        current.clone()
                    } else {
                        perturb(&current, config.online_sigma, &mut rng)
                    };
                    let r = rollout(&p, &params, &mut rng).unwrap().total_reward;
                    outcome(p, r)
                })
                .collect();
            current = online_step(&current, &batch);
        }
        let after = validate(&current, &params, 100, 5).unwrap().mean_return;
        assert!(after >= 0.9 * before, "before {before}, after {after}");
    }
}
