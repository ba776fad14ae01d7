//! Small feed-forward discrete-action policies.
//!
//! A [`BaselinePolicy`] maps an observation through two tanh hidden layers to one
//! logit per action. The second hidden layer's activations are the policy's
//! embedding: the model state the adaptation layer partitions. Policies are
//! trained with the cross-entropy method ([`train`]), and [`adapt`] holds the
//! online and fine-tune comparator updates.

pub mod adapt;
pub mod io;
pub mod train;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::envs::Domain;

pub use adapt::{fine_tune, online_step, perturb, EpisodeOutcome};
pub use io::{load, save};
pub use train::{
    rollout, run_episode, solved, train, train_from, validate, EpisodeSummary, RolloutStats,
    TrainConfig, TrainTarget,
};

pub const DEFAULT_HIDDEN: [usize; 2] = [32, 32];

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("observation has length {found}, policy expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid training config: {0}")]
    InvalidConfig(String),
    #[error("training missed its target: best validation score {score} vs target {target}")]
    TargetUnmet {
        best: Box<BaselinePolicy>,
        score: f64,
        target: f64,
    },
    #[error("weight file: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Env(#[from] crate::envs::EnvError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub inputs: usize,
    pub outputs: usize,
    /// Row-major `outputs x inputs`.
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl Layer {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Layer {
            inputs,
            outputs,
            weights: vec![0.0; inputs * outputs],
            bias: vec![0.0; outputs],
        }
    }

    fn param_count(&self) -> usize {
        self.weights.len() + self.bias.len()
    }

    fn affine_into(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(
            self.weights
                .chunks_exact(self.inputs)
                .zip(&self.bias)
                .map(|(row, b)| row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + b),
        );
    }
}

/// Training provenance stored alongside the weights.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub seed: u64,
    pub train_score: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselinePolicy {
    pub domain: Domain,
    /// `[input, hidden1, hidden2, actions]`
    pub layer_sizes: Vec<usize>,
    pub layers: Vec<Layer>,
    pub meta: TrainMeta,
}

/// Fixed per-domain affine input scaling so raw observations land roughly in [-1, 1].
fn input_scaling(domain: Domain) -> (&'static [f64], &'static [f64]) {
    // (offset, scale): x_hat = (x - offset) / scale
    match domain {
        Domain::CartPole => (&[0.0, 0.0, 0.0, 0.0], &[2.4, 2.0, 0.21, 2.0]),
        Domain::MountainCar => (&[-0.3, 0.0], &[0.9, 0.07]),
        Domain::CrossRoad => (&[4.5; 18], &[5.5; 18]),
    }
}

impl BaselinePolicy {
    pub fn zeros(domain: Domain, hidden: [usize; 2]) -> Self {
        let sizes = vec![
            domain.observation_len(),
            hidden[0],
            hidden[1],
            domain.action_count(),
        ];
        let layers = sizes.windows(2).map(|w| Layer::zeros(w[0], w[1])).collect();
        BaselinePolicy {
            domain,
            layer_sizes: sizes,
            layers,
            meta: TrainMeta::default(),
        }
    }

    pub fn input_len(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn embedding_len(&self) -> usize {
        self.layer_sizes[self.layer_sizes.len() - 2]
    }

    pub fn action_count(&self) -> usize {
        self.layer_sizes[self.layer_sizes.len() - 1]
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(Layer::param_count).sum()
    }

    /// All weights and biases, layer by layer (weights then bias).
    pub fn params(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        for l in &self.layers {
            out.extend_from_slice(&l.weights);
            out.extend_from_slice(&l.bias);
        }
        out
    }

    pub fn set_params(&mut self, flat: &[f64]) {
        assert_eq!(flat.len(), self.param_count(), "flat parameter length");
        let mut rest = flat;
        for l in &mut self.layers {
            let (w, tail) = rest.split_at(l.weights.len());
            l.weights.copy_from_slice(w);
            let (b, tail) = tail.split_at(l.bias.len());
            l.bias.copy_from_slice(b);
            rest = tail;
        }
    }

    pub fn with_params(&self, flat: &[f64]) -> Self {
        let mut p = self.clone();
        p.set_params(flat);
        p
    }

    /// Logits and penultimate-layer embedding.
    pub fn forward(&self, observation: &[f64]) -> Result<(Vec<f64>, Vec<f64>), BaselineError> {
        if observation.len() != self.input_len() {
            return Err(BaselineError::DimensionMismatch {
                expected: self.input_len(),
                found: observation.len(),
            });
        }
        let (offset, scale) = input_scaling(self.domain);
        let mut h: Vec<f64> = observation
            .iter()
            .zip(offset.iter().zip(scale))
            .map(|(x, (o, s))| (x - o) / s)
            .collect();
        let mut next = Vec::new();
        let (head, hidden) = self.layers.split_last().expect("at least one layer");
        for layer in hidden {
            layer.affine_into(&h, &mut next);
            next.iter_mut().for_each(|v| *v = v.tanh());
            std::mem::swap(&mut h, &mut next);
        }
        let mut logits = Vec::new();
        head.affine_into(&h, &mut logits);
        Ok((logits, h))
    }

    pub fn act(&self, observation: &[f64]) -> Result<usize, BaselineError> {
        let (logits, _) = self.forward(observation)?;
        Ok(argmax(&logits))
    }

    pub fn embed(&self, observation: &[f64]) -> Result<Vec<f64>, BaselineError> {
        Ok(self.forward(observation)?.1)
    }
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_policy(domain: Domain, seed: u64) -> BaselinePolicy {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = BaselinePolicy::zeros(domain, DEFAULT_HIDDEN);
        let flat: Vec<f64> = (0..p.param_count())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        p.with_params(&flat)
    }

    /// Scalar re-evaluation of the affine + tanh chain, written independently of
    /// `Layer::affine_into`.
    #[allow(clippy::needless_range_loop)]
    fn scalar_chain(p: &BaselinePolicy, obs: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (off, sc) = input_scaling(p.domain);
        let mut a: Vec<f64> = (0..obs.len()).map(|i| (obs[i] - off[i]) / sc[i]).collect();
        let n = p.layers.len();
        let mut emb = Vec::new();
        for (li, l) in p.layers.iter().enumerate() {
            let mut out = vec![0.0; l.outputs];
            for o in 0..l.outputs {
                let mut acc = l.bias[o];
                for i in 0..l.inputs {
                    acc += l.weights[o * l.inputs + i] * a[i];
                }
                out[o] = if li + 1 < n { acc.tanh() } else { acc };
            }
            if li + 2 == n {
                emb = out.clone();
            }
            a = out;
        }
        (a, emb)
    }

    #[test]
    fn zero_weights_give_zero_logits_and_action_zero() {
        for d in Domain::ALL {
            let p = BaselinePolicy::zeros(d, DEFAULT_HIDDEN);
            let obs = vec![0.3; d.observation_len()];
            let (logits, emb) = p.forward(&obs).unwrap();
            assert!(logits.iter().all(|&v| v == 0.0));
            assert_eq!(emb.len(), 32);
            assert_eq!(p.act(&obs).unwrap(), 0);
        }
    }

    #[test]
    fn identical_observations_embed_identically() {
        let p = random_policy(Domain::CrossRoad, 5);
        let obs: Vec<f64> = (0..18).map(|i| i as f64 / 3.0).collect();
        assert_eq!(p.embed(&obs).unwrap(), p.embed(&obs.clone()).unwrap());
    }

    #[test]
    fn forward_matches_scalar_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (k, d) in Domain::ALL.into_iter().enumerate() {
            let p = random_policy(d, 100 + k as u64);
            for _ in 0..50 {
                let obs: Vec<f64> = (0..d.observation_len())
                    .map(|_| rng.random_range(-2.0..2.0))
                    .collect();
                let (logits, emb) = p.forward(&obs).unwrap();
                let (l2, e2) = scalar_chain(&p, &obs);
                for (a, b) in logits.iter().zip(&l2).chain(emb.iter().zip(&e2)) {
                    assert!((a - b).abs() < 1e-12);
                }
                assert_eq!(p.act(&obs).unwrap(), argmax(&l2));
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let p = BaselinePolicy::zeros(Domain::CartPole, DEFAULT_HIDDEN);
        assert!(matches!(
            p.forward(&[0.0; 3]),
            Err(BaselineError::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn argmax_breaks_ties_low() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0]), 1);
        assert_eq!(argmax(&[0.0, 0.0]), 0);
    }

    #[test]
    fn flat_params_round_trip() {
        let p = random_policy(Domain::MountainCar, 1);
        let q = BaselinePolicy::zeros(Domain::MountainCar, DEFAULT_HIDDEN).with_params(&p.params());
        assert_eq!(p, q);
    }
}
