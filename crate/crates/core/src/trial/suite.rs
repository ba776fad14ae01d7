//! Batches of trials and the novelty sets they are run against.

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;

use super::{run_trial, TrialConfig, TrialError, TrialRecord};
use crate::baseline::BaselinePolicy;
use crate::envs::{self, CartPoleParam, EnvParams, MountainCarParams};

/// Runs every config against `policy` in parallel. Output order matches input order.
pub fn run_trials(
    configs: &[TrialConfig],
    policy: &BaselinePolicy,
) -> Result<Vec<TrialRecord>, TrialError> {
    configs.par_iter().map(|c| run_trial(c, policy)).collect()
}

/// One CartPole parameter drawn from the middle half of its novelty range.
pub fn cartpole_middle_half<R: Rng + ?Sized>(rng: &mut R) -> EnvParams {
    let param = *CartPoleParam::ALL.choose(rng).expect("non-empty");
    EnvParams::CartPole(envs::cartpole_novelty(
        param,
        param.sub_range(0.25, 0.75),
        rng,
    ))
}

/// Cell centres of an `n x n` grid over the MountainCar force x gravity box,
/// force-major.
pub fn mountaincar_grid(n: usize) -> Vec<EnvParams> {
    let (f_lo, f_hi) = MountainCarParams::FORCE_RANGE;
    let (g_lo, g_hi) = MountainCarParams::GRAVITY_RANGE;
    let centre = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
    (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                EnvParams::MountainCar(MountainCarParams::with_force_gravity(
                    centre(f_lo, f_hi, i),
                    centre(g_lo, g_hi, j),
                ))
            })
        })
        .collect()
}
