//! Post-novelty parameter draws.

use rand::seq::IndexedRandom;
use rand::Rng;

use super::{
    CartPoleParam, CartPoleParams, CrossRoadNovelty, CrossRoadParams, Domain, EnvParams,
    MountainCarParams,
};

/// Draws one transformation of `domain`'s default parameters.
///
/// CartPole resamples exactly one of its five physical parameters; MountainCar
/// draws force and gravity jointly; CrossRoad picks one of the eight layout
/// bases and perturbs every car's initial position and speed.
pub fn sample_novelty<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> EnvParams {
    match domain {
        Domain::CartPole => {
            let param = *CartPoleParam::ALL.choose(rng).expect("non-empty");
            EnvParams::CartPole(cartpole_novelty(param, param.range(), rng))
        }
        Domain::MountainCar => EnvParams::MountainCar(mountaincar_novelty(rng)),
        Domain::CrossRoad => {
            let base = *CrossRoadNovelty::ALL.choose(rng).expect("non-empty");
            EnvParams::CrossRoad(crossroad_novelty(base, rng))
        }
    }
}

/// Defaults with `param` drawn uniformly from `range`.
pub fn cartpole_novelty<R: Rng + ?Sized>(
    param: CartPoleParam,
    range: (f64, f64),
    rng: &mut R,
) -> CartPoleParams {
    CartPoleParams::default().with(param, rng.random_range(range.0..=range.1))
}

pub fn mountaincar_novelty<R: Rng + ?Sized>(rng: &mut R) -> MountainCarParams {
    let (f_lo, f_hi) = MountainCarParams::FORCE_RANGE;
    let (g_lo, g_hi) = MountainCarParams::GRAVITY_RANGE;
    MountainCarParams::with_force_gravity(
        rng.random_range(f_lo..=f_hi),
        rng.random_range(g_lo..=g_hi),
    )
}

/// `base` applied to the default layout, then per-car noise.
pub fn crossroad_novelty<R: Rng + ?Sized>(base: CrossRoadNovelty, rng: &mut R) -> CrossRoadParams {
    let defaults = CrossRoadParams::default();
    let mut params = CrossRoadParams {
        cars: base.apply(&defaults.cars),
        novelty: Some(base),
        ..defaults
    };
    add_crossroad_noise(&mut params, rng);
    params
}

/// Adds the configured position and speed noise to every car.
pub fn add_crossroad_noise<R: Rng + ?Sized>(params: &mut CrossRoadParams, rng: &mut R) {
    let [p_lo, p_hi] = params.position_noise_range;
    let [s_lo, s_hi] = params.speed_noise_range;
    let unit = params.speed_unit / 100.0;
    for car in &mut params.cars {
        car.initial_x += rng.random_range(p_lo..=p_hi);
        car.speed += rng.random_range(s_lo..=s_hi) * unit;
    }
}
