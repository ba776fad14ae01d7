//! Greedy per-transition scores that decide whether an action still works.

use serde::{Deserialize, Serialize};

use super::NappingError;
use crate::envs::{Domain, EnvState, Internal, StepResult, TerminalCause};

/// Default gravity constant used by the MountainCar energy score.
const MC_GRAVITY: f64 = 0.0025;
const MC_GOAL_SCORE: f64 = 1000.0;

/// Scoring function plus its acceptance threshold and supremum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalSpec {
    pub domain: Domain,
    pub thre: f64,
    /// Score at which a principle closes immediately.
    pub sup: Option<f64>,
    /// CartPole only: angles inside this band (radians) always count as upright.
    #[serde(default = "default_band")]
    pub cartpole_band: f64,
}

fn default_band() -> f64 {
    2.0_f64.to_radians()
}

impl EvalSpec {
    pub fn default_for(domain: Domain) -> Self {
        let (thre, sup) = match domain {
            Domain::CartPole => (1.0, 1.0),
            Domain::MountainCar => (0.0, MC_GOAL_SCORE),
            Domain::CrossRoad => (0.0, 2.0),
        };
        EvalSpec {
            domain,
            thre,
            sup: Some(sup),
            cartpole_band: default_band(),
        }
    }

    pub fn score(&self, s: &EnvState, a: usize, outcome: &StepResult) -> Result<f64, NappingError> {
        for found in [s.domain, outcome.next_state.domain] {
            if found != self.domain {
                return Err(NappingError::DomainMismatch {
                    expected: self.domain,
                    found,
                });
            }
        }
        Ok(match self.domain {
            Domain::CartPole => cartpole_score(s, outcome, self.cartpole_band),
            Domain::MountainCar => eval_mountaincar(s, a, outcome),
            Domain::CrossRoad => eval_crossroad(s, a, outcome),
        })
    }
}

fn angle(s: &EnvState) -> f64 {
    match s.internal {
        Internal::CartPole([_, _, theta, _]) => theta,
        _ => unreachable!("domain checked by caller"),
    }
}

fn cartpole_score(s: &EnvState, outcome: &StepResult, band: f64) -> f64 {
    if outcome.terminal_cause == TerminalCause::Failure {
        return 0.0;
    }
    let (before, after) = (angle(s).abs(), angle(&outcome.next_state).abs());
    if after <= before.max(band) {
        1.0
    } else {
        0.0
    }
}

/// 1 when the pole stays up and its angle does not grow beyond a 2° band, else 0.
pub fn eval_cartpole(s: &EnvState, _a: usize, outcome: &StepResult) -> f64 {
    cartpole_score(s, outcome, default_band())
}

/// `0.5 * v^2 + g * sin(3x) / 3` with the default gravity constant.
pub fn mechanical_energy(x: f64, v: f64) -> f64 {
    0.5 * v * v + MC_GRAVITY * (3.0 * x).sin() / 3.0
}

fn position_velocity(s: &EnvState) -> (f64, f64) {
    match s.internal {
        Internal::MountainCar([x, v]) => (x, v),
        _ => unreachable!("domain checked by caller"),
    }
}

/// 1000 on reaching the goal, otherwise the change in mechanical energy.
pub fn eval_mountaincar(s: &EnvState, _a: usize, outcome: &StepResult) -> f64 {
    if outcome.terminal_cause == TerminalCause::Goal {
        return MC_GOAL_SCORE;
    }
    let (x0, v0) = position_velocity(s);
    let (x1, v1) = position_velocity(&outcome.next_state);
    mechanical_energy(x1, v1) - mechanical_energy(x0, v0)
}

fn player_row(s: &EnvState) -> i32 {
    match &s.internal {
        Internal::CrossRoad(c) => c.player.1,
        _ => unreachable!("domain checked by caller"),
    }
}

/// 2 for finishing the crossing, 1 for climbing a row safely, 0 for a safe move
/// without progress, -1 for a collision or timeout.
pub fn eval_crossroad(s: &EnvState, _a: usize, outcome: &StepResult) -> f64 {
    match outcome.terminal_cause {
        TerminalCause::Goal => 2.0,
        TerminalCause::Failure | TerminalCause::Timeout => -1.0,
        TerminalCause::None if player_row(&outcome.next_state) < player_row(s) => 1.0,
        TerminalCause::None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::*;

    #[test]
    fn cartpole_terminal_transition_scores_below_threshold() {
        let spec = EvalSpec::default_for(Domain::CartPole);
        let s = EnvState::cartpole([0.0, 0.0, 0.2, 2.0]);
        let r = cartpole_step(&s, CartPoleAction::Right, &CartPoleParams::default()).unwrap();
        assert_eq!(r.terminal_cause, TerminalCause::Failure);
        let score = spec.score(&s, 1, &r).unwrap();
        assert_eq!(score, 0.0);
        assert!(score < spec.thre);
    }

    #[test]
    fn cartpole_upright_band() {
        let p = CartPoleParams::default();
        let s = EnvState::cartpole([0.0, 0.0, 0.0, 0.0]);
        let r = cartpole_step(&s, CartPoleAction::Left, &p).unwrap();
        assert_eq!(eval_cartpole(&s, 0, &r), 1.0);
        let tilted = EnvState::cartpole([0.0, 0.0, 0.1, 0.5]);
        let r = cartpole_step(&tilted, CartPoleAction::Right, &p).unwrap();
        assert_eq!(eval_cartpole(&tilted, 1, &r), 0.0);
        let recovering = EnvState::cartpole([0.0, 0.0, 0.1, -0.5]);
        let r = cartpole_step(&recovering, CartPoleAction::Right, &p).unwrap();
        assert_eq!(eval_cartpole(&recovering, 1, &r), 1.0);
    }

    #[test]
    fn mountaincar_goal_scores_sup() {
        let spec = EvalSpec::default_for(Domain::MountainCar);
        let s = EnvState::mountaincar(0.49, 0.02);
        let r = mountaincar_step(
            &s,
            MountainCarAction::Forward,
            &MountainCarParams::default(),
        )
        .unwrap();
        assert_eq!(spec.score(&s, 2, &r).unwrap(), 1000.0);
        assert_eq!(spec.sup, Some(1000.0));
    }

    #[test]
    fn mountaincar_forward_from_rest_gains_energy() {
        // E = 0.5 v^2 + 0.0025 sin(3x) / 3 at (-0.5, 0) and at the stepped state.
        let s = EnvState::mountaincar(-0.5, 0.0);
        let r = mountaincar_step(
            &s,
            MountainCarAction::Forward,
            &MountainCarParams::default(),
        )
        .unwrap();
        let (x1, v1) = (r.next_state.observation[0], r.next_state.observation[1]);
        let e0 = 0.0025 * (-1.5f64).sin() / 3.0;
        let e1 = 0.5 * v1 * v1 + 0.0025 * (3.0 * x1).sin() / 3.0;
        let score = eval_mountaincar(&s, 2, &r);
        assert!((score - (e1 - e0)).abs() < 1e-18);
        assert!(score > 0.0);
    }

    #[test]
    fn crossroad_scores() {
        let mut p = CrossRoadParams::default();
        p.cars.iter_mut().for_each(|c| c.speed = 0.0);
        let spec = EvalSpec::default_for(Domain::CrossRoad);
        let st = |player, cars: Vec<f64>| {
            EnvState::crossroad(
                CrossRoadState {
                    player,
                    car_x: cars,
                },
                &p,
            )
        };
        let free = vec![0.0; 8];
        let s = st((5, 1), free.clone());
        let r = crossroad_step(&s, CrossRoadAction::Up, &p).unwrap();
        assert_eq!(spec.score(&s, 0, &r).unwrap(), 2.0);
        let s = st((5, 5), free.clone());
        let r = crossroad_step(&s, CrossRoadAction::Up, &p).unwrap();
        assert_eq!(spec.score(&s, 0, &r).unwrap(), 1.0);
        let r = crossroad_step(&s, CrossRoadAction::Left, &p).unwrap();
        assert_eq!(spec.score(&s, 2, &r).unwrap(), 0.0);
        let mut cars = free;
        cars[3] = 5.0;
        let s = st((5, 5), cars);
        let r = crossroad_step(&s, CrossRoadAction::Up, &p).unwrap();
        assert_eq!(spec.score(&s, 0, &r).unwrap(), -1.0);
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let spec = EvalSpec::default_for(Domain::CrossRoad);
        let s = EnvState::mountaincar(-0.5, 0.0);
        let r =
            mountaincar_step(&s, MountainCarAction::Stay, &MountainCarParams::default()).unwrap();
        assert!(matches!(
            spec.score(&s, 1, &r),
            Err(NappingError::DomainMismatch { .. })
        ));
    }
}
