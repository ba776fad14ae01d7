//! Parameterized classic-control testbeds.
//!
//! Three domains share one state/transition vocabulary:
//!
//! - [`cartpole`]: Barto–Sutton–Anderson cart-pole, explicit Euler, two actions.
//! - [`mountaincar`]: Moore's under-powered car, three actions.
//! - [`crossroad`]: a grid road-crossing game with eight horizontally moving cars
//!   and a partially observed 18-dimensional observation.
//!
//! Every step function is a pure function of `(state, action, params)`. The only
//! randomness lives in [`Env::reset`] (initial states) and in [`novelty`]
//! (post-novelty parameter draws), both driven by a caller-supplied RNG.

pub mod cartpole;
pub mod crossroad;
pub mod mountaincar;
pub mod novelty;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cartpole::{cartpole_step, CartPoleAction, CartPoleParam, CartPoleParams};
pub use crossroad::{
    crossroad_observe, crossroad_step, CarRow, CrossRoadAction, CrossRoadNovelty, CrossRoadParams,
    CrossRoadState,
};
pub use mountaincar::{mountaincar_step, MountainCarAction, MountainCarParams};
pub use novelty::{
    add_crossroad_noise, cartpole_novelty, crossroad_novelty, mountaincar_novelty, sample_novelty,
};

#[derive(Debug, Error, PartialEq)]
pub enum EnvError {
    #[error("non-finite state component at index {index}")]
    NonFinite { index: usize },
    #[error("state belongs to {found}, expected {expected}")]
    DomainMismatch { expected: Domain, found: Domain },
    #[error("action index {action} out of range for {domain} ({count} actions)")]
    InvalidAction {
        domain: Domain,
        action: usize,
        count: usize,
    },
    #[error("episode already terminated")]
    Terminated,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    CartPole,
    MountainCar,
    CrossRoad,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::CartPole, Domain::MountainCar, Domain::CrossRoad];

    pub fn action_count(self) -> usize {
        match self {
            Domain::CartPole => 2,
            Domain::MountainCar => 3,
            Domain::CrossRoad => 5,
        }
    }

    pub fn observation_len(self) -> usize {
        match self {
            Domain::CartPole => 4,
            Domain::MountainCar => 2,
            Domain::CrossRoad => 18,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::CartPole => "cartpole",
            Domain::MountainCar => "mountaincar",
            Domain::CrossRoad => "crossroad",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Domain {
    type Err = EnvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cartpole" => Ok(Domain::CartPole),
            "mountaincar" => Ok(Domain::MountainCar),
            "crossroad" => Ok(Domain::CrossRoad),
            other => Err(EnvError::UnknownDomain(other.to_string())),
        }
    }
}

/// Physics / layout parameters for one domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum EnvParams {
    CartPole(CartPoleParams),
    MountainCar(MountainCarParams),
    CrossRoad(CrossRoadParams),
}

impl EnvParams {
    pub fn default_for(domain: Domain) -> Self {
        match domain {
            Domain::CartPole => EnvParams::CartPole(CartPoleParams::default()),
            Domain::MountainCar => EnvParams::MountainCar(MountainCarParams::default()),
            Domain::CrossRoad => EnvParams::CrossRoad(CrossRoadParams::default()),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            EnvParams::CartPole(_) => Domain::CartPole,
            EnvParams::MountainCar(_) => Domain::MountainCar,
            EnvParams::CrossRoad(_) => Domain::CrossRoad,
        }
    }

    pub fn max_steps(&self) -> u32 {
        match self {
            EnvParams::CartPole(p) => p.max_steps,
            EnvParams::MountainCar(p) => p.max_steps,
            EnvParams::CrossRoad(p) => p.max_steps,
        }
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        match self {
            EnvParams::CartPole(p) => p.validate(),
            EnvParams::MountainCar(p) => p.validate(),
            EnvParams::CrossRoad(p) => p.validate(),
        }
    }

    /// Compact JSON used in CSV output and reports.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("params serialize")
    }
}

/// Full simulator state behind an observation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Internal {
    /// `[x, x_dot, theta, theta_dot]`
    CartPole([f64; 4]),
    /// `[x, x_dot]`
    MountainCar([f64; 2]),
    CrossRoad(CrossRoadState),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvState {
    pub domain: Domain,
    pub observation: Vec<f64>,
    pub internal: Internal,
    pub step_count: u32,
}

impl EnvState {
    pub fn cartpole(s: [f64; 4]) -> Self {
        EnvState {
            domain: Domain::CartPole,
            observation: s.to_vec(),
            internal: Internal::CartPole(s),
            step_count: 0,
        }
    }

    pub fn mountaincar(x: f64, v: f64) -> Self {
        EnvState {
            domain: Domain::MountainCar,
            observation: vec![x, v],
            internal: Internal::MountainCar([x, v]),
            step_count: 0,
        }
    }

    pub fn crossroad(state: CrossRoadState, params: &CrossRoadParams) -> Self {
        EnvState {
            domain: Domain::CrossRoad,
            observation: crossroad_observe(&state, params),
            internal: Internal::CrossRoad(state),
            step_count: 0,
        }
    }

    pub fn with_step_count(mut self, step_count: u32) -> Self {
        self.step_count = step_count;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TerminalCause {
    Goal,
    Failure,
    Timeout,
    None,
}

impl TerminalCause {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminalCause::Goal => "goal",
            TerminalCause::Failure => "failure",
            TerminalCause::Timeout => "timeout",
            TerminalCause::None => "none",
        }
    }
}

impl FromStr for TerminalCause {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "goal" => Ok(TerminalCause::Goal),
            "failure" => Ok(TerminalCause::Failure),
            "timeout" => Ok(TerminalCause::Timeout),
            "none" => Ok(TerminalCause::None),
            other => Err(format!("unknown terminal cause `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepResult {
    pub next_state: EnvState,
    pub reward: f64,
    pub terminated: bool,
    pub terminal_cause: TerminalCause,
}

impl StepResult {
    pub(crate) fn new(next_state: EnvState, reward: f64, terminal_cause: TerminalCause) -> Self {
        StepResult {
            next_state,
            reward,
            terminated: terminal_cause != TerminalCause::None,
            terminal_cause,
        }
    }
}

pub(crate) fn check_finite(values: &[f64]) -> Result<(), EnvError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(EnvError::NonFinite { index }),
        None => Ok(()),
    }
}

/// Single-domain step dispatch on an action index.
pub fn step(state: &EnvState, action: usize, params: &EnvParams) -> Result<StepResult, EnvError> {
    let domain = params.domain();
    if state.domain != domain {
        return Err(EnvError::DomainMismatch {
            expected: domain,
            found: state.domain,
        });
    }
    let invalid = || EnvError::InvalidAction {
        domain,
        action,
        count: domain.action_count(),
    };
    match params {
        EnvParams::CartPole(p) => cartpole_step(
            state,
            CartPoleAction::from_index(action).ok_or_else(invalid)?,
            p,
        ),
        EnvParams::MountainCar(p) => mountaincar_step(
            state,
            MountainCarAction::from_index(action).ok_or_else(invalid)?,
            p,
        ),
        EnvParams::CrossRoad(p) => crossroad_step(
            state,
            CrossRoadAction::from_index(action).ok_or_else(invalid)?,
            p,
        ),
    }
}

/// Draws an initial state for `params`.
pub fn initial_state<R: Rng + ?Sized>(params: &EnvParams, rng: &mut R) -> EnvState {
    match params {
        EnvParams::CartPole(_) => {
            let mut s = [0.0; 4];
            for v in &mut s {
                *v = rng.random_range(-0.05..0.05);
            }
            EnvState::cartpole(s)
        }
        EnvParams::MountainCar(_) => EnvState::mountaincar(rng.random_range(-0.6..-0.4), 0.0),
        EnvParams::CrossRoad(p) => EnvState::crossroad(CrossRoadState::initial(p), p),
    }
}

/// An episode-scoped environment: parameters plus the current state.
#[derive(Clone, Debug)]
pub struct Env {
    params: EnvParams,
    state: EnvState,
    done: bool,
}

impl Env {
    pub fn new<R: Rng + ?Sized>(params: EnvParams, rng: &mut R) -> Self {
        let state = initial_state(&params, rng);
        Env {
            params,
            state,
            done: false,
        }
    }

    pub fn reset<R: Rng + ?Sized>(&mut self, rng: &mut R) -> &EnvState {
        self.state = initial_state(&self.params, rng);
        self.done = false;
        &self.state
    }

    pub fn params(&self) -> &EnvParams {
        &self.params
    }

    pub fn state(&self) -> &EnvState {
        &self.state
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn step(&mut self, action: usize) -> Result<StepResult, EnvError> {
        if self.done {
            return Err(EnvError::Terminated);
        }
        let result = step(&self.state, action, &self.params)?;
        self.state = result.next_state.clone();
        self.done = result.terminated;
        Ok(result)
    }
}
