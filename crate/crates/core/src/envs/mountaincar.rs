//! Under-powered car in a valley.

use serde::{Deserialize, Serialize};

use super::{check_finite, EnvError, EnvState, Internal, StepResult, TerminalCause};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MountainCarAction {
    Backward = 0,
    Stay = 1,
    Forward = 2,
}

impl MountainCarAction {
    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(MountainCarAction::Backward),
            1 => Some(MountainCarAction::Stay),
            2 => Some(MountainCarAction::Forward),
            _ => None,
        }
    }

    fn direction(self) -> f64 {
        match self {
            MountainCarAction::Backward => -1.0,
            MountainCarAction::Stay => 0.0,
            MountainCarAction::Forward => 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MountainCarParams {
    pub force: f64,
    pub gravity: f64,
    pub x_range: [f64; 2],
    pub v_max: f64,
    pub goal_x: f64,
    pub max_steps: u32,
}

impl Default for MountainCarParams {
    fn default() -> Self {
        MountainCarParams {
            force: 0.001,
            gravity: 0.0025,
            x_range: [-1.2, 0.6],
            v_max: 0.07,
            goal_x: 0.5,
            max_steps: 500,
        }
    }
}

impl MountainCarParams {
    pub const FORCE_RANGE: (f64, f64) = (0.0001, 0.02);
    pub const GRAVITY_RANGE: (f64, f64) = (0.0001, 0.005);

    pub fn with_force_gravity(force: f64, gravity: f64) -> Self {
        MountainCarParams {
            force,
            gravity,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        if !(self.force.is_finite() && self.force > 0.0) {
            return Err(EnvError::InvalidParams(format!(
                "force must be > 0, got {}",
                self.force
            )));
        }
        if !(self.gravity.is_finite() && self.gravity > 0.0) {
            return Err(EnvError::InvalidParams(format!(
                "gravity must be > 0, got {}",
                self.gravity
            )));
        }
        if !(self.x_range[0] < self.goal_x && self.goal_x <= self.x_range[1]) {
            return Err(EnvError::InvalidParams(
                "goal_x must lie inside x_range".into(),
            ));
        }
        if self.v_max.is_nan() || self.v_max <= 0.0 || self.max_steps == 0 {
            return Err(EnvError::InvalidParams(
                "v_max and max_steps must be > 0".into(),
            ));
        }
        Ok(())
    }
}

pub fn mountaincar_step(
    state: &EnvState,
    action: MountainCarAction,
    params: &MountainCarParams,
) -> Result<StepResult, EnvError> {
    let Internal::MountainCar([x, v]) = state.internal else {
        return Err(EnvError::InvalidState(
            "expected a mountaincar state".into(),
        ));
    };
    check_finite(&[x, v])?;
    if state.step_count >= params.max_steps {
        return Err(EnvError::Terminated);
    }

    let [x_min, x_max] = params.x_range;
    let mut v_next = (v + action.direction() * params.force - params.gravity * (3.0 * x).cos())
        .clamp(-params.v_max, params.v_max);
    let x_next = (x + v_next).clamp(x_min, x_max);
    // Inelastic left wall.
    if x_next <= x_min && v_next < 0.0 {
        v_next = 0.0;
    }

    let step_count = state.step_count + 1;
    let cause = if x_next >= params.goal_x {
        TerminalCause::Goal
    } else if step_count >= params.max_steps {
        TerminalCause::Timeout
    } else {
        TerminalCause::None
    };
    let next_state = EnvState::mountaincar(x_next, v_next).with_step_count(step_count);
    Ok(StepResult::new(next_state, -1.0, cause))
}
