//! Cart-pole balancing with explicit Euler integration.

use serde::{Deserialize, Serialize};

use super::{check_finite, EnvError, EnvState, Internal, StepResult, TerminalCause};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartPoleAction {
    Left = 0,
    Right = 1,
}

impl CartPoleAction {
    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(CartPoleAction::Left),
            1 => Some(CartPoleAction::Right),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartPoleParams {
    /// Half the pole length, as in the classic formulation.
    pub pole_length: f64,
    pub gravity: f64,
    pub mass_cart: f64,
    pub mass_pole: f64,
    pub force_mag: f64,
    pub tau: f64,
    /// Failure angle in radians.
    pub angle_limit: f64,
    pub x_limit: f64,
    pub max_steps: u32,
}

impl Default for CartPoleParams {
    fn default() -> Self {
        CartPoleParams {
            pole_length: 0.5,
            gravity: 9.8,
            mass_cart: 1.0,
            mass_pole: 0.1,
            force_mag: 10.0,
            tau: 0.02,
            angle_limit: 12.0_f64.to_radians(),
            x_limit: 2.4,
            max_steps: 200,
        }
    }
}

impl CartPoleParams {
    pub fn validate(&self) -> Result<(), EnvError> {
        let positive = [
            ("pole_length", self.pole_length),
            ("gravity", self.gravity),
            ("mass_cart", self.mass_cart),
            ("mass_pole", self.mass_pole),
            ("force_mag", self.force_mag),
            ("tau", self.tau),
            ("angle_limit", self.angle_limit),
            ("x_limit", self.x_limit),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(EnvError::InvalidParams(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        if self.max_steps == 0 {
            return Err(EnvError::InvalidParams("max_steps must be > 0".into()));
        }
        Ok(())
    }

    pub fn get(&self, param: CartPoleParam) -> f64 {
        match param {
            CartPoleParam::Length => self.pole_length,
            CartPoleParam::Gravity => self.gravity,
            CartPoleParam::MassCart => self.mass_cart,
            CartPoleParam::MassPole => self.mass_pole,
            CartPoleParam::ForceMag => self.force_mag,
        }
    }

    pub fn with(mut self, param: CartPoleParam, value: f64) -> Self {
        match param {
            CartPoleParam::Length => self.pole_length = value,
            CartPoleParam::Gravity => self.gravity = value,
            CartPoleParam::MassCart => self.mass_cart = value,
            CartPoleParam::MassPole => self.mass_pole = value,
            CartPoleParam::ForceMag => self.force_mag = value,
        }
        self
    }
}

/// The five physical parameters a novelty may transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CartPoleParam {
    Length,
    Gravity,
    MassCart,
    MassPole,
    ForceMag,
}

impl CartPoleParam {
    pub const ALL: [CartPoleParam; 5] = [
        CartPoleParam::Length,
        CartPoleParam::Gravity,
        CartPoleParam::MassCart,
        CartPoleParam::MassPole,
        CartPoleParam::ForceMag,
    ];

    pub fn default_value(self) -> f64 {
        CartPoleParams::default().get(self)
    }

    /// Novelty range: default / 10 to default * 10.
    pub fn range(self) -> (f64, f64) {
        let d = self.default_value();
        (d / 10.0, d * 10.0)
    }

    /// Sub-interval `[lo + a*(hi-lo), lo + b*(hi-lo)]` of the novelty range.
    pub fn sub_range(self, a: f64, b: f64) -> (f64, f64) {
        let (lo, hi) = self.range();
        (lo + a * (hi - lo), lo + b * (hi - lo))
    }
}

pub fn cartpole_step(
    state: &EnvState,
    action: CartPoleAction,
    params: &CartPoleParams,
) -> Result<StepResult, EnvError> {
    let Internal::CartPole([x, x_dot, theta, theta_dot]) = state.internal else {
        return Err(EnvError::InvalidState("expected a cartpole state".into()));
    };
    check_finite(&[x, x_dot, theta, theta_dot])?;
    if state.step_count >= params.max_steps {
        return Err(EnvError::Terminated);
    }

    let force = match action {
        CartPoleAction::Right => params.force_mag,
        CartPoleAction::Left => -params.force_mag,
    };
    let total_mass = params.mass_cart + params.mass_pole;
    let pole_mass_length = params.mass_pole * params.pole_length;
    let (sin, cos) = theta.sin_cos();

    let temp = (force + pole_mass_length * theta_dot * theta_dot * sin) / total_mass;
    let theta_acc = (params.gravity * sin - cos * temp)
        / (params.pole_length * (4.0 / 3.0 - params.mass_pole * cos * cos / total_mass));
    let x_acc = temp - pole_mass_length * theta_acc * cos / total_mass;

    let next = [
        x + params.tau * x_dot,
        x_dot + params.tau * x_acc,
        theta + params.tau * theta_dot,
        theta_dot + params.tau * theta_acc,
    ];
    check_finite(&next)?;

    let step_count = state.step_count + 1;
    let cause = if next[2].abs() > params.angle_limit || next[0].abs() > params.x_limit {
        TerminalCause::Failure
    } else if step_count >= params.max_steps {
        TerminalCause::Timeout
    } else {
        TerminalCause::None
    };
    let next_state = EnvState::cartpole(next).with_step_count(step_count);
    Ok(StepResult::new(next_state, 1.0, cause))
}
