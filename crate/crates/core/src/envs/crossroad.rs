//! Road-crossing grid game.
//!
//! The grid is `grid_width` columns by `grid_height` rows with row 0 at the top.
//! The player starts at the bottom-center cell and must reach row 0. Each of the
//! eight car rows holds one car moving horizontally with a signed real speed;
//! positions are real-valued and wrap around, and a car occupies the cell
//! `floor(x)`. A collision happens when the player's cell equals a car's cell
//! after both have moved.

use serde::{Deserialize, Serialize};

use super::{EnvError, EnvState, Internal, StepResult, TerminalCause};

pub const SENTINEL: f64 = -1.0;

/// Neighbor offsets `(dx, dy)` in row-major order, center excluded.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossRoadAction {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
    Stay = 4,
}

impl CrossRoadAction {
    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(CrossRoadAction::Up),
            1 => Some(CrossRoadAction::Down),
            2 => Some(CrossRoadAction::Left),
            3 => Some(CrossRoadAction::Right),
            4 => Some(CrossRoadAction::Stay),
            _ => None,
        }
    }

    fn delta(self) -> (i32, i32) {
        match self {
            CrossRoadAction::Up => (0, -1),
            CrossRoadAction::Down => (0, 1),
            CrossRoadAction::Left => (-1, 0),
            CrossRoadAction::Right => (1, 0),
            CrossRoadAction::Stay => (0, 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarRow {
    pub row: u32,
    /// Signed cells per step; positive moves right.
    pub speed: f64,
    pub initial_x: f64,
}

/// The eight layout transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossRoadNovelty {
    SuperSlow,
    SuperFast,
    NewSpeeds,
    OppositeDirection,
    AllLeft,
    AllRight,
    ShiftSpeeds,
    ReverseCars,
}

impl CrossRoadNovelty {
    pub const ALL: [CrossRoadNovelty; 8] = [
        CrossRoadNovelty::SuperSlow,
        CrossRoadNovelty::SuperFast,
        CrossRoadNovelty::NewSpeeds,
        CrossRoadNovelty::OppositeDirection,
        CrossRoadNovelty::AllLeft,
        CrossRoadNovelty::AllRight,
        CrossRoadNovelty::ShiftSpeeds,
        CrossRoadNovelty::ReverseCars,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossRoadNovelty::SuperSlow => "super_slow",
            CrossRoadNovelty::SuperFast => "super_fast",
            CrossRoadNovelty::NewSpeeds => "new_speeds",
            CrossRoadNovelty::OppositeDirection => "opposite_direction",
            CrossRoadNovelty::AllLeft => "all_left",
            CrossRoadNovelty::AllRight => "all_right",
            CrossRoadNovelty::ShiftSpeeds => "shift_speeds",
            CrossRoadNovelty::ReverseCars => "reverse_cars",
        }
    }

    /// Applies the base transformation to a car table, without noise.
    pub fn apply(self, cars: &[CarRow]) -> Vec<CarRow> {
        let mut out = cars.to_vec();
        match self {
            CrossRoadNovelty::SuperSlow => out.iter_mut().for_each(|c| c.speed *= 0.25),
            CrossRoadNovelty::SuperFast => out.iter_mut().for_each(|c| c.speed *= 2.0),
            CrossRoadNovelty::NewSpeeds => {
                for (c, m) in out.iter_mut().zip(NEW_SPEED_MAGNITUDES.iter().cycle()) {
                    c.speed = c.speed.signum() * m;
                }
            }
            CrossRoadNovelty::OppositeDirection => out.iter_mut().for_each(|c| c.speed = -c.speed),
            CrossRoadNovelty::AllLeft => out.iter_mut().for_each(|c| c.speed = -c.speed.abs()),
            CrossRoadNovelty::AllRight => out.iter_mut().for_each(|c| c.speed = c.speed.abs()),
            CrossRoadNovelty::ShiftSpeeds => {
                // Magnitudes move down one row (cyclically); directions stay.
                let n = out.len();
                for i in 0..n {
                    let src = &cars[(i + n - 1) % n];
                    out[i].speed = cars[i].speed.signum() * src.speed.abs();
                }
            }
            CrossRoadNovelty::ReverseCars => {
                let n = out.len();
                for i in 0..n {
                    let src = &cars[n - 1 - i];
                    out[i].speed = src.speed;
                    out[i].initial_x = src.initial_x;
                }
            }
        }
        out
    }
}

impl std::str::FromStr for CrossRoadNovelty {
    type Err = EnvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CrossRoadNovelty::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| EnvError::InvalidParams(format!("unknown crossroad novelty `{s}`")))
    }
}

const DEFAULT_CARS: [(f64, f64); 8] = [
    (0.6, 2.0),
    (-0.8, 7.0),
    (1.0, 4.0),
    (-0.5, 1.0),
    (0.7, 8.0),
    (-1.0, 3.0),
    (0.4, 6.0),
    (-0.9, 0.0),
];

const NEW_SPEED_MAGNITUDES: [f64; 8] = [0.9, 0.4, 0.5, 1.0, 0.3, 0.6, 0.8, 0.7];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossRoadParams {
    pub grid_width: u32,
    pub grid_height: u32,
    pub cars: Vec<CarRow>,
    pub max_steps: u32,
    /// Cells added to each car's initial position.
    pub position_noise_range: [f64; 2],
    /// Speed noise in percent of `speed_unit`.
    pub speed_noise_range: [f64; 2],
    /// Cells per step corresponding to 100 speed-noise points.
    pub speed_unit: f64,
    /// The layout transformation these parameters came from, if any.
    #[serde(default)]
    pub novelty: Option<CrossRoadNovelty>,
}

impl Default for CrossRoadParams {
    fn default() -> Self {
        CrossRoadParams {
            grid_width: 10,
            grid_height: 10,
            cars: DEFAULT_CARS
                .iter()
                .enumerate()
                .map(|(i, &(speed, initial_x))| CarRow {
                    row: i as u32 + 1,
                    speed,
                    initial_x,
                })
                .collect(),
            max_steps: 100,
            position_noise_range: [-1.0, 1.0],
            speed_noise_range: [-10.0, 10.0],
            speed_unit: 1.0,
            novelty: None,
        }
    }
}

impl CrossRoadParams {
    pub fn validate(&self) -> Result<(), EnvError> {
        if self.cars.len() != 8 {
            return Err(EnvError::InvalidParams(format!(
                "crossroad needs exactly 8 cars, got {}",
                self.cars.len()
            )));
        }
        if self.grid_width < 3 || self.grid_height < 3 {
            return Err(EnvError::InvalidParams("grid must be at least 3x3".into()));
        }
        for c in &self.cars {
            if c.row == 0 || c.row >= self.grid_height - 1 {
                return Err(EnvError::InvalidParams(format!(
                    "car row {} must lie strictly between the goal and start rows",
                    c.row
                )));
            }
            if !c.speed.is_finite() || !c.initial_x.is_finite() {
                return Err(EnvError::InvalidParams(
                    "car speed/position must be finite".into(),
                ));
            }
        }
        if self.max_steps == 0 {
            return Err(EnvError::InvalidParams("max_steps must be > 0".into()));
        }
        Ok(())
    }

    pub fn start_cell(&self) -> (i32, i32) {
        (self.grid_width as i32 / 2, self.grid_height as i32 - 1)
    }

    fn wrap(&self, x: f64) -> f64 {
        x.rem_euclid(self.grid_width as f64)
    }

    fn in_grid(&self, x: i32, y: i32) -> bool {
        x >= 0 && y >= 0 && x < self.grid_width as i32 && y < self.grid_height as i32
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossRoadState {
    pub player: (i32, i32),
    /// Real-valued x of each car, parallel to `CrossRoadParams::cars`.
    pub car_x: Vec<f64>,
}

impl CrossRoadState {
    pub fn initial(params: &CrossRoadParams) -> Self {
        CrossRoadState {
            player: params.start_cell(),
            car_x: params
                .cars
                .iter()
                .map(|c| params.wrap(c.initial_x))
                .collect(),
        }
    }

    /// Cells occupied by cars, parallel to `params.cars`.
    pub fn car_cells<'a>(
        &'a self,
        params: &'a CrossRoadParams,
    ) -> impl Iterator<Item = (i32, i32)> + 'a {
        self.car_x
            .iter()
            .zip(&params.cars)
            .map(move |(&x, c)| (car_column(x, params.grid_width), c.row as i32))
    }

    pub fn collides(&self, params: &CrossRoadParams) -> bool {
        self.car_cells(params).any(|cell| cell == self.player)
    }
}

fn car_column(x: f64, width: u32) -> i32 {
    (x.floor() as i64).rem_euclid(width as i64) as i32
}

/// Player `(x, y)` followed by the eight neighbor slots; each slot carries the
/// cell coordinates when a car occupies it and `(-1, -1)` otherwise.
pub fn crossroad_observe(state: &CrossRoadState, params: &CrossRoadParams) -> Vec<f64> {
    let (px, py) = state.player;
    let mut obs = Vec::with_capacity(18);
    obs.push(px as f64);
    obs.push(py as f64);
    for (dx, dy) in NEIGHBOR_OFFSETS {
        let (nx, ny) = (px + dx, py + dy);
        let occupied = params.in_grid(nx, ny) && state.car_cells(params).any(|c| c == (nx, ny));
        if occupied {
            obs.push(nx as f64);
            obs.push(ny as f64);
        } else {
            obs.push(SENTINEL);
            obs.push(SENTINEL);
        }
    }
    obs
}

pub fn crossroad_step(
    state: &EnvState,
    action: CrossRoadAction,
    params: &CrossRoadParams,
) -> Result<StepResult, EnvError> {
    let Internal::CrossRoad(inner) = &state.internal else {
        return Err(EnvError::InvalidState("expected a crossroad state".into()));
    };
    if inner.car_x.len() != params.cars.len() {
        return Err(EnvError::InvalidState(format!(
            "state tracks {} cars, params define {}",
            inner.car_x.len(),
            params.cars.len()
        )));
    }
    if !params.in_grid(inner.player.0, inner.player.1) {
        return Err(EnvError::InvalidState(format!(
            "player {:?} off grid",
            inner.player
        )));
    }
    if inner.player.1 == 0 || state.step_count >= params.max_steps {
        return Err(EnvError::Terminated);
    }

    let (dx, dy) = action.delta();
    let player = (
        (inner.player.0 + dx).clamp(0, params.grid_width as i32 - 1),
        (inner.player.1 + dy).clamp(0, params.grid_height as i32 - 1),
    );
    let car_x = inner
        .car_x
        .iter()
        .zip(&params.cars)
        .map(|(&x, c)| params.wrap(x + c.speed))
        .collect();
    let next = CrossRoadState { player, car_x };

    let step_count = state.step_count + 1;
    let (reward, cause) = if player.1 == 0 {
        (1.0, TerminalCause::Goal)
    } else if next.collides(params) {
        (-1.0, TerminalCause::Failure)
    } else if step_count >= params.max_steps {
        (-1.0, TerminalCause::Timeout)
    } else {
        (0.0, TerminalCause::None)
    };
    let next_state = EnvState::crossroad(next, params).with_step_count(step_count);
    Ok(StepResult::new(next_state, reward, cause))
}
