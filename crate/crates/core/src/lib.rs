//! Novelty adaptation for small trained policies.
//!
//! - [`envs`]: CartPole, MountainCar and CrossRoad with parameter-level novelties.
//! - [`baseline`]: a two-hidden-layer policy whose embedding feeds the adaptation
//!   layer, trained with the cross-entropy method.
//! - [`napping`]: adaptation principles over a Voronoi partition of the embedding.
//! - [`trial`]: the 80-episode open-world trial protocol and its aggregation.
//! - [`cli`]: manifests, CSV output and the `train` / `run` / `sweep` / `report` commands.

pub mod baseline;
pub mod cli;
pub mod envs;
pub mod napping;
pub mod trial;

pub use baseline::{BaselinePolicy, TrainConfig};
pub use envs::{Domain, EnvParams};
pub use napping::{EvalSpec, PrincipleStore};
