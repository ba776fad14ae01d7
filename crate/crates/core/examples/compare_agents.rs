//! Runs all four agents against the same novelty set and prints a summary table.
//!
//! ```bash
//! cargo run --release --example compare_agents -- cartpole 50
//! cargo run --release --example compare_agents -- mountaincar 8
//! cargo run --release --example compare_agents -- crossroad 10
//! ```
//!
//! The count means trials for CartPole, grid resolution per axis for MountainCar
//! and trials per layout base for CrossRoad.

use napping::baseline::{self, BaselineError, TrainConfig};
use napping::envs::{crossroad_novelty, CrossRoadNovelty};
use napping::trial::{self, AgentMode, TrialConfig};
use napping::{Domain, EnvParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mean reward at post-novelty index 5 minus the mean over indices 0..5.
fn jump(m: &trial::ModeSummary) -> f64 {
    let at = |i: i32| {
        m.curve
            .iter()
            .find(|p| p.episode_index == i)
            .map_or(f64::NAN, |p| p.mean)
    };
    at(5) - (0..5).map(at).sum::<f64>() / 5.0
}

fn main() {
    let mut args = std::env::args().skip(1);
    let domain: Domain = args
        .next()
        .unwrap_or_else(|| "cartpole".into())
        .parse()
        .expect("domain");
    let count: usize = args.next().map(|s| s.parse().expect("count")).unwrap_or(10);
    let train_seed: u64 = args.next().map(|s| s.parse().expect("seed")).unwrap_or(1);

    let params = EnvParams::default_for(domain);
    let policy = match baseline::train(
        &params,
        &TrainConfig {
            seed: train_seed,
            ..TrainConfig::default_for(domain)
        },
    ) {
        Ok(p) => p,
        Err(BaselineError::TargetUnmet { best, .. }) => *best,
        Err(e) => panic!("{e}"),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let novelties: Vec<EnvParams> = match domain {
        Domain::CartPole => (0..count)
            .map(|_| trial::cartpole_middle_half(&mut rng))
            .collect(),
        Domain::MountainCar => trial::mountaincar_grid(count),
        Domain::CrossRoad => CrossRoadNovelty::ALL
            .iter()
            .flat_map(|&b| (0..count).map(move |_| b))
            .map(|b| EnvParams::CrossRoad(crossroad_novelty(b, &mut rng)))
            .collect(),
    };
    let configs: Vec<TrialConfig> = AgentMode::ALL
        .iter()
        .flat_map(|&mode| {
            novelties
                .iter()
                .enumerate()
                .map(move |(i, n)| TrialConfig::new(mode, n.clone(), 1000 + i as u64))
        })
        .collect();
    let records = trial::run_trials(&configs, &policy).expect("trials");
    let summary = trial::aggregate(&records).expect("aggregate");

    println!("{domain}: {} novelties", novelties.len());
    println!(
        "{:<9} {:>8} {:>8} {:>8} {:>8} {:>7} {:>6} {:>6} {:>7}",
        "mode", "first5", "last10", "l10mean", "solve", "failed", "open", "closed", "jump5"
    );
    for m in &summary.modes {
        println!(
            "{:<9} {:>8.1} {:>8.1} {:>8.2} {:>8.2} {:>7} {:>6.1} {:>6.1} {:>7.1}",
            m.agent_mode,
            m.first5_median,
            m.last10_median,
            m.last10_mean,
            m.solve_rate,
            m.failed,
            m.mean_principles_open,
            m.mean_principles_closed,
            jump(m)
        );
    }
    if domain == Domain::CrossRoad {
        for (b, base) in CrossRoadNovelty::ALL.iter().enumerate() {
            let line: Vec<String> = AgentMode::ALL
                .iter()
                .map(|&mode| {
                    let rs: Vec<f64> = records
                        .iter()
                        .filter(|r| r.config.agent_mode == mode)
                        .skip(b * count)
                        .take(count)
                        .flat_map(|r| r.post_window(30, 40))
                        .collect();
                    format!("{mode}={:.2}", rs.iter().sum::<f64>() / rs.len() as f64)
                })
                .collect();
            println!("  {:<18} {}", base.name(), line.join(" "));
        }
    }
}
