//! Sweeps the MountainCar force/gravity grid and draws, per agent, which cells
//! end in failure (any timed-out episode among the last ten).
//!
//! ```bash
//! cargo run --release --example mountaincar_failures -- 8
//! ```

use napping::baseline::{self, BaselineError, TrainConfig};
use napping::trial::{self, AgentMode, TrialConfig};
use napping::{Domain, EnvParams};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("grid size"))
        .unwrap_or(8);
    let domain = Domain::MountainCar;
    let policy = match baseline::train(
        &EnvParams::default_for(domain),
        &TrainConfig::default_for(domain),
    ) {
        Ok(p) => p,
        Err(BaselineError::TargetUnmet { best, .. }) => *best,
        Err(e) => panic!("{e}"),
    };
    let grid = trial::mountaincar_grid(n);
    for mode in AgentMode::ALL {
        let configs: Vec<TrialConfig> = grid
            .iter()
            .enumerate()
            .map(|(i, p)| TrialConfig::new(mode, p.clone(), 1000 + i as u64))
            .collect();
        let records = trial::run_trials(&configs, &policy).expect("trials");
        let failed = records.iter().filter(|r| trial::failed(r)).count();
        println!(
            "{mode}: {failed}/{} cells failed (rows: force, columns: gravity)",
            grid.len()
        );
        for row in records.chunks(n) {
            let line: String = row
                .iter()
                .map(|r| if trial::failed(r) { 'X' } else { '.' })
                .collect();
            println!("  {line}");
        }
    }
}
