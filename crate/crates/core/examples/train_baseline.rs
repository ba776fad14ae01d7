//! Trains a baseline policy for each domain and reports validation competence.
//!
//! ```bash
//! cargo run --release --example train_baseline [-- cartpole|mountaincar|crossroad]
//! ```

use std::time::Instant;

use napping::baseline::{self, TrainConfig};
use napping::{Domain, EnvParams};

fn main() {
    let domains: Vec<Domain> = match std::env::args().nth(1) {
        Some(d) => vec![d.parse().expect("domain")],
        None => Domain::ALL.to_vec(),
    };
    for domain in domains {
        let params = EnvParams::default_for(domain);
        let config = TrainConfig {
            seed: 1,
            ..TrainConfig::default_for(domain)
        };
        let start = Instant::now();
        let policy = match baseline::train(&params, &config) {
            Ok(p) => p,
            Err(baseline::BaselineError::TargetUnmet {
                best,
                score,
                target,
            }) => {
                println!("{domain}: target {target} missed (best {score:.3})");
                *best
            }
            Err(e) => panic!("{e}"),
        };
        let stats = baseline::validate(&policy, &params, 100, 12345).unwrap();
        println!(
            "{domain}: trained in {:.1?}, 100-episode mean return {:.1}, solve rate {:.2}",
            start.elapsed(),
            stats.mean_return,
            stats.solve_rate
        );
    }
}
