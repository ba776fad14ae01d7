//! One novelty, one seed, all four agents: prints the per-episode reward curve
//! around the novelty boundary and when each agent flagged the change.
//!
//! ```bash
//! cargo run --release --example adaptation_curve -- crossroad 3
//! cargo run --release --example adaptation_curve -- mountaincar 11
//! ```

use napping::baseline::{self, BaselineError, TrainConfig};
use napping::envs::sample_novelty;
use napping::trial::{self, AgentMode, TrialConfig};
use napping::{Domain, EnvParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1);
    let domain: Domain = args
        .next()
        .unwrap_or_else(|| "crossroad".into())
        .parse()
        .expect("domain");
    let seed: u64 = args.next().map(|s| s.parse().expect("seed")).unwrap_or(3);

    let policy = match baseline::train(
        &EnvParams::default_for(domain),
        &TrainConfig::default_for(domain),
    ) {
        Ok(p) => p,
        Err(BaselineError::TargetUnmet { best, .. }) => *best,
        Err(e) => panic!("{e}"),
    };
    let novelty = sample_novelty(domain, &mut ChaCha8Rng::seed_from_u64(seed));
    println!("novelty: {}", novelty.to_json());

    let configs: Vec<TrialConfig> = AgentMode::ALL
        .iter()
        .map(|&m| TrialConfig::new(m, novelty.clone(), seed))
        .collect();
    let records = trial::run_trials(&configs, &policy).expect("trials");

    print!("{:>6}", "ep");
    for r in &records {
        print!(" {:>9}", r.config.agent_mode.as_str());
    }
    println!();
    for i in -5..40 {
        print!("{i:>6}");
        for r in &records {
            let e = r
                .episodes
                .iter()
                .find(|e| e.episode_index == i)
                .expect("episode");
            print!(
                " {:>8.1}{}",
                e.total_reward,
                if e.detected { '*' } else { ' ' }
            );
        }
        println!();
    }
    for r in &records {
        let store = r.store.as_ref().map_or(0, |s| s.principles.len());
        println!(
            "{:<9} detected at {:?}, {} principles, {} uncovered updates",
            r.config.agent_mode.as_str(),
            r.first_detection(),
            store,
            r.uncovered_updates
        );
    }
}
