use std::collections::BTreeMap;

use serde::Serialize;

use super::{AgentMode, TrialError, TrialRecord};
use crate::baseline::solved;
use crate::envs::Domain;

/// Post-novelty indices whose rewards make up the "final" window.
pub const LAST10: (i32, i32) = (30, 40);
/// Post-novelty indices whose rewards make up the "first" window.
pub const FIRST5: (i32, i32) = (0, 5);

/// Median with the mean of the two middle values for even lengths.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Whether a trial ends in failure, judged on its last ten post-novelty episodes.
///
/// CartPole: mean reward below 150. MountainCar: any episode that never reached
/// the goal. CrossRoad: mean reward below 0.
pub fn failed(record: &TrialRecord) -> bool {
    let last = record.post_window(LAST10.0, LAST10.1);
    let Some(m) = mean(&last) else { return true };
    match record.config.domain {
        Domain::CartPole => m < 150.0,
        Domain::MountainCar => record
            .post()
            .filter(|e| e.episode_index >= LAST10.0 && e.episode_index < LAST10.1)
            .any(|e| !solved(Domain::MountainCar, e.terminal_cause)),
        Domain::CrossRoad => m < 0.0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub episode_index: i32,
    pub median: f64,
    pub mean: f64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeSummary {
    pub agent_mode: AgentMode,
    pub trials: usize,
    pub curve: Vec<CurvePoint>,
    /// Pooled over trials and post-novelty indices 0..5.
    pub first5_median: f64,
    pub first5_mean: f64,
    /// Pooled over trials and post-novelty indices 30..40.
    pub last10_median: f64,
    pub last10_mean: f64,
    pub failed: usize,
    /// Fraction of post-novelty episodes that ended solved.
    pub solve_rate: f64,
    pub mean_principles_open: f64,
    pub mean_principles_closed: f64,
    pub uncovered_updates: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub domain: Domain,
    pub modes: Vec<ModeSummary>,
}

impl Summary {
    pub fn mode(&self, mode: AgentMode) -> Option<&ModeSummary> {
        self.modes.iter().find(|m| m.agent_mode == mode)
    }

    /// `100 * (frozen_failed - napping_failed) / frozen_failed`; `None` unless both
    /// modes are present and the frozen agent failed at least once.
    pub fn failure_reduction_pct(&self) -> Option<f64> {
        let frozen = self.mode(AgentMode::Frozen)?.failed as f64;
        let napping = self.mode(AgentMode::Napping)?.failed as f64;
        (frozen > 0.0).then(|| 100.0 * (frozen - napping) / frozen)
    }
}

fn summarize(mode: AgentMode, records: &[&TrialRecord]) -> ModeSummary {
    let mut by_index: BTreeMap<i32, Vec<f64>> = BTreeMap::new();
    for r in records {
        for e in &r.episodes {
            by_index
                .entry(e.episode_index)
                .or_default()
                .push(e.total_reward);
        }
    }
    let curve = by_index
        .iter()
        .map(|(&episode_index, v)| CurvePoint {
            episode_index,
            median: median(v).unwrap_or(f64::NAN),
            mean: mean(v).unwrap_or(f64::NAN),
            trials: v.len(),
        })
        .collect();
    let pooled = |(from, to): (i32, i32)| -> Vec<f64> {
        records
            .iter()
            .flat_map(|r| r.post_window(from, to))
            .collect()
    };
    let (first, last) = (pooled(FIRST5), pooled(LAST10));
    let post: Vec<_> = records.iter().flat_map(|r| r.post()).collect();
    let solved_count = post
        .iter()
        .filter(|e| solved(records[0].config.domain, e.terminal_cause))
        .count();
    let final_counts: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.episodes.last())
        .map(|e| (e.principles_open as f64, e.principles_closed as f64))
        .collect();
    let n = records.len() as f64;
    ModeSummary {
        agent_mode: mode,
        trials: records.len(),
        curve,
        first5_median: median(&first).unwrap_or(f64::NAN),
        first5_mean: mean(&first).unwrap_or(f64::NAN),
        last10_median: median(&last).unwrap_or(f64::NAN),
        last10_mean: mean(&last).unwrap_or(f64::NAN),
        failed: records.iter().filter(|r| failed(r)).count(),
        solve_rate: if post.is_empty() {
            0.0
        } else {
            solved_count as f64 / post.len() as f64
        },
        mean_principles_open: final_counts.iter().map(|c| c.0).sum::<f64>() / n,
        mean_principles_closed: final_counts.iter().map(|c| c.1).sum::<f64>() / n,
        uncovered_updates: records.iter().map(|r| r.uncovered_updates).sum(),
    }
}

/// Groups records by agent mode (in [`AgentMode::ALL`] order) and summarizes each.
pub fn aggregate(records: &[TrialRecord]) -> Result<Summary, TrialError> {
    let Some(first) = records.first() else {
        return Err(TrialError::Aggregate("no trial records".into()));
    };
    let domain = first.config.domain;
    if let Some(other) = records.iter().find(|r| r.config.domain != domain) {
        return Err(TrialError::Aggregate(format!(
            "mixed domains: {domain} and {}",
            other.config.domain
        )));
    }
    let modes = AgentMode::ALL
        .into_iter()
        .filter_map(|mode| {
            let group: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.config.agent_mode == mode)
                .collect();
            (!group.is_empty()).then(|| summarize(mode, &group))
        })
        .collect();
    Ok(Summary { domain, modes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{EnvParams, TerminalCause};
    use crate::trial::{EpisodeRecord, TrialConfig};

    fn record(domain: Domain, mode: AgentMode, rewards: impl Fn(i32) -> f64) -> TrialRecord {
        let config = TrialConfig::new(mode, EnvParams::default_for(domain), 0);
        let episodes = (-40..40)
            .map(|i| EpisodeRecord {
                episode_index: i,
                total_reward: rewards(i),
                steps: 1,
                detected: false,
                principles_open: 0,
                principles_closed: 0,
                terminal_cause: TerminalCause::Timeout,
            })
            .collect();
        TrialRecord {
            config,
            episodes,
            uncovered_updates: 0,
            store: None,
            wall_time_ms: 0.0,
        }
    }

    // Oracle: the median is the value with as many entries at or below it as at or
    // above it; for even counts, the midpoint of the two central order statistics.
    fn brute_median(v: &[f64]) -> f64 {
        let n = v.len();
        let rank = |x: f64| v.iter().filter(|&&y| y < x).count();
        let kth = |k: usize| {
            *v.iter()
                .find(|&&x| rank(x) <= k && k < rank(x) + v.iter().filter(|&&y| y == x).count())
                .unwrap()
        };
        if n % 2 == 1 {
            kth(n / 2)
        } else {
            0.5 * (kth(n / 2 - 1) + kth(n / 2))
        }
    }

    #[test]
    fn median_matches_rank_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..40 {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-5..5) as f64).collect();
            assert_eq!(median(&v), Some(brute_median(&v)), "{v:?}");
        }
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[1.0, 4.0]), Some(2.5));
    }

    #[test]
    fn cartpole_failure_rule() {
        let ok = record(Domain::CartPole, AgentMode::Frozen, |_| 150.0);
        let bad = record(Domain::CartPole, AgentMode::Frozen, |i| {
            if i >= 30 {
                149.0
            } else {
                200.0
            }
        });
        assert!(!failed(&ok));
        assert!(failed(&bad));
    }

    #[test]
    fn aggregate_pools_windows_and_groups_modes() {
        let recs = vec![
            record(Domain::CrossRoad, AgentMode::Napping, |i| {
                if i >= 30 {
                    2.0
                } else {
                    -1.0
                }
            }),
            record(Domain::CrossRoad, AgentMode::Napping, |i| {
                if i >= 35 {
                    2.0
                } else {
                    -1.0
                }
            }),
            record(Domain::CrossRoad, AgentMode::Frozen, |_| -1.0),
        ];
        let s = aggregate(&recs).unwrap();
        assert_eq!(s.modes.len(), 2);
        assert_eq!(s.modes[0].agent_mode, AgentMode::Frozen);
        let n = s.mode(AgentMode::Napping).unwrap();
        assert_eq!(n.trials, 2);
        assert_eq!(n.curve.len(), 80);
        assert_eq!(n.last10_mean, (10.0 * 2.0 + 5.0 * 2.0 - 5.0) / 20.0);
        assert_eq!(n.last10_median, 2.0);
        assert_eq!(n.first5_median, -1.0);
        assert_eq!(n.failed, 0);
        assert_eq!(s.mode(AgentMode::Frozen).unwrap().failed, 1);
    }

    #[test]
    fn single_trial_curve_is_the_raw_rewards() {
        let r = record(Domain::CartPole, AgentMode::Online, |i| (i + 100) as f64);
        let s = aggregate(std::slice::from_ref(&r)).unwrap();
        let m = &s.modes[0];
        for (p, e) in m.curve.iter().zip(&r.episodes) {
            assert_eq!(
                (p.episode_index, p.median, p.mean),
                (e.episode_index, e.total_reward, e.total_reward)
            );
        }
    }

    #[test]
    fn symmetric_pair_gives_midpoints() {
        let recs = vec![
            record(Domain::CartPole, AgentMode::Frozen, |i| 100.0 + i as f64),
            record(Domain::CartPole, AgentMode::Frozen, |i| 100.0 - i as f64),
        ];
        let s = aggregate(&recs).unwrap();
        assert!(s.modes[0]
            .curve
            .iter()
            .all(|p| p.median == 100.0 && p.trials == 2));
    }

    #[test]
    fn planted_distribution_medians_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let table: Vec<Vec<f64>> = (0..100)
            .map(|_| (0..80).map(|_| rng.random_range(1..=200) as f64).collect())
            .collect();
        let recs: Vec<TrialRecord> = table
            .iter()
            .map(|row| {
                record(Domain::CartPole, AgentMode::Napping, |i| {
                    row[(i + 40) as usize]
                })
            })
            .collect();
        let s = aggregate(&recs).unwrap();
        for (j, p) in s.modes[0].curve.iter().enumerate() {
            let column: Vec<f64> = table.iter().map(|row| row[j]).collect();
            assert_eq!(p.median, brute_median(&column));
        }
    }

    #[test]
    fn failure_reduction_needs_frozen_failures() {
        let fail = |m| record(Domain::CrossRoad, m, |_| -1.0);
        let pass = |m| record(Domain::CrossRoad, m, |_| 1.0);
        let s = aggregate(&[
            fail(AgentMode::Frozen),
            fail(AgentMode::Frozen),
            pass(AgentMode::Napping),
            fail(AgentMode::Napping),
        ])
        .unwrap();
        assert_eq!(s.failure_reduction_pct(), Some(50.0));
        let s = aggregate(&[pass(AgentMode::Frozen), fail(AgentMode::Napping)]).unwrap();
        assert_eq!(s.failure_reduction_pct(), None);
    }

    #[test]
    fn aggregate_rejects_empty_and_mixed() {
        assert!(aggregate(&[]).is_err());
        let recs = vec![
            record(Domain::CrossRoad, AgentMode::Frozen, |_| 0.0),
            record(Domain::CartPole, AgentMode::Frozen, |_| 0.0),
        ];
        assert!(matches!(aggregate(&recs), Err(TrialError::Aggregate(_))));
    }
}
