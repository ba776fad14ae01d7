//! Fixtures shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use napping::napping::{PrincipleKey, PrincipleStore, StoreSnapshot, UpdateOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(anchor, baseline action), candidates, tested, best score`.
pub type ExpectedPrinciple = ((usize, usize), Vec<usize>, Vec<usize>, f64);

/// One hand-traced run of the update state machine.
pub struct Scenario {
    pub name: &'static str,
    pub action_count: usize,
    pub thre: f64,
    pub sup: Option<f64>,
    /// `(ms, a_agent, a_ap, score)` applied in order.
    pub steps: Vec<(Vec<f64>, usize, usize, f64)>,
    pub last: UpdateOutcome,
    pub anchors: Vec<Vec<f64>>,
    pub principles: Vec<ExpectedPrinciple>,
    pub uncovered: u64,
}

fn key(anchor_id: usize, baseline_action: usize) -> PrincipleKey {
    PrincipleKey {
        anchor_id,
        baseline_action,
    }
}

fn step(ms: f64, a_agent: usize, a_ap: usize, score: f64) -> (Vec<f64>, usize, usize, f64) {
    (vec![ms], a_agent, a_ap, score)
}

/// Expected contents come from stepping through the update rules by hand; thre = 0
/// and sup = 2 unless stated.
pub fn scenarios() -> Vec<Scenario> {
    let base = |name, action_count, steps, last, anchors: &[f64], principles, uncovered| Scenario {
        name,
        action_count,
        thre: 0.0,
        sup: Some(2.0),
        steps,
        last,
        anchors: anchors.iter().map(|&a| vec![a]).collect(),
        principles,
        uncovered,
    };
    vec![
        base(
            "empty store, score below threshold opens the other actions",
            3,
            vec![step(0.0, 0, 0, -1.0)],
            UpdateOutcome::Created {
                key: key(0, 0),
                closed: false,
            },
            &[0.0],
            vec![((0, 0), vec![1, 2], vec![0], -1.0)],
            0,
        ),
        base(
            "empty store, score at threshold keeps the baseline action",
            3,
            vec![step(0.0, 0, 0, 0.0)],
            UpdateOutcome::Created {
                key: key(0, 0),
                closed: true,
            },
            &[0.0],
            vec![((0, 0), vec![0], vec![0], 0.0)],
            0,
        ),
        base(
            "empty store, sup score creates a closed principle",
            3,
            vec![step(0.0, 1, 1, 2.0)],
            UpdateOutcome::Created {
                key: key(0, 1),
                closed: true,
            },
            &[0.0],
            vec![((0, 1), vec![1], vec![1], 2.0)],
            0,
        ),
        base(
            "sup score collapses an open principle",
            3,
            vec![step(0.0, 0, 0, -1.0), step(0.1, 0, 2, 2.0)],
            UpdateOutcome::SupClosed { key: key(0, 0) },
            &[0.0],
            vec![((0, 0), vec![2], vec![0, 2], 2.0)],
            0,
        ),
        base(
            "improvement over best drops other tested candidates",
            4,
            vec![
                step(0.0, 0, 0, -1.0),
                step(0.0, 0, 1, 0.5),
                step(0.0, 0, 2, 1.0),
            ],
            UpdateOutcome::Improved {
                key: key(0, 0),
                removed: vec![1],
            },
            &[0.0],
            vec![((0, 0), vec![2, 3], vec![0, 1, 2], 1.0)],
            0,
        ),
        base(
            "tie with best at threshold drops other tested candidates",
            4,
            vec![
                step(0.0, 0, 0, -1.0),
                step(0.0, 0, 1, 0.5),
                step(0.0, 0, 2, 0.5),
            ],
            UpdateOutcome::TiedAccepted {
                key: key(0, 0),
                removed: vec![1],
            },
            &[0.0],
            vec![((0, 0), vec![2, 3], vec![0, 1, 2], 0.5)],
            0,
        ),
        base(
            "tie with best below threshold eliminates the played action",
            3,
            vec![step(0.0, 0, 0, -1.0), step(0.0, 0, 1, -1.0)],
            UpdateOutcome::TiedRejected { key: key(0, 0) },
            &[0.0],
            vec![((0, 0), vec![2], vec![0, 1], -1.0)],
            0,
        ),
        base(
            "below best and threshold on an open principle eliminates the played action",
            3,
            vec![step(0.0, 0, 0, -0.5), step(0.0, 0, 1, -1.0)],
            UpdateOutcome::Rejected { key: key(0, 0) },
            &[0.0],
            vec![((0, 0), vec![2], vec![0, 1], -0.5)],
            0,
        ),
        base(
            "failing closed principle spawns a new anchor and keeps the old one",
            3,
            vec![
                step(0.0, 0, 0, -0.5),
                step(0.0, 0, 1, -1.0),
                step(0.4, 0, 2, -1.0),
            ],
            UpdateOutcome::Spawned {
                key: key(1, 0),
                failed: key(0, 0),
            },
            &[0.0, 0.4],
            vec![
                ((0, 0), vec![2], vec![0, 1], -0.5),
                ((1, 0), vec![1, 2], vec![2], -1.0),
            ],
            0,
        ),
        base(
            "missing key in an occupied region creates a closed principle at ms",
            3,
            vec![step(0.0, 0, 0, -1.0), step(0.2, 1, 1, 0.5)],
            UpdateOutcome::Created {
                key: key(1, 1),
                closed: true,
            },
            &[0.0, 0.2],
            vec![
                ((0, 0), vec![1, 2], vec![0], -1.0),
                ((1, 1), vec![1], vec![1], 0.5),
            ],
            0,
        ),
        base(
            "missing key below threshold creates an open principle at ms",
            3,
            vec![step(0.0, 0, 0, -1.0), step(0.2, 1, 1, -1.0)],
            UpdateOutcome::Created {
                key: key(1, 1),
                closed: false,
            },
            &[0.0, 0.2],
            vec![
                ((0, 0), vec![1, 2], vec![0], -1.0),
                ((1, 1), vec![0, 2], vec![1], -1.0),
            ],
            0,
        ),
        base(
            "missing key exactly on an anchor reuses that anchor",
            3,
            vec![step(0.0, 0, 0, -1.0), step(0.0, 1, 1, -1.0)],
            UpdateOutcome::Created {
                key: key(0, 1),
                closed: false,
            },
            &[0.0],
            vec![
                ((0, 0), vec![1, 2], vec![0], -1.0),
                ((0, 1), vec![0, 2], vec![1], -1.0),
            ],
            0,
        ),
        base(
            "below best but above threshold changes nothing and is counted",
            3,
            vec![
                step(0.0, 0, 0, -1.0),
                step(0.0, 0, 1, 1.0),
                step(0.0, 0, 2, 0.5),
            ],
            UpdateOutcome::Uncovered { key: key(0, 0) },
            &[0.0],
            vec![((0, 0), vec![1, 2], vec![0, 1, 2], 1.0)],
            1,
        ),
        base(
            "sup score on a closed principle leaves it untouched",
            3,
            vec![step(0.0, 0, 0, 0.0), step(0.0, 0, 0, 2.0)],
            UpdateOutcome::Unchanged { key: key(0, 0) },
            &[0.0],
            vec![((0, 0), vec![0], vec![0], 0.0)],
            0,
        ),
        base(
            "update resolves to the nearest anchor's region",
            3,
            vec![
                step(0.0, 0, 0, -1.0),
                step(10.0, 1, 1, -1.0),
                step(6.0, 1, 2, 2.0),
            ],
            UpdateOutcome::SupClosed { key: key(1, 1) },
            &[0.0, 10.0],
            vec![
                ((0, 0), vec![1, 2], vec![0], -1.0),
                ((1, 1), vec![2], vec![1, 2], 2.0),
            ],
            0,
        ),
        Scenario {
            name: "two actions at thre = sup: a failing flip principle ties its best and stays",
            action_count: 2,
            thre: 1.0,
            sup: Some(1.0),
            steps: vec![step(0.0, 0, 0, 0.0), step(0.3, 0, 1, 0.0)],
            last: UpdateOutcome::Unchanged { key: key(0, 0) },
            anchors: vec![vec![0.0]],
            principles: vec![((0, 0), vec![1], vec![0, 1], 0.0)],
            uncovered: 0,
        },
    ]
}

/// Replays `sc` and returns the first mismatch, if any.
pub fn check_scenario(sc: &Scenario) -> Result<(), String> {
    let mut store = PrincipleStore::new(sc.action_count);
    let mut last = None;
    for (ms, a_agent, a_ap, score) in &sc.steps {
        last = Some(
            store
                .update_with_score(ms, *a_agent, *a_ap, *score, sc.thre, sc.sup)
                .map_err(|e| format!("update failed: {e}"))?,
        );
    }
    if last.as_ref() != Some(&sc.last) {
        return Err(format!("last outcome {last:?}, expected {:?}", sc.last));
    }
    let snap = store.snapshot();
    if snap.anchors != sc.anchors {
        return Err(format!(
            "anchors {:?}, expected {:?}",
            snap.anchors, sc.anchors
        ));
    }
    let got: Vec<_> = snap
        .principles
        .iter()
        .map(|e| {
            (
                (e.key.anchor_id, e.key.baseline_action),
                e.candidates.clone(),
                e.tested.clone(),
                e.best_score,
            )
        })
        .collect();
    if got != sc.principles {
        return Err(format!("principles {got:?}, expected {:?}", sc.principles));
    }
    if snap.uncovered_hits != sc.uncovered {
        return Err(format!(
            "uncovered {}, expected {}",
            snap.uncovered_hits, sc.uncovered
        ));
    }
    Ok(())
}

/// Random select/update operations checking, after each one, that candidate sets
/// only shrink, closed status means exactly one candidate, and anchors are only
/// appended. Returns the number of operations applied.
pub fn fuzz_store(seed: u64, operations: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scores = [-1.0, 0.0, 0.5, 1.0, 2.0];
    let mut done = 0;
    while done < operations {
        let action_count = rng.random_range(2..=5);
        let mut store = PrincipleStore::new(action_count);
        let mut prev = store.snapshot();
        for _ in 0..rng.random_range(1..=400) {
            let ms: Vec<f64> = (0..2).map(|_| rng.random_range(-3..=3) as f64).collect();
            let a_agent = rng.random_range(0..action_count);
            let a_ap = store
                .select(&ms, a_agent, &mut rng)
                .map_err(|e| e.to_string())?;
            let score = scores[rng.random_range(0..scores.len())];
            store
                .update_with_score(&ms, a_agent, a_ap, score, 0.0, Some(2.0))
                .map_err(|e| format!("op {done}: {e}"))?;
            let next = store.snapshot();
            check_invariants(&prev, &next).map_err(|e| format!("op {done}: {e}"))?;
            prev = next;
            done += 1;
            if done == operations {
                break;
            }
        }
    }
    Ok(done)
}

fn check_invariants(prev: &StoreSnapshot, next: &StoreSnapshot) -> Result<(), String> {
    if next.anchors.len() < prev.anchors.len()
        || next.anchors[..prev.anchors.len()] != prev.anchors[..]
    {
        return Err("anchors were not append-only".into());
    }
    let before: BTreeMap<_, _> = prev
        .principles
        .iter()
        .map(|e| (e.key, &e.candidates))
        .collect();
    for e in &next.principles {
        if e.candidates.is_empty() {
            return Err(format!("{:?} has no candidates", e.key));
        }
        let closed = e.status == napping::napping::PrincipleStatus::Closed;
        if closed != (e.candidates.len() == 1) {
            return Err(format!(
                "{:?} status {:?} with {:?}",
                e.key, e.status, e.candidates
            ));
        }
        if let Some(old) = before.get(&e.key) {
            if !e.candidates.iter().all(|a| old.contains(a)) {
                return Err(format!(
                    "{:?} grew from {old:?} to {:?}",
                    e.key, e.candidates
                ));
            }
        }
    }
    if before
        .keys()
        .any(|k| !next.principles.iter().any(|e| e.key == *k))
    {
        return Err("a principle disappeared".into());
    }
    Ok(())
}

/// Exhaustive nearest-anchor oracle: full distance table, then the first minimum.
pub fn nearest_by_scan(anchors: &[Vec<f64>], q: &[f64]) -> usize {
    let dists: Vec<f64> = anchors
        .iter()
        .map(|a| {
            a.iter()
                .zip(q)
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let min = dists.iter().copied().fold(f64::INFINITY, f64::min);
    dists.iter().position(|&d| d == min).expect("non-empty")
}

/// Runs `instances` random (anchor set, query) pairs and returns the mismatches.
pub fn nearest_anchor_mismatches(seed: u64, instances: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..instances {
        let dim = rng.random_range(1..=32);
        let n = rng.random_range(1..=64);
        // Coarse lattice half the time so exact ties occur.
        let lattice = rng.random_bool(0.5);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..dim)
                .map(|_| {
                    if lattice {
                        rng.random_range(-2..=2) as f64
                    } else {
                        rng.random_range(-1.0..1.0)
                    }
                })
                .collect()
        };
        let anchors: Vec<Vec<f64>> = (0..n).map(|_| draw(&mut rng)).collect();
        let q = draw(&mut rng);
        let store = PrincipleStore::from_snapshot(StoreSnapshot {
            action_count: 2,
            anchors: anchors.clone(),
            principles: vec![],
            uncovered_hits: 0,
        })
        .expect("valid snapshot");
        let got = store.nearest_anchor(&q).expect("non-empty");
        let want = nearest_by_scan(&anchors, &q);
        if got != want {
            bad.push(format!("instance {i}: got {got}, expected {want}"));
        }
    }
    bad
}
