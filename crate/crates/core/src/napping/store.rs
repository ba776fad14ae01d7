use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{EvalSpec, NappingError};
use crate::envs::{EnvState, StepResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrincipleKey {
    pub anchor_id: usize,
    pub baseline_action: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrincipleStatus {
    Open,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptationPrinciple {
    candidates: BTreeSet<usize>,
    tested: BTreeSet<usize>,
}

impl AdaptationPrinciple {
    fn new(candidates: BTreeSet<usize>, tested: usize) -> Self {
        debug_assert!(!candidates.is_empty());
        AdaptationPrinciple {
            candidates,
            tested: BTreeSet::from([tested]),
        }
    }

    pub fn candidates(&self) -> &BTreeSet<usize> {
        &self.candidates
    }

    pub fn tested(&self) -> &BTreeSet<usize> {
        &self.tested
    }

    pub fn status(&self) -> PrincipleStatus {
        if self.candidates.len() == 1 {
            PrincipleStatus::Closed
        } else {
            PrincipleStatus::Open
        }
    }

    pub fn is_open(&self) -> bool {
        self.status() == PrincipleStatus::Open
    }

    /// The learned action of a closed principle.
    pub fn action(&self) -> Option<usize> {
        match self.status() {
            PrincipleStatus::Closed => self.candidates.first().copied(),
            PrincipleStatus::Open => None,
        }
    }

    fn retain(&mut self, keep: impl Fn(usize) -> bool) -> Result<Vec<usize>, NappingError> {
        let removed: Vec<usize> = self
            .candidates
            .iter()
            .copied()
            .filter(|&a| !keep(a))
            .collect();
        if removed.len() == self.candidates.len() {
            return Err(NappingError::Invariant(format!(
                "update would empty candidate set {:?}",
                self.candidates
            )));
        }
        for a in &removed {
            self.candidates.remove(a);
        }
        Ok(removed)
    }
}

/// Which branch of the update state machine fired.
#[derive(Clone, Debug, PartialEq)]
pub enum UpdateOutcome {
    /// New principle (empty store, or no principle for the baseline action in the
    /// nearest region). `closed` when the baseline action itself was acceptable.
    Created { key: PrincipleKey, closed: bool },
    /// Score hit the supremum: candidates collapsed to the played action.
    SupClosed { key: PrincipleKey },
    /// Score beat the best: other tested actions dropped.
    Improved {
        key: PrincipleKey,
        removed: Vec<usize>,
    },
    /// Score tied the best and met the threshold: other tested actions dropped.
    TiedAccepted {
        key: PrincipleKey,
        removed: Vec<usize>,
    },
    /// Score tied the best below threshold: played action dropped.
    TiedRejected { key: PrincipleKey },
    /// Score below best and threshold on an open principle: played action dropped.
    Rejected { key: PrincipleKey },
    /// A closed principle failed: a new anchor and open principle were created.
    Spawned {
        key: PrincipleKey,
        failed: PrincipleKey,
    },
    /// Branch matched but its guard (principle still open) did not hold.
    Unchanged { key: PrincipleKey },
    /// Score below the best but at or above the threshold; no rule applies.
    Uncovered { key: PrincipleKey },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipleStore {
    action_count: usize,
    anchors: Vec<Vec<f64>>,
    principles: BTreeMap<PrincipleKey, AdaptationPrinciple>,
    best_score: BTreeMap<PrincipleKey, f64>,
    uncovered_hits: u64,
}

impl PrincipleStore {
    pub fn new(action_count: usize) -> Self {
        assert!(action_count >= 2, "adaptation needs at least two actions");
        PrincipleStore {
            action_count,
            anchors: Vec::new(),
            principles: BTreeMap::new(),
            best_score: BTreeMap::new(),
            uncovered_hits: 0,
        }
    }

    pub fn action_count(&self) -> usize {
        self.action_count
    }

    pub fn anchors(&self) -> &[Vec<f64>] {
        &self.anchors
    }

    pub fn is_empty(&self) -> bool {
        self.principles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.principles.len()
    }

    pub fn principle(&self, key: &PrincipleKey) -> Option<&AdaptationPrinciple> {
        self.principles.get(key)
    }

    pub fn best_score(&self, key: &PrincipleKey) -> Option<f64> {
        self.best_score.get(key).copied()
    }

    pub fn principles(&self) -> impl Iterator<Item = (&PrincipleKey, &AdaptationPrinciple)> {
        self.principles.iter()
    }

    /// `(open, closed)` principle counts.
    pub fn counts(&self) -> (usize, usize) {
        let open = self.principles.values().filter(|p| p.is_open()).count();
        (open, self.principles.len() - open)
    }

    /// Updates that landed in the branch the update rules leave undefined.
    pub fn uncovered_hits(&self) -> u64 {
        self.uncovered_hits
    }

    /// Index of the anchor closest to `ms` in Euclidean distance, ties to the
    /// lowest index.
    pub fn nearest_anchor(&self, ms: &[f64]) -> Result<usize, NappingError> {
        let first = self.anchors.first().ok_or(NappingError::EmptyAnchorSet)?;
        self.check_dim(ms, first.len())?;
        let mut best = (0, f64::INFINITY);
        for (i, anchor) in self.anchors.iter().enumerate() {
            let d: f64 = anchor.iter().zip(ms).map(|(a, b)| (a - b) * (a - b)).sum();
            if d < best.1 {
                best = (i, d);
            }
        }
        Ok(best.0)
    }

    fn check_dim(&self, ms: &[f64], expected: usize) -> Result<(), NappingError> {
        if ms.len() != expected {
            return Err(NappingError::DimensionMismatch {
                expected,
                found: ms.len(),
            });
        }
        Ok(())
    }

    fn check_action(&self, action: usize) -> Result<(), NappingError> {
        if action >= self.action_count {
            return Err(NappingError::InvalidAction {
                action,
                count: self.action_count,
            });
        }
        Ok(())
    }

    /// The action to play: the baseline's unless the nearest region holds a
    /// principle for this baseline action. Open principles draw uniformly from
    /// their candidates.
    pub fn select<R: Rng + ?Sized>(
        &self,
        ms: &[f64],
        a_agent: usize,
        rng: &mut R,
    ) -> Result<usize, NappingError> {
        self.check_action(a_agent)?;
        if self.principles.is_empty() {
            return Ok(a_agent);
        }
        let key = PrincipleKey {
            anchor_id: self.nearest_anchor(ms)?,
            baseline_action: a_agent,
        };
        Ok(match self.principles.get(&key) {
            None => a_agent,
            Some(p) if p.is_open() => {
                let i = rng.random_range(0..p.candidates.len());
                *p.candidates.iter().nth(i).expect("index in range")
            }
            Some(p) => p.action().expect("closed principle has one action"),
        })
    }

    /// Scores the transition with `eval` and applies [`Self::update_with_score`].
    #[allow(clippy::too_many_arguments)]
    pub fn update(
        &mut self,
        ms: &[f64],
        a_agent: usize,
        a_ap: usize,
        s: &EnvState,
        outcome: &StepResult,
        eval: &EvalSpec,
    ) -> Result<UpdateOutcome, NappingError> {
        let score = eval.score(s, a_ap, outcome)?;
        self.update_with_score(ms, a_agent, a_ap, score, eval.thre, eval.sup)
    }

    /// The update state machine, driven by a precomputed score.
    pub fn update_with_score(
        &mut self,
        ms: &[f64],
        a_agent: usize,
        a_ap: usize,
        score: f64,
        thre: f64,
        sup: Option<f64>,
    ) -> Result<UpdateOutcome, NappingError> {
        self.check_action(a_agent)?;
        self.check_action(a_ap)?;
        if self.principles.is_empty() {
            if let Some(first) = self.anchors.first() {
                self.check_dim(ms, first.len())?;
            }
            let key = self.create(ms, a_agent, a_ap, score, thre, None);
            return Ok(UpdateOutcome::Created {
                key,
                closed: score >= thre,
            });
        }

        let anchor_id = self.nearest_anchor(ms)?;
        let key = PrincipleKey {
            anchor_id,
            baseline_action: a_agent,
        };
        let Some(principle) = self.principles.get_mut(&key) else {
            // Reuse the region's anchor when `ms` sits exactly on it; no principle
            // is keyed there for this action yet.
            let on_anchor = self.anchors[anchor_id].as_slice() == ms;
            let key = self.create(
                ms,
                a_agent,
                a_ap,
                score,
                thre,
                on_anchor.then_some(anchor_id),
            );
            return Ok(UpdateOutcome::Created {
                key,
                closed: score >= thre,
            });
        };
        if !principle.candidates.contains(&a_ap) {
            return Err(NappingError::NotACandidate { key, action: a_ap });
        }
        let best = self.best_score[&key];
        let open = principle.is_open();

        let outcome = if sup.is_some_and(|s| score == s) {
            if open {
                principle.retain(|a| a == a_ap)?;
                self.best_score.insert(key, score);
                UpdateOutcome::SupClosed { key }
            } else {
                UpdateOutcome::Unchanged { key }
            }
        } else if score > best || (score == best && score >= thre) {
            if open {
                let tested = principle.tested.clone();
                let removed = principle.retain(|a| a == a_ap || !tested.contains(&a))?;
                self.best_score.insert(key, score);
                if score > best {
                    UpdateOutcome::Improved { key, removed }
                } else {
                    UpdateOutcome::TiedAccepted { key, removed }
                }
            } else {
                UpdateOutcome::Unchanged { key }
            }
        } else if score == best {
            // Tied, below threshold.
            if open {
                principle.retain(|a| a != a_ap)?;
                UpdateOutcome::TiedRejected { key }
            } else {
                UpdateOutcome::Unchanged { key }
            }
        } else if score < thre {
            if open {
                principle.retain(|a| a != a_ap)?;
                UpdateOutcome::Rejected { key }
            } else {
                let new_key = self.spawn(ms, a_agent, a_ap, score);
                return Ok(UpdateOutcome::Spawned {
                    key: new_key,
                    failed: key,
                });
            }
        } else {
            self.uncovered_hits += 1;
            UpdateOutcome::Uncovered { key }
        };
        self.principles
            .get_mut(&key)
            .expect("key present")
            .tested
            .insert(a_ap);
        Ok(outcome)
    }

    fn push_anchor(&mut self, ms: &[f64]) -> usize {
        self.anchors.push(ms.to_vec());
        self.anchors.len() - 1
    }

    fn all_but(&self, action: usize) -> BTreeSet<usize> {
        (0..self.action_count).filter(|&a| a != action).collect()
    }

    fn create(
        &mut self,
        ms: &[f64],
        a_agent: usize,
        a_ap: usize,
        score: f64,
        thre: f64,
        anchor: Option<usize>,
    ) -> PrincipleKey {
        let anchor_id = anchor.unwrap_or_else(|| self.push_anchor(ms));
        let key = PrincipleKey {
            anchor_id,
            baseline_action: a_agent,
        };
        let candidates = if score >= thre {
            BTreeSet::from([a_agent])
        } else {
            self.all_but(a_agent)
        };
        self.principles
            .insert(key, AdaptationPrinciple::new(candidates, a_ap));
        self.best_score.insert(key, score);
        key
    }

    fn spawn(&mut self, ms: &[f64], a_agent: usize, a_ap: usize, score: f64) -> PrincipleKey {
        let anchor_id = self.push_anchor(ms);
        let key = PrincipleKey {
            anchor_id,
            baseline_action: a_agent,
        };
        let candidates = self.all_but(a_agent);
        self.principles
            .insert(key, AdaptationPrinciple::new(candidates, a_ap));
        self.best_score.insert(key, score);
        key
    }

    pub fn snapshot(&self) -> StoreSnapshot {
        StoreSnapshot {
            action_count: self.action_count,
            anchors: self.anchors.clone(),
            principles: self
                .principles
                .iter()
                .map(|(k, p)| PrincipleEntry {
                    key: *k,
                    candidates: p.candidates.iter().copied().collect(),
                    tested: p.tested.iter().copied().collect(),
                    status: p.status(),
                    best_score: self.best_score[k],
                })
                .collect(),
            uncovered_hits: self.uncovered_hits,
        }
    }

    pub fn from_snapshot(snap: StoreSnapshot) -> Result<Self, NappingError> {
        let bad = |m: String| Err(NappingError::Snapshot(m));
        if snap.action_count < 2 {
            return bad("action_count must be at least 2".into());
        }
        let mut store = PrincipleStore::new(snap.action_count);
        if let Some(first) = snap.anchors.first() {
            if snap.anchors.iter().any(|a| a.len() != first.len()) {
                return bad("anchors have differing dimensions".into());
            }
        }
        store.anchors = snap.anchors;
        store.uncovered_hits = snap.uncovered_hits;
        for e in snap.principles {
            if e.key.anchor_id >= store.anchors.len() {
                return bad(format!("principle {:?} references a missing anchor", e.key));
            }
            let in_range = |v: &[usize]| v.iter().all(|&a| a < snap.action_count);
            if e.candidates.is_empty() || !in_range(&e.candidates) || !in_range(&e.tested) {
                return bad(format!("principle {:?} has invalid action sets", e.key));
            }
            let p = AdaptationPrinciple {
                candidates: e.candidates.into_iter().collect(),
                tested: e.tested.into_iter().collect(),
            };
            if p.status() != e.status {
                return bad(format!(
                    "principle {:?} status disagrees with candidates",
                    e.key
                ));
            }
            store.best_score.insert(e.key, e.best_score);
            store.principles.insert(e.key, p);
        }
        Ok(store)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.snapshot()).expect("snapshot serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, NappingError> {
        let snap = serde_json::from_str(text).map_err(|e| NappingError::Snapshot(e.to_string()))?;
        Self::from_snapshot(snap)
    }
}

/// Serializable view of a store for post-hoc inspection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StoreSnapshot {
    pub action_count: usize,
    pub anchors: Vec<Vec<f64>>,
    pub principles: Vec<PrincipleEntry>,
    pub uncovered_hits: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipleEntry {
    pub key: PrincipleKey,
    pub candidates: Vec<usize>,
    pub tested: Vec<usize>,
    pub status: PrincipleStatus,
    pub best_score: f64,
}
