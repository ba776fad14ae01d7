//! Versioned JSON weight files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BaselineError, BaselinePolicy, Layer, TrainMeta};
use crate::envs::Domain;

pub const WEIGHT_FORMAT_VERSION: &str = "napping-weights/1";

#[derive(Serialize, Deserialize)]
struct WeightFile {
    version: String,
    domain: Domain,
    layer_sizes: Vec<usize>,
    weights: Vec<LayerWeights>,
    seed: u64,
    train_score: f64,
}

#[derive(Serialize, Deserialize)]
struct LayerWeights {
    /// Row-major `outputs x inputs`.
    matrix: Vec<f64>,
    bias: Vec<f64>,
}

pub fn to_string(policy: &BaselinePolicy) -> String {
    let file = WeightFile {
        version: WEIGHT_FORMAT_VERSION.to_string(),
        domain: policy.domain,
        layer_sizes: policy.layer_sizes.clone(),
        weights: policy
            .layers
            .iter()
            .map(|l| LayerWeights {
                matrix: l.weights.clone(),
                bias: l.bias.clone(),
            })
            .collect(),
        seed: policy.meta.seed,
        train_score: policy.meta.train_score,
    };
    serde_json::to_string_pretty(&file).expect("weights serialize")
}

pub fn from_str(text: &str) -> Result<BaselinePolicy, BaselineError> {
    let file: WeightFile =
        serde_json::from_str(text).map_err(|e| BaselineError::Format(e.to_string()))?;
    if file.version != WEIGHT_FORMAT_VERSION {
        return Err(BaselineError::Format(format!(
            "unsupported version `{}` (expected `{WEIGHT_FORMAT_VERSION}`)",
            file.version
        )));
    }
    let sizes = &file.layer_sizes;
    if sizes.len() != 4 {
        return Err(BaselineError::Format(format!(
            "expected 4 layer sizes, got {}",
            sizes.len()
        )));
    }
    if sizes[0] != file.domain.observation_len() || sizes[3] != file.domain.action_count() {
        return Err(BaselineError::Format(format!(
            "layer sizes {sizes:?} do not fit domain {}",
            file.domain
        )));
    }
    if file.weights.len() != sizes.len() - 1 {
        return Err(BaselineError::Format(
            "layer count does not match layer_sizes".into(),
        ));
    }
    let mut layers = Vec::with_capacity(file.weights.len());
    for (i, (w, dims)) in file.weights.into_iter().zip(sizes.windows(2)).enumerate() {
        let (inputs, outputs) = (dims[0], dims[1]);
        if w.matrix.len() != inputs * outputs || w.bias.len() != outputs {
            return Err(BaselineError::Format(format!(
                "layer {i} has the wrong shape"
            )));
        }
        layers.push(Layer {
            inputs,
            outputs,
            weights: w.matrix,
            bias: w.bias,
        });
    }
    Ok(BaselinePolicy {
        domain: file.domain,
        layer_sizes: file.layer_sizes,
        layers,
        meta: TrainMeta {
            seed: file.seed,
            train_score: file.train_score,
        },
    })
}

pub fn save(policy: &BaselinePolicy, path: &Path) -> Result<(), BaselineError> {
    fs::write(path, to_string(policy))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<BaselinePolicy, BaselineError> {
    from_str(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::{perturb, DEFAULT_HIDDEN};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn policy(seed: u64, sigma: f64) -> BaselinePolicy {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = perturb(
            &BaselinePolicy::zeros(Domain::CrossRoad, DEFAULT_HIDDEN),
            sigma,
            &mut rng,
        );
        p.meta = TrainMeta {
            seed,
            train_score: 0.97,
        };
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn save_load_is_bit_exact(seed in any::<u64>(), sigma in 1e-8f64..1e3) {
            let p = policy(seed, sigma);
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("w.json");
            save(&p, &path).unwrap();
            let q = load(&path).unwrap();
            for (a, b) in p.params().iter().zip(q.params()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn wrong_version_is_rejected() {
        let text = to_string(&policy(1, 0.3)).replace(WEIGHT_FORMAT_VERSION, "napping-weights/0");
        assert!(matches!(from_str(&text), Err(BaselineError::Format(m)) if m.contains("version")));
    }

    #[test]
    fn truncated_file_is_rejected() {
        let text = to_string(&policy(2, 0.3));
        assert!(matches!(
            from_str(&text[..text.len() / 2]),
            Err(BaselineError::Format(_))
        ));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let text = to_string(&policy(3, 0.3)).replacen("18", "17", 1);
        assert!(from_str(&text).is_err());
    }
}
