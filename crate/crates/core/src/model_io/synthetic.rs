//! Seeded fixture generator: a random linear model plus a dataset it
//! separates with a guaranteed relative margin.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LabeledDataset, TestInstance, TrainedModel};
use crate::error::{Error, Result};
use crate::host::oracle_decision;

pub const DEFAULT_SYNTHETIC_INSTANCES: usize = 64;

/// Minimum `|D - b| / (1 + |D|)` of every generated instance under the
/// double-precision decision function.
pub const SYNTHETIC_MARGIN: f64 = 1e-3;

const MAX_DRAWS_PER_INSTANCE: usize = 1_000_000;

pub fn make_synthetic(sv_count: usize, feature_count: usize, seed: u64) -> Result<(TrainedModel, LabeledDataset)> {
    make_synthetic_with(sv_count, feature_count, seed, DEFAULT_SYNTHETIC_INSTANCES)
}

/// Values are drawn in `[-1, 1]`; support-vector entries and alpha*y have
/// magnitude at least 0.1 so the weight vector cannot vanish. Labels come
/// from the double-precision decision function, and instances closer to
/// the hyperplane than [`SYNTHETIC_MARGIN`] are redrawn.
pub fn make_synthetic_with(
    sv_count: usize,
    feature_count: usize,
    seed: u64,
    instances: usize,
) -> Result<(TrainedModel, LabeledDataset)> {
    if sv_count == 0 || feature_count == 0 {
        return Err(Error::InvalidArgument("synthetic model needs S >= 1 and Fl >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let away_from_zero = |rng: &mut ChaCha8Rng| {
        let mag: f32 = rng.gen_range(0.1..=1.0);
        if rng.gen_bool(0.5) {
            mag
        } else {
            -mag
        }
    };
    let support_vectors: Vec<f32> = (0..sv_count * feature_count).map(|_| away_from_zero(&mut rng)).collect();
    let alpha_y: Vec<f32> = (0..sv_count).map(|_| away_from_zero(&mut rng)).collect();
    let bias: f32 = rng.gen_range(-0.5..=0.5);
    let model = TrainedModel::new(sv_count, feature_count, support_vectors, alpha_y, bias)?;

    let mut dataset = LabeledDataset::default();
    for _ in 0..instances {
        let mut draws = 0;
        let (instance, label) = loop {
            draws += 1;
            assert!(
                draws <= MAX_DRAWS_PER_INSTANCE,
                "could not draw a separable instance for S={sv_count}, Fl={feature_count}, seed={seed}"
            );
            let features: Vec<f32> = (0..feature_count).map(|_| rng.gen_range(-1.0f32..=1.0)).collect();
            let instance = TestInstance::new(features)?;
            let (raw, distance, label) = oracle_decision(&model, &instance, 0.0)?;
            if distance.abs() > SYNTHETIC_MARGIN * (1.0 + raw.abs()) {
                break (instance, label);
            }
        };
        dataset.instances.push((instance, label));
    }
    Ok((model, dataset))
}
