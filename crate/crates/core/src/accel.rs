//! Accelerator dataflow: decode the stream, accumulate the weight vector,
//! take one dot product with the test instance, and compare against the
//! threshold.
//!
//! Every multiply and add is a separate binary32 operation rounded to
//! nearest-even, applied in the fixed loop order below. No fused
//! multiply-add and no reassociation, so results are bit-reproducible.

use crate::error::{Error, Result};
use crate::model_io::{parse_stream, ModelPayload, StreamFrame};

pub use crate::model_io::Label;

/// Output of one classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelResult {
    pub label: Label,
    /// `raw_distance - bias`, the value compared against the threshold.
    pub distance: f32,
    /// Dot product of the accumulated weight vector with the test instance.
    pub raw_distance: f32,
}

impl AccelResult {
    /// Set when overflow produced an infinite or NaN intermediate.
    pub fn has_non_finite(&self) -> bool {
        !self.distance.is_finite() || !self.raw_distance.is_finite()
    }

    /// Label and distance bit patterns both equal.
    pub fn bit_identical(&self, other: &AccelResult) -> bool {
        self.label == other.label
            && self.distance.to_bits() == other.distance.to_bits()
            && self.raw_distance.to_bits() == other.raw_distance.to_bits()
    }
}

/// The accumulated vector `sum_s alpha_y[s] * sv[s]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAccumulator {
    values: Vec<f32>,
}

impl WeightAccumulator {
    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Outer loop over support vectors in ascending order, inner loop over
/// features in ascending order.
pub fn accumulate_weight_vector(
    sv_count: usize,
    feature_count: usize,
    support_vectors: &[f32],
    alpha_y: &[f32],
) -> WeightAccumulator {
    assert_eq!(support_vectors.len(), sv_count * feature_count);
    assert_eq!(alpha_y.len(), sv_count);
    let mut acc = vec![0.0f32; feature_count];
    for (sv, &ay) in support_vectors.chunks_exact(feature_count).zip(alpha_y) {
        for (a, &x) in acc.iter_mut().zip(sv) {
            let product = ay * x;
            *a += product;
        }
    }
    WeightAccumulator { values: acc }
}

pub fn accumulate_model(payload: &ModelPayload) -> WeightAccumulator {
    accumulate_weight_vector(
        payload.sv_count,
        payload.feature_count,
        &payload.support_vectors,
        &payload.alpha_y,
    )
}

/// Running sum over ascending feature index.
pub fn dot_distance(acc: &WeightAccumulator, test: &[f32]) -> Result<f32> {
    if acc.len() != test.len() {
        return Err(Error::Dimension { expected: acc.len(), actual: test.len() });
    }
    let mut distance = 0.0f32;
    for (&a, &x) in acc.values.iter().zip(test) {
        let product = a * x;
        distance += product;
    }
    Ok(distance)
}

/// Subtracts the bias and applies `distance >= th` for the positive class.
/// A NaN distance compares false and lands on the negative side.
pub fn decide(raw_distance: f32, bias: f32, threshold: f32) -> (Label, f32) {
    let distance = raw_distance - bias;
    let label = if distance >= threshold { Label::Positive } else { Label::Negative };
    (label, distance)
}

/// Full accelerator run on one frame.
pub fn run_accelerator(
    frame: &StreamFrame,
    sv_count: usize,
    feature_count: usize,
    threshold: f32,
) -> Result<AccelResult> {
    let (payload, test) = parse_stream(frame, sv_count, feature_count)?;
    let acc = accumulate_model(&payload);
    let raw_distance = dot_distance(&acc, &test)?;
    let (label, distance) = decide(raw_distance, payload.bias, threshold);
    Ok(AccelResult { label, distance, raw_distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::{emit_stream, TestInstance, TrainedModel};

    fn frame(sv: f32, b: f32, ay: f32, test: f32) -> StreamFrame {
        let m = TrainedModel::from_rows(vec![vec![sv]], vec![ay], b).unwrap();
        emit_stream(&m, &TestInstance::new(vec![test]).unwrap()).unwrap()
    }

    #[test]
    fn single_term_sum() {
        let acc = accumulate_weight_vector(1, 3, &[1.5, -2.0, 0.25], &[3.0]);
        assert_eq!(acc.values(), &[4.5, -6.0, 0.75]);
    }

    #[test]
    fn exact_cancellation() {
        let row = [0.1f32, 0.7, -3.3];
        let svs: Vec<f32> = row.iter().chain(row.iter()).copied().collect();
        let acc = accumulate_weight_vector(2, 3, &svs, &[1.0, -1.0]);
        assert!(acc.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn accumulation_order_is_ascending_sv() {
        // 1e8 + 1 - 1e8 in binary32: the +1 is absorbed, so order matters.
        let acc = accumulate_weight_vector(3, 1, &[1.0e8, 1.0, -1.0e8], &[1.0, 1.0, 1.0]);
        assert_eq!(acc.values(), &[0.0]);
        let acc = accumulate_weight_vector(3, 1, &[1.0e8, -1.0e8, 1.0], &[1.0, 1.0, 1.0]);
        assert_eq!(acc.values(), &[1.0]);
    }

    #[test]
    fn dot_examples() {
        let acc = WeightAccumulator { values: vec![2.0] };
        assert_eq!(dot_distance(&acc, &[3.0]), Ok(6.0));
        let acc = WeightAccumulator { values: vec![2.0, -1.0, 5.0] };
        assert_eq!(dot_distance(&acc, &[0.0; 3]), Ok(0.0));
        assert_eq!(dot_distance(&acc, &[0.0; 2]), Err(Error::Dimension { expected: 3, actual: 2 }));
    }

    #[test]
    fn decide_examples() {
        assert_eq!(decide(6.0, 0.0, 0.0), (Label::Positive, 6.0));
        assert_eq!(decide(6.0, 7.0, 0.0), (Label::Negative, -1.0));
        assert_eq!(decide(5.0, 5.0, 0.0), (Label::Positive, 0.0));
        let (label, d) = decide(f32::NAN, 0.0, 0.0);
        assert_eq!(label, Label::Negative);
        assert!(d.is_nan());
    }

    #[test]
    fn accelerator_examples() {
        let r = run_accelerator(&frame(2.0, 0.0, 1.0, 3.0), 1, 1, 0.0).unwrap();
        assert_eq!((r.label, r.distance, r.raw_distance), (Label::Positive, 6.0, 6.0));
        let r = run_accelerator(&frame(2.0, 7.0, 1.0, 3.0), 1, 1, 0.0).unwrap();
        assert_eq!((r.label, r.distance), (Label::Negative, -1.0));
        assert!(matches!(
            run_accelerator(&frame(2.0, 7.0, 1.0, 3.0), 2, 1, 0.0),
            Err(Error::FrameLength { expected: 6, actual: 4 })
        ));
    }

    #[test]
    fn overflow_propagates_and_is_flagged() {
        let r = run_accelerator(&frame(3.0e38, 0.0, 3.0e38, 1.0), 1, 1, 0.0).unwrap();
        assert!(r.has_non_finite());
        assert_eq!(r.distance, f32::INFINITY);
        assert_eq!(r.label, Label::Positive);
        // -inf
        let r = run_accelerator(&frame(3.0e38, 0.0, 3.0e38, -1.0), 1, 1, 0.0).unwrap();
        assert_eq!(r.label, Label::Negative);
    }

    #[test]
    fn zero_model_is_positive() {
        let r = run_accelerator(&frame(4.0, 0.0, 0.0, -9.0), 1, 1, 0.0).unwrap();
        assert_eq!((r.label, r.distance.to_bits()), (Label::Positive, 0.0f32.to_bits()));
    }
}
