//! Model, instance, dataset and stream-frame formats.

mod dataset;
mod native;
mod stream;
mod svmlight;
mod synthetic;

pub use dataset::{emit_dataset, load_dataset};
pub use native::{emit_native_model, emit_test_instance, parse_native_model, parse_test_instance};
pub use stream::{emit_stream, frame_len, parse_stream, read_frame, write_frame, ModelPayload, StreamFrame};
pub use svmlight::parse_svmlight_model;
pub use synthetic::{make_synthetic, make_synthetic_with, DEFAULT_SYNTHETIC_INSTANCES};

use crate::error::{Error, Result};

/// Class decision of the classifier; `Positive` is the +1 side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Positive => 1,
            Label::Negative => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Label> {
        match v {
            1 => Some(Label::Positive),
            -1 => Some(Label::Negative),
            _ => None,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Positive => f.write_str("+1"),
            Label::Negative => f.write_str("-1"),
        }
    }
}

/// A trained linear SVM: support vectors, their `alpha * y` products, the
/// bias `b` and the decision threshold.
///
/// Support vectors are stored densely, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    sv_count: usize,
    feature_count: usize,
    support_vectors: Vec<f32>,
    alpha_y: Vec<f32>,
    bias: f32,
    threshold: f32,
}

impl TrainedModel {
    /// Builds a model from row-major support vectors. The threshold starts
    /// at 0.0.
    pub fn new(
        sv_count: usize,
        feature_count: usize,
        support_vectors: Vec<f32>,
        alpha_y: Vec<f32>,
        bias: f32,
    ) -> Result<Self> {
        if sv_count == 0 || feature_count == 0 {
            return Err(Error::InvalidArgument(format!(
                "model needs at least one support vector and one feature (S={sv_count}, Fl={feature_count})"
            )));
        }
        let cells = sv_count.checked_mul(feature_count).ok_or_else(|| {
            Error::InvalidArgument(format!("model size S={sv_count} x Fl={feature_count} overflows"))
        })?;
        if support_vectors.len() != cells {
            return Err(Error::Dimension { expected: cells, actual: support_vectors.len() });
        }
        if alpha_y.len() != sv_count {
            return Err(Error::Dimension { expected: sv_count, actual: alpha_y.len() });
        }
        let all_finite = support_vectors.iter().chain(&alpha_y).all(|v| v.is_finite());
        if !all_finite || !bias.is_finite() {
            return Err(Error::InvalidArgument("model values must be finite".into()));
        }
        Ok(Self { sv_count, feature_count, support_vectors, alpha_y, bias, threshold: 0.0 })
    }

    /// Builds a model from a list of rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<f32>>, alpha_y: Vec<f32>, bias: f32) -> Result<Self> {
        let sv_count = rows.len();
        let feature_count = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != feature_count) {
            return Err(Error::Dimension { expected: feature_count, actual: bad.len() });
        }
        Self::new(sv_count, feature_count, rows.concat(), alpha_y, bias)
    }

    pub fn with_threshold(mut self, threshold: f32) -> Result<Self> {
        if !threshold.is_finite() {
            return Err(Error::InvalidArgument("threshold must be finite".into()));
        }
        self.threshold = threshold;
        Ok(self)
    }

    pub fn sv_count(&self) -> usize {
        self.sv_count
    }

    pub fn feature_count(&self) -> usize {
        self.feature_count
    }

    /// Row-major `S x Fl` support-vector matrix.
    pub fn support_vectors(&self) -> &[f32] {
        &self.support_vectors
    }

    pub fn support_vector(&self, i: usize) -> &[f32] {
        let fl = self.feature_count;
        &self.support_vectors[i * fl..(i + 1) * fl]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f32]> {
        self.support_vectors.chunks_exact(self.feature_count)
    }

    pub fn alpha_y(&self) -> &[f32] {
        &self.alpha_y
    }

    pub fn bias(&self) -> f32 {
        self.bias
    }

    pub fn threshold(&self) -> f32 {
        self.threshold
    }
}

/// One feature vector to classify.
#[derive(Debug, Clone, PartialEq)]
pub struct TestInstance {
    features: Vec<f32>,
}

impl TestInstance {
    pub fn new(features: Vec<f32>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::MalformedInstance("instance has no features".into()));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::MalformedInstance(format!("feature {} is not finite", pos + 1)));
        }
        Ok(Self { features })
    }

    pub fn features(&self) -> &[f32] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn check_width(&self, model: &TrainedModel) -> Result<()> {
        if self.len() != model.feature_count() {
            return Err(Error::Dimension { expected: model.feature_count(), actual: self.len() });
        }
        Ok(())
    }
}

/// Feature vectors with ground-truth labels, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledDataset {
    pub instances: Vec<(TestInstance, Label)>,
}

impl LabeledDataset {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Common feature width, `None` for an empty dataset.
    pub fn feature_count(&self) -> Option<usize> {
        self.instances.first().map(|(t, _)| t.len())
    }
}

/// Parses one decimal real, rejecting `inf`/`nan` spellings.
pub(crate) fn parse_real(token: &str) -> std::result::Result<f32, String> {
    let v: f32 = token.parse().map_err(|_| format!("cannot parse {token:?} as a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("value {token:?} is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_rejects_ragged_and_non_finite() {
        assert!(TrainedModel::from_rows(vec![vec![1.0, 2.0], vec![1.0]], vec![1.0, 1.0], 0.0).is_err());
        assert!(TrainedModel::from_rows(vec![vec![f32::NAN]], vec![1.0], 0.0).is_err());
        assert!(TrainedModel::from_rows(vec![vec![1.0]], vec![1.0], f32::INFINITY).is_err());
        assert!(TrainedModel::from_rows(vec![], vec![], 0.0).is_err());
    }

    #[test]
    fn parse_real_rejects_inf_and_nan() {
        assert!(parse_real("inf").is_err());
        assert!(parse_real("NaN").is_err());
        assert!(parse_real("1e39").is_err());
        assert_eq!(parse_real("-0.25"), Ok(-0.25));
    }
}
