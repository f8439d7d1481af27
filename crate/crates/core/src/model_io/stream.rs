//! The positional word stream pushed to the accelerator.
//!
//! Section order: support vectors row-major (`S*Fl` words), bias (1 word),
//! alpha*y (`S` words), test features (`Fl` words). Each word is the raw
//! binary32 bit pattern of one value; there is no header or padding.

use super::{TestInstance, TrainedModel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StreamFrame {
    pub words: Vec<u32>,
}

impl StreamFrame {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Number of words in a frame for `S` support vectors of `Fl` features.
pub const fn frame_len(sv_count: usize, feature_count: usize) -> usize {
    sv_count * feature_count + 1 + sv_count + feature_count
}

/// Model section of a decoded frame. Values are taken verbatim from the
/// words, so unlike [`TrainedModel`] they may be non-finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPayload {
    pub sv_count: usize,
    pub feature_count: usize,
    pub support_vectors: Vec<f32>,
    pub bias: f32,
    pub alpha_y: Vec<f32>,
}

impl ModelPayload {
    pub fn to_model(&self) -> Result<TrainedModel> {
        TrainedModel::new(
            self.sv_count,
            self.feature_count,
            self.support_vectors.clone(),
            self.alpha_y.clone(),
            self.bias,
        )
    }
}

pub fn emit_stream(model: &TrainedModel, test: &TestInstance) -> Result<StreamFrame> {
    test.check_width(model)?;
    let mut words = Vec::with_capacity(frame_len(model.sv_count(), model.feature_count()));
    words.extend(model.support_vectors().iter().map(|v| v.to_bits()));
    words.push(model.bias().to_bits());
    words.extend(model.alpha_y().iter().map(|v| v.to_bits()));
    words.extend(test.features().iter().map(|v| v.to_bits()));
    Ok(StreamFrame { words })
}

/// Accelerator-side decode of a frame for the declared `(S, Fl)`.
pub fn parse_stream(
    frame: &StreamFrame,
    sv_count: usize,
    feature_count: usize,
) -> Result<(ModelPayload, Vec<f32>)> {
    let expected = frame_len(sv_count, feature_count);
    if frame.len() != expected {
        return Err(Error::FrameLength { expected, actual: frame.len() });
    }
    let mut words = frame.words.iter().map(|w| f32::from_bits(*w));
    let support_vectors: Vec<f32> = words.by_ref().take(sv_count * feature_count).collect();
    let bias = words.next().expect("length checked");
    let alpha_y: Vec<f32> = words.by_ref().take(sv_count).collect();
    let test: Vec<f32> = words.collect();
    debug_assert_eq!(test.len(), feature_count);
    Ok((ModelPayload { sv_count, feature_count, support_vectors, bias, alpha_y }, test))
}

/// Serializes a frame as contiguous little-endian words.
pub fn write_frame(frame: &StreamFrame) -> Vec<u8> {
    frame.words.iter().flat_map(|w| w.to_le_bytes()).collect()
}

pub fn read_frame(bytes: &[u8]) -> Result<StreamFrame> {
    if !bytes.len().is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "frame file is {} bytes, not a whole number of 32-bit words",
            bytes.len()
        )));
    }
    let words = bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    Ok(StreamFrame { words })
}
