//! Functional and cost simulator for a streaming linear-SVM classifier
//! accelerator attached to an embedded host CPU.
//!
//! The crate is split along the hardware/software boundary:
//!
//! * [`model_io`] parses model files, datasets and the binary stream frame.
//! * [`accel`] executes the accelerator dataflow on a decoded frame with a
//!   strict binary32 rounding contract.
//! * [`host`] is the host-side driver: software reference path, an
//!   independent double-precision oracle, co-simulation and batch accuracy.
//! * [`synth`] holds the calibrated latency/resource/power models and the
//!   directive design-space explorer.

pub mod accel;
pub mod error;
pub mod host;
pub mod model_io;
pub mod par;
pub mod synth;

pub use accel::{AccelResult, Label, WeightAccumulator};
pub use error::{Error, Result};
pub use host::{AccuracyReport, ClockPair, CosimReport, CycleSource};
pub use model_io::{LabeledDataset, StreamFrame, TestInstance, TrainedModel};
pub use synth::{CalibrationSet, DirectiveConfig, Regime, SynthesisEstimate, Validity};
