//! Calibrated cost models for the accelerator: latency, throughput,
//! resources, power and host-CPU cycles, plus directive exploration.

mod calibration;
mod directive;
mod estimate;
mod explore;

pub use calibration::{
    fit_affine, fit_calibration, parse_anchor_csv, Affine, AnchorRow, ArmFit, ArmPoint, CalibrationSet, ClockPair,
    DesignEntry, DirectiveFit, HwAnchor, Measurements, TripForm, SHIPPED_ANCHORS_CSV, SHIPPED_MEASUREMENTS_TOML,
};
pub use directive::{ArrayBinding, DirectiveConfig, PartitionStyle, PipelineScope, Regime, UnrollScope};
pub use estimate::{
    estimate, estimate_arm_cycles, estimate_latency, estimate_power, estimate_resources, power_for, LatencyEstimate,
    ResourceEstimate, SynthesisEstimate, Validity,
};
pub use explore::{dominates, explore, FrontEntry};
