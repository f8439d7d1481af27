//! Host-side driver: the software classification routine, the
//! double-precision oracle, co-simulation of the full transfer script,
//! and batch accuracy.

use std::fmt;

use crate::accel::{run_accelerator, AccelResult, Label};
use crate::error::{Error, Result};
use crate::model_io::{emit_stream, frame_len, LabeledDataset, TestInstance, TrainedModel};
use crate::par::*;
use crate::synth::{estimate_arm_cycles, estimate_latency, CalibrationSet, DirectiveConfig};

pub use crate::synth::ClockPair;

/// The classification routine as compiled for the host CPU.
///
/// Same loop nest and binary32 rounding as the accelerator, but it reads
/// the model directly instead of a decoded stream.
pub fn run_software_reference(model: &TrainedModel, test: &TestInstance, threshold: f32) -> Result<AccelResult> {
    test.check_width(model)?;
    let fl = model.feature_count();
    let mut weights = vec![0.0f32; fl];
    for s in 0..model.sv_count() {
        let ay = model.alpha_y()[s];
        let sv = model.support_vector(s);
        for f in 0..fl {
            weights[f] += ay * sv[f];
        }
    }
    let x = test.features();
    let mut raw_distance = 0.0f32;
    for f in 0..fl {
        raw_distance += weights[f] * x[f];
    }
    let distance = raw_distance - model.bias();
    let label = if distance >= threshold { Label::Positive } else { Label::Negative };
    Ok(AccelResult { label, distance, raw_distance })
}

/// Double-precision decision function evaluated as a sum of per-SV dot
/// products. Returns `(sum, sum - b, label)`.
pub(crate) fn oracle_decision(model: &TrainedModel, test: &TestInstance, threshold: f64) -> Result<(f64, f64, Label)> {
    test.check_width(model)?;
    let x = test.features();
    let raw: f64 = model
        .rows()
        .zip(model.alpha_y())
        .map(|(sv, &ay)| {
            let dot: f64 = sv.iter().zip(x).map(|(&a, &b)| f64::from(a) * f64::from(b)).sum();
            f64::from(ay) * dot
        })
        .sum();
    let distance = raw - f64::from(model.bias());
    let label = if distance >= threshold { Label::Positive } else { Label::Negative };
    Ok((raw, distance, label))
}

/// Independent checker for the binary32 paths.
pub fn run_oracle(model: &TrainedModel, test: &TestInstance, threshold: f64) -> Result<(Label, f64)> {
    oracle_decision(model, test, threshold).map(|(_, d, l)| (l, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleSource {
    MeasuredAnchor,
    Estimated,
}

impl fmt::Display for CycleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleSource::MeasuredAnchor => "measured_anchor",
            CycleSource::Estimated => "estimated",
        })
    }
}

/// Result of one co-simulated classification.
#[derive(Debug, Clone, PartialEq)]
pub struct CosimReport {
    pub sv_count: usize,
    pub feature_count: usize,
    pub directive: DirectiveConfig,
    pub clocks: ClockPair,
    pub stream_words: usize,
    pub hw_result: AccelResult,
    pub sw_result: AccelResult,
    /// Labels equal and distances bit-identical.
    pub results_match: bool,
    pub hw_cycles: u64,
    pub sw_cycles: u64,
    pub sw_cycles_optimized: u64,
    /// Clock the host cycle counts are expressed in.
    pub sw_timer_mhz: f64,
    pub hw_time_us: f64,
    pub sw_time_us: f64,
    pub sw_opt_time_us: f64,
    /// Cycle ratios.
    pub speedup1: f64,
    pub speedup2: f64,
    /// Processing-time ratios; differ from the cycle ratios when the two
    /// sides run on different clocks.
    pub time_speedup1: f64,
    pub time_speedup2: f64,
    pub cycle_source: CycleSource,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CosimOptions {
    /// Fail instead of estimating when no measured accelerator cycle count
    /// exists, or when host cycles are not at a measured point.
    pub strict_calibration: bool,
}

/// Runs the host transfer script against the simulated accelerator and the
/// software routine, then prices both sides with the calibration.
///
/// Accelerator cycles come from a measured anchor when one matches
/// `(S, Fl, directive, clocks)`. Otherwise they are the synthesis latency
/// plus one cycle per stream word.
pub fn cosim(
    cal: &CalibrationSet,
    model: &TrainedModel,
    test: &TestInstance,
    directive: DirectiveConfig,
    clocks: ClockPair,
    threshold: f32,
    options: CosimOptions,
) -> Result<CosimReport> {
    let (sv_count, feature_count) = (model.sv_count(), model.feature_count());
    let sw_result = run_software_reference(model, test, threshold)?;
    let frame = emit_stream(model, test)?;
    let hw_result = run_accelerator(&frame, sv_count, feature_count, threshold)?;
    let results_match = hw_result.label == sw_result.label
        && hw_result.distance.to_bits() == sw_result.distance.to_bits();

    let stream_words = frame_len(sv_count, feature_count);
    let (hw_cycles, cycle_source) = match cal.hw_anchor(sv_count, feature_count, directive, clocks) {
        Some(cycles) => (cycles, CycleSource::MeasuredAnchor),
        None if options.strict_calibration => {
            return Err(Error::UnknownCalibration(format!(
                "measured accelerator cycles for {directive}, S={sv_count}, Fl={feature_count} at {clocks}"
            )))
        }
        None => {
            let lat = estimate_latency(cal, sv_count, feature_count, directive, clocks.regime())?;
            (lat.latency_cycles + stream_words as u64, CycleSource::Estimated)
        }
    };

    let arm = cal.arm_fit(clocks)?;
    if options.strict_calibration && !arm.points.iter().any(|p| p.sv_count == sv_count) {
        return Err(Error::UnknownCalibration(format!("measured host cycles for S={sv_count} at {clocks}")));
    }
    let sw_timer_mhz = arm.timer_mhz;
    let sw_cycles = estimate_arm_cycles(cal, sv_count, feature_count, false, clocks)?;
    let sw_cycles_optimized = estimate_arm_cycles(cal, sv_count, feature_count, true, clocks)?;
    if hw_cycles == 0 {
        return Err(Error::UnknownCalibration("accelerator cycle count is zero".into()));
    }

    let hw_time_us = hw_cycles as f64 / clocks.fpga_mhz;
    let sw_time_us = sw_cycles as f64 / sw_timer_mhz;
    let sw_opt_time_us = sw_cycles_optimized as f64 / sw_timer_mhz;
    Ok(CosimReport {
        sv_count,
        feature_count,
        directive,
        clocks,
        stream_words,
        hw_result,
        sw_result,
        results_match,
        hw_cycles,
        sw_cycles,
        sw_cycles_optimized,
        sw_timer_mhz,
        hw_time_us,
        sw_time_us,
        sw_opt_time_us,
        speedup1: sw_cycles as f64 / hw_cycles as f64,
        speedup2: sw_cycles_optimized as f64 / hw_cycles as f64,
        time_speedup1: sw_time_us / hw_time_us,
        time_speedup2: sw_opt_time_us / hw_time_us,
        cycle_source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceOutcome {
    pub predicted: Label,
    pub truth: Label,
    pub distance: f32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    pub total: usize,
    pub correct: usize,
    pub accuracy_percent: f64,
    /// In dataset order.
    pub outcomes: Vec<InstanceOutcome>,
}

/// Classifies every instance with the software routine and tallies
/// agreement with the ground truth. Instances are evaluated in parallel
/// when the `parallel` feature is on; the report is identical either way.
pub fn batch_classify(model: &TrainedModel, dataset: &LabeledDataset, threshold: f32) -> Result<AccuracyReport> {
    let outcomes: Vec<InstanceOutcome> = dataset
        .instances
        .par_iter()
        .map(|(instance, truth)| {
            run_software_reference(model, instance, threshold).map(|r| InstanceOutcome {
                predicted: r.label,
                truth: *truth,
                distance: r.distance,
            })
        })
        .collect::<Result<_>>()?;
    let total = outcomes.len();
    let correct = outcomes.iter().filter(|o| o.predicted == o.truth).count();
    let accuracy_percent = if total == 0 { 0.0 } else { 100.0 * correct as f64 / total as f64 };
    Ok(AccuracyReport { total, correct, accuracy_percent, outcomes })
}
