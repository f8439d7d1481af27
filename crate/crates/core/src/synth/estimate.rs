use std::fmt;

use serde::{Deserialize, Serialize};

use super::calibration::{Affine, CalibrationSet, ClockPair, DirectiveFit};
use super::directive::{DirectiveConfig, Regime};
use crate::error::{Error, Result};

/// How an estimate relates to the anchors it was fitted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    AnchorExact,
    Interpolated,
    Extrapolated,
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Validity::AnchorExact => "anchor_exact",
            Validity::Interpolated => "interpolated",
            Validity::Extrapolated => "extrapolated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencyEstimate {
    pub latency_cycles: u64,
    pub throughput_interval_cycles: u64,
    pub validity: Validity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceEstimate {
    pub bram: f64,
    pub dsp: u32,
    pub ff: u64,
    pub lut: u64,
    pub validity: Validity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisEstimate {
    pub latency_cycles: u64,
    pub throughput_interval_cycles: u64,
    pub bram: f64,
    pub dsp: u32,
    pub ff: u64,
    pub lut: u64,
    pub validity: Validity,
}

fn position(fit: &DirectiveFit, sv_count: usize) -> Validity {
    let (lo, hi) = fit.sv_range();
    if fit.anchor(sv_count).is_some() {
        Validity::AnchorExact
    } else if lo < sv_count && sv_count < hi {
        Validity::Interpolated
    } else {
        Validity::Extrapolated
    }
}

fn nonneg_round(v: f64) -> u64 {
    if v <= 0.0 {
        0
    } else {
        v.round() as u64
    }
}

fn refused(fit: &DirectiveFit, sv_count: usize) -> Error {
    Error::ExtrapolationRefused(format!("{} @ {} to S={sv_count}", fit.directive, fit.regime))
}

/// Latency and initiation interval for one classification.
///
/// Off the calibrated feature count only directives with a closed form in
/// `Fl` answer; the rest report [`Error::FlMismatch`].
pub fn estimate_latency(
    cal: &CalibrationSet,
    sv_count: usize,
    feature_count: usize,
    directive: DirectiveConfig,
    regime: Regime,
) -> Result<LatencyEstimate> {
    let fit = cal.directive_fit(directive, regime)?;
    let (latency_cycles, validity) = if feature_count != fit.feature_count {
        let form = fit.trip_form.ok_or_else(|| Error::FlMismatch {
            directive: directive.name(),
            calibrated: fit.feature_count,
            requested: feature_count,
        })?;
        (form.latency(sv_count, feature_count), Validity::Extrapolated)
    } else if let Some(anchor) = fit.anchor(sv_count) {
        (anchor.latency, Validity::AnchorExact)
    } else {
        let line = fit.latency.ok_or_else(|| refused(fit, sv_count))?;
        (nonneg_round(line.eval(sv_count as f64)), position(fit, sv_count))
    };
    Ok(LatencyEstimate { latency_cycles, throughput_interval_cycles: latency_cycles + 1, validity })
}

/// BRAM, DSP, FF and LUT usage. DSP count is constant per directive; the
/// others are affine in S at the calibrated feature count.
pub fn estimate_resources(
    cal: &CalibrationSet,
    sv_count: usize,
    feature_count: usize,
    directive: DirectiveConfig,
    regime: Regime,
) -> Result<ResourceEstimate> {
    let fit = cal.directive_fit(directive, regime)?;
    if feature_count != fit.feature_count {
        return Err(Error::FlMismatch {
            directive: directive.name(),
            calibrated: fit.feature_count,
            requested: feature_count,
        });
    }
    if let Some(a) = fit.anchor(sv_count) {
        return Ok(ResourceEstimate { bram: a.bram, dsp: a.dsp, ff: a.ff, lut: a.lut, validity: Validity::AnchorExact });
    }
    let at = |line: Option<Affine>| line.map(|l| l.eval(sv_count as f64)).ok_or_else(|| refused(fit, sv_count));
    Ok(ResourceEstimate {
        bram: at(fit.bram)?.max(0.0),
        dsp: fit.dsp,
        ff: nonneg_round(at(fit.ff)?),
        lut: nonneg_round(at(fit.lut)?),
        validity: position(fit, sv_count),
    })
}

/// Latency and resources together; validity is the weaker of the two.
pub fn estimate(
    cal: &CalibrationSet,
    sv_count: usize,
    feature_count: usize,
    directive: DirectiveConfig,
    regime: Regime,
) -> Result<SynthesisEstimate> {
    let lat = estimate_latency(cal, sv_count, feature_count, directive, regime)?;
    let res = estimate_resources(cal, sv_count, feature_count, directive, regime)?;
    let validity = match (lat.validity, res.validity) {
        (Validity::Extrapolated, _) | (_, Validity::Extrapolated) => Validity::Extrapolated,
        (Validity::Interpolated, _) | (_, Validity::Interpolated) => Validity::Interpolated,
        _ => Validity::AnchorExact,
    };
    Ok(SynthesisEstimate {
        latency_cycles: lat.latency_cycles,
        throughput_interval_cycles: lat.throughput_interval_cycles,
        bram: res.bram,
        dsp: res.dsp,
        ff: res.ff,
        lut: res.lut,
        validity,
    })
}

/// Host CPU cycles for the software classification routine, in the
/// pairing's timer clock.
pub fn estimate_arm_cycles(
    cal: &CalibrationSet,
    sv_count: usize,
    feature_count: usize,
    optimized: bool,
    clocks: ClockPair,
) -> Result<u64> {
    let fit = cal.arm_fit(clocks)?;
    if feature_count != fit.feature_count {
        return Err(Error::FlMismatch {
            directive: "host routine".into(),
            calibrated: fit.feature_count,
            requested: feature_count,
        });
    }
    if let Some(p) = fit.points.iter().find(|p| p.sv_count == sv_count) {
        return Ok(if optimized { p.optimized } else { p.plain });
    }
    let line = if optimized { fit.optimized_fit } else { fit.plain_fit };
    let line = line.ok_or_else(|| Error::ExtrapolationRefused(format!("host cycles at {clocks} to S={sv_count}")))?;
    Ok(nonneg_round(line.eval(sv_count as f64)))
}

/// Total on-chip power of an implemented design, in watts.
pub fn estimate_power(cal: &CalibrationSet, model: &str, design: u32) -> Result<f64> {
    let wanted = normalize_model_id(model);
    cal.design
        .iter()
        .find(|d| normalize_model_id(&d.model) == wanted && d.design == design)
        .map(|d| d.watts)
        .ok_or_else(|| Error::UnknownDesign { model: model.to_string(), design })
}

/// Accepts `model-1`, `model1`, `1`, `Model S`, `s`, ...
fn normalize_model_id(id: &str) -> String {
    let lower: String = id.to_ascii_lowercase().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    lower.strip_prefix("model").map(str::to_string).unwrap_or(lower)
}

/// Power for whichever implemented design matches this synthesis point.
pub fn power_for(cal: &CalibrationSet, sv_count: usize, directive: DirectiveConfig, regime: Regime) -> Option<f64> {
    cal.design_for(sv_count, directive, regime).map(|d| d.watts)
}
