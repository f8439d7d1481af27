//! Pareto front over directive choices.

use super::calibration::CalibrationSet;
use super::directive::{DirectiveConfig, Regime};
use super::estimate::{estimate, power_for, SynthesisEstimate};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FrontEntry {
    pub directive: DirectiveConfig,
    pub estimate: SynthesisEstimate,
    /// Power of the matching implemented design, when one exists.
    pub watts: Option<f64>,
}

fn axes(e: &SynthesisEstimate) -> [f64; 5] {
    [e.latency_cycles as f64, f64::from(e.dsp), e.lut as f64, e.ff as f64, e.bram]
}

/// `a` is no worse than `b` on every axis and strictly better on one.
/// Axes: latency, DSP, LUT, FF, BRAM, all minimized.
pub fn dominates(a: &SynthesisEstimate, b: &SynthesisEstimate) -> bool {
    let (a, b) = (axes(a), axes(b));
    a.iter().zip(&b).all(|(x, y)| x <= y) && a.iter().zip(&b).any(|(x, y)| x < y)
}

/// Non-dominated directive configurations at `(S, Fl, regime)`, ordered by
/// ascending latency and then directive name.
///
/// `candidates` defaults to every directive calibrated at `regime`.
/// Candidates the calibration cannot evaluate at this point (single-anchor
/// entries away from their anchor, Fl-locked fits) are left out.
pub fn explore(
    cal: &CalibrationSet,
    sv_count: usize,
    feature_count: usize,
    regime: Regime,
    candidates: Option<&[DirectiveConfig]>,
) -> Result<Vec<FrontEntry>> {
    let candidates: Vec<DirectiveConfig> = match candidates {
        Some(c) => c.to_vec(),
        None => cal.directives(regime),
    };
    if candidates.is_empty() {
        return Err(Error::UnknownCalibration(format!("any directive @ {regime}")));
    }

    let evaluated: Vec<Result<FrontEntry>> = candidates
        .into_iter()
        .map(|directive| {
            let estimate = estimate(cal, sv_count, feature_count, directive, regime)?;
            let watts = power_for(cal, sv_count, directive, regime);
            Ok(FrontEntry { directive, estimate, watts })
        })
        .collect();

    let mut points = Vec::with_capacity(evaluated.len());
    let mut first_err = None;
    for r in evaluated {
        match r {
            Ok(p) => points.push(p),
            Err(e @ (Error::UnknownCalibration(_) | Error::InvalidArgument(_))) => return Err(e),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if points.is_empty() {
        return Err(first_err.unwrap_or_else(|| Error::UnknownCalibration(format!("S={sv_count} @ {regime}"))));
    }

    let mut front: Vec<FrontEntry> = points
        .iter()
        .filter(|p| !points.iter().any(|q| dominates(&q.estimate, &p.estimate)))
        .cloned()
        .collect();
    front.sort_by(|a, b| {
        a.estimate
            .latency_cycles
            .cmp(&b.estimate.latency_cycles)
            .then_with(|| a.directive.name().cmp(&b.directive.name()))
    });
    front.dedup_by_key(|e| e.directive);
    Ok(front)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{PipelineScope, Validity};

    fn est(latency: u64, dsp: u32, lut: u64, ff: u64, bram: f64) -> SynthesisEstimate {
        SynthesisEstimate {
            latency_cycles: latency,
            throughput_interval_cycles: latency + 1,
            bram,
            dsp,
            ff,
            lut,
            validity: Validity::AnchorExact,
        }
    }

    #[test]
    fn domination_is_strict() {
        let a = est(10, 5, 100, 100, 1.0);
        assert!(!dominates(&a, &a));
        assert!(dominates(&a, &est(11, 5, 100, 100, 1.0)));
        assert!(!dominates(&a, &est(11, 4, 100, 100, 1.0)));
    }

    #[test]
    fn three_poles_at_248() {
        let cal = CalibrationSet::shipped();
        let cands = [DirectiveConfig::InterfaceOnly, DirectiveConfig::PIPELINE_INNER, DirectiveConfig::UNROLL_INNER];
        let front = explore(&cal, 248, 27, Regime::MHZ_100, Some(&cands)).unwrap();
        let names: Vec<String> = front.iter().map(|e| e.directive.name()).collect();
        assert_eq!(names, ["unroll-inner", "pipeline-inner", "interface-only"]);
    }

    #[test]
    fn single_candidate() {
        let cal = CalibrationSet::shipped();
        let front = explore(&cal, 248, 27, Regime::MHZ_100, Some(&[DirectiveConfig::UNROLL_MOST])).unwrap();
        assert_eq!(front.len(), 1);
        assert_eq!(front[0].directive, DirectiveConfig::UNROLL_MOST);
        assert_eq!(front[0].watts, Some(1.824));
    }

    #[test]
    fn strictly_better_config_wins() {
        // Same latency at 248, pipeline-most cheaper on every resource.
        let cal = CalibrationSet::shipped();
        let cands = [DirectiveConfig::Pipeline(PipelineScope::Most), DirectiveConfig::Pipeline(PipelineScope::All)];
        let front = explore(&cal, 248, 27, Regime::MHZ_100, Some(&cands)).unwrap();
        assert_eq!(front.len(), 1);
        assert_eq!(front[0].directive, DirectiveConfig::Pipeline(PipelineScope::Most));
    }

    #[test]
    fn full_front_at_248_includes_both_poles() {
        let cal = CalibrationSet::shipped();
        let front = explore(&cal, 248, 27, Regime::MHZ_100, None).unwrap();
        assert_eq!(front[0].directive, DirectiveConfig::UNROLL_MOST);
        assert_eq!(front[0].estimate.latency_cycles, 8366);
        assert!(front.iter().any(|e| e.directive == DirectiveConfig::InterfaceOnly));
    }

    #[test]
    fn unknown_regime_errors() {
        let cal = CalibrationSet::shipped();
        assert!(explore(&cal, 61, 27, Regime(400), None).is_err());
    }
}
