//! Table and key=value renderings. Both modes format every number through
//! the same helpers so they always show the same values.

use std::io::{self, Write};

use svm_cosim::host::{AccuracyReport, CosimReport};
use svm_cosim::synth::{FrontEntry, SynthesisEstimate};
use svm_cosim::{AccelResult, DirectiveConfig, Label, Regime};

fn class_name(label: Label) -> &'static str {
    match label {
        Label::Positive => "melanoma",
        Label::Negative => "non-melanoma",
    }
}

/// Shortest round-trip form, always with a fractional part or exponent.
fn distance(v: f32) -> String {
    format!("{v:?}")
}

fn fixed2(v: f64) -> String {
    format!("{v:.2}")
}

fn real(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

fn watts(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |w| format!("{w:.3}"))
}

pub fn classification_single(out: &mut dyn Write, r: &AccelResult, machine: bool) -> io::Result<()> {
    if machine {
        writeln!(out, "index=0 label={} distance={}", r.label.as_i8(), distance(r.distance))
    } else {
        writeln!(out, "{} {} {}", r.label, class_name(r.label), distance(r.distance))
    }
}

pub fn classification_batch(out: &mut dyn Write, report: &AccuracyReport, machine: bool) -> io::Result<()> {
    for (i, o) in report.outcomes.iter().enumerate() {
        if machine {
            writeln!(
                out,
                "index={i} label={} truth={} distance={}",
                o.predicted.as_i8(),
                o.truth.as_i8(),
                distance(o.distance)
            )?;
        } else {
            writeln!(out, "{} {} {} (true {})", o.predicted, class_name(o.predicted), distance(o.distance), o.truth)?;
        }
    }
    if machine {
        writeln!(
            out,
            "total={} correct={} accuracy_percent={}",
            report.total,
            report.correct,
            fixed2(report.accuracy_percent)
        )
    } else {
        writeln!(
            out,
            "accuracy: {}% ({}/{})",
            fixed2(report.accuracy_percent),
            report.correct,
            report.total
        )
    }
}

pub fn cosim(out: &mut dyn Write, r: &CosimReport, machine: bool) -> io::Result<()> {
    if machine {
        let lines: [(&str, String); 24] = [
            ("sv_count", r.sv_count.to_string()),
            ("feature_count", r.feature_count.to_string()),
            ("directive", r.directive.name()),
            ("fpga_mhz", r.clocks.fpga_mhz.to_string()),
            ("arm_mhz", r.clocks.arm_mhz.to_string()),
            ("stream_words", r.stream_words.to_string()),
            ("hw_label", r.hw_result.label.as_i8().to_string()),
            ("hw_distance", distance(r.hw_result.distance)),
            ("sw_label", r.sw_result.label.as_i8().to_string()),
            ("sw_distance", distance(r.sw_result.distance)),
            ("results_match", r.results_match.to_string()),
            ("hw_cycles", r.hw_cycles.to_string()),
            ("sw_cycles", r.sw_cycles.to_string()),
            ("sw_cycles_optimized", r.sw_cycles_optimized.to_string()),
            ("sw_timer_mhz", r.sw_timer_mhz.to_string()),
            ("hw_time_us", fixed2(r.hw_time_us)),
            ("sw_time_us", fixed2(r.sw_time_us)),
            ("sw_opt_time_us", fixed2(r.sw_opt_time_us)),
            ("speedup1", fixed2(r.speedup1)),
            ("speedup2", fixed2(r.speedup2)),
            ("time_speedup1", fixed2(r.time_speedup1)),
            ("time_speedup2", fixed2(r.time_speedup2)),
            ("cycle_source", r.cycle_source.to_string()),
            ("non_finite", r.hw_result.has_non_finite().to_string()),
        ];
        for (k, v) in lines {
            writeln!(out, "{k}={v}")?;
        }
        return Ok(());
    }
    writeln!(
        out,
        "co-simulation: S={} Fl={} directive={} {} stream_words={}",
        r.sv_count, r.feature_count, r.directive, r.clocks, r.stream_words
    )?;
    writeln!(
        out,
        "{:<22}{:>12}{:>12}{:>16}{:>11}{:>11}",
        "", "FPGA", "ARM", "Optimized ARM", "Speedup1", "Speedup2"
    )?;
    writeln!(
        out,
        "{:<22}{:>12}{:>12}{:>16}{:>11}{:>11}",
        "Clock cycles",
        r.hw_cycles,
        r.sw_cycles,
        r.sw_cycles_optimized,
        fixed2(r.speedup1),
        fixed2(r.speedup2)
    )?;
    writeln!(
        out,
        "{:<22}{:>12}{:>12}{:>16}{:>11}{:>11}",
        "Processing time (us)",
        fixed2(r.hw_time_us),
        fixed2(r.sw_time_us),
        fixed2(r.sw_opt_time_us),
        fixed2(r.time_speedup1),
        fixed2(r.time_speedup2)
    )?;
    writeln!(
        out,
        "hardware result: {} {} {}",
        r.hw_result.label,
        class_name(r.hw_result.label),
        distance(r.hw_result.distance)
    )?;
    writeln!(
        out,
        "software result: {} {} {}",
        r.sw_result.label,
        class_name(r.sw_result.label),
        distance(r.sw_result.distance)
    )?;
    writeln!(out, "results match: {}", r.results_match)?;
    writeln!(out, "host timer: {} MHz", r.sw_timer_mhz)?;
    if r.hw_result.has_non_finite() {
        writeln!(out, "warning: non-finite intermediate in distance")?;
    }
    writeln!(out, "cycle source: {}", r.cycle_source)
}

const SYNTH_HEADER: &str = "directive latency throughput bram dsp ff lut watts validity";

fn synth_row(directive: DirectiveConfig, e: &SynthesisEstimate, w: Option<f64>) -> String {
    format!(
        "{} {} {} {} {} {} {} {} {}",
        directive,
        e.latency_cycles,
        e.throughput_interval_cycles,
        real(e.bram),
        e.dsp,
        e.ff,
        e.lut,
        watts(w),
        e.validity
    )
}

fn synth_kv(directive: DirectiveConfig, e: &SynthesisEstimate, w: Option<f64>) -> String {
    format!(
        "directive={} latency={} throughput={} bram={} dsp={} ff={} lut={} watts={} validity={}",
        directive,
        e.latency_cycles,
        e.throughput_interval_cycles,
        real(e.bram),
        e.dsp,
        e.ff,
        e.lut,
        watts(w),
        e.validity
    )
}

#[allow(clippy::too_many_arguments)]
pub fn synth(
    out: &mut dyn Write,
    sv_count: usize,
    feature_count: usize,
    directive: DirectiveConfig,
    regime: Regime,
    e: &SynthesisEstimate,
    w: Option<f64>,
    machine: bool,
) -> io::Result<()> {
    if machine {
        writeln!(out, "sv_count={sv_count} feature_count={feature_count} regime_mhz={}", regime.mhz())?;
        writeln!(out, "{}", synth_kv(directive, e, w))
    } else {
        writeln!(out, "S={sv_count} Fl={feature_count} regime={regime}")?;
        writeln!(out, "{SYNTH_HEADER}")?;
        writeln!(out, "{}", synth_row(directive, e, w))
    }
}

pub fn front(
    out: &mut dyn Write,
    sv_count: usize,
    feature_count: usize,
    regime: Regime,
    front: &[FrontEntry],
    machine: bool,
) -> io::Result<()> {
    if machine {
        writeln!(out, "sv_count={sv_count} feature_count={feature_count} regime_mhz={}", regime.mhz())?;
        for f in front {
            writeln!(out, "{}", synth_kv(f.directive, &f.estimate, f.watts))?;
        }
    } else {
        writeln!(out, "Pareto front: S={sv_count} Fl={feature_count} regime={regime} ({} configs)", front.len())?;
        writeln!(out, "{SYNTH_HEADER}")?;
        for f in front {
            writeln!(out, "{}", synth_row(f.directive, &f.estimate, f.watts))?;
        }
    }
    Ok(())
}
