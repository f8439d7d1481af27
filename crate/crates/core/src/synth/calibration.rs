//! Anchor tables, affine fits and the calibration file.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::directive::{DirectiveConfig, Regime};
use crate::error::{Error, Result};

/// Synthesis anchors shipped with the crate, one row per (S, directive, regime).
pub const SHIPPED_ANCHORS_CSV: &str = include_str!("../../data/synthesis_anchors.csv");
/// Host cycle counts, measured accelerator cycles and power figures.
pub const SHIPPED_MEASUREMENTS_TOML: &str = include_str!("../../data/measurements.toml");

/// Latency structures that generalize across feature counts. Each is
/// `(cycles_per_trip * (Fl + 1) + extra_per_sv) * S + intercept`; a fit
/// gets the closed form only if its slope lands exactly on this shape.
const TRIP_STRUCTURES: [(DirectiveConfig, u64, u64); 2] = [
    (DirectiveConfig::InterfaceOnly, 11, 23),
    (DirectiveConfig::PIPELINE_INNER, 2, 0),
];

/// One synthesis result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorRow {
    #[serde(rename = "S")]
    pub sv_count: usize,
    #[serde(rename = "Fl")]
    pub feature_count: usize,
    pub directive: DirectiveConfig,
    pub regime: Regime,
    pub latency: u64,
    pub bram: f64,
    pub dsp: u32,
    pub ff: u64,
    pub lut: u64,
}

/// Reads the anchor CSV (`S,Fl,directive,regime,latency,bram,dsp,ff,lut`).
pub fn parse_anchor_csv(text: &str) -> Result<Vec<AnchorRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|row| row.map_err(|e| Error::CalibrationFormat(format!("anchor table: {e}"))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Affine {
    pub slope: f64,
    pub intercept: f64,
}

impl Affine {
    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Ordinary least squares line through `points`. Needs two distinct x.
pub fn fit_affine(points: &[(f64, f64)]) -> Option<Affine> {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if points.is_empty() || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    Some(Affine { slope, intercept: mean_y - slope * mean_x })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripForm {
    pub cycles_per_trip: u64,
    pub extra_per_sv: u64,
    pub intercept: u64,
}

impl TripForm {
    pub fn latency(&self, sv_count: usize, feature_count: usize) -> u64 {
        let per_sv = self.cycles_per_trip * (feature_count as u64 + 1) + self.extra_per_sv;
        per_sv * sv_count as u64 + self.intercept
    }
}

/// Calibrated model of one directive at one clock regime.
///
/// Fits are `None` when all anchors share one S; such entries answer only
/// at that S.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectiveFit {
    pub directive: DirectiveConfig,
    pub regime: Regime,
    pub feature_count: usize,
    pub dsp: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latency: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bram: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ff: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lut: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trip_form: Option<TripForm>,
    pub anchors: Vec<AnchorRow>,
}

impl DirectiveFit {
    pub fn anchor(&self, sv_count: usize) -> Option<&AnchorRow> {
        self.anchors.iter().find(|a| a.sv_count == sv_count)
    }

    pub fn sv_range(&self) -> (usize, usize) {
        let min = self.anchors.iter().map(|a| a.sv_count).min().unwrap_or(0);
        let max = self.anchors.iter().map(|a| a.sv_count).max().unwrap_or(0);
        (min, max)
    }

    pub fn is_single_point(&self) -> bool {
        self.latency.is_none()
    }
}

/// Fits every (directive, regime, Fl) group in `rows`.
///
/// Identical duplicate rows are dropped. Every key in `required` must have
/// at least one row.
pub fn fit_calibration(
    rows: &[AnchorRow],
    required: &[(DirectiveConfig, Regime)],
) -> Result<Vec<DirectiveFit>> {
    let mut groups: BTreeMap<(DirectiveConfig, Regime, usize), Vec<AnchorRow>> = BTreeMap::new();
    for row in rows {
        let group = groups.entry((row.directive, row.regime, row.feature_count)).or_default();
        if !group.contains(row) {
            group.push(row.clone());
        }
    }
    for (directive, regime) in required {
        if !groups.keys().any(|(d, r, _)| d == directive && r == regime) {
            return Err(Error::InsufficientAnchors(format!("{directive} @ {regime}")));
        }
    }
    if groups.is_empty() {
        return Err(Error::InsufficientAnchors("empty anchor table".into()));
    }

    let mut fits = Vec::with_capacity(groups.len());
    for ((directive, regime, feature_count), mut anchors) in groups {
        anchors.sort_by_key(|a| a.sv_count);
        if anchors.windows(2).any(|w| w[0].sv_count == w[1].sv_count) {
            return Err(Error::CalibrationFormat(format!(
                "conflicting anchors for {directive} @ {regime} at the same S"
            )));
        }
        let line = |field: fn(&AnchorRow) -> f64| {
            let pts: Vec<(f64, f64)> = anchors.iter().map(|a| (a.sv_count as f64, field(a))).collect();
            fit_affine(&pts)
        };
        let latency = line(|a| a.latency as f64);
        let dsp_mean = anchors.iter().map(|a| f64::from(a.dsp)).sum::<f64>() / anchors.len() as f64;
        let trip_form = latency.and_then(|fit| detect_trip_form(directive, feature_count, fit));
        fits.push(DirectiveFit {
            directive,
            regime,
            feature_count,
            dsp: dsp_mean.round() as u32,
            latency,
            bram: line(|a| a.bram),
            ff: line(|a| a.ff as f64),
            lut: line(|a| a.lut as f64),
            trip_form,
            anchors,
        });
    }
    Ok(fits)
}

fn detect_trip_form(directive: DirectiveConfig, feature_count: usize, fit: Affine) -> Option<TripForm> {
    let (_, per_trip, extra) = TRIP_STRUCTURES.iter().find(|(d, _, _)| *d == directive)?;
    let expected_slope = (per_trip * (feature_count as u64 + 1) + extra) as f64;
    let intercept = fit.intercept.round();
    let exact = (fit.slope - expected_slope).abs() < 1e-6
        && (fit.intercept - intercept).abs() < 1e-6
        && intercept >= 0.0;
    exact.then_some(TripForm { cycles_per_trip: *per_trip, extra_per_sv: *extra, intercept: intercept as u64 })
}

/// PL and host CPU clocks of one system build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClockPair {
    pub fpga_mhz: f64,
    pub arm_mhz: f64,
}

impl ClockPair {
    pub fn new(fpga_mhz: f64, arm_mhz: f64) -> Result<Self> {
        if !(fpga_mhz > 0.0 && fpga_mhz.is_finite() && arm_mhz > 0.0 && arm_mhz.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "clock frequencies must be positive (fpga {fpga_mhz}, arm {arm_mhz})"
            )));
        }
        Ok(Self { fpga_mhz, arm_mhz })
    }

    pub fn matches(&self, fpga_mhz: f64, arm_mhz: f64) -> bool {
        same_mhz(self.fpga_mhz, fpga_mhz) && same_mhz(self.arm_mhz, arm_mhz)
    }

    /// Synthesis regime for the PL clock, if it is a whole number of MHz.
    pub fn regime(&self) -> Regime {
        Regime(self.fpga_mhz.round() as u32)
    }
}

impl fmt::Display for ClockPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPGA {} MHz / ARM {} MHz", self.fpga_mhz, self.arm_mhz)
    }
}

pub(crate) fn same_mhz(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * a.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmPoint {
    pub sv_count: usize,
    pub plain: u64,
    pub optimized: u64,
}

/// Host CPU cycle model for one clock pairing: plain and optimized builds
/// of the same classification routine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmFit {
    pub fpga_mhz: f64,
    pub arm_mhz: f64,
    /// Clock the cycle counts are expressed in.
    pub timer_mhz: f64,
    pub feature_count: usize,
    pub points: Vec<ArmPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plain_fit: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimized_fit: Option<Affine>,
}

impl ArmFit {
    fn refit(&mut self) {
        self.points.sort_by_key(|p| p.sv_count);
        let pts = |f: fn(&ArmPoint) -> u64| -> Vec<(f64, f64)> {
            self.points.iter().map(|p| (p.sv_count as f64, f(p) as f64)).collect()
        };
        self.plain_fit = fit_affine(&pts(|p| p.plain));
        self.optimized_fit = fit_affine(&pts(|p| p.optimized));
    }

    pub fn clocks(&self) -> ClockPair {
        ClockPair { fpga_mhz: self.fpga_mhz, arm_mhz: self.arm_mhz }
    }
}

/// Accelerator cycles observed for a built system, DMA transfers included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HwAnchor {
    pub sv_count: usize,
    pub feature_count: usize,
    pub directive: DirectiveConfig,
    pub fpga_mhz: f64,
    pub arm_mhz: f64,
    pub cycles: u64,
}

/// An implemented design and its total on-chip power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignEntry {
    pub model: String,
    pub sv_count: usize,
    pub fpga_mhz: f64,
    pub design: u32,
    pub directive: DirectiveConfig,
    pub watts: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Measurements {
    #[serde(default)]
    pub arm: Vec<ArmFit>,
    #[serde(default)]
    pub hw: Vec<HwAnchor>,
    #[serde(default)]
    pub design: Vec<DesignEntry>,
}

impl Measurements {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::CalibrationFormat(e.to_string()))
    }
}

/// Everything the cost models need. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSet {
    #[serde(default)]
    pub synthesis: Vec<DirectiveFit>,
    #[serde(default)]
    pub arm: Vec<ArmFit>,
    #[serde(default)]
    pub hw: Vec<HwAnchor>,
    #[serde(default)]
    pub design: Vec<DesignEntry>,
}

impl CalibrationSet {
    pub fn new(synthesis: Vec<DirectiveFit>, measurements: Measurements) -> Self {
        let mut set = Self {
            synthesis,
            arm: measurements.arm,
            hw: measurements.hw,
            design: measurements.design,
        };
        set.arm.iter_mut().for_each(ArmFit::refit);
        set
    }

    /// Calibration built from the tables bundled with the crate.
    pub fn shipped() -> Self {
        let rows = parse_anchor_csv(SHIPPED_ANCHORS_CSV).expect("bundled anchor table parses");
        let fits = fit_calibration(&rows, &[]).expect("bundled anchor table fits");
        let measurements = Measurements::from_toml(SHIPPED_MEASUREMENTS_TOML).expect("bundled measurements parse");
        Self::new(fits, measurements)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let mut set: CalibrationSet = toml::from_str(text).map_err(|e| Error::CalibrationFormat(e.to_string()))?;
        set.arm.iter_mut().for_each(ArmFit::refit);
        for fit in &set.synthesis {
            if fit.anchors.is_empty() {
                return Err(Error::CalibrationFormat(format!(
                    "{} @ {} has no anchors",
                    fit.directive, fit.regime
                )));
            }
        }
        Ok(set)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("calibration serializes")
    }

    pub fn directive_fit(&self, directive: DirectiveConfig, regime: Regime) -> Result<&DirectiveFit> {
        self.synthesis
            .iter()
            .find(|f| f.directive == directive && f.regime == regime)
            .ok_or_else(|| Error::UnknownCalibration(format!("{directive} @ {regime}")))
    }

    /// Directives calibrated at `regime`, in name order.
    pub fn directives(&self, regime: Regime) -> Vec<DirectiveConfig> {
        let mut out: Vec<DirectiveConfig> =
            self.synthesis.iter().filter(|f| f.regime == regime).map(|f| f.directive).collect();
        out.sort_by_key(|d| d.name());
        out.dedup();
        out
    }

    pub fn regimes(&self) -> Vec<Regime> {
        let mut out: Vec<Regime> = self.synthesis.iter().map(|f| f.regime).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn arm_fit(&self, clocks: ClockPair) -> Result<&ArmFit> {
        self.arm
            .iter()
            .find(|a| clocks.matches(a.fpga_mhz, a.arm_mhz))
            .ok_or_else(|| Error::UnknownCalibration(format!("host cycles at {clocks}")))
    }

    pub fn hw_anchor(
        &self,
        sv_count: usize,
        feature_count: usize,
        directive: DirectiveConfig,
        clocks: ClockPair,
    ) -> Option<u64> {
        self.hw
            .iter()
            .find(|h| {
                h.sv_count == sv_count
                    && h.feature_count == feature_count
                    && h.directive == directive
                    && clocks.matches(h.fpga_mhz, h.arm_mhz)
            })
            .map(|h| h.cycles)
    }

    /// Implemented design matching an (S, directive, regime) point, if any.
    pub fn design_for(&self, sv_count: usize, directive: DirectiveConfig, regime: Regime) -> Option<&DesignEntry> {
        self.design.iter().find(|d| {
            d.sv_count == sv_count && d.directive == directive && same_mhz(d.fpga_mhz, f64::from(regime.mhz()))
        })
    }
}
