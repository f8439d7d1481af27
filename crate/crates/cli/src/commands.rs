use std::fs;
use std::io::Write;
use std::path::Path;

use svm_cosim::host::{batch_classify, cosim, run_software_reference, CosimOptions};
use svm_cosim::model_io::{
    emit_dataset, emit_native_model, emit_test_instance, load_dataset, make_synthetic_with, parse_native_model,
    parse_svmlight_model, parse_test_instance,
};
use svm_cosim::synth::{estimate, explore, power_for, fit_calibration, parse_anchor_csv, Measurements, SHIPPED_MEASUREMENTS_TOML};
use svm_cosim::{CalibrationSet, ClockPair, DirectiveConfig, Error, Regime, TrainedModel};

use crate::render;
use crate::ModelArgs;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    calibration: bool,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { message: message.into(), calibration: false }
    }

    /// Prefixes the error with the file or argument it concerns.
    fn at(context: impl std::fmt::Display, err: Error) -> Self {
        Self { message: format!("{context}: {err}"), calibration: err.is_calibration() }
    }

    pub fn exit_code(&self) -> u8 {
        if self.calibration {
            2
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::input(format!("stdout: {e}"))
}

fn load_model(args: &ModelArgs) -> Result<TrainedModel, CliError> {
    match (&args.model, &args.svs, &args.alpha) {
        (Some(path), _, _) => parse_svmlight_model(&read(path)?).map_err(|e| CliError::at(path.display(), e)),
        (None, Some(svs), Some(alpha)) => parse_native_model(&read(svs)?, &read(alpha)?)
            .map_err(|e| CliError::at(format!("{} / {}", svs.display(), alpha.display()), e)),
        _ => Err(CliError::input("--model or --svs/--alpha is required")),
    }
}

fn load_calibration(path: Option<&Path>) -> Result<CalibrationSet, CliError> {
    match path {
        None => Ok(CalibrationSet::shipped()),
        Some(p) => CalibrationSet::from_toml(&read(p)?).map_err(|e| CliError::at(p.display(), e)),
    }
}

fn parse_directive(text: &str) -> Result<DirectiveConfig, CliError> {
    text.parse().map_err(|e| CliError::at("--directive", e))
}

pub fn cmd_classify(
    out: &mut dyn Write,
    model_args: &ModelArgs,
    input: Option<&Path>,
    th: f32,
    machine: bool,
) -> Result<(), CliError> {
    if !th.is_finite() {
        return Err(CliError::input("--th: threshold must be finite"));
    }
    let model = load_model(model_args)?;
    let input = input.ok_or_else(|| CliError::input("--test or --input is required"))?;
    let text = read(input)?;
    let ctx = input.display();

    if text.contains(',') {
        let dataset = load_dataset(&text).map_err(|e| CliError::at(&ctx, e))?;
        let report = batch_classify(&model, &dataset, th).map_err(|e| CliError::at(&ctx, e))?;
        render::classification_batch(out, &report, machine).map_err(io_err)
    } else {
        let test = parse_test_instance(&text, model.feature_count()).map_err(|e| CliError::at(&ctx, e))?;
        let result = run_software_reference(&model, &test, th).map_err(|e| CliError::at(&ctx, e))?;
        render::classification_single(out, &result, machine).map_err(io_err)
    }
}

pub struct CosimArgs<'a> {
    pub svs: &'a Path,
    pub alpha: &'a Path,
    pub test: &'a Path,
    pub directive: &'a str,
    pub fpga_mhz: f64,
    pub arm_mhz: f64,
    pub th: f32,
    pub sv_count: Option<usize>,
    pub feature_count: Option<usize>,
    pub strict: bool,
    pub calibration: Option<&'a Path>,
}

pub fn cmd_cosim(out: &mut dyn Write, args: &CosimArgs<'_>, machine: bool) -> Result<(), CliError> {
    if !args.th.is_finite() {
        return Err(CliError::input("--th: threshold must be finite"));
    }
    let clocks = ClockPair::new(args.fpga_mhz, args.arm_mhz).map_err(|e| CliError::at("--fpga-mhz/--arm-mhz", e))?;
    let directive = parse_directive(args.directive)?;
    let cal = load_calibration(args.calibration)?;
    let model = parse_native_model(&read(args.svs)?, &read(args.alpha)?)
        .map_err(|e| CliError::at(format!("{} / {}", args.svs.display(), args.alpha.display()), e))?;
    if let Some(s) = args.sv_count.filter(|s| *s != model.sv_count()) {
        return Err(CliError::input(format!(
            "{}: --sv-count {s} but file holds {} support vectors",
            args.svs.display(),
            model.sv_count()
        )));
    }
    if let Some(f) = args.feature_count.filter(|f| *f != model.feature_count()) {
        return Err(CliError::input(format!(
            "{}: --features {f} but file holds {} features",
            args.svs.display(),
            model.feature_count()
        )));
    }
    let test = parse_test_instance(&read(args.test)?, model.feature_count())
        .map_err(|e| CliError::at(args.test.display(), e))?;
    let options = CosimOptions { strict_calibration: args.strict };
    let report =
        cosim(&cal, &model, &test, directive, clocks, args.th, options).map_err(|e| CliError::at("cosim", e))?;
    render::cosim(out, &report, machine).map_err(io_err)
}

pub fn cmd_synth(
    out: &mut dyn Write,
    sv_count: usize,
    feature_count: usize,
    directive: &str,
    regime: u32,
    calibration: Option<&Path>,
    machine: bool,
) -> Result<(), CliError> {
    let directive = parse_directive(directive)?;
    let cal = load_calibration(calibration)?;
    let regime = Regime(regime);
    let est = estimate(&cal, sv_count, feature_count, directive, regime).map_err(|e| CliError::at("synth", e))?;
    let watts = power_for(&cal, sv_count, directive, regime);
    render::synth(out, sv_count, feature_count, directive, regime, &est, watts, machine).map_err(io_err)
}

pub fn cmd_explore(
    out: &mut dyn Write,
    sv_count: usize,
    feature_count: usize,
    regime: u32,
    calibration: Option<&Path>,
    machine: bool,
) -> Result<(), CliError> {
    let cal = load_calibration(calibration)?;
    let regime = Regime(regime);
    let front = explore(&cal, sv_count, feature_count, regime, None).map_err(|e| CliError::at("explore", e))?;
    render::front(out, sv_count, feature_count, regime, &front, machine).map_err(io_err)
}

pub fn cmd_fit(
    out: &mut dyn Write,
    anchors: &Path,
    measurements: Option<&Path>,
    dest: Option<&Path>,
) -> Result<(), CliError> {
    let rows = parse_anchor_csv(&read(anchors)?).map_err(|e| CliError::at(anchors.display(), e))?;
    let fits = fit_calibration(&rows, &[]).map_err(|e| CliError::at(anchors.display(), e))?;
    let measurements = match measurements {
        Some(p) => Measurements::from_toml(&read(p)?).map_err(|e| CliError::at(p.display(), e))?,
        None => Measurements::from_toml(SHIPPED_MEASUREMENTS_TOML).expect("bundled measurements parse"),
    };
    let set = CalibrationSet::new(fits, measurements);
    let text = set.to_toml();
    match dest {
        Some(path) => {
            write_file(path, &text)?;
            writeln!(out, "wrote {} directive fits to {}", set.synthesis.len(), path.display()).map_err(io_err)
        }
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

pub fn cmd_gen(
    out: &mut dyn Write,
    sv_count: usize,
    feature_count: usize,
    seed: u64,
    instances: usize,
    dir: &Path,
) -> Result<(), CliError> {
    let (model, dataset) =
        make_synthetic_with(sv_count, feature_count, seed, instances.max(1)).map_err(|e| CliError::at("gen", e))?;
    fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let (svs, alpha) = emit_native_model(&model);
    write_file(&dir.join("svs.txt"), &svs)?;
    write_file(&dir.join("alpha.txt"), &alpha)?;
    write_file(&dir.join("test.txt"), &emit_test_instance(&dataset.instances[0].0))?;
    write_file(&dir.join("dataset.csv"), &emit_dataset(&dataset))?;
    writeln!(
        out,
        "wrote svs.txt, alpha.txt, test.txt, dataset.csv (S={sv_count}, Fl={feature_count}, seed={seed}) to {}",
        dir.display()
    )
    .map_err(io_err)
}
