//! `svm-cosim` command-line front end.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "svm-cosim", version, about = "Linear SVM accelerator co-simulator and HLS cost model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit key=value lines instead of tables
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Debug, Args)]
struct CalibrationArgs {
    /// Calibration file written by `fit` (defaults to the bundled tables)
    #[arg(long, value_name = "FILE")]
    calibration: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// SVM-Light model file
    #[arg(long, value_name = "FILE", conflicts_with_all = ["svs", "alpha"])]
    model: Option<PathBuf>,
    /// Support vectors, one per line
    #[arg(long, value_name = "FILE", requires = "alpha")]
    svs: Option<PathBuf>,
    /// `b` followed by one alpha*y per support vector
    #[arg(long, value_name = "FILE", requires = "svs")]
    alpha: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a test instance or a labeled CSV dataset
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        /// Single test instance (whitespace-separated features)
        #[arg(long, value_name = "FILE", conflicts_with = "input")]
        test: Option<PathBuf>,
        /// Test instance or labeled CSV (features..., label)
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        th: f32,
    },
    /// Co-simulate one classification on the accelerator and the host CPU
    Cosim {
        #[arg(long, value_name = "FILE")]
        svs: PathBuf,
        #[arg(long, value_name = "FILE")]
        alpha: PathBuf,
        #[arg(long, value_name = "FILE")]
        test: PathBuf,
        #[arg(long, default_value = "pipeline-inner")]
        directive: String,
        #[arg(long, default_value_t = 100.0)]
        fpga_mhz: f64,
        #[arg(long, default_value_t = 666.67)]
        arm_mhz: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        th: f32,
        /// Expected number of support vectors
        #[arg(long = "sv-count", value_name = "S")]
        sv_count: Option<usize>,
        /// Expected number of features
        #[arg(long = "features", value_name = "FL")]
        features: Option<usize>,
        /// Refuse estimated cycle counts
        #[arg(long)]
        strict_calibration: bool,
        #[command(flatten)]
        calibration: CalibrationArgs,
    },
    /// Estimate latency and resources for one directive
    Synth {
        sv_count: usize,
        feature_count: usize,
        directive: String,
        /// FPGA clock regime in MHz
        #[arg(default_value_t = 100)]
        regime: u32,
        #[command(flatten)]
        calibration: CalibrationArgs,
    },
    /// Pareto front of directive choices
    Explore {
        sv_count: usize,
        feature_count: usize,
        #[arg(default_value_t = 100)]
        regime: u32,
        #[command(flatten)]
        calibration: CalibrationArgs,
    },
    /// Fit a calibration file from an anchor CSV
    Fit {
        anchors: PathBuf,
        /// Host cycle, measured-cycle and power tables (defaults to the bundled ones)
        #[arg(long, value_name = "FILE")]
        measurements: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Generate a seeded synthetic model and dataset
    Gen {
        sv_count: usize,
        feature_count: usize,
        seed: Option<u64>,
        #[arg(long = "seed", value_name = "SEED", conflicts_with = "seed")]
        seed_flag: Option<u64>,
        /// Number of labeled instances
        #[arg(long, default_value_t = svm_cosim::model_io::DEFAULT_SYNTHETIC_INSTANCES)]
        instances: usize,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let machine = cli.output.machine;
    match cli.command {
        Command::Classify { model, test, input, th } => {
            commands::cmd_classify(&mut out, &model, test.as_deref().or(input.as_deref()), th, machine)
        }
        Command::Cosim {
            svs,
            alpha,
            test,
            directive,
            fpga_mhz,
            arm_mhz,
            th,
            sv_count,
            features,
            strict_calibration,
            calibration,
        } => commands::cmd_cosim(
            &mut out,
            &commands::CosimArgs {
                svs: &svs,
                alpha: &alpha,
                test: &test,
                directive: &directive,
                fpga_mhz,
                arm_mhz,
                th,
                sv_count,
                feature_count: features,
                strict: strict_calibration,
                calibration: calibration.calibration.as_deref(),
            },
            machine,
        ),
        Command::Synth { sv_count, feature_count, directive, regime, calibration } => commands::cmd_synth(
            &mut out,
            sv_count,
            feature_count,
            &directive,
            regime,
            calibration.calibration.as_deref(),
            machine,
        ),
        Command::Explore { sv_count, feature_count, regime, calibration } => commands::cmd_explore(
            &mut out,
            sv_count,
            feature_count,
            regime,
            calibration.calibration.as_deref(),
            machine,
        ),
        Command::Fit { anchors, measurements, out: path } => {
            commands::cmd_fit(&mut out, &anchors, measurements.as_deref(), path.as_deref())
        }
        Command::Gen { sv_count, feature_count, seed, seed_flag, instances, out: dir } => {
            commands::cmd_gen(&mut out, sv_count, feature_count, seed.or(seed_flag).unwrap_or(0), instances, &dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code())
        }
    }
}
