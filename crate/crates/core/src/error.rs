use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported kernel type {0} (only linear, type 0, is accepted)")]
    UnsupportedKernel(i64),

    #[error("malformed model at line {line}: {msg}")]
    MalformedModel { line: usize, msg: String },

    #[error("malformed test instance: {0}")]
    MalformedInstance(String),

    #[error("malformed dataset at line {line}: {msg}")]
    MalformedDataset { line: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("frame length mismatch: expected {expected} words, got {actual}")]
    FrameLength { expected: usize, actual: usize },

    #[error("no calibration for {0}")]
    UnknownCalibration(String),

    #[error("insufficient anchors for {0}")]
    InsufficientAnchors(String),

    #[error("{directive} is calibrated only at Fl={calibrated}, requested Fl={requested}")]
    FlMismatch {
        directive: String,
        calibrated: usize,
        requested: usize,
    },

    #[error("refusing to extrapolate {0} from a single anchor")]
    ExtrapolationRefused(String),

    #[error("no power figure for model {model}, design {design}")]
    UnknownDesign { model: String, design: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("calibration file: {0}")]
    CalibrationFormat(String),
}

impl Error {
    /// True for failures of the cost models rather than of the input data.
    pub fn is_calibration(&self) -> bool {
        matches!(
            self,
            Error::UnknownCalibration(_)
                | Error::InsufficientAnchors(_)
                | Error::FlMismatch { .. }
                | Error::ExtrapolationRefused(_)
                | Error::UnknownDesign { .. }
                | Error::CalibrationFormat(_)
        )
    }
}
