use thiserror::Error;

use crate::qcore::ModeLabel;

pub type Result<T, E = MziError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MziError {
    #[error("transmission {0} outside [0, 1]")]
    TransmissionOutOfRange(f64),

    #[error("splitter inputs must differ (got {0} twice)")]
    DuplicateSplitterInput(ModeLabel),

    #[error("splitter outputs must differ (got {0} twice)")]
    DuplicateSplitterOutput(ModeLabel),

    #[error("splitter output {0} already carries amplitude")]
    OccupiedOutput(ModeLabel),

    #[error("{0} is a terminal port")]
    TerminalSegment(ModeLabel),

    #[error("segment {0} is not valid here")]
    InvalidSegment(ModeLabel),

    #[error("no marker with index {0}")]
    UnknownMarker(usize),

    #[error("marker {index} sits on {expected}, not on {got}")]
    MarkerSegmentMismatch {
        index: usize,
        expected: ModeLabel,
        got: ModeLabel,
    },

    #[error("more than one marker on segment {0}")]
    DuplicateMarker(ModeLabel),

    #[error("marker angle {0} outside [-pi/2, pi/2]")]
    ThetaOutOfRange(f64),

    #[error("state norm {0} is not 1")]
    NotNormalized(f64),

    #[error("amplitude vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("conditioning on {0} has zero probability")]
    ZeroProbability(String),

    #[error("configuration has markers; weak values need a marker-free network")]
    MarkersPresent,

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("discrimination is impossible at theta = 0 (the marker states coincide)")]
    IndistinguishableStates,

    #[error("{0}")]
    InvalidConfig(String),

    #[error("assertion failed: {0}")]
    AssertionFailed(String),

    #[error("transform length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("vibration frequency {0} Hz is used by more than one mirror")]
    FrequencyCollision(f64),

    #[error("vibration frequency {frequency} Hz is not below Nyquist ({nyquist} Hz)")]
    AboveNyquist { frequency: f64, nyquist: f64 },

    #[error("tilt amplitude {0} outside the first-order regime [0, 0.05]")]
    TiltOutOfRegime(f64),
}
