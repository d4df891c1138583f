//! Pure-state engine for one photon plus marker qubits.

mod linalg;
mod mode;
mod state;

pub use linalg::Mat2;
pub use mode::{MarkerId, ModeLabel, Port, UnknownLabel, MODE_COUNT};
pub use state::{
    Amplitude, BeamSplitter, Conditioned, JointState, ReducedMarkerState, EXACT_TOL,
    ZERO_PROBABILITY,
};
