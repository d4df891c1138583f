//! Simulator of the nested Mach–Zehnder interferometer with weak path
//! markers.
//!
//! The crate computes amplitudes, post-selected probabilities, weak values
//! and the local traces left on marker qubits, and it runs per-photon
//! unambiguous-discrimination Monte Carlo over those markers.
//!
//! Modules, bottom-up:
//!
//! - [`qcore`]: one photon over labeled modes, tensored with marker qubits.
//! - [`interferometer`]: the nested network and its evolution.
//! - [`analysis`]: weak values, weak traces, phase scans and the path arguments.
//! - [`discrimination`]: POVMs, sampling with collapse, Monte Carlo accounting.
//! - [`danan`]: frequency-tagged mirror vibrations and the detector spectrum.
//! - [`cli`]: the `mzi` experiment runner.

pub mod analysis;
pub mod cli;
pub mod danan;
pub mod discrimination;
pub mod error;
pub mod interferometer;
pub mod qcore;

pub use error::{MziError, Result};
pub use interferometer::{MarkerSpec, NestedMziConfig};
pub use qcore::{JointState, ModeLabel, Port};
