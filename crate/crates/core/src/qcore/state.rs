use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use super::linalg::Mat2;
use super::mode::{MarkerId, ModeLabel, MODE_COUNT};
use crate::error::{MziError, Result};

/// Probability amplitude of one (mode, marker string) basis vector.
pub type Amplitude = Complex64;

/// Tolerance for exact-value assertions on amplitudes and probabilities.
pub const EXACT_TOL: f64 = 1e-12;
/// Below this, a conditioning event is treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-14;
/// Accepted deviation of an input state's norm from 1.
const INPUT_NORM_TOL: f64 = 1e-10;

/// Two-mode real orthogonal splitter
/// `[[√T, √(1−T)], [√(1−T), −√T]]` mapping `(in1, in2)` onto `(out1, out2)`.
///
/// `in2 = None` stands for an unused (vacuum) input port. Outputs may reuse
/// input labels; any other output must be empty when the splitter fires.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamSplitter {
    pub in1: ModeLabel,
    pub in2: Option<ModeLabel>,
    pub out1: ModeLabel,
    pub out2: ModeLabel,
    pub transmission: f64,
}

impl BeamSplitter {
    pub fn new(
        in1: ModeLabel,
        in2: Option<ModeLabel>,
        out1: ModeLabel,
        out2: ModeLabel,
        transmission: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmission) {
            return Err(MziError::TransmissionOutOfRange(transmission));
        }
        if in2 == Some(in1) {
            return Err(MziError::DuplicateSplitterInput(in1));
        }
        if out1 == out2 {
            return Err(MziError::DuplicateSplitterOutput(out1));
        }
        Ok(Self {
            in1,
            in2,
            out1,
            out2,
            transmission,
        })
    }

    /// A `T = 0` splitter that moves everything on `segment` into its sink.
    pub fn absorber(segment: ModeLabel) -> Result<Self> {
        let sink = segment.sink().ok_or(if segment.is_terminal() {
            MziError::TerminalSegment(segment)
        } else {
            MziError::InvalidSegment(segment)
        })?;
        Self::new(segment, None, segment, sink, 0.0)
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let t = self.transmission.sqrt();
        let r = (1.0 - self.transmission).sqrt();
        [[t, r], [r, -t]]
    }
}

/// Pure state of the photon and its marker qubits.
///
/// Stored densely as `amplitudes[mode * 2^n + bits]`, bit `k` of `bits`
/// holding marker `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    amplitudes: Vec<Amplitude>,
    markers: Vec<MarkerId>,
}

/// Outcome of a projective post-selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Conditioned {
    pub probability: f64,
    /// Renormalized conditional state; `None` when the event is impossible.
    pub state: Option<JointState>,
}

impl Conditioned {
    pub fn require(self, event: impl Into<String>) -> Result<JointState> {
        self.state.ok_or_else(|| MziError::ZeroProbability(event.into()))
    }
}

fn marker_ids(locations: &[ModeLabel]) -> Result<Vec<MarkerId>> {
    let mut markers = Vec::with_capacity(locations.len());
    for (index, &location) in locations.iter().enumerate() {
        if location.is_terminal() {
            return Err(MziError::TerminalSegment(location));
        }
        if locations[..index].contains(&location) {
            return Err(MziError::DuplicateMarker(location));
        }
        markers.push(MarkerId { index, location });
    }
    Ok(markers)
}

impl JointState {
    /// Photon on `source`, one ground-state marker per entry of `locations`.
    pub fn new(source: ModeLabel, locations: &[ModeLabel]) -> Result<Self> {
        Self::basis(source, 0, locations)
    }

    pub fn basis(mode: ModeLabel, bits: usize, locations: &[ModeLabel]) -> Result<Self> {
        let markers = marker_ids(locations)?;
        let strings = 1usize << markers.len();
        if bits >= strings {
            return Err(MziError::DimensionMismatch {
                expected: strings,
                got: bits + 1,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); MODE_COUNT * strings];
        amplitudes[mode.index() * strings + bits] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            markers,
        })
    }

    /// Wraps a raw amplitude vector. No normalization is imposed.
    pub fn from_amplitudes(locations: &[ModeLabel], amplitudes: Vec<Amplitude>) -> Result<Self> {
        let markers = marker_ids(locations)?;
        let expected = MODE_COUNT << markers.len();
        if amplitudes.len() != expected {
            return Err(MziError::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        Ok(Self {
            amplitudes,
            markers,
        })
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn marker_count(&self) -> usize {
        self.markers.len()
    }

    pub fn markers(&self) -> &[MarkerId] {
        &self.markers
    }

    pub fn marker(&self, index: usize) -> Result<MarkerId> {
        self.markers
            .get(index)
            .copied()
            .ok_or(MziError::UnknownMarker(index))
    }

    pub fn marker_at(&self, location: ModeLabel) -> Option<MarkerId> {
        self.markers.iter().copied().find(|m| m.location == location)
    }

    fn strings(&self) -> usize {
        1 << self.markers.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, mode: ModeLabel, bits: usize) -> Amplitude {
        self.amplitudes[mode.index() * self.strings() + bits]
    }

    /// Amplitudes of all marker strings with the photon on `mode`.
    pub fn mode_slice(&self, mode: ModeLabel) -> &[Amplitude] {
        let n = self.strings();
        &self.amplitudes[mode.index() * n..(mode.index() + 1) * n]
    }

    fn mode_slice_mut(&mut self, mode: ModeLabel) -> &mut [Amplitude] {
        let n = self.strings();
        &mut self.amplitudes[mode.index() * n..(mode.index() + 1) * n]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn mode_probability(&self, mode: ModeLabel) -> f64 {
        self.mode_slice(mode).iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &JointState) -> Result<Complex64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(MziError::DimensionMismatch {
                expected: self.amplitudes.len(),
                got: other.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &JointState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `P_mode |self⟩`, left unnormalized.
    pub fn project_mode(&self, mode: ModeLabel) -> JointState {
        let mut out = self.clone();
        for m in ModeLabel::ALL {
            if m != mode {
                out.mode_slice_mut(m).fill(Complex64::new(0.0, 0.0));
            }
        }
        out
    }

    pub fn renormalized(&self) -> Option<JointState> {
        let norm = self.norm_sqr();
        if norm < ZERO_PROBABILITY {
            return None;
        }
        let scale = 1.0 / norm.sqrt();
        let mut out = self.clone();
        out.amplitudes.iter_mut().for_each(|a| *a *= scale);
        Some(out)
    }

    fn require_normalized(&self) -> Result<()> {
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > INPUT_NORM_TOL {
            return Err(MziError::NotNormalized(norm));
        }
        Ok(())
    }

    fn mix(
        &self,
        sources: [Option<ModeLabel>; 2],
        targets: [Option<ModeLabel>; 2],
        m: [[f64; 2]; 2],
    ) -> Result<JointState> {
        let n = self.strings();
        let mut out = self.clone();
        let zero = vec![Complex64::new(0.0, 0.0); n];
        let read = |label: Option<ModeLabel>| match label {
            Some(l) => self.mode_slice(l).to_vec(),
            None => zero.clone(),
        };
        let (x, y) = (read(sources[0]), read(sources[1]));
        for s in sources.into_iter().flatten() {
            out.mode_slice_mut(s).fill(Complex64::new(0.0, 0.0));
        }
        for (row, target) in targets.into_iter().enumerate() {
            let Some(t) = target else { continue };
            if !sources.contains(&Some(t)) && self.mode_probability(t).sqrt() > EXACT_TOL {
                return Err(MziError::OccupiedOutput(t));
            }
            let slot = out.mode_slice_mut(t);
            for b in 0..n {
                slot[b] += m[row][0] * x[b] + m[row][1] * y[b];
            }
        }
        Ok(out)
    }

    pub fn apply_beam_splitter(&self, bs: &BeamSplitter) -> Result<JointState> {
        self.mix(
            [Some(bs.in1), bs.in2],
            [Some(bs.out1), Some(bs.out2)],
            bs.matrix(),
        )
    }

    /// Adjoint of [`apply_beam_splitter`](Self::apply_beam_splitter). With a
    /// vacuum input the component that would leave through it is dropped.
    pub fn apply_beam_splitter_adjoint(&self, bs: &BeamSplitter) -> Result<JointState> {
        // The splitter matrix is real symmetric, so its transpose is itself.
        self.mix(
            [Some(bs.out1), Some(bs.out2)],
            [Some(bs.in1), bs.in2],
            bs.matrix(),
        )
    }

    /// Free propagation: moves everything on `from` onto the empty mode `to`.
    pub fn apply_transfer(&self, from: ModeLabel, to: ModeLabel) -> Result<JointState> {
        self.mix([Some(from), None], [Some(to), None], [[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn apply_phase_shift(&self, segment: ModeLabel, phi: f64) -> Result<JointState> {
        if segment.is_terminal() {
            return Err(MziError::TerminalSegment(segment));
        }
        let phase = Complex64::from_polar(1.0, phi);
        let mut out = self.clone();
        out.mode_slice_mut(segment).iter_mut().for_each(|a| *a *= phase);
        Ok(out)
    }

    /// Rotates `marker` by `theta` on the photon-at-`segment` subspace:
    /// `|0⟩ → cosθ|0⟩ + sinθ|1⟩`, `|1⟩ → −sinθ|0⟩ + cosθ|1⟩`.
    pub fn apply_marker_coupling(
        &self,
        segment: ModeLabel,
        marker: MarkerId,
        theta: f64,
    ) -> Result<JointState> {
        let known = self.marker(marker.index)?;
        if known.location != segment || marker.location != segment {
            return Err(MziError::MarkerSegmentMismatch {
                index: marker.index,
                expected: known.location,
                got: segment,
            });
        }
        if !theta.is_finite() || theta.abs() > FRAC_PI_2 + EXACT_TOL {
            return Err(MziError::ThetaOutOfRange(theta));
        }
        let (s, c) = theta.sin_cos();
        let bit = 1 << marker.index;
        let mut out = self.clone();
        let slot = out.mode_slice_mut(segment);
        for b in (0..slot.len()).filter(|b| b & bit == 0) {
            let (g, e) = (slot[b], slot[b | bit]);
            slot[b] = c * g - s * e;
            slot[b | bit] = s * g + c * e;
        }
        Ok(out)
    }

    /// Applies a 2×2 operator to one marker qubit, without renormalizing.
    pub fn apply_marker_operator(&self, index: usize, op: &Mat2) -> Result<JointState> {
        self.marker(index)?;
        let bit = 1 << index;
        let mut out = self.clone();
        for chunk in out.amplitudes.chunks_mut(1 << self.markers.len()) {
            for b in (0..chunk.len()).filter(|b| b & bit == 0) {
                let v = op.apply([chunk[b], chunk[b | bit]]);
                chunk[b] = v[0];
                chunk[b | bit] = v[1];
            }
        }
        Ok(out)
    }

    /// Post-selects the photon on `mode`.
    pub fn condition_on_mode(&self, mode: ModeLabel) -> Result<Conditioned> {
        self.require_normalized()?;
        let probability = self.mode_probability(mode);
        let state = if probability < ZERO_PROBABILITY {
            None
        } else {
            self.project_mode(mode).renormalized()
        };
        Ok(Conditioned { probability, state })
    }

    /// Projects marker `index` onto `|excited⟩` (`true`) or `|ground⟩`.
    pub fn condition_on_marker(&self, index: usize, excited: bool) -> Result<Conditioned> {
        self.require_normalized()?;
        let keep = Mat2::projector(if excited {
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
        } else {
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        });
        let projected = self.apply_marker_operator(index, &keep)?;
        let probability = projected.norm_sqr();
        let state = if probability < ZERO_PROBABILITY {
            None
        } else {
            projected.renormalized()
        };
        Ok(Conditioned { probability, state })
    }

    /// Partial trace over the photon and every other marker.
    pub fn reduced_marker_state(&self, index: usize) -> Result<ReducedMarkerState> {
        self.marker(index)?;
        self.require_normalized()?;
        let bit = 1 << index;
        let mut rho = Mat2::ZERO;
        for chunk in self.amplitudes.chunks(1 << self.markers.len()) {
            for b in (0..chunk.len()).filter(|b| b & bit == 0) {
                let v = [chunk[b], chunk[b | bit]];
                for i in 0..2 {
                    for j in 0..2 {
                        rho.0[i][j] += v[i] * v[j].conj();
                    }
                }
            }
        }
        Ok(ReducedMarkerState { rho })
    }

    /// Probability that exactly `count` markers are excited.
    pub fn excitation_count_probability(&self, count: u32) -> f64 {
        let n = self.strings();
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i % n) as u32).count_ones() == count)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Local state of one marker qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedMarkerState {
    pub rho: Mat2,
}

impl ReducedMarkerState {
    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.rho.hermiticity_error()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.rho.hermitian_eigenvalues()[0]
    }

    pub fn excitation_probability(&self) -> f64 {
        self.rho.0[1][1].re
    }

    /// `|⟨0|ψ⟩|` generalized to mixed states: `√⟨0|ρ|0⟩`.
    pub fn fidelity_to_ground(&self) -> f64 {
        self.rho.0[0][0].re.max(0.0).sqrt()
    }
}
