//! The nested Mach–Zehnder network: configuration, element list and
//! evolution of the source photon.
//!
//! ```text
//!            C  (outer arm)
//!   S ─ BS1 ───────────────────────────── BS4 ─ D
//!        │ E        A                 F   │
//!        └── BS2 ───────── BS3 ───────────┘    └ O2
//!             │     B       │ G
//!             └─────────────┘ └─ O3
//! ```
//!
//! With the default transmissions every path amplitude reaching `D` has
//! magnitude 1/3: `+1/3` via `C`, `+1/3` via `B` and `−1/3` via `A`. The
//! inner interferometer is dark toward `F`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MziError, Result};
use crate::qcore::{BeamSplitter, JointState, MarkerId, ModeLabel, Port, EXACT_TOL};

/// A marker qubit watching one checkpoint. `theta = π/2` is a fully
/// efficient (orthogonal) marker; small `theta` is a weak trace with
/// `ε = sin θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkerSpec {
    pub location: ModeLabel,
    pub theta: f64,
}

impl MarkerSpec {
    pub fn new(location: ModeLabel, theta: f64) -> Self {
        Self { location, theta }
    }

    /// Marker with coupling strength `ε = sin θ`.
    pub fn with_epsilon(location: ModeLabel, epsilon: f64) -> Self {
        Self::new(location, epsilon.asin())
    }

    pub fn epsilon(&self) -> f64 {
        self.theta.sin()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestedMziConfig {
    /// BS1 transmission toward `C`.
    pub t1: f64,
    /// BS2 transmission toward `A`.
    pub t2: f64,
    /// BS3 transmission; 1/2 keeps `F` dark.
    pub t3: f64,
    /// BS4 transmission from `C` to `D`.
    pub t4: f64,
    pub phases: BTreeMap<ModeLabel, f64>,
    pub blocked: BTreeSet<ModeLabel>,
    pub markers: Vec<MarkerSpec>,
}

impl Default for NestedMziConfig {
    fn default() -> Self {
        Self {
            t1: 1.0 / 3.0,
            t2: 0.5,
            t3: 0.5,
            t4: 1.0 / 3.0,
            phases: BTreeMap::new(),
            blocked: BTreeSet::new(),
            markers: Vec::new(),
        }
    }
}

impl NestedMziConfig {
    pub fn with_markers(mut self, markers: impl IntoIterator<Item = MarkerSpec>) -> Self {
        self.markers = markers.into_iter().collect();
        self
    }

    pub fn with_blocked(mut self, blocked: impl IntoIterator<Item = ModeLabel>) -> Self {
        self.blocked = blocked.into_iter().collect();
        self
    }

    pub fn with_phase(mut self, segment: ModeLabel, phi: f64) -> Self {
        self.phases.insert(segment, phi);
        self
    }

    /// Markers on `A`, `B` and `C`, all at the same angle.
    pub fn with_equal_markers(self, theta: f64) -> Self {
        self.with_markers(ModeLabel::PATHS.map(|l| MarkerSpec::new(l, theta)))
    }

    pub fn without_markers(&self) -> Self {
        Self {
            markers: Vec::new(),
            ..self.clone()
        }
    }

    pub fn marker_locations(&self) -> Vec<ModeLabel> {
        self.markers.iter().map(|m| m.location).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for t in [self.t1, self.t2, self.t3, self.t4] {
            if !(0.0..=1.0).contains(&t) {
                return Err(MziError::TransmissionOutOfRange(t));
            }
        }
        for (&segment, phi) in &self.phases {
            if !ModeLabel::PATHS.contains(&segment) {
                return Err(MziError::InvalidSegment(segment));
            }
            if !phi.is_finite() {
                return Err(MziError::InvalidConfig(format!(
                    "phase on {segment} is not finite"
                )));
            }
        }
        for &segment in &self.blocked {
            if segment.is_terminal() {
                return Err(MziError::TerminalSegment(segment));
            }
            if !ModeLabel::CHECKPOINTS.contains(&segment) {
                return Err(MziError::InvalidSegment(segment));
            }
        }
        let mut seen = BTreeSet::new();
        for m in &self.markers {
            if !ModeLabel::CHECKPOINTS.contains(&m.location) {
                return Err(MziError::InvalidSegment(m.location));
            }
            if !seen.insert(m.location) {
                return Err(MziError::DuplicateMarker(m.location));
            }
            if !(0.0..=FRAC_PI_2).contains(&m.theta) {
                return Err(MziError::ThetaOutOfRange(m.theta));
            }
        }
        Ok(())
    }
}

/// Time slices at which the evolution is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    #[serde(rename = "post-BS1")]
    Bs1,
    #[serde(rename = "post-BS2")]
    Bs2,
    #[serde(rename = "post-markers/phases")]
    Arms,
    #[serde(rename = "post-BS3")]
    Bs3,
    #[serde(rename = "post-BS4")]
    Bs4,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::Bs1, Stage::Bs2, Stage::Arms, Stage::Bs3, Stage::Bs4];

    /// The segments the photon can occupy at this slice of a marker-free,
    /// unblocked network.
    pub fn segments(self) -> &'static [ModeLabel] {
        use ModeLabel::*;
        match self {
            Stage::Bs1 => &[C, E],
            Stage::Bs2 | Stage::Arms => &[C, A, B],
            Stage::Bs3 => &[C, F, G],
            Stage::Bs4 => &[D, O2, O3],
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Bs1 => "post-BS1",
            Stage::Bs2 => "post-BS2",
            Stage::Arms => "post-markers/phases",
            Stage::Bs3 => "post-BS3",
            Stage::Bs4 => "post-BS4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Element {
    Splitter {
        name: &'static str,
        splitter: BeamSplitter,
    },
    Phase {
        segment: ModeLabel,
        phi: f64,
    },
    Coupling {
        marker: MarkerId,
        theta: f64,
    },
    Block {
        segment: ModeLabel,
        absorber: BeamSplitter,
    },
    Propagate {
        from: ModeLabel,
        to: ModeLabel,
    },
}

impl Element {
    pub fn apply(&self, state: &JointState) -> Result<JointState> {
        match self {
            Element::Splitter { splitter, .. } | Element::Block { absorber: splitter, .. } => {
                state.apply_beam_splitter(splitter)
            }
            Element::Phase { segment, phi } => state.apply_phase_shift(*segment, *phi),
            Element::Coupling { marker, theta } => {
                state.apply_marker_coupling(marker.location, *marker, *theta)
            }
            Element::Propagate { from, to } => state.apply_transfer(*from, *to),
        }
    }

    pub fn apply_adjoint(&self, state: &JointState) -> Result<JointState> {
        match self {
            Element::Splitter { splitter, .. } | Element::Block { absorber: splitter, .. } => {
                state.apply_beam_splitter_adjoint(splitter)
            }
            Element::Phase { segment, phi } => state.apply_phase_shift(*segment, -phi),
            Element::Coupling { marker, theta } => {
                state.apply_marker_coupling(marker.location, *marker, -theta)
            }
            Element::Propagate { from, to } => state.apply_transfer(*to, *from),
        }
    }
}

/// Ordered element list of a configured network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Network {
    pub marker_locations: Vec<ModeLabel>,
    pub elements: Vec<(Stage, Element)>,
}

impl Network {
    pub fn splitter_count(&self) -> usize {
        self.count(|e| matches!(e, Element::Splitter { .. }))
    }

    pub fn coupling_count(&self) -> usize {
        self.count(|e| matches!(e, Element::Coupling { .. }))
    }

    pub fn block_count(&self) -> usize {
        self.count(|e| matches!(e, Element::Block { .. }))
    }

    fn count(&self, pred: impl Fn(&Element) -> bool) -> usize {
        self.elements.iter().filter(|(_, e)| pred(e)).count()
    }

    pub fn source_state(&self) -> Result<JointState> {
        JointState::new(ModeLabel::S, &self.marker_locations)
    }

    /// Evolves `|S⟩⊗|0…0⟩`, recording the state at the end of every stage.
    pub fn evolve(&self) -> Result<EvolutionResult> {
        let mut state = self.source_state()?;
        let mut snapshots = Vec::with_capacity(Stage::ALL.len());
        for stage in Stage::ALL {
            for (_, element) in self.elements.iter().filter(|(s, _)| *s == stage) {
                state = element.apply(&state)?;
            }
            snapshots.push(Snapshot {
                stage,
                state: state.clone(),
            });
        }
        Ok(EvolutionResult {
            snapshots,
            final_state: state,
        })
    }

    /// `U_after† |mode, 0…0⟩`, where `U_after` is every element after
    /// `stage`. This is the backward-evolving state of a post-selection on
    /// `mode`, brought back to the `stage` slice.
    pub fn backward_state(&self, mode: ModeLabel, stage: Stage) -> Result<JointState> {
        let mut state = JointState::new(mode, &self.marker_locations)?;
        for (_, element) in self.elements.iter().rev().filter(|(s, _)| *s > stage) {
            state = element.apply_adjoint(&state)?;
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub stage: Stage,
    pub state: JointState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub snapshots: Vec<Snapshot>,
    pub final_state: JointState,
}

impl EvolutionResult {
    pub fn snapshot(&self, stage: Stage) -> &JointState {
        &self
            .snapshots
            .iter()
            .find(|s| s.stage == stage)
            .expect("every stage is recorded")
            .state
    }

    pub fn port_probability(&self, port: Port) -> f64 {
        port.modes()
            .iter()
            .map(|&m| self.final_state.mode_probability(m))
            .sum()
    }
}

fn marker_index(locations: &[ModeLabel], location: ModeLabel) -> Option<MarkerId> {
    locations
        .iter()
        .position(|&l| l == location)
        .map(|index| MarkerId { index, location })
}

/// Lays out the element list for `config`.
///
/// Order: BS1 (S → C, E); marker/block on E; BS2 (E → A, B); phases,
/// markers and blocks on A, B, C; BS3 ((B, A) → G, F); marker/block on F;
/// BS4 ((C, F) → D, O2); G runs out to O3. BS3 takes `B` as its first input so that `F` is
/// the dark output and the `A` contribution at `D` carries the minus sign.
pub fn build_nested_mzi(config: &NestedMziConfig) -> Result<Network> {
    use ModeLabel::*;
    config.validate()?;
    let locations = config.marker_locations();
    let mut elements = Vec::new();

    let splitter = |name, in1, in2, out1, out2, t| -> Result<Element> {
        Ok(Element::Splitter {
            name,
            splitter: BeamSplitter::new(in1, in2, out1, out2, t)?,
        })
    };
    let checkpoint = |segment: ModeLabel, stage: Stage, elements: &mut Vec<(Stage, Element)>| -> Result<()> {
        if let Some(&phi) = config.phases.get(&segment) {
            elements.push((stage, Element::Phase { segment, phi }));
        }
        if let Some(spec) = config.markers.iter().find(|m| m.location == segment) {
            let marker = marker_index(&locations, segment).expect("marker was listed");
            elements.push((
                stage,
                Element::Coupling {
                    marker,
                    theta: spec.theta,
                },
            ));
        }
        Ok(())
    };
    let block = |segment: ModeLabel, stage: Stage, elements: &mut Vec<(Stage, Element)>| -> Result<()> {
        if config.blocked.contains(&segment) {
            elements.push((
                stage,
                Element::Block {
                    segment,
                    absorber: BeamSplitter::absorber(segment)?,
                },
            ));
        }
        Ok(())
    };

    elements.push((Stage::Bs1, splitter("BS1", S, None, C, E, config.t1)?));

    checkpoint(E, Stage::Bs2, &mut elements)?;
    block(E, Stage::Bs2, &mut elements)?;
    elements.push((Stage::Bs2, splitter("BS2", E, None, A, B, config.t2)?));

    for segment in [A, B, C] {
        checkpoint(segment, Stage::Arms, &mut elements)?;
    }
    for segment in [A, B, C] {
        block(segment, Stage::Arms, &mut elements)?;
    }

    elements.push((Stage::Bs3, splitter("BS3", B, Some(A), G, F, config.t3)?));

    checkpoint(F, Stage::Bs4, &mut elements)?;
    block(F, Stage::Bs4, &mut elements)?;
    elements.push((Stage::Bs4, splitter("BS4", C, Some(F), D, O2, config.t4)?));
    elements.push((Stage::Bs4, Element::Propagate { from: G, to: O3 }));

    Ok(Network {
        marker_locations: locations,
        elements,
    })
}

pub fn evolve(config: &NestedMziConfig) -> Result<EvolutionResult> {
    build_nested_mzi(config)?.evolve()
}

/// Detection probabilities at `D`, `O2`, `O3` and the absorbers.
pub fn port_probabilities(config: &NestedMziConfig) -> Result<BTreeMap<Port, f64>> {
    let result = evolve(config)?;
    Ok(Port::ALL
        .into_iter()
        .map(|p| (p, result.port_probability(p)))
        .collect())
}

/// Whether the inner interferometer is dark toward `F` for this config
/// (markers ignored).
pub fn is_tuned(config: &NestedMziConfig) -> Result<bool> {
    let result = evolve(&config.without_markers())?;
    Ok(result.snapshot(Stage::Bs3).mode_probability(ModeLabel::F).sqrt() < EXACT_TOL)
}
