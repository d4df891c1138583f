//! Quantities both sides of the path debate cite: weak values, local
//! marker traces, phase scans, the single-path exclusivity criterion and
//! the marking behaviour at `F`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{MziError, Result};
use crate::interferometer::{build_nested_mzi, evolve, MarkerSpec, NestedMziConfig, Stage};
use crate::qcore::{JointState, ModeLabel, Port, ZERO_PROBABILITY};

/// Threshold for the phase-invariance and solo-probability verdicts.
pub const VERDICT_TOL: f64 = 1e-10;
/// Scan resolution used by [`exclusive_path_argument`].
pub const VERDICT_SCAN_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(c: ComplexValue) -> Self {
        Complex64::new(c.re, c.im)
    }
}

/// Slice at which a segment's weak value is evaluated.
fn weak_value_stage(segment: ModeLabel) -> Result<Stage> {
    match segment {
        ModeLabel::E => Ok(Stage::Bs1),
        ModeLabel::A | ModeLabel::B | ModeLabel::C => Ok(Stage::Arms),
        ModeLabel::F | ModeLabel::G => Ok(Stage::Bs3),
        other => Err(MziError::InvalidSegment(other)),
    }
}

fn port_mode(port: ModeLabel) -> Result<ModeLabel> {
    if matches!(port, ModeLabel::D | ModeLabel::O2 | ModeLabel::O3) {
        Ok(port)
    } else {
        Err(MziError::InvalidSegment(port))
    }
}

/// Weak value of the projector on `segment` for a photon post-selected at
/// `port`: `⟨Φ|P|Ψ⟩ / ⟨Φ|Ψ⟩` with `Ψ` the forward snapshot and `Φ` the
/// post-selected state evolved backward to the same slice.
pub fn weak_value(config: &NestedMziConfig, segment: ModeLabel, port: ModeLabel) -> Result<Complex64> {
    let stage = weak_value_stage(segment)?;
    weak_value_at(config, segment, port, stage)
}

fn weak_value_at(
    config: &NestedMziConfig,
    segment: ModeLabel,
    port: ModeLabel,
    stage: Stage,
) -> Result<Complex64> {
    if !config.markers.is_empty() {
        return Err(MziError::MarkersPresent);
    }
    let port = port_mode(port)?;
    let network = build_nested_mzi(config)?;
    let forward = network.evolve()?;
    let psi = forward.snapshot(stage);
    let phi = network.backward_state(port, stage)?;
    let denominator = phi.inner(psi)?;
    if denominator.norm_sqr() < ZERO_PROBABILITY {
        return Err(MziError::ZeroProbability(format!("post-selection at {port}")));
    }
    Ok(phi.inner(&psi.project_mode(segment))? / denominator)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakValueSlice {
    pub stage: Stage,
    pub values: BTreeMap<ModeLabel, ComplexValue>,
    pub sum: ComplexValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakValueReport {
    pub condition_port: ModeLabel,
    pub slices: Vec<WeakValueSlice>,
}

impl WeakValueReport {
    /// Weak value of `segment` from the first slice that lists it.
    pub fn get(&self, segment: ModeLabel) -> Option<Complex64> {
        self.slices
            .iter()
            .find_map(|s| s.values.get(&segment))
            .map(|&v| v.into())
    }
}

/// Weak values on every slice: `{C, E}`, `{C, A, B}` and `{C, F, G}`.
pub fn weak_value_report(config: &NestedMziConfig, port: ModeLabel) -> Result<WeakValueReport> {
    let slices = [Stage::Bs1, Stage::Arms, Stage::Bs3]
        .into_iter()
        .map(|stage| {
            let mut values = BTreeMap::new();
            let mut sum = Complex64::new(0.0, 0.0);
            for &segment in stage.segments() {
                let w = weak_value_at(config, segment, port, stage)?;
                sum += w;
                values.insert(segment, w.into());
            }
            Ok(WeakValueSlice {
                stage,
                values,
                sum: sum.into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(WeakValueReport {
        condition_port: port,
        slices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkerTrace {
    pub excitation_probability: f64,
    pub fidelity_to_ground: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub condition_port: ModeLabel,
    pub port_probability: f64,
    pub markers: BTreeMap<ModeLabel, MarkerTrace>,
}

fn marker_traces(state: &JointState) -> Result<BTreeMap<ModeLabel, MarkerTrace>> {
    state
        .markers()
        .iter()
        .map(|m| {
            let rho = state.reduced_marker_state(m.index)?;
            Ok((
                m.location,
                MarkerTrace {
                    excitation_probability: rho.excitation_probability(),
                    fidelity_to_ground: rho.fidelity_to_ground(),
                },
            ))
        })
        .collect()
}

/// Local trace on every marker given detection at `port`.
pub fn weak_trace_report(config: &NestedMziConfig, port: ModeLabel) -> Result<TraceReport> {
    if config.markers.is_empty() {
        return Err(MziError::InvalidConfig(
            "weak trace report needs at least one marker".into(),
        ));
    }
    let port = port_mode(port)?;
    let conditioned = evolve(config)?.final_state.condition_on_mode(port)?;
    let port_probability = conditioned.probability;
    let state = conditioned.require(format!("detection at {port}"))?;
    Ok(TraceReport {
        condition_port: port,
        port_probability,
        markers: marker_traces(&state)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub phi: f64,
    pub p_d: f64,
}

/// `P(D)` with a phase `φ` on `segment`, `φ` uniform over `[0, 2π)`.
pub fn phase_scan(config: &NestedMziConfig, segment: ModeLabel, points: usize) -> Result<Vec<PhasePoint>> {
    if !ModeLabel::PATHS.contains(&segment) {
        return Err(MziError::InvalidSegment(segment));
    }
    if points < 2 {
        return Err(MziError::InvalidConfig(format!(
            "phase scan needs at least 2 points, got {points}"
        )));
    }
    (0..points)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / points as f64;
            let cfg = config.clone().with_phase(segment, phi);
            let p_d = evolve(&cfg)?.port_probability(Port::D);
            Ok(PhasePoint { phi, p_d })
        })
        .collect()
}

pub fn scan_spread(scan: &[PhasePoint]) -> f64 {
    let (lo, hi) = scan
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.p_d), hi.max(p.p_d)));
    hi - lo
}

/// `P(D)` with the other two of `A`, `B`, `C` blocked, on the tuned network.
pub fn solo_path_probability(path: ModeLabel) -> Result<f64> {
    solo_path_probability_with(&NestedMziConfig::default(), path)
}

pub fn solo_path_probability_with(config: &NestedMziConfig, path: ModeLabel) -> Result<f64> {
    if !ModeLabel::PATHS.contains(&path) {
        return Err(MziError::InvalidSegment(path));
    }
    let mut cfg = config.clone();
    cfg.blocked.extend(ModeLabel::PATHS.into_iter().filter(|&p| p != path));
    Ok(evolve(&cfg)?.port_probability(Port::D))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExclusivityVerdict {
    pub path: ModeLabel,
    pub phase_spread: f64,
    pub solo_probability: f64,
    pub full_probability: f64,
    pub phase_invariant: bool,
    pub solo_prob_matches: bool,
    pub ehdln_concludes_exclusive: bool,
}

/// The single-path criterion: detection at `D` is insensitive to a phase on
/// `path`, and blocking everything but `path` leaves `P(D)` unchanged.
pub fn exclusive_path_argument(path: ModeLabel) -> Result<ExclusivityVerdict> {
    exclusive_path_argument_with(&NestedMziConfig::default(), path)
}

pub fn exclusive_path_argument_with(config: &NestedMziConfig, path: ModeLabel) -> Result<ExclusivityVerdict> {
    let phase_spread = scan_spread(&phase_scan(config, path, VERDICT_SCAN_POINTS)?);
    let solo_probability = solo_path_probability_with(config, path)?;
    let full_probability = evolve(config)?.port_probability(Port::D);
    let phase_invariant = phase_spread < VERDICT_TOL;
    let solo_prob_matches = (solo_probability - full_probability).abs() < VERDICT_TOL;
    Ok(ExclusivityVerdict {
        path,
        phase_spread,
        solo_probability,
        full_probability,
        phase_invariant,
        solo_prob_matches,
        ehdln_concludes_exclusive: phase_invariant && solo_prob_matches,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContradictionReport {
    pub verdicts: Vec<ExclusivityVerdict>,
    /// Paths the criterion declares to be the photon's only route.
    pub exclusive_paths: Vec<ModeLabel>,
    pub contradiction: bool,
    pub summary: String,
}

impl ContradictionReport {
    /// Fails unless both `B` and `C` pass the exclusivity criterion.
    pub fn ensure(&self) -> Result<()> {
        let both = [ModeLabel::B, ModeLabel::C]
            .iter()
            .all(|p| self.exclusive_paths.contains(p));
        if both {
            Ok(())
        } else {
            Err(MziError::AssertionFailed(self.summary.clone()))
        }
    }
}

/// Applies the exclusivity criterion to `A`, `B` and `C` on the tuned
/// network.
pub fn contradiction_demo() -> Result<ContradictionReport> {
    contradiction_demo_with(&NestedMziConfig::default())
}

pub fn contradiction_demo_with(config: &NestedMziConfig) -> Result<ContradictionReport> {
    let verdicts = ModeLabel::PATHS
        .into_iter()
        .map(|p| exclusive_path_argument_with(config, p))
        .collect::<Result<Vec<_>>>()?;
    let exclusive_paths: Vec<_> = verdicts
        .iter()
        .filter(|v| v.ehdln_concludes_exclusive)
        .map(|v| v.path)
        .collect();
    let contradiction = exclusive_paths.len() >= 2;
    let names: Vec<_> = exclusive_paths.iter().map(|p| p.name()).collect();
    let summary = if contradiction {
        format!(
            "contradiction: the criterion concludes the photon reached D solely through each of {}",
            names.join(" and ")
        )
    } else {
        format!(
            "no contradiction: paths passing the criterion: [{}]",
            names.join(", ")
        )
    };
    Ok(ContradictionReport {
        verdicts,
        exclusive_paths,
        contradiction,
        summary,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FPassageReport {
    pub theta: f64,
    pub epsilon: f64,
    pub p_f: f64,
    /// `None` when no photon reaches `F`.
    pub p_both_ground_given_f: Option<f64>,
    pub p_exactly_one_excited_given_f: Option<f64>,
    pub marker_excitation_given_f: Option<BTreeMap<ModeLabel, f64>>,
}

/// Markers on `A` and `B` at `theta`; post-selects the post-BS3 state on `F`.
pub fn f_passage_check(theta: f64) -> Result<FPassageReport> {
    let cfg = NestedMziConfig::default().with_markers([
        MarkerSpec::new(ModeLabel::A, theta),
        MarkerSpec::new(ModeLabel::B, theta),
    ]);
    let result = evolve(&cfg)?;
    let conditioned = result.snapshot(Stage::Bs3).condition_on_mode(ModeLabel::F)?;
    let p_f = conditioned.probability;
    let (both_ground, one_excited, excitation) = match conditioned.state {
        Some(state) => {
            let traces = marker_traces(&state)?
                .into_iter()
                .map(|(l, t)| (l, t.excitation_probability))
                .collect();
            (
                Some(state.excitation_count_probability(0)),
                Some(state.excitation_count_probability(1)),
                Some(traces),
            )
        }
        None => (None, None, None),
    };
    Ok(FPassageReport {
        theta,
        epsilon: theta.sin(),
        p_f,
        p_both_ground_given_f: both_ground,
        p_exactly_one_excited_given_f: one_excited,
        marker_excitation_given_f: excitation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchTraces {
    /// Probability of this `C`-marker outcome given detection at `D`.
    pub probability: f64,
    pub p_a: f64,
    pub p_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConclusiveBranchReport {
    pub theta_weak: f64,
    pub p_d: f64,
    pub p_c_conclusive_given_d: f64,
    /// `C` marker found excited.
    pub conclusive: Option<BranchTraces>,
    /// `C` marker found in its ground state.
    pub inconclusive: Option<BranchTraces>,
}

/// A fully efficient marker on `C` and weak markers on `A`, `B`; splits the
/// `D`-detections by the `C` marker's state.
pub fn conclusive_branch_traces(theta_weak: f64) -> Result<ConclusiveBranchReport> {
    let cfg = NestedMziConfig::default().with_markers([
        MarkerSpec::new(ModeLabel::C, FRAC_PI_2),
        MarkerSpec::new(ModeLabel::A, theta_weak),
        MarkerSpec::new(ModeLabel::B, theta_weak),
    ]);
    let conditioned = evolve(&cfg)?.final_state.condition_on_mode(ModeLabel::D)?;
    let p_d = conditioned.probability;
    let at_d = conditioned.require("detection at D")?;
    let c = at_d.marker_at(ModeLabel::C).expect("C marker").index;
    let branch = |excited: bool| -> Result<(f64, Option<BranchTraces>)> {
        let cond = at_d.condition_on_marker(c, excited)?;
        let traces = match &cond.state {
            Some(state) => {
                let t = marker_traces(state)?;
                Some(BranchTraces {
                    probability: cond.probability,
                    p_a: t[&ModeLabel::A].excitation_probability,
                    p_b: t[&ModeLabel::B].excitation_probability,
                })
            }
            None => None,
        };
        Ok((cond.probability, traces))
    };
    let (p_conclusive, conclusive) = branch(true)?;
    let (_, inconclusive) = branch(false)?;
    Ok(ConclusiveBranchReport {
        theta_weak,
        p_d,
        p_c_conclusive_given_d: p_conclusive,
        conclusive,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::EXACT_TOL;
    use approx::assert_abs_diff_eq;
    use ModeLabel::*;

    fn close(a: Complex64, re: f64) -> bool {
        (a - Complex64::new(re, 0.0)).norm() < EXACT_TOL
    }

    /// Independent route: project the snapshot on the segment, push it
    /// forward through the rest of the network and read the `D` amplitude.
    fn weak_value_forward(config: &NestedMziConfig, segment: ModeLabel, stage: Stage) -> Complex64 {
        let net = build_nested_mzi(config).unwrap();
        let snap = net.evolve().unwrap().snapshot(stage).clone();
        let push = |mut s: JointState| {
            for (_, e) in net.elements.iter().filter(|(st, _)| *st > stage) {
                s = e.apply(&s).unwrap();
            }
            s.amplitude(D, 0)
        };
        push(snap.project_mode(segment)) / push(snap)
    }

    #[test]
    fn weak_values_on_tuned_network() {
        let cfg = NestedMziConfig::default();
        assert!(close(weak_value(&cfg, C, D).unwrap(), 1.0));
        assert!(close(weak_value(&cfg, A, D).unwrap(), -1.0));
        assert!(close(weak_value(&cfg, B, D).unwrap(), 1.0));
        assert!(close(weak_value(&cfg, E, D).unwrap(), 0.0));
        assert!(close(weak_value(&cfg, F, D).unwrap(), 0.0));
    }

    #[test]
    fn weak_values_agree_with_forward_route() {
        let cfg = NestedMziConfig {
            t1: 0.4,
            t3: 0.45,
            ..Default::default()
        }
        .with_phase(A, 0.3);
        for seg in [C, E, A, B, F, G] {
            let stage = weak_value_stage(seg).unwrap();
            let w = weak_value(&cfg, seg, D).unwrap();
            assert!((w - weak_value_forward(&cfg, seg, stage)).norm() < 1e-12, "{seg}");
        }
    }

    #[test]
    fn weak_value_errors() {
        let marked = NestedMziConfig::default().with_equal_markers(0.1);
        assert_eq!(weak_value(&marked, A, D), Err(MziError::MarkersPresent));
        assert_eq!(
            weak_value(&NestedMziConfig::default(), D, D),
            Err(MziError::InvalidSegment(D))
        );
        // Only A open and a phase that sends nothing to D is impossible here,
        // but blocking everything is not.
        let dark = NestedMziConfig::default().with_blocked([A, B, C]);
        assert!(matches!(
            weak_value(&dark, C, D),
            Err(MziError::ZeroProbability(_))
        ));
    }

    #[test]
    fn sum_rule_and_consistency() {
        let report = weak_value_report(&NestedMziConfig::default(), D).unwrap();
        for slice in &report.slices {
            assert!(close(slice.sum.into(), 1.0), "{}", slice.stage);
        }
        let w = |s| report.get(s).unwrap();
        assert!((w(E) - (w(A) + w(B))).norm() < EXACT_TOL);
        assert!((w(F) + w(G) - (w(A) + w(B))).norm() < EXACT_TOL);
    }

    #[test]
    fn equal_traces() {
        let s: f64 = 0.1;
        let report = weak_trace_report(&NestedMziConfig::default().with_equal_markers(s.asin()), D).unwrap();
        let expected = s * s / (1.0 + 2.0 * s * s);
        let p: Vec<f64> = [A, B, C]
            .iter()
            .map(|l| report.markers[l].excitation_probability)
            .collect();
        for &x in &p {
            assert_abs_diff_eq!(x, expected, epsilon = EXACT_TOL);
        }
        assert!((p[0] - p[1]).abs() < EXACT_TOL && (p[1] - p[2]).abs() < EXACT_TOL);
        for t in report.markers.values() {
            assert_abs_diff_eq!(t.excitation_probability, 1.0 - t.fidelity_to_ground.powi(2), epsilon = EXACT_TOL);
        }
    }

    #[test]
    fn marker_on_e_leaves_no_trace_at_d() {
        for theta in [0.05, 0.3, 1.0, FRAC_PI_2] {
            let cfg = NestedMziConfig::default().with_markers([MarkerSpec::new(E, theta)]);
            let report = weak_trace_report(&cfg, D).unwrap();
            assert!(report.markers[&E].excitation_probability.abs() < EXACT_TOL);
        }
    }

    #[test]
    fn e_and_f_traces_are_second_order() {
        let cfg = NestedMziConfig::default().with_markers(
            [A, B, C, E, F].map(|l| MarkerSpec::with_epsilon(l, 0.1)),
        );
        let report = weak_trace_report(&cfg, D).unwrap();
        assert!(report.markers[&E].excitation_probability < 1e-3);
        assert!(report.markers[&F].excitation_probability < 1e-3);
    }

    #[test]
    fn trace_report_needs_markers() {
        assert!(matches!(
            weak_trace_report(&NestedMziConfig::default(), D),
            Err(MziError::InvalidConfig(_))
        ));
    }

    #[test]
    fn leading_order_trace_law() {
        // p_X / (|w_X|² sin²θ) = 1 + k sin²θ + O(sin⁴θ); Richardson removes k.
        let weak = weak_value_report(&NestedMziConfig::default(), D).unwrap();
        let ratio = |s: f64, seg: ModeLabel| {
            let cfg = NestedMziConfig::default().with_markers([A, B, C].map(|l| MarkerSpec::with_epsilon(l, s)));
            let p = weak_trace_report(&cfg, D).unwrap().markers[&seg].excitation_probability;
            p / (weak.get(seg).unwrap().norm_sqr() * s * s)
        };
        for seg in [A, B, C] {
            let (r1, r2) = (ratio(0.01, seg), ratio(0.02, seg));
            let extrapolated = (4.0 * r1 - r2) / 3.0;
            assert!((extrapolated - 1.0).abs() < 1e-6, "{seg}: {extrapolated}");
            assert!((r1 - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn phase_scans() {
        let cfg = NestedMziConfig::default();
        for seg in [B, C] {
            let scan = phase_scan(&cfg, seg, 100).unwrap();
            assert!(scan_spread(&scan) < EXACT_TOL);
            assert_abs_diff_eq!(scan[0].p_d, 1.0 / 9.0, epsilon = EXACT_TOL);
        }
        for p in phase_scan(&cfg, A, 100).unwrap() {
            assert_abs_diff_eq!(p.p_d, (5.0 - 4.0 * p.phi.cos()) / 9.0, epsilon = EXACT_TOL);
        }
        assert_eq!(phase_scan(&cfg, E, 10), Err(MziError::InvalidSegment(E)));
        assert!(phase_scan(&cfg, A, 1).is_err());
    }

    #[test]
    fn solo_probabilities() {
        for p in [A, B, C] {
            assert_abs_diff_eq!(solo_path_probability(p).unwrap(), 1.0 / 9.0, epsilon = EXACT_TOL);
        }
    }

    #[test]
    fn exclusivity_verdicts() {
        assert!(exclusive_path_argument(C).unwrap().ehdln_concludes_exclusive);
        assert!(exclusive_path_argument(B).unwrap().ehdln_concludes_exclusive);
        let a = exclusive_path_argument(A).unwrap();
        assert!(!a.phase_invariant);
        assert!(a.solo_prob_matches);
        assert!(!a.ehdln_concludes_exclusive);
    }

    #[test]
    fn contradiction_on_default_and_not_when_detuned() {
        let report = contradiction_demo().unwrap();
        assert!(report.contradiction);
        assert_eq!(report.exclusive_paths, vec![B, C]);
        report.ensure().unwrap();

        let detuned = NestedMziConfig {
            t1: 0.5,
            ..Default::default()
        };
        let report = contradiction_demo_with(&detuned).unwrap();
        assert!(!report.contradiction);
        assert!(report.verdicts.iter().any(|v| !v.ehdln_concludes_exclusive && v.path != A));
        assert!(report.ensure().is_err());
    }

    #[test]
    fn f_passage() {
        let s: f64 = 0.1;
        let report = f_passage_check(s.asin()).unwrap();
        assert_abs_diff_eq!(report.p_f, s * s / 3.0, epsilon = EXACT_TOL);
        assert_abs_diff_eq!(report.p_both_ground_given_f.unwrap(), 0.0, epsilon = EXACT_TOL);
        assert_abs_diff_eq!(report.p_exactly_one_excited_given_f.unwrap(), 1.0, epsilon = EXACT_TOL);
        for p in report.marker_excitation_given_f.unwrap().values() {
            assert_abs_diff_eq!(*p, 0.5, epsilon = EXACT_TOL);
        }
    }

    #[test]
    fn f_passage_without_coupling_is_undefined() {
        let report = f_passage_check(0.0).unwrap();
        assert!(report.p_f < ZERO_PROBABILITY);
        assert!(report.p_both_ground_given_f.is_none());
    }

    #[test]
    fn strong_marker_on_c() {
        let report = conclusive_branch_traces(0.1f64.asin()).unwrap();
        let conclusive = report.conclusive.unwrap();
        assert_abs_diff_eq!(conclusive.p_a, 0.0, epsilon = EXACT_TOL);
        assert_abs_diff_eq!(conclusive.p_b, 0.0, epsilon = EXACT_TOL);
        let inconclusive = report.inconclusive.unwrap();
        assert_abs_diff_eq!(inconclusive.p_a + inconclusive.p_b, 1.0, epsilon = EXACT_TOL);

        let unmarked = conclusive_branch_traces(0.0).unwrap();
        assert_abs_diff_eq!(unmarked.p_c_conclusive_given_d, 1.0, epsilon = EXACT_TOL);
        assert!(unmarked.inconclusive.is_none());
    }
}
