//! Strategies and property bodies shared by the property suite and the
//! acceptance runner.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use nested_mzi::discrimination::{build_discrimination_povm, PovmMode};
use nested_mzi::interferometer::{evolve, port_probabilities, Stage};
use nested_mzi::qcore::{BeamSplitter, JointState, ModeLabel, MODE_COUNT};
use nested_mzi::{MarkerSpec, NestedMziConfig};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::TestCaseError;

pub const TOL: f64 = 1e-12;
pub const CASES: u32 = 1000;
const LOCATIONS: [ModeLabel; 3] = [ModeLabel::A, ModeLabel::C, ModeLabel::E];

pub type Check = Result<(), TestCaseError>;

pub fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

/// Random normalized state with `n` markers on `LOCATIONS[..n]`.
pub fn random_state() -> impl Strategy<Value = JointState> {
    (0usize..=3).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), MODE_COUNT << n).prop_filter_map(
            "degenerate norm",
            move |raw| {
                let amps: Vec<Complex64> = raw.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                JointState::from_amplitudes(&LOCATIONS[..n], amps).ok()?.renormalized()
            },
        )
    })
}

pub fn open_mode() -> impl Strategy<Value = ModeLabel> {
    proptest::sample::select(ModeLabel::ALL.into_iter().filter(|m| !m.is_terminal()).collect::<Vec<_>>())
}

pub fn max_diff(a: &JointState, b: &JointState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn random_config() -> impl Strategy<Value = NestedMziConfig> {
    (
        (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0),
        proptest::collection::vec(0.0f64..2.0 * PI, 3),
        subsequence(ModeLabel::CHECKPOINTS.to_vec(), 0..=5),
        subsequence(ModeLabel::CHECKPOINTS.to_vec(), 0..=5),
        proptest::collection::vec(0.0f64..=FRAC_PI_2, 5),
    )
        .prop_map(|((t1, t2, t3, t4), phases, blocked, marked, thetas)| {
            let mut cfg = NestedMziConfig {
                t1,
                t2,
                t3,
                t4,
                ..Default::default()
            }
            .with_blocked(blocked)
            .with_markers(marked.into_iter().zip(thetas).map(|(l, t)| MarkerSpec::new(l, t)));
            for (seg, phi) in ModeLabel::PATHS.into_iter().zip(phases) {
                cfg = cfg.with_phase(seg, phi);
            }
            cfg
        })
}

pub fn splitter_preserves_norm(state: &JointState, a: ModeLabel, b: ModeLabel, t: f64, swap: bool) -> Check {
    if a == b {
        return Ok(());
    }
    let (o1, o2) = if swap { (b, a) } else { (a, b) };
    let bs = BeamSplitter::new(a, Some(b), o1, o2, t).unwrap();
    let out = state.apply_beam_splitter(&bs).unwrap();
    prop_assert!((out.norm_sqr() - 1.0).abs() < TOL);
    Ok(())
}

pub fn swapped_splitter_inverts(state: &JointState, t: f64) -> Check {
    use ModeLabel::*;
    // Clear the output modes so the first pass is unitary onto them.
    let mut amps = state.amplitudes().to_vec();
    let strings = 1 << state.marker_count();
    for m in [G, F] {
        amps[m.index() * strings..(m.index() + 1) * strings].fill(Complex64::new(0.0, 0.0));
    }
    let locations: Vec<_> = state.markers().iter().map(|m| m.location).collect();
    let Some(input) = JointState::from_amplitudes(&locations, amps).unwrap().renormalized() else {
        return Ok(());
    };
    let forward = BeamSplitter::new(A, Some(B), G, F, t).unwrap();
    let back = BeamSplitter::new(G, Some(F), A, B, t).unwrap();
    let there = input.apply_beam_splitter(&forward).unwrap();
    prop_assert!((there.norm_sqr() - 1.0).abs() < TOL);
    let again = there.apply_beam_splitter(&back).unwrap();
    prop_assert!(max_diff(&again, &input) < TOL);
    // The adjoint route agrees.
    let adj = there.apply_beam_splitter_adjoint(&forward).unwrap();
    prop_assert!(max_diff(&adj, &input) < TOL);
    Ok(())
}

pub fn phase_preserves_norm(state: &JointState, seg: ModeLabel, phi: f64) -> Check {
    let out = state.apply_phase_shift(seg, phi).unwrap();
    prop_assert!((out.norm_sqr() - 1.0).abs() < TOL);
    Ok(())
}

pub fn coupling_inverts(state: &JointState, which: usize, theta: f64) -> Check {
    if state.marker_count() == 0 {
        return Ok(());
    }
    let marker = state.marker(which % state.marker_count()).unwrap();
    let there = state.apply_marker_coupling(marker.location, marker, theta).unwrap();
    prop_assert!((there.norm_sqr() - 1.0).abs() < TOL);
    let back = there.apply_marker_coupling(marker.location, marker, -theta).unwrap();
    prop_assert!(max_diff(&back, state) < TOL);
    Ok(())
}

pub fn reduced_states_are_density_matrices(state: &JointState) -> Check {
    for m in state.markers() {
        let rho = state.reduced_marker_state(m.index).unwrap();
        prop_assert!(rho.hermiticity_error() < TOL);
        prop_assert!((rho.trace() - 1.0).abs() < TOL);
        prop_assert!(rho.min_eigenvalue() > -TOL);
    }
    Ok(())
}

pub fn povm_is_valid(theta: f64, idp: bool) -> Check {
    let mode = if idp { PovmMode::OptimalIdp } else { PovmMode::BasisCheck };
    let povm = build_discrimination_povm(theta, mode).unwrap();
    prop_assert!(povm.validate().is_ok(), "{:?}", povm.validate());
    Ok(())
}

pub fn probability_is_conserved(cfg: &NestedMziConfig) -> Check {
    let ports = port_probabilities(cfg).unwrap();
    prop_assert!((ports.values().sum::<f64>() - 1.0).abs() < TOL);
    let result = evolve(cfg).unwrap();
    for snap in &result.snapshots {
        prop_assert!((snap.state.norm_sqr() - 1.0).abs() < TOL, "{}", snap.stage);
    }
    for port in [ModeLabel::D, ModeLabel::O2, ModeLabel::O3] {
        let p = result.final_state.condition_on_mode(port).unwrap().probability;
        prop_assert!((-TOL..=1.0 + TOL).contains(&p));
    }
    Ok(())
}

pub fn c_phase_keeps_f_dark(phi: f64, theta: f64) -> Check {
    let cfg = NestedMziConfig::default()
        .with_phase(ModeLabel::C, phi)
        .with_markers([MarkerSpec::new(ModeLabel::C, theta)]);
    let snap = evolve(&cfg).unwrap().snapshots.into_iter().find(|s| s.stage == Stage::Bs3).unwrap();
    prop_assert!(snap.state.mode_probability(ModeLabel::F).sqrt() < TOL);
    Ok(())
}
