mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn splitters_preserve_norm(state in random_state(), a in open_mode(), b in open_mode(), t in 0.0f64..=1.0, swap: bool) {
        splitter_preserves_norm(&state, a, b, t, swap)?;
    }

    #[test]
    fn splitter_with_swapped_roles_is_its_own_inverse(state in random_state(), t in 0.0f64..=1.0) {
        swapped_splitter_inverts(&state, t)?;
    }

    #[test]
    fn phase_shifts_preserve_norm(state in random_state(), seg in open_mode(), phi in -10.0f64..10.0) {
        phase_preserves_norm(&state, seg, phi)?;
    }

    #[test]
    fn marker_coupling_is_unitary_and_inverts(state in random_state(), which in 0usize..3, theta in 0.0f64..=FRAC_PI_2) {
        coupling_inverts(&state, which, theta)?;
    }

    #[test]
    fn reduced_states_are_density_matrices(state in random_state()) {
        common::reduced_states_are_density_matrices(&state)?;
    }

    #[test]
    fn povms_are_valid(theta in 1e-6f64..=FRAC_PI_2, idp: bool) {
        povm_is_valid(theta, idp)?;
    }

    #[test]
    fn probability_is_conserved(cfg in random_config()) {
        common::probability_is_conserved(&cfg)?;
    }

    #[test]
    fn a_phase_on_c_never_lights_f(phi in 0.0f64..2.0 * PI, theta in 0.0f64..=FRAC_PI_2) {
        c_phase_keeps_f_dark(phi, theta)?;
    }
}
