//! Unambiguous path discrimination on marker qubits and the per-photon
//! accounting of discrimination verdicts among `D` detections.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MziError, Result};
use crate::interferometer::{evolve, NestedMziConfig};
use crate::qcore::{JointState, Mat2, MarkerId, ModeLabel, Port, EXACT_TOL, ZERO_PROBABILITY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConclusivePresent,
    ConclusiveAbsent,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ConclusivePresent => "conclusive_present",
            Verdict::ConclusiveAbsent => "conclusive_absent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PovmMode {
    /// Projective check of the marker's excited level.
    #[default]
    BasisCheck,
    /// Three-outcome optimum for equal priors.
    OptimalIdp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmElement {
    pub verdict: Verdict,
    pub operator: Mat2,
}

/// Measurement on one marker qubit discriminating the untouched state `|0⟩`
/// from the visited state `|χ⟩ = cosθ|0⟩ + sinθ|1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    pub theta: f64,
    pub mode: PovmMode,
    pub elements: Vec<PovmElement>,
}

fn visited_state(theta: f64) -> [Complex64; 2] {
    let (s, c) = theta.sin_cos();
    [c.into(), s.into()]
}

pub fn build_discrimination_povm(theta: f64, mode: PovmMode) -> Result<Povm> {
    if theta == 0.0 {
        return Err(MziError::IndistinguishableStates);
    }
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(MziError::ThetaOutOfRange(theta));
    }
    let ground = Mat2::from_real([[1.0, 0.0], [0.0, 0.0]]);
    let excited = Mat2::from_real([[0.0, 0.0], [0.0, 1.0]]);
    let elements = match mode {
        PovmMode::BasisCheck => vec![
            PovmElement {
                verdict: Verdict::ConclusivePresent,
                operator: excited,
            },
            PovmElement {
                verdict: Verdict::Inconclusive,
                operator: ground,
            },
        ],
        PovmMode::OptimalIdp => {
            // Present ∝ projector orthogonal to |0⟩, absent ∝ projector
            // orthogonal to |χ⟩, both weighted 1/(1 + ⟨0|χ⟩).
            let (s, c) = theta.sin_cos();
            let weight = 1.0 / (1.0 + c);
            let present = excited.scale(weight);
            let absent = Mat2::projector([(-s).into(), c.into()]).scale(weight);
            vec![
                PovmElement {
                    verdict: Verdict::ConclusivePresent,
                    operator: present,
                },
                PovmElement {
                    verdict: Verdict::ConclusiveAbsent,
                    operator: absent,
                },
                PovmElement {
                    verdict: Verdict::Inconclusive,
                    operator: Mat2::IDENTITY - present - absent,
                },
            ]
        }
    };
    Ok(Povm {
        theta,
        mode,
        elements,
    })
}

impl Povm {
    pub fn element(&self, verdict: Verdict) -> Option<&Mat2> {
        self.elements
            .iter()
            .find(|e| e.verdict == verdict)
            .map(|e| &e.operator)
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        self.elements.iter().map(|e| e.verdict).collect()
    }

    pub fn completeness_error(&self) -> f64 {
        let sum = self
            .elements
            .iter()
            .fold(Mat2::ZERO, |acc, e| acc + e.operator);
        sum.max_abs_diff(Mat2::IDENTITY)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| e.operator.hermitian_eigenvalues()[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// `(⟨0|E_present|0⟩, ⟨χ|E_absent|χ⟩)`; both vanish for an unambiguous
    /// measurement.
    pub fn cross_errors(&self) -> (f64, f64) {
        let ground = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let present = self
            .element(Verdict::ConclusivePresent)
            .map_or(0.0, |e| e.expectation(ground).re);
        let absent = self
            .element(Verdict::ConclusiveAbsent)
            .map_or(0.0, |e| e.expectation(visited_state(self.theta)).re);
        (present, absent)
    }

    /// Inconclusive probability averaged over equal priors on `|0⟩`, `|χ⟩`.
    pub fn average_inconclusive(&self) -> f64 {
        let ground = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        self.element(Verdict::Inconclusive).map_or(0.0, |e| {
            0.5 * (e.expectation(ground).re + e.expectation(visited_state(self.theta)).re)
        })
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.elements {
            if e.operator.hermiticity_error() > EXACT_TOL {
                return Err(MziError::InvalidPovm(format!("{} is not Hermitian", e.verdict)));
            }
        }
        if self.min_eigenvalue() < -EXACT_TOL {
            return Err(MziError::InvalidPovm("element with negative eigenvalue".into()));
        }
        if self.completeness_error() > EXACT_TOL {
            return Err(MziError::InvalidPovm("elements do not sum to identity".into()));
        }
        let (present, absent) = self.cross_errors();
        if present.abs() > EXACT_TOL || absent.abs() > EXACT_TOL {
            return Err(MziError::InvalidPovm("nonzero cross error".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch {
    pub verdict: Verdict,
    pub probability: f64,
    /// Post-measurement state, `None` for impossible outcomes.
    pub state: Option<JointState>,
}

/// Every outcome of measuring marker `index` with `povm`, with its Born
/// probability and the state collapsed by `√E`.
pub fn measurement_branches(state: &JointState, index: usize, povm: &Povm) -> Result<Vec<MeasurementBranch>> {
    state.marker(index)?;
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(MziError::NotNormalized(norm));
    }
    povm.elements
        .iter()
        .map(|e| {
            let kicked = state.apply_marker_operator(index, &e.operator.psd_sqrt())?;
            let probability = kicked.norm_sqr();
            let state = if probability < ZERO_PROBABILITY {
                None
            } else {
                kicked.renormalized()
            };
            Ok(MeasurementBranch {
                verdict: e.verdict,
                probability,
                state,
            })
        })
        .collect()
}

fn pick(probabilities: impl Iterator<Item = f64> + Clone, u: f64) -> usize {
    let total: f64 = probabilities.clone().sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, p) in probabilities.enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = i;
        if target < acc {
            return i;
        }
    }
    last
}

/// Samples one verdict per the Born rule and returns the collapsed state.
pub fn sample_measurement<R: Rng + ?Sized>(
    state: &JointState,
    marker: MarkerId,
    povm: &Povm,
    rng: &mut R,
) -> Result<(Verdict, JointState)> {
    let mut branches = measurement_branches(state, marker.index, povm)?;
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    if total < ZERO_PROBABILITY {
        return Err(MziError::ZeroProbability("marker measurement".into()));
    }
    let i = pick(branches.iter().map(|b| b.probability), rng.random::<f64>());
    let branch = branches.swap_remove(i);
    Ok((branch.verdict, branch.state.expect("sampled outcome has weight")))
}

/// Verdicts on the markers at `A`, `B`, `C`, in that order.
pub type VerdictCombo = [Verdict; 3];

pub const ACCOUNTING_MARKERS: [ModeLabel; 3] = [ModeLabel::A, ModeLabel::B, ModeLabel::C];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComboCount {
    #[serde(rename = "A")]
    pub a: Verdict,
    #[serde(rename = "B")]
    pub b: Verdict,
    #[serde(rename = "C")]
    pub c: Verdict,
    pub count: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccountingTally {
    pub total_trials: u64,
    pub detections_at_d: u64,
    pub seed: u64,
    pub theta: f64,
    pub povm: PovmMode,
    pub counts: Vec<ComboCount>,
}

impl AccountingTally {
    pub fn count(&self, combo: VerdictCombo) -> u64 {
        self.counts
            .iter()
            .find(|c| [c.a, c.b, c.c] == combo)
            .map_or(0, |c| c.count)
    }

    /// Fraction of `D` detections with this verdict combination.
    pub fn fraction(&self, combo: VerdictCombo) -> f64 {
        if self.detections_at_d == 0 {
            return 0.0;
        }
        self.count(combo) as f64 / self.detections_at_d as f64
    }

    pub fn detection_fraction(&self) -> f64 {
        self.detections_at_d as f64 / self.total_trials as f64
    }

    /// Detections carrying two or more `ConclusivePresent` verdicts.
    pub fn multi_conclusive(&self) -> u64 {
        self.counts
            .iter()
            .filter(|c| {
                [c.a, c.b, c.c]
                    .iter()
                    .filter(|v| **v == Verdict::ConclusivePresent)
                    .count()
                    >= 2
            })
            .map(|c| c.count)
            .sum()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| MziError::InvalidConfig(e.to_string());
        w.write_record(["A", "B", "C", "count", "fraction"]).map_err(io)?;
        for c in &self.counts {
            w.write_record([
                c.a.name().to_string(),
                c.b.name().to_string(),
                c.c.name().to_string(),
                c.count.to_string(),
                c.fraction.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| MziError::InvalidConfig(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Precomputed branch tree of the sequential marker measurements on the
/// `D`-conditioned state. Sampling a path through it is equivalent to
/// calling [`sample_measurement`] marker by marker.
struct VerdictTree {
    branches: Vec<(Verdict, f64, Option<VerdictTree>)>,
}

impl VerdictTree {
    fn build(state: &JointState, indices: &[usize], povm: &Povm) -> Result<Self> {
        let Some((&first, rest)) = indices.split_first() else {
            return Ok(Self {
                branches: Vec::new(),
            });
        };
        let branches = measurement_branches(state, first, povm)?
            .into_iter()
            .map(|b| {
                let child = match &b.state {
                    Some(s) if !rest.is_empty() => Some(VerdictTree::build(s, rest, povm)?),
                    _ => None,
                };
                Ok((b.verdict, b.probability, child))
            })
            .collect::<Result<_>>()?;
        Ok(Self { branches })
    }

    fn sample<R: Rng>(&self, rng: &mut R, out: &mut Vec<Verdict>) {
        let i = pick(self.branches.iter().map(|b| b.1), rng.random::<f64>());
        let (verdict, _, child) = &self.branches[i];
        out.push(*verdict);
        if let Some(child) = child {
            child.sample(rng, out);
        }
    }
}

/// Trials per parallel work unit.
const CHUNK: u64 = 1 << 14;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Theta shared by the `A`, `B`, `C` markers.
fn accounting_theta(config: &NestedMziConfig) -> Result<f64> {
    let mut locations = config.marker_locations();
    locations.sort();
    let mut expected = ACCOUNTING_MARKERS.to_vec();
    expected.sort();
    if locations != expected {
        return Err(MziError::InvalidConfig(
            "accounting needs markers on exactly A, B and C".into(),
        ));
    }
    let theta = config.markers[0].theta;
    if config.markers.iter().any(|m| (m.theta - theta).abs() > EXACT_TOL) {
        return Err(MziError::InvalidConfig(
            "accounting needs equal marker angles on A, B and C".into(),
        ));
    }
    Ok(theta)
}

/// Per trial: the photon's port is sampled from the evolved state; photons
/// detected at `D` then have their `A`, `B`, `C` markers measured in turn.
/// Trial `k` draws from a ChaCha stream keyed by `(seed, k)`, so the tally
/// does not depend on how trials are split across threads.
pub fn monte_carlo_accounting(
    config: &NestedMziConfig,
    povm_mode: PovmMode,
    trials: u64,
    seed: u64,
) -> Result<AccountingTally> {
    monte_carlo_accounting_with_workers(config, povm_mode, trials, seed, None)
}

pub fn monte_carlo_accounting_with_workers(
    config: &NestedMziConfig,
    povm_mode: PovmMode,
    trials: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<AccountingTally> {
    if trials == 0 {
        return Err(MziError::InvalidConfig("trials must be at least 1".into()));
    }
    let theta = accounting_theta(config)?;
    let povm = build_discrimination_povm(theta, povm_mode)?;
    let final_state = evolve(config)?.final_state;
    let port_probs: Vec<f64> = Port::ALL
        .iter()
        .map(|p| p.modes().iter().map(|&m| final_state.mode_probability(m)).sum())
        .collect();
    let at_d = final_state.condition_on_mode(ModeLabel::D)?.require("detection at D")?;
    let indices: Vec<usize> = ACCOUNTING_MARKERS
        .iter()
        .map(|&l| at_d.marker_at(l).expect("validated marker").index)
        .collect();
    let tree = VerdictTree::build(&at_d, &indices, &povm)?;

    let run_chunk = |chunk: u64| -> BTreeMap<VerdictCombo, u64> {
        let mut counts = BTreeMap::new();
        let mut verdicts = Vec::with_capacity(3);
        for trial in chunk * CHUNK..((chunk + 1) * CHUNK).min(trials) {
            let mut rng = trial_rng(seed, trial);
            let port = Port::ALL[pick(port_probs.iter().copied(), rng.random::<f64>())];
            if port != Port::D {
                continue;
            }
            verdicts.clear();
            tree.sample(&mut rng, &mut verdicts);
            let combo: VerdictCombo = [verdicts[0], verdicts[1], verdicts[2]];
            *counts.entry(combo).or_insert(0) += 1;
        }
        counts
    };
    let merge = |mut a: BTreeMap<VerdictCombo, u64>, b: BTreeMap<VerdictCombo, u64>| {
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    };
    let chunks = trials.div_ceil(CHUNK);
    let tally = || {
        (0..chunks)
            .into_par_iter()
            .map(run_chunk)
            .reduce(BTreeMap::new, merge)
    };
    let counts = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| MziError::InvalidConfig(e.to_string()))?
            .install(tally),
        None => tally(),
    };

    let detections_at_d: u64 = counts.values().sum();
    let verdicts = povm.verdicts();
    let mut rows = Vec::new();
    for &a in &verdicts {
        for &b in &verdicts {
            for &c in &verdicts {
                let count = counts.get(&[a, b, c]).copied().unwrap_or(0);
                let fraction = if detections_at_d == 0 {
                    0.0
                } else {
                    count as f64 / detections_at_d as f64
                };
                rows.push(ComboCount {
                    a,
                    b,
                    c,
                    count,
                    fraction,
                });
            }
        }
    }
    Ok(AccountingTally {
        total_trials: trials,
        detections_at_d,
        seed,
        theta,
        povm: povm_mode,
        counts: rows,
    })
}

/// Closed-form verdict fractions among `D` detections for basis-check
/// markers on `A`, `B`, `C` at equal `theta` on the tuned network.
pub fn expected_fractions(theta: f64) -> BTreeMap<VerdictCombo, f64> {
    use Verdict::{ConclusivePresent as P, Inconclusive as I};
    let s2 = theta.sin().powi(2);
    let c2 = theta.cos().powi(2);
    let norm = 1.0 + 2.0 * s2;
    let mut out = BTreeMap::new();
    for a in [P, I] {
        for b in [P, I] {
            for c in [P, I] {
                let present = [a, b, c].iter().filter(|v| **v == P).count();
                let value = match present {
                    0 => c2 / norm,
                    1 => s2 / norm,
                    _ => 0.0,
                };
                out.insert([a, b, c], value);
            }
        }
    }
    out
}

/// `P(D)` for the tuned network with equal markers on `A`, `B`, `C`.
pub fn expected_detection_fraction(theta: f64) -> f64 {
    (1.0 + 2.0 * theta.sin().powi(2)) / 9.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ModeLabel::*;
    use Verdict::{ConclusivePresent as P, Inconclusive as I};

    #[test]
    fn basis_check_is_valid() {
        for theta in [0.01, 0.1, 0.5, FRAC_PI_2] {
            let povm = build_discrimination_povm(theta, PovmMode::BasisCheck).unwrap();
            povm.validate().unwrap();
            assert_eq!(povm.cross_errors().0, 0.0);
        }
    }

    #[test]
    fn theta_zero_is_rejected() {
        assert_eq!(
            build_discrimination_povm(0.0, PovmMode::OptimalIdp),
            Err(MziError::IndistinguishableStates)
        );
    }

    #[test]
    fn optimal_idp_orthogonal_states() {
        let povm = build_discrimination_povm(FRAC_PI_2, PovmMode::OptimalIdp).unwrap();
        povm.validate().unwrap();
        assert!(povm.element(Verdict::Inconclusive).unwrap().max_abs_diff(Mat2::ZERO) < EXACT_TOL);
    }

    #[test]
    fn optimal_idp_reaches_overlap_bound() {
        for theta in [0.01, 0.1, 0.5, 1.2] {
            let povm = build_discrimination_povm(theta, PovmMode::OptimalIdp).unwrap();
            povm.validate().unwrap();
            assert_abs_diff_eq!(povm.average_inconclusive(), theta.cos(), epsilon = EXACT_TOL);
        }
    }

    /// Brute force over `E_present = a|1⟩⟨1|`, `E_absent = b|χ⊥⟩⟨χ⊥|`:
    /// smallest average inconclusive probability with `I − E_p − E_a ⪰ 0`.
    #[test]
    fn optimal_idp_matches_brute_force() {
        for theta in [0.1, 0.5, 1.0] {
            let (s, c) = f64::sin_cos(theta);
            let p1 = Mat2::from_real([[0.0, 0.0], [0.0, 1.0]]);
            let p2 = Mat2::projector([(-s).into(), c.into()]);
            let steps = 2000;
            let mut best = f64::INFINITY;
            for i in 0..=steps {
                for j in (0..=steps).step_by(20) {
                    let (a, b) = (i as f64 / steps as f64, j as f64 / steps as f64);
                    let rest = Mat2::IDENTITY - p1.scale(a) - p2.scale(b);
                    if rest.hermitian_eigenvalues()[0] < -1e-12 {
                        continue;
                    }
                    // success: a·⟨χ|1⟩⟨1|χ⟩ + b·⟨0|χ⊥⟩⟨χ⊥|0⟩ = (a + b)s²
                    best = best.min(1.0 - 0.5 * (a + b) * s * s);
                }
            }
            let built = build_discrimination_povm(theta, PovmMode::OptimalIdp).unwrap();
            assert!(built.average_inconclusive() <= best + 1e-12);
            assert!(best - built.average_inconclusive() < 2e-3, "theta {theta}");
        }
    }

    #[test]
    fn excited_marker_is_always_detected() {
        let state = JointState::basis(C, 1, &[C]).unwrap();
        let povm = build_discrimination_povm(0.3, PovmMode::BasisCheck).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (v, _) = sample_measurement(&state, state.marker(0).unwrap(), &povm, &mut rng).unwrap();
            assert_eq!(v, P);
        }
    }

    #[test]
    fn ground_marker_is_erased_to_ground() {
        let state = JointState::new(C, &[C]).unwrap();
        let povm = build_discrimination_povm(0.3, PovmMode::BasisCheck).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (v, after) = sample_measurement(&state, state.marker(0).unwrap(), &povm, &mut rng).unwrap();
        assert_eq!(v, I);
        assert_eq!(after, state);
    }

    #[test]
    fn unambiguous_verdicts_never_lie() {
        let theta = 0.4;
        let povm = build_discrimination_povm(theta, PovmMode::OptimalIdp).unwrap();
        let untouched = JointState::new(C, &[C]).unwrap();
        let visited = untouched
            .apply_marker_coupling(C, untouched.marker(0).unwrap(), theta)
            .unwrap();
        let present = measurement_branches(&untouched, 0, &povm).unwrap();
        assert!(present.iter().find(|b| b.verdict == P).unwrap().probability < EXACT_TOL);
        let absent = measurement_branches(&visited, 0, &povm).unwrap();
        assert!(
            absent
                .iter()
                .find(|b| b.verdict == Verdict::ConclusiveAbsent)
                .unwrap()
                .probability
                < EXACT_TOL
        );
    }

    #[test]
    fn accounting_requires_abc_markers() {
        let cfg = NestedMziConfig::default().with_markers([crate::MarkerSpec::new(A, 0.1)]);
        assert!(monte_carlo_accounting(&cfg, PovmMode::BasisCheck, 10, 0).is_err());
        let uneven = NestedMziConfig::default().with_markers([
            crate::MarkerSpec::new(A, 0.1),
            crate::MarkerSpec::new(B, 0.2),
            crate::MarkerSpec::new(C, 0.1),
        ]);
        assert!(monte_carlo_accounting(&uneven, PovmMode::BasisCheck, 10, 0).is_err());
    }

    #[test]
    fn small_run_is_seed_deterministic() {
        let cfg = NestedMziConfig::default().with_equal_markers(0.3);
        let a = monte_carlo_accounting_with_workers(&cfg, PovmMode::BasisCheck, 50_000, 9, Some(1)).unwrap();
        let b = monte_carlo_accounting_with_workers(&cfg, PovmMode::BasisCheck, 50_000, 9, Some(3)).unwrap();
        let c = monte_carlo_accounting(&cfg, PovmMode::BasisCheck, 50_000, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.multi_conclusive(), 0);
        assert_eq!(a.counts.iter().map(|c| c.count).sum::<u64>(), a.detections_at_d);
    }

    #[test]
    fn expected_fraction_limits() {
        let zero = expected_fractions(0.0);
        assert_eq!(zero[&[I, I, I]], 1.0);
        assert_eq!(zero[&[P, I, I]], 0.0);
        let full = expected_fractions(FRAC_PI_2);
        for combo in [[P, I, I], [I, P, I], [I, I, P]] {
            assert_abs_diff_eq!(full[&combo], 1.0 / 3.0, epsilon = EXACT_TOL);
        }
        assert_abs_diff_eq!(full[&[I, I, I]], 0.0, epsilon = EXACT_TOL);
        let weak = expected_fractions(0.1f64.asin());
        assert_abs_diff_eq!(weak[&[P, I, I]], 0.01 / 1.02, epsilon = EXACT_TOL);
        assert_abs_diff_eq!(weak[&[I, I, I]], 0.99 / 1.02, epsilon = EXACT_TOL);
        assert_eq!(weak[&[P, P, I]], 0.0);
    }

    #[test]
    fn csv_has_one_row_per_combination() {
        let cfg = NestedMziConfig::default().with_equal_markers(0.2);
        let tally = monte_carlo_accounting(&cfg, PovmMode::BasisCheck, 1000, 5).unwrap();
        let csv = tally.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 1 + 8);
        assert!(csv.starts_with("A,B,C,count,fraction\n"));
    }
}
