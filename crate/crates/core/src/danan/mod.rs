//! Frequency-tagged mirror vibrations read out through the post-selected
//! detector.
//!
//! Each checkpoint mirror tilts sinusoidally at its own frequency. To first
//! order, the quad-cell difference signal of the photons detected at `D` is
//! a sum of those tilts weighted by the real part of the weak value of the
//! mirror's segment, so the spectrum shows a line for every segment the
//! post-selected photon weakly occupies.

mod fft;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

pub use fft::{fft_in_place, fft_real};

use crate::analysis::weak_value;
use crate::error::{MziError, Result};
use crate::interferometer::NestedMziConfig;
use crate::qcore::ModeLabel;

/// Largest tilt amplitude accepted by the linear pointer model.
pub const MAX_TILT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mirror {
    /// Hz.
    pub frequency: f64,
    /// Tilt amplitude.
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VibrationConfig {
    pub mirrors: BTreeMap<ModeLabel, Mirror>,
    pub sample_rate: f64,
    pub n_frames: usize,
    pub noise_amplitude: f64,
    pub noise_seed: u64,
}

impl Default for VibrationConfig {
    fn default() -> Self {
        let mirrors = [
            (ModeLabel::A, 30.0),
            (ModeLabel::B, 32.0),
            (ModeLabel::C, 34.0),
            (ModeLabel::E, 36.0),
            (ModeLabel::F, 38.0),
        ]
        .into_iter()
        .map(|(l, f)| {
            (
                l,
                Mirror {
                    frequency: f,
                    amplitude: 0.01,
                },
            )
        })
        .collect();
        Self {
            mirrors,
            sample_rate: 1024.0,
            n_frames: 4096,
            noise_amplitude: 1e-6,
            noise_seed: 0,
        }
    }
}

impl VibrationConfig {
    pub fn noiseless(mut self) -> Self {
        self.noise_amplitude = 0.0;
        self
    }

    /// Keeps only the listed mirrors.
    pub fn only(mut self, keep: &[ModeLabel]) -> Self {
        self.mirrors.retain(|l, _| keep.contains(l));
        self
    }

    pub fn scale_tilts(mut self, factor: f64) -> Self {
        self.mirrors.values_mut().for_each(|m| m.amplitude *= factor);
        self
    }

    pub fn nyquist(&self) -> f64 {
        self.sample_rate / 2.0
    }

    /// Index of the DFT bin nearest to `frequency`.
    pub fn bin(&self, frequency: f64) -> usize {
        (frequency * self.n_frames as f64 / self.sample_rate).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate.is_nan() || self.sample_rate <= 0.0 {
            return Err(MziError::InvalidConfig("sample_rate must be positive".into()));
        }
        if self.n_frames == 0 {
            return Err(MziError::InvalidConfig("n_frames must be positive".into()));
        }
        if self.noise_amplitude.is_nan() || self.noise_amplitude < 0.0 {
            return Err(MziError::InvalidConfig("noise_amplitude must be non-negative".into()));
        }
        let mut bins = BTreeSet::new();
        for (&location, m) in &self.mirrors {
            if !ModeLabel::CHECKPOINTS.contains(&location) {
                return Err(MziError::InvalidSegment(location));
            }
            if !(0.0..=MAX_TILT).contains(&m.amplitude) {
                return Err(MziError::TiltOutOfRegime(m.amplitude));
            }
            if !(m.frequency > 0.0 && m.frequency < self.nyquist()) {
                return Err(MziError::AboveNyquist {
                    frequency: m.frequency,
                    nyquist: self.nyquist(),
                });
            }
            if !bins.insert(self.bin(m.frequency)) {
                return Err(MziError::FrequencyCollision(m.frequency));
            }
        }
        Ok(())
    }
}

/// Real part of each mirror segment's weak value at the `D` post-selection.
pub fn pointer_weights(config: &NestedMziConfig, vib: &VibrationConfig) -> Result<BTreeMap<ModeLabel, f64>> {
    let bare = config.without_markers();
    vib.mirrors
        .keys()
        .map(|&l| Ok((l, weak_value(&bare, l, ModeLabel::D)?.re)))
        .collect()
}

/// Quad-cell difference signal `S(t_k) = Σ_X δ_X sin(2π f_X t_k) Re(w_X)`
/// plus Gaussian noise of standard deviation `noise_amplitude`.
pub fn simulate_quadcell_signal(config: &NestedMziConfig, vib: &VibrationConfig) -> Result<Vec<f64>> {
    vib.validate()?;
    let weights = pointer_weights(config, vib)?;
    let tones: Vec<(f64, f64)> = vib
        .mirrors
        .iter()
        .map(|(l, m)| (m.frequency, m.amplitude * weights[l]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(vib.noise_seed);
    Ok((0..vib.n_frames)
        .map(|k| {
            let t = k as f64 / vib.sample_rate;
            let clean: f64 = tones
                .iter()
                .map(|&(f, a)| a * (2.0 * PI * f * t).sin())
                .sum();
            let noise: f64 = StandardNormal.sample(&mut rng);
            clean + vib.noise_amplitude * noise
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub frequencies: Vec<f64>,
    /// `|X_k|² / N` for every bin `k < N`.
    pub power: Vec<f64>,
    pub peaks: BTreeMap<ModeLabel, f64>,
}

impl SpectrumResult {
    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }

    /// Median power over the positive-frequency bins away from every mirror
    /// line.
    pub fn noise_floor(&self, vib: &VibrationConfig) -> f64 {
        let n = self.power.len();
        let lines: BTreeSet<usize> = vib.mirrors.values().map(|m| vib.bin(m.frequency)).collect();
        let mut rest: Vec<f64> = (1..n / 2)
            .filter(|k| !lines.contains(k))
            .map(|k| self.power[k])
            .collect();
        if rest.is_empty() {
            return 0.0;
        }
        rest.sort_by(f64::total_cmp);
        rest[rest.len() / 2]
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| MziError::InvalidConfig(e.to_string());
        w.write_record(["frequency", "power"]).map_err(io)?;
        for (f, p) in self.frequencies.iter().zip(&self.power) {
            w.write_record([f.to_string(), p.to_string()]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| MziError::InvalidConfig(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Periodogram of `series`, with the power at each mirror's nearest bin.
pub fn power_spectrum(series: &[f64], vib: &VibrationConfig) -> Result<SpectrumResult> {
    let n = series.len();
    let spectrum = fft_real(series)?;
    let power: Vec<f64> = spectrum.iter().map(|x| x.norm_sqr() / n as f64).collect();
    let frequencies = (0..n).map(|k| k as f64 * vib.sample_rate / n as f64).collect();
    let peaks = vib
        .mirrors
        .iter()
        .map(|(&l, m)| (l, power[vib.bin(m.frequency) % n]))
        .collect();
    Ok(SpectrumResult {
        frequencies,
        power,
        peaks,
    })
}
