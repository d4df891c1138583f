//! The `mzi` experiment runner.
//!
//! Every analysis is a subcommand. Inputs come from an optional JSON config
//! file plus a small set of global flags; reports are written as JSON (or
//! CSV for the tabular ones) to `--out` or stdout.
//!
//! Exit codes: 0 on success, 1 on any usage or validation error, 2 when the
//! `argue` regression finds no contradiction.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Arg, ArgMatches, Command};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    contradiction_demo_with, f_passage_check, phase_scan, scan_spread, solo_path_probability_with,
    weak_trace_report, weak_value_report,
};
use crate::danan::{pointer_weights, power_spectrum, simulate_quadcell_signal, VibrationConfig};
use crate::discrimination::{
    expected_detection_fraction, expected_fractions, monte_carlo_accounting, PovmMode,
};
use crate::error::MziError;
use crate::interferometer::{evolve, is_tuned, port_probabilities, MarkerSpec, NestedMziConfig};
use crate::qcore::{ModeLabel, Port};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;

/// Version stamped into every report and matched by the shipped schemas.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Flag {
    pub name: &'static str,
    pub value: &'static str,
    pub help: &'static str,
}

/// Every global flag. The clap command is generated from this table.
pub const FLAGS: &[Flag] = &[
    Flag {
        name: "config",
        value: "PATH",
        help: "JSON experiment config (defaults to the tuned network)",
    },
    Flag {
        name: "out",
        value: "PATH",
        help: "Write the report here instead of stdout",
    },
    Flag {
        name: "format",
        value: "json|csv",
        help: "Report format; csv is available for phase-scan, accounting and spectrum",
    },
    Flag {
        name: "seed",
        value: "U64",
        help: "RNG seed for accounting trials and spectrum noise",
    },
    Flag {
        name: "trials",
        value: "N",
        help: "Number of photons in the accounting run",
    },
    Flag {
        name: "segment",
        value: "A|B|C",
        help: "Segment carrying the scanned phase",
    },
    Flag {
        name: "points",
        value: "N",
        help: "Number of phase-scan points over [0, 2π)",
    },
    Flag {
        name: "theta",
        value: "FLOAT",
        help: "Marker coupling angle in radians (ε = sin θ)",
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Run,
    PhaseScan,
    Solo,
    Argue,
    FCheck,
    Accounting,
    Spectrum,
    WeakValues,
}

impl Subcommand {
    pub const ALL: [Subcommand; 8] = [
        Subcommand::Run,
        Subcommand::PhaseScan,
        Subcommand::Solo,
        Subcommand::Argue,
        Subcommand::FCheck,
        Subcommand::Accounting,
        Subcommand::Spectrum,
        Subcommand::WeakValues,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Run => "run",
            Subcommand::PhaseScan => "phase-scan",
            Subcommand::Solo => "solo",
            Subcommand::Argue => "argue",
            Subcommand::FCheck => "f-check",
            Subcommand::Accounting => "accounting",
            Subcommand::Spectrum => "spectrum",
            Subcommand::WeakValues => "weak-values",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Subcommand::Run => "Port probabilities and, with markers, the trace report at D",
            Subcommand::PhaseScan => "P(D) against a phase on one path",
            Subcommand::Solo => "P(D) with all but one of A, B, C blocked",
            Subcommand::Argue => "Single-path criterion on A, B, C; exits 2 unless B and C both pass",
            Subcommand::FCheck => "Marker states of photons found at F",
            Subcommand::Accounting => "Monte Carlo tally of discrimination verdicts among D detections",
            Subcommand::Spectrum => "Detector spectrum with vibrating checkpoint mirrors",
            Subcommand::WeakValues => "Weak values of every segment for post-selection at D",
        }
    }

    fn supports_csv(self) -> bool {
        matches!(
            self,
            Subcommand::PhaseScan | Subcommand::Accounting | Subcommand::Spectrum
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub subcommand: Subcommand,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub segment: Option<ModeLabel>,
    pub points: Option<usize>,
    pub theta: Option<f64>,
}

pub fn command() -> Command {
    let mut cmd = Command::new("mzi")
        .about("Nested Mach-Zehnder interferometer with weak path markers")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for flag in FLAGS {
        cmd = cmd.arg(
            Arg::new(flag.name)
                .long(flag.name)
                .value_name(flag.value)
                .help(flag.help)
                .global(true),
        );
    }
    for sub in Subcommand::ALL {
        cmd = cmd.subcommand(Command::new(sub.name()).about(sub.about()));
    }
    cmd
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Mzi(#[from] MziError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn parse_flag<T: std::str::FromStr>(m: &ArgMatches, name: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    m.get_one::<String>(name)
        .map(|v| {
            v.parse::<T>()
                .map_err(|e| CliError::Usage(format!("--{name} {v}: {e}")))
        })
        .transpose()
}

impl RunSpec {
    pub fn from_matches(m: &ArgMatches) -> Result<Self, CliError> {
        let (name, sub) = m
            .subcommand()
            .ok_or_else(|| CliError::Usage("missing subcommand".into()))?;
        let subcommand = Subcommand::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .expect("clap only accepts registered subcommands");
        let format = match sub.get_one::<String>("format").map(String::as_str) {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "--format {other}: expected json or csv"
                )))
            }
        };
        if format == Format::Csv && !subcommand.supports_csv() {
            return Err(CliError::Usage(format!(
                "{} has no csv output",
                subcommand.name()
            )));
        }
        let segment: Option<ModeLabel> = parse_flag(sub, "segment")?;
        if let Some(s) = segment {
            if !ModeLabel::PATHS.contains(&s) {
                return Err(CliError::Usage(format!("--segment {s}: expected A, B or C")));
            }
        }
        Ok(Self {
            subcommand,
            config: sub.get_one::<String>("config").map(PathBuf::from),
            out: sub.get_one::<String>("out").map(PathBuf::from),
            format,
            seed: parse_flag(sub, "seed")?,
            trials: parse_flag(sub, "trials")?,
            segment,
            points: parse_flag(sub, "points")?,
            theta: parse_flag(sub, "theta")?,
        })
    }
}

fn default_theta() -> f64 {
    0.1f64.asin()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AccountingParams {
    pub povm: PovmMode,
    pub trials: u64,
    pub seed: u64,
    /// Angle of the `A`, `B`, `C` markers when the config lists none.
    pub theta: f64,
}

impl Default for AccountingParams {
    fn default() -> Self {
        Self {
            povm: PovmMode::BasisCheck,
            trials: 1_000_000,
            seed: 42,
            theta: default_theta(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhaseScanParams {
    pub segment: ModeLabel,
    pub points: usize,
}

impl Default for PhaseScanParams {
    fn default() -> Self {
        Self {
            segment: ModeLabel::C,
            points: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FCheckParams {
    pub theta: f64,
}

impl Default for FCheckParams {
    fn default() -> Self {
        Self {
            theta: default_theta(),
        }
    }
}

/// On-disk config. Every key is optional.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    t1: Option<f64>,
    t2: Option<f64>,
    t3: Option<f64>,
    t4: Option<f64>,
    #[serde(default)]
    phases: BTreeMap<ModeLabel, f64>,
    #[serde(default)]
    blocked: Vec<ModeLabel>,
    #[serde(default)]
    markers: Vec<MarkerSpec>,
    #[serde(default)]
    accounting: AccountingParams,
    #[serde(default)]
    phase_scan: PhaseScanParams,
    #[serde(default)]
    f_check: FCheckParams,
    #[serde(default)]
    spectrum: VibrationConfig,
}

/// Validated network plus per-experiment parameters.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct ExperimentConfig {
    pub interferometer: NestedMziConfig,
    pub accounting: AccountingParams,
    pub phase_scan: PhaseScanParams,
    pub f_check: FCheckParams,
    pub spectrum: VibrationConfig,
}

fn check_theta(key: &str, theta: f64) -> Result<(), String> {
    if (0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        Ok(())
    } else {
        Err(format!("{key}: angle {theta} outside [0, pi/2]"))
    }
}

impl TryFrom<RawConfig> for ExperimentConfig {
    type Error = String;

    fn try_from(raw: RawConfig) -> Result<Self, String> {
        let defaults = NestedMziConfig::default();
        let mut cfg = NestedMziConfig {
            t1: raw.t1.unwrap_or(defaults.t1),
            t2: raw.t2.unwrap_or(defaults.t2),
            t3: raw.t3.unwrap_or(defaults.t3),
            t4: raw.t4.unwrap_or(defaults.t4),
            ..defaults
        };
        for (key, t) in [("t1", cfg.t1), ("t2", cfg.t2), ("t3", cfg.t3), ("t4", cfg.t4)] {
            if !(0.0..=1.0).contains(&t) {
                return Err(format!("{key}: transmission {t} outside [0, 1]"));
            }
        }
        for (&segment, &phi) in &raw.phases {
            if !ModeLabel::PATHS.contains(&segment) {
                return Err(format!("phases: {segment} cannot carry a phase (A, B or C only)"));
            }
            if !phi.is_finite() {
                return Err(format!("phases.{segment}: not a finite angle"));
            }
        }
        cfg.phases = raw.phases;
        for &segment in &raw.blocked {
            if segment.is_terminal() {
                return Err(format!("blocked: {segment} is a terminal port"));
            }
            if !ModeLabel::CHECKPOINTS.contains(&segment) {
                return Err(format!("blocked: {segment} cannot be blocked"));
            }
        }
        cfg.blocked = raw.blocked.into_iter().collect();
        for (i, m) in raw.markers.iter().enumerate() {
            if !ModeLabel::CHECKPOINTS.contains(&m.location) {
                return Err(format!("markers[{i}].location: no checkpoint at {}", m.location));
            }
            if raw.markers[..i].iter().any(|o| o.location == m.location) {
                return Err(format!("markers[{i}].location: duplicate marker on {}", m.location));
            }
            check_theta(&format!("markers[{i}].theta"), m.theta)?;
        }
        cfg.markers = raw.markers;
        check_theta("accounting.theta", raw.accounting.theta)?;
        check_theta("f_check.theta", raw.f_check.theta)?;
        if !ModeLabel::PATHS.contains(&raw.phase_scan.segment) {
            return Err(format!(
                "phase_scan.segment: {} is not one of A, B, C",
                raw.phase_scan.segment
            ));
        }
        raw.spectrum
            .validate()
            .map_err(|e| format!("spectrum: {e}"))?;
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(Self {
            interferometer: cfg,
            accounting: raw.accounting,
            phase_scan: raw.phase_scan,
            f_check: raw.f_check,
            spectrum: raw.spectrum,
        })
    }
}

/// Config parse or validation failure, located in the source text.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} at line {line}")]
pub struct ConfigError {
    pub message: String,
    pub line: usize,
}

/// Line of the key a validation message starts with, e.g. `t4: ...` or
/// `markers[1].theta: ...`.
fn locate_key(text: &str, message: &str) -> usize {
    let line_of = |offset: usize| text[..offset].matches('\n').count() + 1;
    let path = message.split(':').next().unwrap_or_default();
    let top = path.split(['[', '.']).next().unwrap_or_default();
    let Some(mut pos) = text.find(&format!("\"{top}\"")) else {
        return 1;
    };
    // markers[i].field: the (i+1)-th occurrence of "field" after the key.
    if let Some((index, field)) = path
        .strip_prefix(top)
        .and_then(|rest| rest.strip_prefix('['))
        .and_then(|rest| rest.split_once("]."))
    {
        if let Ok(index) = index.parse::<usize>() {
            let needle = format!("\"{field}\"");
            for _ in 0..=index {
                match text[pos + 1..].find(&needle) {
                    Some(next) => pos += 1 + next,
                    None => break,
                }
            }
        }
    }
    line_of(pos)
}

/// Parses and validates a JSON config. Errors name the offending key and
/// the line it sits on.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        if e.line() > 0 {
            // serde_json already appends " at line L column C".
            let bare = message
                .rsplit_once(" at line ")
                .map_or(message.as_str(), |(m, _)| m)
                .to_string();
            ConfigError {
                message: bare,
                line: e.line(),
            }
        } else {
            ConfigError {
                line: locate_key(text, &message),
                message,
            }
        }
    })
}

enum Output {
    Report(Value),
    Table(String),
    Failed(Value, String),
}

fn envelope(kind: Subcommand, report: impl Serialize) -> Result<Value, CliError> {
    Ok(json!({
        "kind": kind.name(),
        "schema_version": SCHEMA_VERSION,
        "report": serde_json::to_value(report)?,
    }))
}

fn execute(spec: &RunSpec, exp: &ExperimentConfig) -> Result<Output, CliError> {
    let cfg = &exp.interferometer;
    let kind = spec.subcommand;
    let csv = spec.format == Format::Csv;
    Ok(match kind {
        Subcommand::Run => {
            let ports = port_probabilities(cfg)?;
            let trace = if cfg.markers.is_empty() || ports[&Port::D] < crate::qcore::ZERO_PROBABILITY {
                None
            } else {
                Some(weak_trace_report(cfg, ModeLabel::D)?)
            };
            Output::Report(envelope(
                kind,
                json!({ "tuned": is_tuned(cfg)?, "ports": ports, "trace": trace }),
            )?)
        }
        Subcommand::PhaseScan => {
            let segment = spec.segment.unwrap_or(exp.phase_scan.segment);
            let points = spec.points.unwrap_or(exp.phase_scan.points);
            let scan = phase_scan(cfg, segment, points)?;
            if csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Usage(e.to_string());
                w.write_record(["phi", "p_d"]).map_err(io)?;
                for p in &scan {
                    w.write_record([p.phi.to_string(), p.p_d.to_string()]).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
                Output::Table(String::from_utf8(bytes).expect("utf-8"))
            } else {
                Output::Report(envelope(
                    kind,
                    json!({ "segment": segment, "spread": scan_spread(&scan), "points": scan }),
                )?)
            }
        }
        Subcommand::Solo => {
            let full = evolve(cfg)?.port_probability(Port::D);
            let solo = ModeLabel::PATHS
                .into_iter()
                .map(|p| Ok((p, solo_path_probability_with(cfg, p)?)))
                .collect::<Result<BTreeMap<_, _>, MziError>>()?;
            Output::Report(envelope(kind, json!({ "full_probability": full, "solo": solo }))?)
        }
        Subcommand::Argue => {
            let report = contradiction_demo_with(cfg)?;
            let value = envelope(kind, &report)?;
            match report.ensure() {
                Ok(()) => Output::Report(value),
                Err(e) => Output::Failed(value, e.to_string()),
            }
        }
        Subcommand::FCheck => {
            let theta = spec.theta.unwrap_or(exp.f_check.theta);
            check_theta("--theta", theta).map_err(CliError::Usage)?;
            Output::Report(envelope(kind, f_passage_check(theta)?)?)
        }
        Subcommand::Accounting => {
            let params = &exp.accounting;
            let theta = spec.theta.unwrap_or(params.theta);
            check_theta("--theta", theta).map_err(CliError::Usage)?;
            let mut acfg = cfg.clone();
            if acfg.markers.is_empty() || spec.theta.is_some() {
                acfg = acfg.with_equal_markers(theta);
            }
            let trials = spec.trials.unwrap_or(params.trials);
            let seed = spec.seed.unwrap_or(params.seed);
            let tally = monte_carlo_accounting(&acfg, params.povm, trials, seed)?;
            if csv {
                Output::Table(tally.to_csv()?)
            } else {
                let expected = (params.povm == PovmMode::BasisCheck).then(|| {
                    expected_fractions(tally.theta)
                        .into_iter()
                        .map(|([a, b, c], fraction)| json!({ "A": a, "B": b, "C": c, "fraction": fraction }))
                        .collect::<Vec<_>>()
                });
                Output::Report(envelope(
                    kind,
                    json!({
                        "tally": tally,
                        "detection_fraction": tally.detection_fraction(),
                        "expected_detection_fraction": expected_detection_fraction(tally.theta),
                        "expected_fractions": expected,
                        "multi_conclusive": tally.multi_conclusive(),
                    }),
                )?)
            }
        }
        Subcommand::Spectrum => {
            let mut vib = exp.spectrum.clone();
            if let Some(seed) = spec.seed {
                vib.noise_seed = seed;
            }
            let series = simulate_quadcell_signal(cfg, &vib)?;
            let spectrum = power_spectrum(&series, &vib)?;
            if csv {
                Output::Table(spectrum.to_csv()?)
            } else {
                let energy: f64 = series.iter().map(|x| x * x).sum();
                Output::Report(envelope(
                    kind,
                    json!({
                        "weights": pointer_weights(cfg, &vib)?,
                        "peaks": spectrum.peaks,
                        "noise_floor": spectrum.noise_floor(&vib),
                        "total_power": spectrum.total_power(),
                        "signal_energy": energy,
                        "n_frames": vib.n_frames,
                        "sample_rate": vib.sample_rate,
                    }),
                )?)
            }
        }
        Subcommand::WeakValues => Output::Report(envelope(
            kind,
            weak_value_report(&cfg.without_markers(), ModeLabel::D)?,
        )?),
    })
}

fn load_config(spec: &RunSpec) -> Result<ExperimentConfig, CliError> {
    match &spec.config {
        None => Ok(ExperimentConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(parse_config(&text)?)
        }
    }
}

fn emit(spec: &RunSpec, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &spec.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Runs one already-parsed invocation and returns the exit code.
pub fn dispatch(spec: &RunSpec, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = load_config(spec).and_then(|exp| execute(spec, &exp));
    let (text, failure) = match result {
        Ok(Output::Report(v)) => (to_json(&v), None),
        Ok(Output::Table(t)) => (t, None),
        Ok(Output::Failed(v, msg)) => (to_json(&v), Some(msg)),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };
    if let Err(e) = emit(spec, &text, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INVALID;
    }
    match failure {
        None => EXIT_OK,
        Some(msg) => {
            let _ = writeln!(stderr, "{msg}");
            EXIT_ASSERTION
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_INVALID
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    match RunSpec::from_matches(&matches) {
        Ok(spec) => dispatch(&spec, stdout, stderr),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}
