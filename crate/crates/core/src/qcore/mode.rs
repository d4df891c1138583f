use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Segment or port of the nested interferometer that can carry the photon.
///
/// `S` is the source, `E` runs from BS1 to BS2, `A` and `B` are the inner
/// arms, `F` runs from BS3 to BS4 and `G` leaves BS3 toward the `O3` port.
/// Each blockable segment has its own absorber mode so that flux removed by
/// different blocks never interferes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModeLabel {
    S,
    C,
    E,
    A,
    B,
    F,
    G,
    D,
    O2,
    O3,
    #[serde(rename = "SINK_C")]
    SinkC,
    #[serde(rename = "SINK_E")]
    SinkE,
    #[serde(rename = "SINK_A")]
    SinkA,
    #[serde(rename = "SINK_B")]
    SinkB,
    #[serde(rename = "SINK_F")]
    SinkF,
}

pub const MODE_COUNT: usize = 15;

impl ModeLabel {
    pub const ALL: [ModeLabel; MODE_COUNT] = [
        ModeLabel::S,
        ModeLabel::C,
        ModeLabel::E,
        ModeLabel::A,
        ModeLabel::B,
        ModeLabel::F,
        ModeLabel::G,
        ModeLabel::D,
        ModeLabel::O2,
        ModeLabel::O3,
        ModeLabel::SinkC,
        ModeLabel::SinkE,
        ModeLabel::SinkA,
        ModeLabel::SinkB,
        ModeLabel::SinkF,
    ];

    /// Segments that can be blocked or carry a marker.
    pub const CHECKPOINTS: [ModeLabel; 5] = [
        ModeLabel::C,
        ModeLabel::E,
        ModeLabel::A,
        ModeLabel::B,
        ModeLabel::F,
    ];

    /// The three paths of the simplified argument.
    pub const PATHS: [ModeLabel; 3] = [ModeLabel::A, ModeLabel::B, ModeLabel::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_terminal(self) -> bool {
        matches!(self, ModeLabel::D | ModeLabel::O2 | ModeLabel::O3) || self.is_sink()
    }

    pub fn is_sink(self) -> bool {
        matches!(
            self,
            ModeLabel::SinkC | ModeLabel::SinkE | ModeLabel::SinkA | ModeLabel::SinkB | ModeLabel::SinkF
        )
    }

    /// Absorber that collects the flux of a blocked segment.
    pub fn sink(self) -> Option<ModeLabel> {
        match self {
            ModeLabel::C => Some(ModeLabel::SinkC),
            ModeLabel::E => Some(ModeLabel::SinkE),
            ModeLabel::A => Some(ModeLabel::SinkA),
            ModeLabel::B => Some(ModeLabel::SinkB),
            ModeLabel::F => Some(ModeLabel::SinkF),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeLabel::S => "S",
            ModeLabel::C => "C",
            ModeLabel::E => "E",
            ModeLabel::A => "A",
            ModeLabel::B => "B",
            ModeLabel::F => "F",
            ModeLabel::G => "G",
            ModeLabel::D => "D",
            ModeLabel::O2 => "O2",
            ModeLabel::O3 => "O3",
            ModeLabel::SinkC => "SINK_C",
            ModeLabel::SinkE => "SINK_E",
            ModeLabel::SinkA => "SINK_A",
            ModeLabel::SinkB => "SINK_B",
            ModeLabel::SinkF => "SINK_F",
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown mode label `{0}`")]
pub struct UnknownLabel(pub String);

impl FromStr for ModeLabel {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModeLabel::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

/// Detector-side outcome of a photon. All absorbers are lumped into `Sink`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Port {
    D,
    O2,
    O3,
    #[serde(rename = "SINK")]
    Sink,
}

impl Port {
    pub const ALL: [Port; 4] = [Port::D, Port::O2, Port::O3, Port::Sink];

    pub fn modes(self) -> &'static [ModeLabel] {
        match self {
            Port::D => &[ModeLabel::D],
            Port::O2 => &[ModeLabel::O2],
            Port::O3 => &[ModeLabel::O3],
            Port::Sink => &[
                ModeLabel::SinkC,
                ModeLabel::SinkE,
                ModeLabel::SinkA,
                ModeLabel::SinkB,
                ModeLabel::SinkF,
            ],
        }
    }
}

/// Identifies one marker qubit of a joint state: its bit position and the
/// segment it watches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkerId {
    pub index: usize,
    pub location: ModeLabel,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_matches_position() {
        for (i, m) in ModeLabel::ALL.iter().enumerate() {
            assert_eq!(m.index(), i);
        }
    }

    #[test]
    fn names_round_trip() {
        for m in ModeLabel::ALL {
            assert_eq!(m.name().parse::<ModeLabel>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
        assert!("Q".parse::<ModeLabel>().is_err());
    }

    #[test]
    fn terminals() {
        let terminal: Vec<_> = ModeLabel::ALL.iter().filter(|m| m.is_terminal()).collect();
        assert_eq!(terminal.len(), 8);
        assert!(!ModeLabel::S.is_terminal());
        for m in ModeLabel::CHECKPOINTS {
            assert!(m.sink().unwrap().is_sink());
        }
    }
}
