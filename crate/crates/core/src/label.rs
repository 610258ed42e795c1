use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Three-way inference label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Entailment,
    Contradiction,
    Neutral,
}

impl Label {
    /// Fixed order used for tie-breaking and for probability vectors.
    pub const ALL: [Label; 3] = [Label::Entailment, Label::Contradiction, Label::Neutral];

    pub fn code(self) -> char {
        match self {
            Label::Entailment => 'E',
            Label::Contradiction => 'C',
            Label::Neutral => 'N',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Entailment => "entailment",
            Label::Contradiction => "contradiction",
            Label::Neutral => "neutral",
        }
    }

    pub fn position(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown label {0:?}")]
pub struct UnknownLabel(pub String);

impl FromStr for Label {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "entailment" | "E" => Ok(Label::Entailment),
            "contradiction" | "C" => Ok(Label::Contradiction),
            "neutral" | "N" => Ok(Label::Neutral),
            _ => Err(UnknownLabel(s.to_owned())),
        }
    }
}

/// Counts per label, indexed in [`Label::ALL`] order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub entailment: usize,
    pub contradiction: usize,
    pub neutral: usize,
}

impl LabelCounts {
    pub fn add(&mut self, label: Label) {
        *self.get_mut(label) += 1;
    }

    pub fn get(&self, label: Label) -> usize {
        match label {
            Label::Entailment => self.entailment,
            Label::Contradiction => self.contradiction,
            Label::Neutral => self.neutral,
        }
    }

    fn get_mut(&mut self, label: Label) -> &mut usize {
        match label {
            Label::Entailment => &mut self.entailment,
            Label::Contradiction => &mut self.contradiction,
            Label::Neutral => &mut self.neutral,
        }
    }

    pub fn merge(&mut self, other: &LabelCounts) {
        self.entailment += other.entailment;
        self.contradiction += other.contradiction;
        self.neutral += other.neutral;
    }

    pub fn total(&self) -> usize {
        self.entailment + self.contradiction + self.neutral
    }
}
