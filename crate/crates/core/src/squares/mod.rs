//! The twenty magic squares: row sequences, cell store, golden tables and
//! the structural checks (symmetry, embeddings, row coincidences, mcs).

mod checks;
mod embed;
mod golden;
mod square;
mod store;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cda::AlgLabel;

pub use checks::{
    derivation_algebra, derivation_check, mcs_check, row_coincidence_check, str0_check, DerivationOutcome, McsOutcome,
    RowCoincidence, RowComparison, Str0Outcome,
};
pub use embed::{embed_row_step, expected_commutant, EmbeddingReport};
pub use golden::{Expected, GoldenTable, GoldenTables};
pub use square::{
    build_square, golden_check, symmetry_check, vinberg_check, CellReport, GoldenDiff, GoldenReport, SquareReport,
    SymmetryReport, TableOutcome, VinbergReport,
};
pub use store::{default_cache_dir, CacheStats, Cell, CellKey, CellStore};
pub use verify::{all_cell_keys, verify_cell, verify_cells, CellVerification, Level, QUICK_FULL_MAX_DIM, QUICK_SAMPLES};

/// Euclidean J₃ (ε = +1) or Lorentzian J₁,₂ (ε = −1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    L3,
    L12,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::L3, Family::L12];

    pub fn epsilon(self) -> i8 {
        match self {
            Family::L3 => 1,
            Family::L12 => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::L3 => "L3",
            Family::L12 => "L12",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().replace([',', '_'], "").as_str() {
            "L3" => Ok(Family::L3),
            "L12" => Ok(Family::L12),
            _ => Err(format!("unknown family {s:?} (expected L3 or L12)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SequenceTag {
    Plain,
    Hat,
    Tilde,
    Split,
}

impl SequenceTag {
    pub const ALL: [SequenceTag; 4] = [SequenceTag::Plain, SequenceTag::Hat, SequenceTag::Tilde, SequenceTag::Split];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceTag::Plain => "PLAIN",
            SequenceTag::Hat => "HAT",
            SequenceTag::Tilde => "TILDE",
            SequenceTag::Split => "SPLIT",
        }
    }
}

impl fmt::Display for SequenceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "PLAIN" => Ok(SequenceTag::Plain),
            "HAT" => Ok(SequenceTag::Hat),
            "TILDE" => Ok(SequenceTag::Tilde),
            "SPLIT" => Ok(SequenceTag::Split),
            _ => Err(format!("unknown sequence tag {s:?} (expected plain, hat, tilde or split)")),
        }
    }
}

pub fn row_sequence(tag: SequenceTag) -> [AlgLabel; 4] {
    use AlgLabel::*;
    match tag {
        SequenceTag::Plain => [R, C, H, O],
        SequenceTag::Hat => [R, C, H, OS],
        SequenceTag::Tilde => [R, C, HS, OS],
        SequenceTag::Split => [R, CS, HS, OS],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SquaresError {
    #[error("embedding step must be 1, 2 or 3, got {0}")]
    BadStep(usize),
    #[error("construction failed: {0}")]
    Construction(String),
}

#[cfg(test)]
mod tests;
