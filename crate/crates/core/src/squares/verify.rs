use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cda::AlgLabel;
use crate::exactla::Inertia;
use crate::titslie::{check_jacobi, JacobiMode, JacobiReport};

use super::{CellKey, CellStore, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Full Jacobi up to dim 78, seeded sampling above.
    Quick,
    Full,
}

pub const QUICK_FULL_MAX_DIM: usize = 78;
pub const QUICK_SAMPLES: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellVerification {
    pub key: CellKey,
    pub dim: usize,
    pub jacobi: JacobiReport,
    pub exhaustive: bool,
    pub killing_inertia: Option<Inertia>,
    pub error: Option<String>,
}

impl CellVerification {
    pub fn killing_nondegenerate(&self) -> bool {
        self.killing_inertia.is_some_and(|i| i.zero == 0 && i.plus + i.minus == self.dim)
    }

    pub fn ok(&self) -> bool {
        self.error.is_none() && self.jacobi.ok() && self.killing_nondegenerate()
    }
}

/// Every (𝔸, 𝔹, ε) construction: 7 × 7 × 2 = 98 cells.
pub fn all_cell_keys() -> Vec<CellKey> {
    Family::ALL
        .iter()
        .flat_map(|&f| AlgLabel::ALL.iter().flat_map(move |&a| AlgLabel::ALL.iter().map(move |&b| CellKey::new(f, a, b))))
        .collect()
}

pub fn verify_cell(store: &CellStore, key: CellKey, level: Level, seed: u64) -> CellVerification {
    let cell = store.get(key);
    let (l, error) = match &cell.lie {
        Ok(l) => (l, cell.analysis.as_ref().err().cloned()),
        Err(e) => {
            return CellVerification {
                key,
                dim: 0,
                jacobi: JacobiReport::default(),
                exhaustive: false,
                killing_inertia: None,
                error: Some(e.clone()),
            }
        }
    };
    let exhaustive = level == Level::Full || l.dim() <= QUICK_FULL_MAX_DIM;
    let mode = if exhaustive { JacobiMode::Full } else { JacobiMode::Sample { n: QUICK_SAMPLES, seed } };
    CellVerification {
        key,
        dim: l.dim(),
        jacobi: check_jacobi(l, mode),
        exhaustive,
        killing_inertia: Some(crate::liean::killing_inertia(l)),
        error,
    }
}

/// Cells are verified one after another; each Jacobi check is itself
/// parallel, which keeps peak memory at one large cell.
pub fn verify_cells(store: &CellStore, keys: &[CellKey], level: Level, seed: u64) -> Vec<CellVerification> {
    keys.par_iter().with_max_len(1).map(|&k| verify_cell(store, k, level, seed)).collect()
}
