//! Analysis of Lie algebras given by structure constants: Killing form,
//! character, simple ideals, centralizers and real-form identification.

mod catalog;
mod centralizer;
mod ideals;
mod killing;
mod sub;

use serde::{Deserialize, Serialize};

pub use catalog::{Catalog, RealFormRecord, Source};
pub use centralizer::{centralizer, closed_basis, Centralizer};
pub use ideals::{decompose_ideals, ideal_bases, ideal_closure};
pub use killing::{character, killing, killing_float_inertia, killing_inertia};
pub use sub::{restrict, span_basis};

use crate::exactla::Inertia;
use crate::titslie::LieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LieanError {
    #[error("Killing form is degenerate")]
    DegenerateKilling,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("centroid decomposition did not converge")]
    DecompositionFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisResult {
    pub dim: usize,
    pub chi: i64,
    pub killing_inertia: Inertia,
    /// Whether the float eigen-sign count agreed with the exact inertia.
    pub float_check: bool,
    /// Sorted (dim, χ) of the simple ideals.
    pub ideals: Vec<(usize, i64)>,
    pub identified_name: Option<String>,
}

impl AnalysisResult {
    pub fn name(&self) -> &str {
        self.identified_name.as_deref().unwrap_or("UNKNOWN")
    }

    /// The isomorphism invariants used for comparisons.
    pub fn invariants(&self) -> (usize, i64, Vec<(usize, i64)>) {
        (self.dim, self.chi, self.ideals.clone())
    }
}

/// Killing inertia, ideals and catalog identification in one pass.
pub fn analyze(l: &LieAlgebra, catalog: &Catalog) -> Result<AnalysisResult, LieanError> {
    let ki = killing_inertia(l);
    if ki.zero > 0 {
        return Err(LieanError::DegenerateKilling);
    }
    let float_check = killing_float_inertia(l) == ki;
    let mut ideals = Vec::new();
    for i in decompose_ideals(l)? {
        ideals.push((i.dim(), character(&i)?));
    }
    ideals.sort_unstable();
    let chi = ki.signature();
    let identified_name = catalog.lookup(l.dim(), chi, &ideals).map(|r| r.name.clone());
    Ok(AnalysisResult { dim: l.dim(), chi, killing_inertia: ki, float_check, ideals, identified_name })
}

pub fn identify<'c>(l: &LieAlgebra, catalog: &'c Catalog) -> Result<Option<&'c RealFormRecord>, LieanError> {
    let a = analyze(l, catalog)?;
    Ok(catalog.lookup(a.dim, a.chi, &a.ideals))
}

#[cfg(test)]
mod tests;
