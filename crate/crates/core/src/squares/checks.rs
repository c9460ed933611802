use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cda::{AlgLabel, CompAlgebra};
use crate::exactla::{MatrixQ, SpanSolver};
use crate::jordan::make_jordan;
use crate::liean::analyze;
use crate::titslie::{build_str0, BasisLabel, LieAlgebra};

use super::{row_sequence, CellKey, CellStore, Family, SequenceTag};

type Invariants = (usize, i64, Vec<(usize, i64)>);

/// The Lie algebra spanned by a commutator-closed set of independent
/// matrices. Returns None if the span is not closed.
pub fn derivation_algebra(mats: &[MatrixQ]) -> Option<LieAlgebra> {
    let labels: Vec<BasisLabel> = (0..mats.len()).map(BasisLabel::Sub).collect();
    if mats.is_empty() {
        return Some(LieAlgebra::from_fn(labels, None, |_, _| Vec::new()));
    }
    let n = mats[0].rows() * mats[0].cols();
    let flat: Vec<_> = mats.iter().map(MatrixQ::flatten).collect();
    let mut s = SpanSolver::new(n, &flat).ok()?;
    let mut closed = true;
    let l = LieAlgebra::from_fn(labels, None, |i, j| match s.solve(&mats[i].commutator(&mats[j]).flatten()) {
        Ok(c) => c.into_iter().enumerate().filter(|(_, v)| !num_traits::Zero::is_zero(v)).collect(),
        Err(_) => {
            closed = false;
            Vec::new()
        }
    });
    closed.then_some(l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationOutcome {
    /// "A" for a composition algebra, "J" for a rank-3 Jordan algebra.
    pub kind: char,
    pub base: AlgLabel,
    pub epsilon: Option<i8>,
    pub dim: usize,
    /// Killing character; absent when the algebra is zero.
    pub chi: Option<i64>,
    pub name: Option<String>,
}

/// Der of the seven composition algebras and of J over ℝ, ℂ, ℍ, 𝕆 for both
/// signatures, computed directly from the Leibniz rule.
pub fn derivation_check(store: &CellStore) -> Vec<DerivationOutcome> {
    let mut jobs: Vec<(char, AlgLabel, Option<i8>)> = AlgLabel::ALL.iter().map(|&a| ('A', a, None)).collect();
    for eps in [1, -1] {
        for b in row_sequence(SequenceTag::Plain) {
            jobs.push(('J', b, Some(eps)));
        }
    }
    jobs.par_iter()
        .map(|&(kind, base, epsilon)| {
            let alg = CompAlgebra::from_label(base);
            let mats = match epsilon {
                None => alg.derivation_basis(),
                Some(e) => make_jordan(&alg, e).expect("ε = ±1").jder_basis(),
            };
            let l = derivation_algebra(&mats).expect("derivations close under commutators");
            let a = (l.dim() > 0).then(|| analyze(&l, store.catalog()).ok()).flatten();
            DerivationOutcome {
                kind,
                base,
                epsilon,
                dim: l.dim(),
                chi: a.as_ref().map(|a| a.chi),
                name: a.and_then(|a| a.identified_name),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Str0Outcome {
    pub family: Family,
    pub b: AlgLabel,
    pub str0: Option<Invariants>,
    pub cell: Option<Invariants>,
}

impl Str0Outcome {
    pub fn ok(&self) -> bool {
        self.str0.is_some() && self.str0 == self.cell
    }
}

/// Str₀(𝔍^𝔹) built as Der(𝔍) ∔ L(𝔍′) against the L(ℂ_S, 𝔹) cell.
pub fn str0_check(store: &CellStore) -> Vec<Str0Outcome> {
    let jobs: Vec<(Family, AlgLabel)> = Family::ALL.iter().flat_map(|&f| AlgLabel::ALL.iter().map(move |&b| (f, b))).collect();
    jobs.par_iter()
        .map(|&(family, b)| {
            let j = make_jordan(&CompAlgebra::from_label(b), family.epsilon()).expect("ε = ±1");
            let str0 = build_str0(&j).ok().and_then(|l| analyze(&l, store.catalog()).ok()).map(|a| a.invariants());
            let cell = store.get(CellKey::new(family, AlgLabel::CS, b)).analysis.as_ref().ok().map(|a| a.invariants());
            Str0Outcome { family, b, str0, cell }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McsOutcome {
    pub col: AlgLabel,
    pub str0_dim: usize,
    pub str0_chi: i64,
    pub aut_dim: usize,
}

impl McsOutcome {
    pub fn ok(&self) -> bool {
        (self.str0_dim as i64 - self.str0_chi) == 2 * self.aut_dim as i64
    }
}

/// (dim − χ)/2 of L₃(ℂ_S, 𝔹) against dim L₃(ℝ, 𝔹).
pub fn mcs_check(store: &CellStore, col: AlgLabel) -> Option<McsOutcome> {
    let s = store.get(CellKey::new(Family::L3, AlgLabel::CS, col));
    let a = store.get(CellKey::new(Family::L3, AlgLabel::R, col));
    let s = s.analysis.as_ref().ok()?;
    Some(McsOutcome { col, str0_dim: s.dim, str0_chi: s.chi, aut_dim: a.lie.as_ref().ok()?.dim() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowComparison {
    pub what: String,
    /// (family, rows, cols, row index) on each side.
    pub left: (Family, SequenceTag, SequenceTag, usize),
    pub right: (Family, SequenceTag, SequenceTag, usize),
    pub expect_equal: [bool; 4],
    pub equal: [bool; 4],
}

impl RowComparison {
    pub fn ok(&self) -> bool {
        self.expect_equal == self.equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCoincidence {
    pub comparisons: Vec<RowComparison>,
}

impl RowCoincidence {
    pub fn ok(&self) -> bool {
        self.comparisons.iter().all(RowComparison::ok)
    }
}

fn row_invariants(store: &CellStore, family: Family, rows: SequenceTag, cols: SequenceTag, r: usize) -> Vec<Option<Invariants>> {
    let a = row_sequence(rows)[r];
    row_sequence(cols)
        .iter()
        .map(|&b| store.get(CellKey::new(family, a, b)).analysis.as_ref().ok().map(|x| x.invariants()))
        .collect()
}

/// Rows shared between Euclidean and Lorentzian squares, and the rows
/// where they must differ.
pub fn row_coincidence_check(store: &CellStore) -> RowCoincidence {
    use Family::*;
    use SequenceTag::*;
    let mut specs: Vec<(String, (Family, SequenceTag, SequenceTag, usize), (Family, SequenceTag, SequenceTag, usize), [bool; 4])> = Vec::new();
    for r in 1..4 {
        specs.push((format!("single-split row {}", r + 1), (L3, Split, Plain, r), (L12, Split, Plain, r), [true; 4]));
    }
    specs.push(("double-split row 1".into(), (L12, Split, Split, 0), (L3, Split, Split, 0), [false, true, true, true]));
    specs.push(("division row 1".into(), (L12, Plain, Plain, 0), (L3, Plain, Plain, 0), [false; 4]));
    for r in 2..4 {
        specs.push((format!("mixed row {}", r + 1), (L12, Tilde, Plain, r), (L3, Tilde, Plain, r), [true; 4]));
    }
    for r in 0..2 {
        specs.push((format!("mixed vs division row {}", r + 1), (L12, Tilde, Plain, r), (L12, Plain, Plain, r), [true; 4]));
    }
    let comparisons = specs
        .into_iter()
        .map(|(what, left, right, expect_equal)| {
            let x = row_invariants(store, left.0, left.1, left.2, left.3);
            let y = row_invariants(store, right.0, right.1, right.2, right.3);
            let equal = std::array::from_fn(|k| x[k].is_some() && x[k] == y[k]);
            RowComparison { what, left, right, expect_equal, equal }
        })
        .collect();
    RowCoincidence { comparisons }
}
