use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cda::AlgLabel;
use crate::liean::AnalysisResult;

use super::{row_sequence, CellKey, CellStore, Family, GoldenTables, SequenceTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub row: AlgLabel,
    pub col: AlgLabel,
    pub result: Result<AnalysisResult, String>,
}

impl CellReport {
    pub fn name(&self) -> String {
        match &self.result {
            Ok(a) => a.name().to_string(),
            Err(e) => format!("ERROR({e})"),
        }
    }

    pub fn invariants(&self) -> Option<(usize, i64, Vec<(usize, i64)>)> {
        self.result.as_ref().ok().map(|a| a.invariants())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDiff {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareReport {
    pub family: Family,
    pub row_tag: SequenceTag,
    pub col_tag: SequenceTag,
    /// Table the expectations came from, and whether it was transposed.
    pub golden_table: Option<(u32, bool)>,
    pub cells: Vec<Vec<CellReport>>,
    pub golden_diffs: Vec<GoldenDiff>,
}

impl SquareReport {
    pub fn names(&self) -> Vec<Vec<String>> {
        self.cells.iter().map(|r| r.iter().map(CellReport::name).collect()).collect()
    }
}

pub fn build_square(store: &CellStore, golden: &GoldenTables, family: Family, row_tag: SequenceTag, col_tag: SequenceTag) -> SquareReport {
    let rows = row_sequence(row_tag);
    let cols = row_sequence(col_tag);
    let flat: Vec<CellReport> = (0..16)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (rows[k / 4], cols[k % 4]);
            let cell = store.get(CellKey::new(family, a, b));
            CellReport { row: a, col: b, result: cell.analysis.clone() }
        })
        .collect();
    let cells: Vec<Vec<CellReport>> = flat.chunks(4).map(|c| c.to_vec()).collect();
    let expected = golden.expected(family, row_tag, col_tag);
    let mut golden_diffs = Vec::new();
    if let Some(e) = &expected {
        for (i, row) in cells.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let found = c.name();
                if found != e.names[i][j] {
                    golden_diffs.push(GoldenDiff { row: i, col: j, expected: e.names[i][j].clone(), found });
                }
            }
        }
    }
    SquareReport { family, row_tag, col_tag, golden_table: expected.map(|e| (e.table, e.transposed)), cells, golden_diffs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub family: Family,
    pub tag_a: SequenceTag,
    pub tag_b: SequenceTag,
    /// Cells (i, j) of (A, B) whose invariants differ from cell (j, i) of (B, A).
    pub cross_mismatches: Vec<(usize, usize)>,
    pub transpose_equal: bool,
    /// Whether the golden table marks the square as symmetric, when it is one.
    pub golden_symmetric: Option<bool>,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.cross_mismatches.is_empty() && self.golden_symmetric.is_none_or(|s| s == self.transpose_equal)
    }
}

pub fn symmetry_check(store: &CellStore, golden: &GoldenTables, family: Family, tag_a: SequenceTag, tag_b: SequenceTag) -> SymmetryReport {
    let ab = build_square(store, golden, family, tag_a, tag_b);
    let ba = build_square(store, golden, family, tag_b, tag_a);
    let inv = |r: &SquareReport, i: usize, j: usize| r.cells[i][j].invariants();
    let mut cross_mismatches = Vec::new();
    let mut transpose_equal = true;
    for i in 0..4 {
        for j in 0..4 {
            let x = inv(&ab, i, j);
            if x.is_none() || x != inv(&ba, j, i) {
                cross_mismatches.push((i, j));
            }
            if x.is_none() || x != inv(&ab, j, i) {
                transpose_equal = false;
            }
        }
    }
    SymmetryReport {
        family,
        tag_a,
        tag_b,
        cross_mismatches,
        transpose_equal,
        golden_symmetric: golden.table(family, tag_a, tag_b).map(|t| t.symmetric),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VinbergReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<(Family, AlgLabel, AlgLabel)>,
}

/// L(𝔸,𝔹) and L(𝔹,𝔸) have the same invariants for every ordered pair.
pub fn vinberg_check(store: &CellStore) -> VinbergReport {
    let keys: Vec<(Family, AlgLabel, AlgLabel)> =
        Family::ALL.iter().flat_map(|&f| AlgLabel::ALL.iter().flat_map(move |&a| AlgLabel::ALL.iter().map(move |&b| (f, a, b)))).collect();
    let mismatches = keys
        .par_iter()
        .filter(|(f, a, b)| {
            let x = store.get(CellKey::new(*f, *a, *b));
            let y = store.get(CellKey::new(*f, *b, *a));
            match (&x.analysis, &y.analysis) {
                (Ok(p), Ok(q)) => p.invariants() != q.invariants(),
                _ => true,
            }
        })
        .copied()
        .collect();
    VinbergReport { pairs_checked: keys.len(), mismatches }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOutcome {
    pub table: u32,
    pub family: Family,
    pub rows: SequenceTag,
    pub cols: SequenceTag,
    pub diffs: Vec<GoldenDiff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub tables: Vec<TableOutcome>,
    pub tables_matched: usize,
    pub cells_checked: usize,
    pub distinct_cells: usize,
}

impl GoldenReport {
    pub fn ok(&self) -> bool {
        self.tables_matched == self.tables.len()
    }
}

pub fn golden_check(store: &CellStore, golden: &GoldenTables) -> GoldenReport {
    let tables: Vec<TableOutcome> = golden
        .tables
        .par_iter()
        .map(|t| {
            let r = build_square(store, golden, t.family, t.rows, t.cols);
            TableOutcome { table: t.table, family: t.family, rows: t.rows, cols: t.cols, diffs: r.golden_diffs }
        })
        .collect();
    let mut keys: Vec<CellKey> = golden
        .tables
        .iter()
        .flat_map(|t| {
            let (r, c) = (row_sequence(t.rows), row_sequence(t.cols));
            (0..16).map(move |k| CellKey::new(t.family, r[k / 4], c[k % 4]))
        })
        .collect();
    let cells_checked = keys.len();
    keys.sort_unstable();
    keys.dedup();
    GoldenReport {
        tables_matched: tables.iter().filter(|t| t.diffs.is_empty()).count(),
        tables,
        cells_checked,
        distinct_cells: keys.len(),
    }
}
