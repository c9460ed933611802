use serde::{Deserialize, Serialize};

use super::{Family, SequenceTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenTable {
    pub table: u32,
    pub family: Family,
    pub rows: SequenceTag,
    pub cols: SequenceTag,
    pub symmetric: bool,
    pub names: [[String; 4]; 4],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenTables {
    pub format_version: u32,
    pub tables: Vec<GoldenTable>,
}

/// Where the expected names for a (family, rows, cols) square come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub table: u32,
    /// True when read off the transposed table.
    pub transposed: bool,
    pub names: [[String; 4]; 4],
}

const BUILTIN: &str = include_str!("../../data/golden_tables.json");

impl GoldenTables {
    pub fn builtin() -> GoldenTables {
        serde_json::from_str(BUILTIN).expect("shipped golden tables parse")
    }

    pub fn table(&self, family: Family, rows: SequenceTag, cols: SequenceTag) -> Option<&GoldenTable> {
        self.tables.iter().find(|t| t.family == family && t.rows == rows && t.cols == cols)
    }

    /// Expected name grid, using L(𝔸,𝔹) = L(𝔹,𝔸) for the squares that are
    /// listed only through their transpose.
    pub fn expected(&self, family: Family, rows: SequenceTag, cols: SequenceTag) -> Option<Expected> {
        if let Some(t) = self.table(family, rows, cols) {
            return Some(Expected { table: t.table, transposed: false, names: t.names.clone() });
        }
        let t = self.table(family, cols, rows)?;
        let names = std::array::from_fn(|i| std::array::from_fn(|j| t.names[j][i].clone()));
        Some(Expected { table: t.table, transposed: true, names })
    }
}
