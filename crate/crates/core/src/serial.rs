//! JSON cache files for structure constants.
//!
//! Rationals are written as "num/den" strings in lowest terms and only the
//! pairs i < j with a nonzero bracket are listed, in increasing (i, j)
//! order, so equal algebras serialize to identical bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cda::AlgLabel;
use crate::exactla::{format_rational, parse_rational};
use crate::titslie::{BasisLabel, LieAlgebra, Provenance, SparseVec, BRACKET_SCALING};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SerialError {
    #[error("bad cache format: {0}")]
    BadFormat(String),
    #[error("cache format version {found}, expected {expected}")]
    VersionMismatch { found: u64, expected: u32 },
    #[error("io: {0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheHeader {
    pub format_version: u32,
    pub a: Option<AlgLabel>,
    pub b: Option<AlgLabel>,
    pub epsilon: Option<i8>,
    pub dim: usize,
    pub bracket_scaling: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheFile {
    pub header: CacheHeader,
    pub basis_labels: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
}

impl CacheFile {
    pub fn from_lie(l: &LieAlgebra) -> CacheFile {
        let p = l.provenance();
        CacheFile {
            header: CacheHeader {
                format_version: FORMAT_VERSION,
                a: p.map(|p| p.a),
                b: p.map(|p| p.b),
                epsilon: p.map(|p| p.epsilon),
                dim: l.dim(),
                bracket_scaling: BRACKET_SCALING.to_string(),
            },
            basis_labels: l.labels().iter().map(|b| b.to_string()).collect(),
            brackets: l
                .entries()
                .map(|(i, j, v)| (i, j, v.iter().map(|(k, c)| (*k, format_rational(c))).collect()))
                .collect(),
        }
    }

    pub fn to_lie(&self) -> Result<LieAlgebra, SerialError> {
        let h = &self.header;
        if h.format_version != FORMAT_VERSION {
            return Err(SerialError::VersionMismatch { found: h.format_version as u64, expected: FORMAT_VERSION });
        }
        if h.bracket_scaling != BRACKET_SCALING {
            return Err(bad(format!("bracket scaling {}", h.bracket_scaling)));
        }
        if self.basis_labels.len() != h.dim {
            return Err(bad("label count differs from dim"));
        }
        let labels = self
            .basis_labels
            .iter()
            .map(|s| s.parse::<BasisLabel>().map_err(|_| bad(format!("basis label {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let provenance = match (h.a, h.b, h.epsilon) {
            (Some(a), Some(b), Some(epsilon)) => Some(Provenance { a, b, epsilon }),
            (None, None, None) => None,
            _ => return Err(bad("partial provenance")),
        };
        let mut prev: Option<(usize, usize)> = None;
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (i, j, v) in &self.brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= h.dim || prev.is_some_and(|p| p >= (i, j)) || v.is_empty() {
                return Err(bad(format!("bracket entry ({i}, {j})")));
            }
            prev = Some((i, j));
            let mut sv: SparseVec = Vec::with_capacity(v.len());
            for (k, s) in v {
                let q = parse_rational(s).filter(|q| format_rational(q) == *s && !num_traits::Zero::is_zero(q));
                let q = q.ok_or_else(|| bad(format!("coefficient {s:?}")))?;
                if *k >= h.dim || sv.last().is_some_and(|(p, _)| p >= k) {
                    return Err(bad(format!("coefficient index {k} in ({i}, {j})")));
                }
                sv.push((*k, q));
            }
            entries.push((i, j, sv));
        }
        LieAlgebra::from_entries(labels, provenance, entries).map_err(|e| bad(e.to_string()))
    }
}

fn bad(msg: impl Into<String>) -> SerialError {
    SerialError::BadFormat(msg.into())
}

pub fn serialize_lie(l: &LieAlgebra) -> Vec<u8> {
    let mut out = serde_json::to_vec(&CacheFile::from_lie(l)).expect("cache files serialize");
    out.push(b'\n');
    out
}

pub fn parse_lie(bytes: &[u8]) -> Result<LieAlgebra, SerialError> {
    // The version is checked before the strict parse so that a future
    // schema change still reports VersionMismatch rather than BadFormat.
    let v: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| bad(e.to_string()))?;
    if let Some(found) = v.pointer("/header/format_version").and_then(|x| x.as_u64()) {
        if found != FORMAT_VERSION as u64 {
            return Err(SerialError::VersionMismatch { found, expected: FORMAT_VERSION });
        }
    }
    let f: CacheFile = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
    f.to_lie()
}

pub fn read_lie(path: &Path) -> Result<LieAlgebra, SerialError> {
    parse_lie(&fs::read(path).map_err(|e| SerialError::Io(e.to_string()))?)
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.{:?}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("cache"),
        std::process::id(),
        std::thread::current().id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cda::CompAlgebra;
    use crate::jordan::make_jordan;
    use crate::titslie::build_tits;

    fn cell(a: AlgLabel, b: AlgLabel, eps: i8) -> LieAlgebra {
        build_tits(&CompAlgebra::from_label(a), &make_jordan(&CompAlgebra::from_label(b), eps).unwrap()).unwrap()
    }

    #[test]
    fn round_trip_small() {
        let l = cell(AlgLabel::R, AlgLabel::R, 1);
        let bytes = serialize_lie(&l);
        let back = parse_lie(&bytes).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.provenance(), l.provenance());
        assert_eq!(serialize_lie(&back), bytes);
    }

    #[test]
    fn round_trip_with_fractions() {
        let l = cell(AlgLabel::H, AlgLabel::CS, -1);
        let bytes = serialize_lie(&l);
        let f: CacheFile = serde_json::from_slice(&bytes).unwrap();
        assert!(f.brackets.iter().flat_map(|b| &b.2).any(|(_, c)| !c.ends_with("/1")));
        let back = parse_lie(&bytes).unwrap();
        assert_eq!(back, l);
        assert_eq!(serialize_lie(&back), bytes);
    }

    #[test]
    fn truncated_is_bad_format() {
        let bytes = serialize_lie(&cell(AlgLabel::C, AlgLabel::R, 1));
        let cut = &bytes[..bytes.len() / 2];
        assert!(matches!(parse_lie(cut), Err(SerialError::BadFormat(_))));
    }

    #[test]
    fn version_mismatch() {
        let s = String::from_utf8(serialize_lie(&cell(AlgLabel::R, AlgLabel::R, 1))).unwrap();
        let s = s.replace("\"format_version\":1", "\"format_version\":2");
        assert_eq!(parse_lie(s.as_bytes()).unwrap_err(), SerialError::VersionMismatch { found: 2, expected: 1 });
    }

    #[test]
    fn unknown_and_trailing_fields_rejected() {
        let s = String::from_utf8(serialize_lie(&cell(AlgLabel::R, AlgLabel::R, 1))).unwrap();
        let extra = s.replacen("{\"header\":", "{\"extra\":0,\"header\":", 1);
        assert!(matches!(parse_lie(extra.as_bytes()), Err(SerialError::BadFormat(_))));
        let trailing = format!("{}{{}}", s.trim_end());
        assert!(matches!(parse_lie(trailing.as_bytes()), Err(SerialError::BadFormat(_))));
    }

    #[test]
    fn non_canonical_entries_rejected() {
        let s = String::from_utf8(serialize_lie(&cell(AlgLabel::R, AlgLabel::R, 1))).unwrap();
        let f: CacheFile = serde_json::from_str(&s).unwrap();
        let mut swapped = f.clone();
        let (i, j, v) = swapped.brackets[0].clone();
        swapped.brackets[0] = (j, i, v);
        assert!(matches!(swapped.to_lie(), Err(SerialError::BadFormat(_))));
        let mut unreduced = f.clone();
        let c = &mut unreduced.brackets[0].2[0].1;
        *c = c.replace("/1", "/2").replace('1', "2");
        assert!(matches!(unreduced.to_lie(), Err(SerialError::BadFormat(_))));
    }

    #[test]
    fn atomic_write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub").join("x.json");
        let l = cell(AlgLabel::C, AlgLabel::C, -1);
        write_atomic(&p, &serialize_lie(&l)).unwrap();
        assert_eq!(read_lie(&p).unwrap(), l);
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
