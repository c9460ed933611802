use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cda::{AlgLabel, CompAlgebra};
use crate::jordan::make_jordan;
use crate::liean::{analyze, AnalysisResult, Catalog};
use crate::serial::{read_lie, serialize_lie, write_atomic};
use crate::titslie::{LieAlgebra, TitsConstruction};

use super::Family;

/// One (𝔸, 𝔹, ε) construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub a: AlgLabel,
    pub b: AlgLabel,
    pub family: Family,
}

impl CellKey {
    pub fn new(family: Family, a: AlgLabel, b: AlgLabel) -> Self {
        CellKey { a, b, family }
    }

    pub fn file_name(&self) -> String {
        format!("{}__{}__{}.json", self.a.as_str(), self.b.as_str(), self.family.as_str())
    }

    pub fn construction(&self) -> Result<TitsConstruction, String> {
        let j = make_jordan(&CompAlgebra::from_label(self.b), self.family.epsilon()).map_err(|e| e.to_string())?;
        TitsConstruction::new(&CompAlgebra::from_label(self.a), &j).map_err(|e| e.to_string())
    }
}

#[derive(Debug)]
pub struct Cell {
    pub key: CellKey,
    pub lie: Result<LieAlgebra, String>,
    pub analysis: Result<AnalysisResult, String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub requests: usize,
    pub built: usize,
    pub loaded: usize,
}

/// Builds each distinct cell once and hands out shared results. With a
/// directory attached, structure constants are also persisted there.
pub struct CellStore {
    catalog: Catalog,
    dir: Option<PathBuf>,
    cells: Mutex<HashMap<CellKey, Arc<OnceLock<Arc<Cell>>>>>,
    requests: AtomicUsize,
    built: AtomicUsize,
    loaded: AtomicUsize,
}

impl Default for CellStore {
    fn default() -> Self {
        Self::new()
    }
}

impl CellStore {
    pub fn new() -> Self {
        CellStore {
            catalog: Catalog::builtin(),
            dir: None,
            cells: Mutex::new(HashMap::new()),
            requests: AtomicUsize::new(0),
            built: AtomicUsize::new(0),
            loaded: AtomicUsize::new(0),
        }
    }

    pub fn with_dir(dir: impl AsRef<Path>) -> Self {
        CellStore { dir: Some(dir.as_ref().to_path_buf()), ..Self::new() }
    }

    /// MS_CACHE_DIR if set, otherwise `.magicsq-cache` in the working directory.
    pub fn from_env() -> Self {
        Self::with_dir(default_cache_dir())
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get(&self, key: CellKey) -> Arc<Cell> {
        self.requests.fetch_add(1, Ordering::Relaxed);
        let slot = self.cells.lock().expect("cell map").entry(key).or_default().clone();
        slot.get_or_init(|| Arc::new(self.compute(key))).clone()
    }

    pub fn distinct(&self) -> usize {
        self.cells.lock().expect("cell map").len()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            requests: self.requests.load(Ordering::Relaxed),
            built: self.built.load(Ordering::Relaxed),
            loaded: self.loaded.load(Ordering::Relaxed),
        }
    }

    fn compute(&self, key: CellKey) -> Cell {
        let lie = self.load_or_build(key);
        let analysis = match &lie {
            Ok(l) => analyze(l, &self.catalog).map_err(|e| e.to_string()),
            Err(e) => Err(e.clone()),
        };
        Cell { key, lie, analysis }
    }

    fn load_or_build(&self, key: CellKey) -> Result<LieAlgebra, String> {
        let path = self.dir.as_ref().map(|d| d.join(key.file_name()));
        if let Some(p) = path.as_ref().filter(|p| p.exists()) {
            // A corrupt or stale file is rebuilt and overwritten.
            if let Ok(l) = read_lie(p) {
                if l.provenance().map(|p| (p.a, p.b, p.epsilon)) == Some((key.a, key.b, key.family.epsilon())) {
                    self.loaded.fetch_add(1, Ordering::Relaxed);
                    return Ok(l);
                }
            }
        }
        let l = key.construction()?.lie;
        self.built.fetch_add(1, Ordering::Relaxed);
        if let Some(p) = path {
            // Persisting is best effort; the in-memory result is authoritative.
            let _ = write_atomic(&p, &serialize_lie(&l));
        }
        Ok(l)
    }
}

pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("MS_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".magicsq-cache"))
}
