use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cda::AlgLabel;
use crate::exactla::{MatrixQ, Rational};

use super::TitsError;

/// Where a basis vector came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    DerA(usize),
    DerJ(usize),
    /// Imaginary unit index (1-based, as in the composition algebra) and
    /// traceless Jordan basis index.
    Tensor(usize, usize),
    /// L_t for the traceless basis element t (reduced structure algebra).
    Lop(usize),
    /// Basis vector of a derived subalgebra (ideal, centralizer, ...).
    Sub(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::DerA(k) => write!(f, "DerA:{k}"),
            BasisLabel::DerJ(k) => write!(f, "DerJ:{k}"),
            BasisLabel::Tensor(a, q) => write!(f, "T:{a}:{q}"),
            BasisLabel::Lop(q) => write!(f, "L:{q}"),
            BasisLabel::Sub(k) => write!(f, "V:{k}"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| parts.get(i).and_then(|p| p.parse::<usize>().ok()).ok_or(());
        match (parts[0], parts.len()) {
            ("DerA", 2) => Ok(BasisLabel::DerA(num(1)?)),
            ("DerJ", 2) => Ok(BasisLabel::DerJ(num(1)?)),
            ("T", 3) => Ok(BasisLabel::Tensor(num(1)?, num(2)?)),
            ("L", 2) => Ok(BasisLabel::Lop(num(1)?)),
            ("V", 2) => Ok(BasisLabel::Sub(num(1)?)),
            _ => Err(()),
        }
    }
}

/// The (row algebra, Jordan base, ε) triple a cell was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Provenance {
    pub a: AlgLabel,
    pub b: AlgLabel,
    pub epsilon: i8,
}

pub type SparseVec = Vec<(usize, Rational)>;

/// Structure constants scaled to machine integers: `table[i*dim + j]` holds
/// scale·[e_i, e_j] for every ordered pair.
#[derive(Debug)]
pub struct IntForm {
    pub scale: i64,
    pub table: Vec<Vec<(u32, i64)>>,
}

/// A finite-dimensional Lie algebra given by structure constants on a
/// labelled basis. Only pairs i < j are stored.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<BasisLabel>,
    sc: Vec<SparseVec>,
    provenance: Option<Provenance>,
    killing: Arc<OnceLock<MatrixQ>>,
    int_form: Arc<OnceLock<Option<IntForm>>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.labels == o.labels && self.sc == o.sc && self.provenance == o.provenance
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("dim", &self.dim)
            .field("provenance", &self.provenance)
            .field("nonzero_pairs", &self.sc.iter().filter(|v| !v.is_empty()).count())
            .finish()
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl LieAlgebra {
    /// Builds from a bracket on basis pairs; `f(i, j)` is called for i < j.
    pub fn from_fn<F>(labels: Vec<BasisLabel>, provenance: Option<Provenance>, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> SparseVec,
    {
        let dim = labels.len();
        let mut sc = vec![Vec::new(); dim * dim.saturating_sub(1) / 2];
        for j in 0..dim {
            for i in 0..j {
                let mut v = f(i, j);
                v.retain(|(_, c)| !c.is_zero());
                v.sort_by_key(|e| e.0);
                sc[pair_index(i, j)] = v;
            }
        }
        Self::from_parts(labels, provenance, sc)
    }

    fn from_parts(labels: Vec<BasisLabel>, provenance: Option<Provenance>, sc: Vec<SparseVec>) -> Self {
        LieAlgebra { dim: labels.len(), labels, sc, provenance, killing: Default::default(), int_form: Default::default() }
    }

    /// From explicit `(i, j, [(k, c)])` entries with i < j.
    pub fn from_entries(labels: Vec<BasisLabel>, provenance: Option<Provenance>, entries: Vec<(usize, usize, SparseVec)>) -> Result<Self, TitsError> {
        let dim = labels.len();
        let mut sc = vec![Vec::new(); dim * dim.saturating_sub(1) / 2];
        for (i, j, v) in entries {
            if i >= j || j >= dim || v.iter().any(|(k, c)| *k >= dim || c.is_zero()) {
                return Err(TitsError::BadEntry(i, j));
            }
            if v.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(TitsError::BadEntry(i, j));
            }
            sc[pair_index(i, j)] = v;
        }
        Ok(Self::from_parts(labels, provenance, sc))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn with_provenance(mut self, p: Option<Provenance>) -> Self {
        self.provenance = p;
        self
    }

    /// [e_i, e_j] for i < j.
    pub fn sc(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sc[pair_index(i, j)]
    }

    /// [e_i, e_j] for any ordered pair, with sign.
    pub fn basis_bracket(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.sc(i, j).to_vec(),
            Equal => Vec::new(),
            Greater => self.sc(j, i).iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// All stored entries in (i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rational)])> + '_ {
        (0..self.dim).flat_map(move |i| (i + 1..self.dim).map(move |j| (i, j))).filter_map(move |(i, j)| {
            let v = self.sc(i, j);
            (!v.is_empty()).then_some((i, j, v))
        })
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>, TitsError> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(TitsError::DimMismatch);
        }
        let mut out = vec![Rational::zero(); self.dim];
        let nu: Vec<usize> = (0..self.dim).filter(|&i| !u[i].is_zero()).collect();
        let nv: Vec<usize> = (0..self.dim).filter(|&i| !v[i].is_zero()).collect();
        for &i in &nu {
            for &j in &nv {
                if i == j {
                    continue;
                }
                let (lo, hi, sign) = if i < j { (i, j, true) } else { (j, i, false) };
                let entry = self.sc(lo, hi);
                if entry.is_empty() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for (k, c) in entry {
                    if sign {
                        out[*k] += &f * c;
                    } else {
                        out[*k] -= &f * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of ad_x: column l is [x, e_l].
    pub fn ad(&self, x: &[Rational]) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.dim, self.dim);
        for l in 0..self.dim {
            let mut e = vec![Rational::zero(); self.dim];
            e[l] = Rational::one();
            for (r, v) in self.bracket(x, &e).expect("dimensions agree").into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, l, v);
                }
            }
        }
        m
    }

    pub(crate) fn killing_cell(&self) -> &OnceLock<MatrixQ> {
        &self.killing
    }

    /// Integer-scaled structure constants, when the scale and all scaled
    /// entries fit in an i64.
    pub fn int_form(&self) -> Option<&IntForm> {
        self.int_form
            .get_or_init(|| {
                let l = self.sc.iter().flatten().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
                let scale = l.to_i64()?;
                let n = self.dim;
                let mut table = vec![Vec::new(); n * n];
                for j in 0..n {
                    for i in 0..j {
                        let v = self.sc(i, j);
                        if v.is_empty() {
                            continue;
                        }
                        let mut fwd = Vec::with_capacity(v.len());
                        for (k, c) in v {
                            let x = (c.numer() * (&l / c.denom())).to_i64()?;
                            fwd.push((*k as u32, x));
                        }
                        table[j * n + i] = fwd.iter().map(|&(k, x)| (k, -x)).collect();
                        table[i * n + j] = fwd;
                    }
                }
                Some(IntForm { scale, table })
            })
            .as_ref()
    }
}
