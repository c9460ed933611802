use serde::{Deserialize, Serialize};

use crate::cda::{find_embedding, AlgLabel, CompAlgebra};
use crate::exactla::{rint, Rational};
use crate::liean::{centralizer, closed_basis, LieanError};
use crate::titslie::BasisLabel;

use super::{row_sequence, CellKey, CellStore, Family, SequenceTag, SquaresError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub family: Family,
    pub row_tag: SequenceTag,
    pub col: AlgLabel,
    pub step: usize,
    pub sub: AlgLabel,
    pub sup: AlgLabel,
    /// Images of the basis of `sub` as signed basis units of `sup`.
    pub inclusion: Vec<(i8, usize)>,
    pub closed: bool,
    pub dim_ok: bool,
    pub sub_dim: usize,
    pub expected_dim: usize,
    pub commutant_dim: Option<usize>,
    pub commutant_chi: Option<i64>,
    pub expected_commutant: Option<(usize, i64)>,
    pub flags: Vec<String>,
}

impl EmbeddingReport {
    pub fn commutant(&self) -> Option<(usize, i64)> {
        Some((self.commutant_dim?, self.commutant_chi?))
    }

    pub fn ok(&self) -> bool {
        self.closed && self.dim_ok && self.expected_commutant.is_none_or(|e| self.commutant() == Some(e))
    }
}

/// Commuting factor expected for the row step k → k+1: U(1) and SU(2) for
/// division rows, SO(1,1) and SU(1,1) for split rows, as (dim, χ).
pub fn expected_commutant(row_tag: SequenceTag, step: usize) -> Option<(usize, i64)> {
    match (row_tag, step) {
        (SequenceTag::Plain, 2) => Some((1, -1)),
        (SequenceTag::Plain, 3) => Some((3, -3)),
        (SequenceTag::Split, 2) => Some((1, 1)),
        (SequenceTag::Split, 3) => Some((3, 1)),
        _ => None,
    }
}

/// Locates L(𝔸_k, 𝔍) inside L(𝔸_{k+1}, 𝔍) as
/// span{D_{x,y} : x, y ∈ 𝔸′_k} + Der(𝔍) + 𝔸′_k ⊗ 𝔍′ and computes its
/// commutant.
pub fn embed_row_step(store: &CellStore, family: Family, col: AlgLabel, step: usize, row_tag: SequenceTag) -> Result<EmbeddingReport, SquaresError> {
    if !(1..=3).contains(&step) {
        return Err(SquaresError::BadStep(step));
    }
    let seq = row_sequence(row_tag);
    let (sub, sup) = (seq[step - 1], seq[step]);
    let sub_alg = CompAlgebra::from_label(sub);
    let mut tc = CellKey::new(family, sup, col).construction().map_err(SquaresError::Construction)?;
    let big = store.get(CellKey::new(family, sup, col));
    let l = big.lie.as_ref().map_err(|e| SquaresError::Construction(e.clone()))?;
    let expected_dim = store.get(CellKey::new(family, sub, col)).lie.as_ref().map_err(|e| SquaresError::Construction(e.clone()))?.dim();
    let mut report = EmbeddingReport {
        family,
        row_tag,
        col,
        step,
        sub,
        sup,
        inclusion: Vec::new(),
        closed: false,
        dim_ok: false,
        sub_dim: 0,
        expected_dim,
        commutant_dim: None,
        commutant_chi: None,
        expected_commutant: expected_commutant(row_tag, step),
        flags: Vec::new(),
    };
    let Some(inclusion) = find_embedding(&sub_alg, tc.a.table()) else {
        report.flags.push("NO_INCLUSION".into());
        return Ok(report);
    };
    let n = l.dim();
    let unit = |i: usize, s: i64| {
        let mut v = vec![rint(0); n];
        v[i] = rint(s);
        v
    };
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    let sup_dim = tc.a.dim();
    let image = |x: usize| {
        let (s, k) = inclusion[x];
        let mut v = vec![rint(0); sup_dim];
        v[k] = rint(s as i64);
        v
    };
    for x in 1..sub_alg.dim() {
        for y in x + 1..sub_alg.dim() {
            let d = tc.der_a_vector(&image(x), &image(y)).map_err(|e| SquaresError::Construction(e.to_string()))?;
            gens.push(d);
        }
    }
    for (i, b) in l.labels().iter().enumerate() {
        if matches!(b, BasisLabel::DerJ(_)) {
            gens.push(unit(i, 1));
        }
    }
    for &(s, k) in &inclusion[1..] {
        for q in 0..tc.n_traceless() {
            gens.push(unit(tc.tensor_index(k, q), s as i64));
        }
    }
    report.inclusion = inclusion;
    let basis = match closed_basis(l, &gens) {
        Ok(b) => b,
        Err(LieanError::NotSubalgebra) => {
            report.flags.push("NOT_CLOSED".into());
            return Ok(report);
        }
        Err(e) => return Err(SquaresError::Construction(e.to_string())),
    };
    report.closed = true;
    report.sub_dim = basis.len();
    report.dim_ok = basis.len() == expected_dim;
    if !report.dim_ok {
        report.flags.push("DIM_MISMATCH".into());
    }
    let c = centralizer(l, &basis).map_err(|e| SquaresError::Construction(e.to_string()))?;
    report.commutant_dim = Some(c.dim());
    report.commutant_chi = Some(c.chi());
    Ok(report)
}
