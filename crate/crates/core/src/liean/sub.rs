use num_traits::Zero;

use crate::exactla::{Echelon, Rational, SparseRow, SpanSolver};
use crate::titslie::{BasisLabel, LieAlgebra};

use super::LieanError;

pub fn to_sparse(v: &[Rational]) -> SparseRow<Rational> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// Reduced basis of the span of `vectors`.
pub fn span_basis(n: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new(n);
    for v in vectors {
        e.insert(&to_sparse(v));
    }
    e.into_rref()
        .rows
        .into_iter()
        .map(|r| {
            let mut d = vec![Rational::zero(); n];
            for (k, c) in r {
                d[k] = c;
            }
            d
        })
        .collect()
}

/// The subalgebra spanned by `basis` (assumed independent and closed),
/// with brackets re-expressed in that basis.
pub fn restrict(l: &LieAlgebra, basis: &[Vec<Rational>]) -> Result<LieAlgebra, LieanError> {
    let mut s = SpanSolver::new(l.dim(), basis).map_err(|_| LieanError::NotSubalgebra)?;
    let labels: Vec<BasisLabel> = (0..basis.len()).map(BasisLabel::Sub).collect();
    let mut err = None;
    let sub = LieAlgebra::from_fn(labels, None, |i, j| {
        let br = l.bracket(&basis[i], &basis[j]).expect("dimensions agree");
        match s.solve(&br) {
            Ok(c) => c.into_iter().enumerate().collect(),
            Err(_) => {
                err = Some(LieanError::NotSubalgebra);
                Vec::new()
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(sub),
    }
}
