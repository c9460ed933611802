use num_traits::Zero;

use super::elim::{Echelon, SparseRow};
use super::field::{Field, Rational};
use super::LinAlgError;

/// Expresses vectors in a fixed independent basis. The basis is reduced once
/// with a tracked transform; each query is a single reduction pass.
#[derive(Clone, Debug)]
pub struct SpanSolver<F: Field = Rational> {
    n: usize,
    k: usize,
    ech: Echelon<F>,
}

impl<F: Field> SpanSolver<F> {
    pub fn new(n: usize, basis: &[Vec<F>]) -> Result<Self, LinAlgError> {
        let k = basis.len();
        let mut ech = Echelon::new(n + k);
        for (i, b) in basis.iter().enumerate() {
            if b.len() != n {
                return Err(LinAlgError::LengthMismatch);
            }
            let mut row: SparseRow<F> = b.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect();
            row.push((n + i, F::one()));
            ech.insert(&row);
            if ech.pivot_cols().last().is_some_and(|&p| p >= n) {
                return Err(LinAlgError::DependentBasis);
            }
        }
        Ok(SpanSolver { n, k, ech })
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn solve_sparse(&mut self, target: &[(usize, F)]) -> Result<Vec<F>, LinAlgError> {
        let rem = self.ech.reduce(target);
        let mut coeffs = vec![F::zero(); self.k];
        for (c, v) in rem {
            if c < self.n {
                return Err(LinAlgError::NotInSpan);
            }
            coeffs[c - self.n] = v.neg();
        }
        Ok(coeffs)
    }

    pub fn solve(&mut self, target: &[F]) -> Result<Vec<F>, LinAlgError> {
        if target.len() != self.n {
            return Err(LinAlgError::LengthMismatch);
        }
        let t: SparseRow<F> = target.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect();
        self.solve_sparse(&t)
    }
}

/// Coefficients c with Σ c_i basis_i = target.
pub fn solve_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
    if basis.is_empty() {
        return if target.iter().all(Zero::is_zero) { Ok(vec![]) } else { Err(LinAlgError::NotInSpan) };
    }
    let mut s = SpanSolver::new(target.len(), basis)?;
    s.solve(target)
}
