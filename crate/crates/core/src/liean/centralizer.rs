use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{inertia, nullspace_rows, Echelon, Inertia, MatrixQ, Rational, SparseRow};
use crate::titslie::LieAlgebra;

use super::killing::killing;
use super::sub::{restrict, to_sparse};
use super::LieanError;

#[derive(Clone, Debug)]
pub struct Centralizer {
    pub algebra: LieAlgebra,
    /// Basis in the coordinates of the ambient algebra.
    pub basis: Vec<Vec<Rational>>,
    /// Inertia of the ambient Killing form restricted to the centralizer.
    pub killing_inertia: Inertia,
}

impl Centralizer {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn chi(&self) -> i64 {
        self.killing_inertia.signature()
    }
}

/// Checks that the span of `vectors` is closed under the bracket; returns
/// a reduced basis.
pub fn closed_basis(l: &LieAlgebra, vectors: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LieanError> {
    let n = l.dim();
    let mut ech = Echelon::new(n);
    for v in vectors {
        ech.insert(&to_sparse(v));
    }
    let rref = ech.into_rref();
    let basis: Vec<Vec<Rational>> = rref
        .rows
        .iter()
        .map(|r| {
            let mut d = vec![Rational::zero(); n];
            for (k, c) in r {
                d[*k] = c.clone();
            }
            d
        })
        .collect();
    // Membership is a single sweep over the pivots of the reduced rows.
    let in_span = |mut w: Vec<Rational>| {
        for (p, row) in rref.pivots.iter().zip(&rref.rows) {
            if w[*p].is_zero() {
                continue;
            }
            let f = &w[*p] / &row[0].1;
            for (k, c) in row {
                w[*k] -= &f * c;
            }
        }
        w.iter().all(|x| x.is_zero())
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let br = l.bracket(&basis[i], &basis[j]).map_err(|_| LieanError::NotSubalgebra)?;
            if !in_span(br) {
                return Err(LieanError::NotSubalgebra);
            }
        }
    }
    Ok(basis)
}

const GENERIC_TRIES: usize = 3;

/// {x : [x, s] = 0 for all s in the subspace}, with induced brackets.
///
/// Two generic elements of the subspace almost always generate it as a Lie
/// algebra, so the kernel is first computed against a few random
/// combinations (one kernel with a single element has large entries and is
/// slow to lift). Candidates are verified against every basis vector, and
/// the full system is the fallback.
pub fn centralizer(l: &LieAlgebra, subspace: &[Vec<Rational>]) -> Result<Centralizer, LieanError> {
    let n = l.dim();
    let basis = closed_basis(l, subspace)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_ffee);
    let mut rows: Vec<SparseRow<Rational>> = Vec::new();
    let mut cand = Vec::new();
    for attempt in 0..=GENERIC_TRIES {
        if attempt < GENERIC_TRIES {
            for _ in 0..if attempt == 0 { 2 } else { 1 } {
                let mut s = vec![Rational::zero(); n];
                for b in &basis {
                    let k = Rational::from_integer(rng.gen_range(-7i64..=7).into());
                    for (x, y) in s.iter_mut().zip(b) {
                        *x += &k * y;
                    }
                }
                rows.extend(bracket_rows(l, &s));
            }
        } else {
            for b in &basis {
                rows.extend(bracket_rows(l, b));
            }
        }
        cand = nullspace_rows(&rows, n);
        let commutes = |c: &Vec<Rational>| basis.iter().all(|b| l.bracket(c, b).expect("dims").iter().all(|v| v.is_zero()));
        if cand.iter().all(commutes) {
            break;
        }
    }
    let algebra = restrict(l, &cand)?;
    let b = killing(l);
    let k = cand.len();
    let bc: Vec<Vec<Rational>> = cand.iter().map(|c| b.mul_vec(c)).collect();
    let mut g = MatrixQ::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let v: Rational = cand[i].iter().zip(&bc[j]).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum();
            g.set(i, j, v);
        }
    }
    let killing_inertia = inertia(&g).expect("restriction of a symmetric form");
    Ok(Centralizer { algebra, basis: cand, killing_inertia })
}

/// Rows of the linear map x ↦ [x, s].
fn bracket_rows(l: &LieAlgebra, s: &[Rational]) -> Vec<SparseRow<Rational>> {
    let n = l.dim();
    let mut rows: Vec<SparseRow<Rational>> = vec![Vec::new(); n];
    for c in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[c] = Rational::from_integer(1.into());
        for (r, v) in l.bracket(&e, s).expect("dims").into_iter().enumerate() {
            if !v.is_zero() {
                rows[r].push((c, v));
            }
        }
    }
    rows.retain(|r| !r.is_empty());
    rows
}
