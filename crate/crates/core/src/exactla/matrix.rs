use std::fmt;

use num_traits::Zero;

use super::field::{rint, Rational};

/// Below this size matrices are stored densely.
pub const DENSE_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    Dense(Vec<Rational>),
    /// Per row, `(col, value)` sorted by column, values nonzero.
    Sparse(Vec<Vec<(usize, Rational)>>),
}

/// A rational matrix; dense below 64×64, row-sparse above.
#[derive(Clone)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    store: Storage,
}

impl PartialEq for MatrixQ {
    fn eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        (0..self.rows).all(|r| self.row_entries(r) == other.row_entries(r))
    }
}

impl Eq for MatrixQ {}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let store = if rows.max(cols) < DENSE_LIMIT {
            Storage::Dense(vec![Rational::zero(); rows * cols])
        } else {
            Storage::Sparse(vec![Vec::new(); rows])
        };
        MatrixQ { rows, cols, store }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rint(1));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| rint(v)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn diag(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, Storage::Dense(_))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols);
        match &self.store {
            Storage::Dense(v) => v[r * self.cols + c].clone(),
            Storage::Sparse(rows) => match rows[r].binary_search_by_key(&c, |e| e.0) {
                Ok(i) => rows[r][i].1.clone(),
                Err(_) => Rational::zero(),
            },
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols);
        match &mut self.store {
            Storage::Dense(d) => d[r * self.cols + c] = v,
            Storage::Sparse(rows) => {
                let row = &mut rows[r];
                match row.binary_search_by_key(&c, |e| e.0) {
                    Ok(i) if v.is_zero() => {
                        row.remove(i);
                    }
                    Ok(i) => row[i].1 = v,
                    Err(_) if v.is_zero() => {}
                    Err(i) => row.insert(i, (c, v)),
                }
            }
        }
    }

    /// Nonzero entries of row `r` in column order.
    pub fn row_entries(&self, r: usize) -> Vec<(usize, Rational)> {
        match &self.store {
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
            Storage::Sparse(rows) => rows[r].clone(),
        }
    }

    pub fn row_dense(&self, r: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.cols];
        for (c, v) in self.row_entries(r) {
            out[c] = v;
        }
        out
    }

    pub fn col_dense(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row_dense(r)).collect()
    }

    pub fn sparse_rows(&self) -> Vec<Vec<(usize, Rational)>> {
        (0..self.rows).map(|r| self.row_entries(r)).collect()
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn flatten(&self) -> Vec<Rational> {
        self.to_rows().into_iter().flatten().collect()
    }

    pub fn unflatten(rows: usize, cols: usize, v: &[Rational]) -> Self {
        assert_eq!(v.len(), rows * cols);
        let rs: Vec<Vec<Rational>> = v.chunks(cols.max(1)).map(|c| c.to_vec()).collect();
        if rows == 0 {
            return Self::zeros(0, cols);
        }
        Self::from_rows(&rs)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|r| self.row_entries(r).is_empty())
    }

    pub fn nnz(&self) -> usize {
        (0..self.rows).map(|r| self.row_entries(r).len()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for (c, v) in self.row_entries(r) {
                t.set(c, r, v);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, v) in self.row_entries(r) {
                    if !x[c].is_zero() {
                        acc += v * &x[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let rhs_rows = rhs.sparse_rows();
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let mut acc = vec![Rational::zero(); rhs.cols];
            for (k, a) in self.row_entries(r) {
                for (c, b) in &rhs_rows[k] {
                    acc[*c] += &a * b;
                }
            }
            for (c, v) in acc.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &MatrixQ) -> MatrixQ {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &MatrixQ) -> MatrixQ {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &MatrixQ, negate: bool) -> MatrixQ {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut out = self.clone();
        for r in 0..rhs.rows {
            for (c, v) in rhs.row_entries(r) {
                let cur = out.get(r, c);
                out.set(r, c, if negate { cur - v } else { cur + v });
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> MatrixQ {
        let mut out = Self::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for r in 0..self.rows {
            for (c, v) in self.row_entries(r) {
                out.set(r, c, v * s);
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &MatrixQ) -> MatrixQ {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn storage_switches_at_limit() {
        assert!(MatrixQ::zeros(63, 63).is_dense());
        assert!(!MatrixQ::zeros(64, 3).is_dense());
    }

    #[test]
    fn sparse_and_dense_agree() {
        let mut a = MatrixQ::zeros(3, 3);
        let mut b = MatrixQ::zeros(70, 70);
        for (r, c, v) in [(0, 1, rat(1, 2)), (2, 2, rat(-3, 1)), (1, 0, rat(5, 7))] {
            a.set(r, c, v.clone());
            b.set(r, c, v);
        }
        b.set(0, 1, Rational::zero());
        a.set(0, 1, Rational::zero());
        assert_eq!(b.nnz(), 2);
        assert_eq!(a.get(1, 0), b.get(1, 0));
        let sq = a.mul(&a);
        assert_eq!(sq.get(2, 2), rint(9));
    }

    #[test]
    fn commutator_of_commuting_is_zero() {
        let d = MatrixQ::diag(&[rint(1), rint(2)]);
        assert!(d.commutator(&MatrixQ::identity(2)).is_zero());
    }
}
