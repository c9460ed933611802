use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{reconstruct, Field, Rational, Zp, P61, P62A, P62B};
use super::matrix::MatrixQ;

pub type SparseRow<F> = Vec<(usize, F)>;

/// Row echelon form built one row at a time. Stored rows are monic at their
/// pivot and have no entries left of it.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<SparseRow<F>>,
    pivot_row: Vec<Option<usize>>,
    acc: Vec<F>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols], acc: vec![F::zero(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    fn load(&mut self, row: &[(usize, F)]) {
        for (c, v) in row {
            let cur = self.acc[*c].add(v);
            self.acc[*c] = cur;
        }
    }

    fn reduce_acc(&mut self) {
        for c in 0..self.ncols {
            if self.acc[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = self.acc[c].clone();
                for (cc, v) in &self.rows[r] {
                    let mut cur = std::mem::replace(&mut self.acc[*cc], F::zero());
                    cur.sub_mul_assign(&f, v);
                    self.acc[*cc] = cur;
                }
            }
        }
    }

    fn drain_acc(&mut self) -> SparseRow<F> {
        let mut out = Vec::new();
        for c in 0..self.ncols {
            if !self.acc[c].is_zero() {
                out.push((c, std::mem::replace(&mut self.acc[c], F::zero())));
            }
        }
        out
    }

    /// Reduces `row` against the current pivots without inserting it.
    pub fn reduce(&mut self, row: &[(usize, F)]) -> SparseRow<F> {
        self.load(row);
        self.reduce_acc();
        self.drain_acc()
    }

    /// Inserts a row; returns false when it was dependent.
    pub fn insert(&mut self, row: &[(usize, F)]) -> bool {
        let mut rem = self.reduce(row);
        if rem.is_empty() {
            return false;
        }
        let inv = rem[0].1.inv();
        for e in rem.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        let pc = rem[0].0;
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(rem);
        true
    }

    /// Back-substitutes to reduced row echelon form.
    pub fn into_rref(mut self) -> Rref<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        for &i in &order {
            let row = std::mem::take(&mut self.rows[i]);
            let pc = row[0].0;
            self.load(&row);
            for c in pc + 1..self.ncols {
                if self.acc[c].is_zero() {
                    continue;
                }
                if let Some(r) = self.pivot_row[c] {
                    let f = self.acc[c].clone();
                    for (cc, v) in &self.rows[r] {
                        let mut cur = std::mem::replace(&mut self.acc[*cc], F::zero());
                        cur.sub_mul_assign(&f, v);
                        self.acc[*cc] = cur;
                    }
                }
            }
            self.rows[i] = self.drain_acc();
        }
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Rref { ncols: self.ncols, pivots, rows }
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow<F>>,
}

impl<F: Field> Rref<F> {
    pub fn from_rows<'a, I>(ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseRow<F>>,
        F: 'a,
    {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e.into_rref()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical kernel basis: one vector per free column, 1 there.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let free = self.free_cols();
        let mut slot = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut out = vec![vec![F::zero(); self.ncols]; free.len()];
        for (k, &f) in free.iter().enumerate() {
            out[k][f] = F::one();
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, v) in row.iter().skip(1) {
                out[slot[*c]][p] = v.neg();
            }
        }
        out
    }
}

/// Sizes above this go through the modular path first.
const MODULAR_THRESHOLD: usize = 48;

pub fn nullspace(m: &MatrixQ) -> Vec<Vec<Rational>> {
    nullspace_rows(&m.sparse_rows(), m.cols())
}

/// Kernel of a row-sparse rational system, canonicalized as RREF kernel
/// vectors. Large systems are solved modulo primes, lifted by rational
/// reconstruction and then checked exactly; the exact rational elimination
/// is the fallback and the only path for small systems.
pub fn nullspace_rows(rows: &[SparseRow<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    if ncols >= MODULAR_THRESHOLD {
        if let Some(ns) = modular_nullspace(rows, ncols) {
            return ns;
        }
    }
    Rref::from_rows(ncols, rows).nullspace()
}

fn reduce_rows<const P: u64>(rows: &[SparseRow<Rational>]) -> Option<Vec<SparseRow<Zp<P>>>> {
    rows.iter()
        .map(|r| {
            let mut out = Vec::with_capacity(r.len());
            for (c, v) in r {
                let x = Zp::<P>::from_rational(v)?;
                if x.0 != 0 {
                    out.push((*c, x));
                }
            }
            Some(out)
        })
        .collect()
}

fn kernel_mod<const P: u64>(rows: &[SparseRow<Rational>], ncols: usize) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let rr = reduce_rows::<P>(rows)?;
    let rref = Rref::from_rows(ncols, &rr);
    let free = rref.free_cols();
    let ns = rref.nullspace().into_iter().map(|v| v.into_iter().map(|x| x.0).collect()).collect();
    Some((free, ns))
}

fn modular_nullspace(rows: &[SparseRow<Rational>], ncols: usize) -> Option<Vec<Vec<Rational>>> {
    let runs: [fn(&[SparseRow<Rational>], usize) -> Option<(Vec<usize>, Vec<Vec<u64>>)>; 3] =
        [kernel_mod::<P61>, kernel_mod::<P62A>, kernel_mod::<P62B>];
    let primes = [P61, P62A, P62B];
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut free_ref: Option<Vec<usize>> = None;
    for (run, &p) in runs.iter().zip(&primes) {
        let (free, ns) = run(rows, ncols)?;
        match &free_ref {
            None => {
                free_ref = Some(free);
                residues = ns.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
                modulus = BigInt::from(p);
            }
            Some(f) if *f == free => {
                let pb = BigInt::from(p);
                // CRT: x ≡ r (mod M), x ≡ s (mod p).
                let minv = mod_inverse(&modulus.mod_floor(&pb), &pb);
                for (rv, sv) in residues.iter_mut().zip(&ns) {
                    for (r, &s) in rv.iter_mut().zip(sv) {
                        let t = ((BigInt::from(s) - &*r) * &minv).mod_floor(&pb);
                        *r = &*r + &modulus * t;
                    }
                }
                modulus *= pb;
            }
            // Different pivot structure: an unlucky prime somewhere.
            Some(_) => return None,
        }
        if let Some(ns) = lift_and_check(rows, &residues, &modulus) {
            return Some(ns);
        }
    }
    None
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn lift_and_check(rows: &[SparseRow<Rational>], residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<Rational>>> {
    let mut out = Vec::with_capacity(residues.len());
    for rv in residues {
        let mut v = Vec::with_capacity(rv.len());
        for r in rv {
            if r.is_zero() {
                v.push(<Rational as Zero>::zero());
            } else {
                v.push(reconstruct(r, modulus)?);
            }
        }
        out.push(v);
    }
    // Exact certificate: every lifted vector is a kernel vector. Together with
    // rank_p <= rank_Q this shows they span the rational kernel.
    for v in &out {
        for row in rows {
            let mut s = <Rational as Zero>::zero();
            for (c, a) in row {
                if !Zero::is_zero(&v[*c]) {
                    s += a * &v[*c];
                }
            }
            if !Zero::is_zero(&s) {
                return None;
            }
        }
    }
    Some(out)
}

pub fn rank(m: &MatrixQ) -> usize {
    Rref::from_rows(m.cols(), &m.sparse_rows()).rank()
}

/// Rank by fraction-free (Bareiss) elimination over the integers. Kept as an
/// independent route for cross-checking the field elimination.
pub fn bareiss_rank(m: &MatrixQ) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_rows().iter().map(|r| integer_row(r)).collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..nr {
            for cc in c + 1..nc {
                let v = (&a[rank][c] * &a[r][cc] - &a[r][c] * &a[rank][cc]) / &prev;
                a[r][cc] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Clears denominators of a rational row (positive scale).
pub fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rint};

    fn check_kernel(m: &MatrixQ, ns: &[Vec<Rational>]) {
        for v in ns {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(ns.len() + bareiss_rank(m), m.cols());
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&MatrixQ::identity(3)).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let ns = nullspace(&MatrixQ::zeros(2, 3));
        assert_eq!(ns.len(), 3);
        assert_eq!(ns[1], vec![rint(0), rint(1), rint(0)]);
    }

    #[test]
    fn small_kernel_is_canonical() {
        let m = MatrixQ::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![rint(-1), rint(-1), rint(1)]]);
        check_kernel(&m, &ns);
    }

    #[test]
    fn modular_path_matches_exact_path() {
        // 60 columns forces the modular route; rows are built from a kernel
        // with fractional entries.
        let n = 60;
        let mut rows = Vec::new();
        for i in 0..50usize {
            let mut r = Vec::new();
            for j in 0..n {
                let v = ((i * 7 + j * 13) % 11) as i64 - 5;
                if v != 0 && (i + j) % 3 != 0 {
                    r.push((j, rat(v, 1 + (j % 4) as i64)));
                }
            }
            rows.push(r);
        }
        let exact = Rref::from_rows(n, &rows).nullspace();
        let fast = nullspace_rows(&rows, n);
        assert_eq!(exact, fast);
        let m = MatrixQ::from_sparse_rows(n, rows);
        check_kernel(&m, &fast);
    }

    #[test]
    fn bareiss_rank_matches_field_rank() {
        let m = MatrixQ::from_i64(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1], &[0, 0, 5]]);
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(rank(&m), 2);
    }
}
