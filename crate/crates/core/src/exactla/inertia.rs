use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Rational;
use super::matrix::MatrixQ;
use super::LinAlgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn total(&self) -> usize {
        self.plus + self.minus + self.zero
    }
}

/// Sylvester inertia by symmetric fraction-free elimination.
///
/// The matrix is scaled to integers and split into connected components of
/// its nonzero pattern; each block is eliminated with Bareiss updates. When
/// every remaining diagonal entry vanishes a 2×2 hyperbolic step is taken,
/// contributing one positive and one negative square.
pub fn inertia(s: &MatrixQ) -> Result<Inertia, LinAlgError> {
    if !s.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    let n = s.rows();
    let rows = s.sparse_rows();
    let l = rows.iter().flatten().fold(BigInt::one(), |l, (_, q)| l.lcm(q.denom()));
    let scaled = |q: &Rational| q.numer() * (&l / q.denom());

    let mut total = Inertia { plus: 0, minus: 0, zero: 0 };
    for comp in components(n, &rows) {
        let mut idx = vec![usize::MAX; n];
        for (k, &i) in comp.iter().enumerate() {
            idx[i] = k;
        }
        let m = comp.len();
        let mut a = vec![vec![BigInt::zero(); m]; m];
        for (k, &i) in comp.iter().enumerate() {
            for (j, q) in &rows[i] {
                a[k][idx[*j]] = scaled(q);
            }
        }
        let r = bareiss_inertia(a);
        total.plus += r.plus;
        total.minus += r.minus;
        total.zero += r.zero;
    }
    Ok(total)
}

fn components(n: usize, rows: &[Vec<(usize, Rational)>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            let (a, b) = (find(&mut parent, i), find(&mut parent, *j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn bareiss_inertia(mut a: Vec<Vec<BigInt>>) -> Inertia {
    let mut active: Vec<usize> = (0..a.len()).collect();
    let mut prev = BigInt::one();
    let (mut plus, mut minus) = (0, 0);
    while !active.is_empty() {
        // Smallest nonzero diagonal keeps the entries short.
        let piv = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .min_by_key(|&i| a[i][i].bits());
        if let Some(i) = piv {
            let p = a[i][i].clone();
            if (p.sign() == Sign::Minus) == (prev.sign() == Sign::Minus) {
                plus += 1;
            } else {
                minus += 1;
            }
            active.retain(|&x| x != i);
            for (ai, &r) in active.iter().enumerate() {
                for &c in &active[ai..] {
                    let v = (&p * &a[r][c] - &a[r][i] * &a[i][c]) / &prev;
                    a[r][c] = v.clone();
                    a[c][r] = v;
                }
            }
            prev = p;
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(k, &i)| {
            active[k + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else { break };
        // Schur complement of [[0,b],[b,0]] via Sylvester's identity:
        // a'_{rs} = det[[0,b,x],[b,0,y],[u,v,w]] / prev^2.
        let b = a[i][j].clone();
        let b2 = &b * &b;
        let prev2 = &prev * &prev;
        plus += 1;
        minus += 1;
        active.retain(|&x| x != i && x != j);
        for (ai, &r) in active.iter().enumerate() {
            for &c in &active[ai..] {
                let det = -&b2 * &a[r][c] + &b * (&a[j][c] * &a[r][i] + &a[i][c] * &a[r][j]);
                let v = det / &prev2;
                a[r][c] = v.clone();
                a[c][r] = v;
            }
        }
        prev = -b2 / &prev;
    }
    Inertia { plus, minus, zero: active.len() }
}

/// Float eigen-sign count, used only as a redundant cross-check.
pub fn float_inertia(s: &MatrixQ) -> Inertia {
    use num_traits::ToPrimitive;
    let n = s.rows();
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    let mut scale = 0f64;
    for r in 0..n {
        for (c, q) in s.row_entries(r) {
            let v = q.to_f64().unwrap_or(0.0);
            scale = scale.max(v.abs());
            m[(r, c)] = v;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(m);
    let tol = scale.max(1.0) * 1e-9 * n.max(1) as f64;
    let mut out = Inertia { plus: 0, minus: 0, zero: 0 };
    for &e in eig.eigenvalues.iter() {
        if e > tol {
            out.plus += 1;
        } else if e < -tol {
            out.minus += 1;
        } else {
            out.zero += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inr(p: usize, m: usize, z: usize) -> Inertia {
        Inertia { plus: p, minus: m, zero: z }
    }

    #[test]
    fn diagonal_cases() {
        assert_eq!(inertia(&MatrixQ::diag(&[rint(1), rint(-1)])), Ok(inr(1, 1, 0)));
        assert_eq!(inertia(&MatrixQ::zeros(2, 2)), Ok(inr(0, 0, 2)));
    }

    #[test]
    fn hyperbolic_block() {
        let m = MatrixQ::from_i64(&[&[0, 1, 0], &[1, 0, 2], &[0, 2, 0]]);
        assert_eq!(inertia(&m), Ok(inr(1, 1, 1)));
        let m = MatrixQ::from_i64(&[&[0, 3, 1, 0], &[3, 0, 0, 1], &[1, 0, 0, 2], &[0, 1, 2, 0]]);
        assert_eq!(inertia(&m).unwrap(), float_inertia(&m));
    }

    #[test]
    fn asymmetric_rejected() {
        let m = MatrixQ::from_i64(&[&[0, 1], &[2, 0]]);
        assert_eq!(inertia(&m), Err(LinAlgError::NotSymmetric));
    }

    #[test]
    fn congruence_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..8 {
            for _ in 0..10 {
                let d: Vec<Rational> = (0..n).map(|_| rint(rng.gen_range(-1..=1))).collect();
                let base = MatrixQ::diag(&d);
                // Unimodular: unit upper triangular times unit lower triangular.
                let mut u = MatrixQ::identity(n);
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            u.set(i, j, rint(if i < j { rng.gen_range(-3..=3) } else { 0 }));
                        }
                    }
                }
                let mut l = MatrixQ::identity(n);
                for i in 0..n {
                    for j in 0..i {
                        l.set(i, j, rint(rng.gen_range(-2..=2)));
                    }
                }
                let t = u.mul(&l);
                let s = t.transpose().mul(&base).mul(&t);
                let want = inertia(&base).unwrap();
                assert_eq!(inertia(&s).unwrap(), want);
                assert_eq!(float_inertia(&s), want);
            }
        }
    }
}
