use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{rint, Rational};
use super::matrix::MatrixQ;
use super::span::SpanSolver;

/// Univariate polynomial over the rationals, coefficients low to high,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![rint(1)])
    }

    /// t - r
    pub fn linear(r: &Rational) -> Self {
        Poly(vec![-r, rint(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default()).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.0.get(i).cloned().unwrap_or_default() - o.0.get(i).cloned().unwrap_or_default()).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(vec![]);
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let l = d.lead();
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &l;
            if !f.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    r[k + i] -= &f * c;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of self modulo m, when coprime.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (mut r0, mut r1) = (m.clone(), self.divrem(m).1);
        let (mut t0, mut t1) = (Poly(vec![]), Poly::one());
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(&r1);
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.lead().recip();
        Some(Poly::new(t0.0.iter().map(|c| c * &inv).collect()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rint(i as i64)).collect())
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &MatrixQ) -> MatrixQ {
        let n = m.rows();
        let mut acc = MatrixQ::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m).add(&MatrixQ::identity(n).scale(c));
        }
        acc
    }

    /// Distinct rational roots via the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return vec![];
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        if p.0[0].is_zero() {
            roots.push(Rational::zero());
            while p.0.first().is_some_and(|c| c.is_zero()) {
                p.0.remove(0);
            }
        }
        let l = p.0.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let ints: Vec<BigInt> = p.0.iter().map(|q| q.numer() * (&l / q.denom())).collect();
        let (a0, an) = (ints[0].abs(), ints.last().unwrap().abs());
        let (Some(num_div), Some(den_div)) = (divisors(&a0), divisors(&an)) else { return roots };
        for n in &num_div {
            for d in &den_div {
                for s in [1i64, -1] {
                    let r = Rational::new(BigInt::from(*n * s), BigInt::from(*d));
                    if !roots.contains(&r) && p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors by trial division; gives up on large inputs.
fn divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.to_i64().filter(|&n| n > 0 && n < 1 << 40)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Monic minimal polynomial, coefficients low to high.
pub fn minimal_polynomial(op: &MatrixQ) -> Vec<Rational> {
    assert_eq!(op.rows(), op.cols(), "minimal polynomial of a non-square matrix");
    let n = op.rows();
    let mut powers = vec![MatrixQ::identity(n).flatten()];
    let mut cur = MatrixQ::identity(n);
    loop {
        cur = cur.mul(op);
        let flat = cur.flatten();
        let mut solver = SpanSolver::new(n * n, &powers).expect("powers below the minimal degree are independent");
        if let Ok(c) = solver.solve(&flat) {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(rint(1));
            return coeffs;
        }
        powers.push(flat);
    }
}
