use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lowest-terms `num/den`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// The scalar operations elimination needs. Implemented for exact rationals
/// and for word-sized prime fields used to accelerate large solves.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        rint(v)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

/// Integers modulo a prime below 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Zp<const P: u64>(pub u64);

pub const P61: u64 = (1 << 61) - 1;
pub const P62A: u64 = 4611686018427387847;
pub const P62B: u64 = 4611686018427387817;

pub type Fp = Zp<P61>;

impl<const P: u64> Zp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Zp(v % P)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Zp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        Zp(r.to_u64().expect("residue fits"))
    }

    /// Reduces a rational; `None` when the prime divides the denominator.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(q.numer()).mul(&d.inv()))
    }
}

impl<const P: u64> Field for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Zp(if s >= P { s - P } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        Zp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Zp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Zp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn from_i64(v: i64) -> Self {
        let r = (v as i128).rem_euclid(P as i128);
        Zp(r as u64)
    }
}

/// Rational reconstruction of `a mod m` with |num|, den ≤ sqrt(m/2).
pub fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        for p in [P61, P62A, P62B] {
            // Fermat checks on a handful of bases; enough to catch a typo.
            for b in [2u64, 3, 5, 7, 11, 13] {
                let x = match p {
                    P61 => Zp::<P61>(b).pow(p - 1).0,
                    P62A => Zp::<P62A>(b).pow(p - 1).0,
                    _ => Zp::<P62B>(b).pow(p - 1).0,
                };
                assert_eq!(x, 1, "{p} fails base {b}");
            }
        }
    }

    #[test]
    fn reconstruct_roundtrip() {
        let m = BigInt::from(P61);
        for (n, d) in [(1, 3), (-7, 12), (123456, 789), (0, 1), (-1, 1)] {
            let q = rat(n, d);
            let a = Fp::from_rational(&q).unwrap();
            assert_eq!(reconstruct(&BigInt::from(a.0), &m), Some(q));
        }
    }

    #[test]
    fn rational_text_roundtrip() {
        let q = rat(-6, 4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(q));
        assert_eq!(parse_rational("5"), Some(rint(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rint(4)), "4/1");
    }
}
