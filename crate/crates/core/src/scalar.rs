//! Scalar fields for the interpolation oracle.
//!
//! Two fields are provided: exact rationals and the prime field of order
//! `2^31 - 1`. Ranks over the prime field are lower bounds for ranks of the
//! same integer matrix over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The Mersenne prime `2^31 - 1`.
pub const PRIME: u64 = (1 << 31) - 1;

pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Short name used in reports.
    const NAME: &'static str;
    /// True for fields of positive characteristic.
    const MODULAR: bool;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Reduction into `F_p`, `None` when a denominator vanishes mod `p`.
    fn to_fp(&self) -> Option<Fp>;

    /// Rank of a dense row-major matrix.
    fn rank(rows: Vec<Vec<Self>>) -> usize {
        crate::linalg::gauss_rank(rows)
    }
}

/// An element of `F_p` with `p = 2^31 - 1`, kept reduced in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u32);

impl Fp {
    #[inline]
    pub fn new(v: u64) -> Self {
        Fp(reduce(v % (PRIME * PRIME)) as u32)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Reduces `x < p^2` (anything below `2^62`) modulo `p`.
#[inline]
fn reduce(x: u64) -> u64 {
    let mut r = (x & PRIME) + (x >> 31);
    r = (r & PRIME) + (r >> 31);
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 as u64 + rhs.0 as u64;
        Fp(if s >= PRIME { s - PRIME } else { s } as u32)
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        let s = self.0 as u64 + PRIME - rhs.0 as u64;
        Fp(if s >= PRIME { s - PRIME } else { s } as u32)
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        Fp(reduce(self.0 as u64 * rhs.0 as u64) as u32)
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp((PRIME - self.0 as u64) as u32)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Field for Fp {
    const NAME: &'static str = "prime";
    const MODULAR: bool = true;

    fn from_i64(v: i64) -> Self {
        let m = (v.unsigned_abs() % PRIME) as u32;
        let x = Fp(m);
        if v < 0 {
            -x
        } else {
            x
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = (v.abs() % BigInt::from(PRIME))
            .to_u64()
            .expect("residue fits in u64");
        let x = Fp(m as u32);
        if v.is_negative() {
            -x
        } else {
            x
        }
    }

    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(PRIME - 2))
    }

    fn to_fp(&self) -> Option<Fp> {
        Some(*self)
    }
}

impl Field for BigRational {
    const NAME: &'static str = "exact";
    const MODULAR: bool = false;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn to_fp(&self) -> Option<Fp> {
        let num = Fp::from_bigint(self.numer());
        Fp::from_bigint(self.denom()).inv().map(|d| num * d)
    }

    fn rank(rows: Vec<Vec<Self>>) -> usize {
        crate::linalg::bareiss_rank_rational(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        assert_eq!(Fp::from_i64(-1).value() as u64, PRIME - 1);
        assert_eq!(Fp::from_i64(PRIME as i64), Fp::zero());
        assert_eq!(Fp::from_i64(3) * Fp::from_i64(3).inv().unwrap(), Fp::one());
        assert!(Fp::zero().inv().is_none());
        assert_eq!(Fp::from_bigint(&BigInt::from(-5)), Fp::from_i64(-5));
    }

    #[test]
    fn rational_reduces_mod_p() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let h = half.to_fp().unwrap();
        assert_eq!(h * Fp::from_i64(2), Fp::one());
        let bad = BigRational::new(BigInt::from(1), BigInt::from(PRIME));
        assert!(bad.to_fp().is_none());
    }

    proptest! {
        #[test]
        fn mul_matches_u128(a in 0u64..PRIME, b in 0u64..PRIME) {
            let want = ((a as u128 * b as u128) % PRIME as u128) as u32;
            prop_assert_eq!((Fp::new(a) * Fp::new(b)).value(), want);
        }

        #[test]
        fn from_i64_is_a_ring_map(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            prop_assert_eq!(Fp::from_i64(a) + Fp::from_i64(b), Fp::from_i64(a + b));
            prop_assert_eq!(Fp::from_i64(a) * Fp::from_i64(b), Fp::from_i64(a * b));
            prop_assert_eq!(Fp::from_i64(a) - Fp::from_i64(b), Fp::from_i64(a - b));
        }
    }
}
