use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{to_f64, Rational};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// A real number enclosed in a dyadic interval `[lo, hi]`.
///
/// Every operation rounds the lower end down and the upper end up to the
/// working precision, so the enclosure is rigorous.
#[derive(Clone)]
pub struct Real {
    lo: Rational,
    hi: Rational,
    bits: u32,
}

fn two_pow(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn magnitude(x: &Rational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

impl Real {
    pub fn exact(value: Rational, bits: u32) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
            bits,
        }
        .rounded()
    }

    pub fn from_rational(value: Rational) -> Self {
        Self::exact(value, DEFAULT_PRECISION)
    }

    pub fn zero(bits: u32) -> Self {
        Self::exact(Rational::zero(), bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::exact(Rational::one(), bits)
    }

    fn with(lo: Rational, hi: Rational, bits: u32) -> Self {
        Self { lo, hi, bits }.rounded()
    }

    fn rounded(self) -> Self {
        let m = magnitude(&self.lo).max(magnitude(&self.hi));
        let k = self.bits as i64 + 2 - m;
        let scale = two_pow(k);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Self {
            lo,
            hi,
            bits: self.bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Half-width of the enclosure.
    pub fn radius(&self) -> Rational {
        (&self.hi - &self.lo) / Rational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Largest distance from any point of the enclosure to `x`.
    pub fn distance_bound(&self, x: &Rational) -> Rational {
        let a = (&self.lo - x).abs();
        let b = (&self.hi - x).abs();
        a.max(b)
    }

    pub fn add(&self, o: &Real) -> Real {
        Self::with(&self.lo + &o.lo, &self.hi + &o.hi, self.bits.max(o.bits))
    }

    pub fn sub(&self, o: &Real) -> Real {
        Self::with(&self.lo - &o.hi, &self.hi - &o.lo, self.bits.max(o.bits))
    }

    pub fn mul(&self, o: &Real) -> Real {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Self::with(lo, hi, self.bits.max(o.bits))
    }

    pub fn scale(&self, c: &Rational) -> Real {
        self.mul(&Real::exact(c.clone(), self.bits))
    }

    /// Quotient, or `None` when the divisor's enclosure contains zero.
    pub fn div(&self, o: &Real) -> Option<Real> {
        if o.lo.is_zero() || o.hi.is_zero() || (o.lo.is_negative() != o.hi.is_negative()) {
            return None;
        }
        let inv = Real {
            lo: o.hi.recip(),
            hi: o.lo.recip(),
            bits: o.bits,
        };
        Some(self.mul(&inv))
    }

    /// Encloses `2^e` for a rational exponent.
    pub fn pow2(e: &Rational, bits: u32) -> Real {
        if e.is_integer() {
            let k = e.to_integer().to_i64().expect("exponent fits in i64");
            return Real::exact(two_pow(k), bits);
        }
        if e.is_negative() {
            let pos = Real::pow2(&-e, bits + 8);
            return Real::one(bits).div(&pos).expect("positive power");
        }
        let p = e.numer().to_u64().expect("exponent numerator fits in u64");
        let q = e.denom().to_u32().expect("exponent denominator fits in u32");
        let guard = bits as u64 + 16;
        // floor(2^(p/q + guard)) through an integer q-th root.
        let x = BigUint::one() << (p + q as u64 * guard) as usize;
        let root = x.nth_root(q);
        let exact = num_traits::pow(root.clone(), q as usize) == x;
        let scale = two_pow(guard as i64);
        let lo = Rational::from_integer(BigInt::from(root.clone())) / &scale;
        let hi = if exact {
            lo.clone()
        } else {
            Rational::from_integer(BigInt::from(root + 1u32)) / &scale
        };
        Real::with(lo, hi, bits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e} ± {:.1e}", self.to_f64(), to_f64(&self.radius()))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

