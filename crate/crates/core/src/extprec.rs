//! Fixed-point arbitrary-precision reals and complex numbers on top of
//! `BigInt`. A value holds `mant * 2^(-bits)`; both operands of a binary
//! operation must carry the same `bits`.
//!
//! This backs the precision-escalation tier of the root finder, the
//! high-precision sup-norm sampler, and the round-and-verify construction of
//! minimal polynomials from transcendental roots.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::intpoly::pow2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FixedReal {
    pub mant: BigInt,
    pub bits: u32,
}

impl FixedReal {
    pub fn zero(bits: u32) -> Self {
        FixedReal { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        FixedReal { mant: BigInt::from(1) << bits, bits }
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero(bits);
        }
        // exact IEEE-754 decode: x = sign * m * 2^e
        let raw = x.to_bits();
        let negative = raw >> 63 == 1;
        let exp_field = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (m, e) = if exp_field == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        let mut mant = BigInt::from(m);
        let shift = bits as i64 + e;
        mant = shift_round(mant, shift);
        if negative {
            mant = -mant;
        }
        FixedReal { mant, bits }
    }

    /// Exact value `c * 2^scale_exp` rendered at this precision.
    pub fn from_bigint_scaled(c: &BigInt, scale_exp: i64, bits: u32) -> Self {
        FixedReal { mant: shift_round(c.clone(), bits as i64 + scale_exp), bits }
    }

    pub fn to_f64(&self) -> f64 {
        let sign = if self.mant.sign() == Sign::Minus { -1.0 } else { 1.0 };
        let mag = self.mant.magnitude();
        let b = mag.bits();
        if b == 0 {
            return 0.0;
        }
        if b <= 53 {
            return sign * mag.to_u64().expect("fits") as f64 * pow2(-(self.bits as i64));
        }
        let shift = b - 54;
        let top = (mag >> shift).to_u64().expect("54 bits");
        let rounded = (top + 1) >> 1;
        sign * rounded as f64 * pow2(shift as i64 + 1 - self.bits as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn add(&self, o: &FixedReal) -> FixedReal {
        debug_assert_eq!(self.bits, o.bits);
        FixedReal { mant: &self.mant + &o.mant, bits: self.bits }
    }

    pub fn sub(&self, o: &FixedReal) -> FixedReal {
        debug_assert_eq!(self.bits, o.bits);
        FixedReal { mant: &self.mant - &o.mant, bits: self.bits }
    }

    pub fn neg(&self) -> FixedReal {
        FixedReal { mant: -&self.mant, bits: self.bits }
    }

    pub fn mul(&self, o: &FixedReal) -> FixedReal {
        debug_assert_eq!(self.bits, o.bits);
        FixedReal { mant: shift_round(&self.mant * &o.mant, -(self.bits as i64)), bits: self.bits }
    }

    pub fn mul_u64(&self, k: u64) -> FixedReal {
        FixedReal { mant: &self.mant * BigInt::from(k), bits: self.bits }
    }

    pub fn div_u64(&self, k: u64) -> FixedReal {
        FixedReal { mant: &self.mant / BigInt::from(k), bits: self.bits }
    }

    pub fn div(&self, o: &FixedReal) -> FixedReal {
        debug_assert_eq!(self.bits, o.bits);
        assert!(!o.mant.is_zero(), "division by zero");
        FixedReal { mant: (&self.mant << self.bits) / &o.mant, bits: self.bits }
    }

    /// Rescale to a different precision (exact when widening).
    pub fn with_bits(&self, bits: u32) -> FixedReal {
        FixedReal {
            mant: shift_round(self.mant.clone(), bits as i64 - self.bits as i64),
            bits,
        }
    }

    /// Nearest integer together with the absolute rounding residual.
    pub fn round_to_int(&self) -> (BigInt, FixedReal) {
        let rounded = shift_round(self.mant.clone(), -(self.bits as i64));
        let residual = FixedReal {
            mant: (&self.mant - (&rounded << self.bits)).abs(),
            bits: self.bits,
        };
        (rounded, residual)
    }
}

/// `x * 2^shift` with round-half-up on right shifts.
fn shift_round(x: BigInt, shift: i64) -> BigInt {
    use std::cmp::Ordering;
    match shift.cmp(&0) {
        Ordering::Equal => x,
        Ordering::Greater => x << shift,
        Ordering::Less => {
            let s = (-shift) as u64;
            (x + (BigInt::from(1) << (s - 1))) >> s
        }
    }
}

/// pi at the requested precision, by Machin's formula.
pub(crate) fn pi(bits: u32) -> FixedReal {
    let work = bits + 32;
    let a5 = atan_inv(5, work);
    let a239 = atan_inv(239, work);
    let mant = (a5 << 4) - (a239 << 2);
    FixedReal { mant, bits: work }.with_bits(bits)
}

/// `atan(1/x) * 2^bits` by the alternating series.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = (BigInt::from(1) << bits) / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = term / &x2;
        if term.is_zero() {
            break;
        }
        let contrib = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        k += 1;
    }
    sum
}

/// cos(x) for |x| <= 2, by the Taylor series at the value's precision.
pub(crate) fn cos(x: &FixedReal) -> FixedReal {
    let bits = x.bits;
    let x2 = x.mul(x);
    let mut term = FixedReal::one(bits);
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = term.mul(&x2).div_u64((2 * k - 1) * (2 * k)).neg();
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
        k += 1;
    }
    sum
}

#[derive(Clone, Debug)]
pub(crate) struct FixedComplex {
    pub re: FixedReal,
    pub im: FixedReal,
}

impl FixedComplex {
    pub fn zero(bits: u32) -> Self {
        FixedComplex { re: FixedReal::zero(bits), im: FixedReal::zero(bits) }
    }

    pub fn from_real(re: FixedReal) -> Self {
        let bits = re.bits;
        FixedComplex { re, im: FixedReal::zero(bits) }
    }

    pub fn from_c64(z: num_complex::Complex64, bits: u32) -> Self {
        FixedComplex {
            re: FixedReal::from_f64(z.re, bits),
            im: FixedReal::from_f64(z.im, bits),
        }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &FixedComplex) -> FixedComplex {
        FixedComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &FixedComplex) -> FixedComplex {
        FixedComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &FixedComplex) -> FixedComplex {
        let denom = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        FixedComplex {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&denom),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&denom),
        }
    }

    pub fn with_bits(&self, bits: u32) -> FixedComplex {
        FixedComplex { re: self.re.with_bits(bits), im: self.im.with_bits(bits) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}
