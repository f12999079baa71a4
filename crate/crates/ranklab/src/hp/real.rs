//! Configurable-precision real arithmetic.
//!
//! Thin wrapper around `astro_float::BigFloat` that carries the working
//! precision alongside the value, so expressions read naturally and the
//! shared constants cache stays hidden in a thread-local.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(
        Consts::new().expect("constants cache allocation"),
    );
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// An arbitrary-precision real number with an attached working precision in
/// bits. Binary operations use the larger precision of the two operands.
#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    bits: usize,
}

impl Real {
    /// Working precision (in bits) for the requested number of significant
    /// decimal digits, with guard bits for series summation.
    pub fn bits_for_digits(digits: u32) -> usize {
        (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 48
    }

    pub fn from_f64(x: f64, bits: usize) -> Self {
        Self {
            v: BigFloat::from_f64(x, bits),
            bits,
        }
    }

    pub fn from_i64(x: i64, bits: usize) -> Self {
        Self {
            v: BigFloat::from_i64(x, bits),
            bits,
        }
    }

    /// Exact conversion of a big integer (the precision must be requested by
    /// the caller; values wider than `bits` round).
    pub fn from_bigint(x: &BigInt, bits: usize) -> Self {
        let scale = Self {
            v: BigFloat::from_u128(1u128 << 64, bits + 64),
            bits: bits + 64,
        };
        let mut acc = Self::from_i64(0, bits + 64);
        for d in x.magnitude().iter_u64_digits().rev() {
            acc = &(&acc * &scale)
                + &Self {
                    v: BigFloat::from_u64(d, bits + 64),
                    bits: bits + 64,
                };
        }
        if x.sign() == num_bigint::Sign::Minus {
            acc = -&acc;
        }
        acc.with_bits(bits)
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn pi(bits: usize) -> Self {
        Self {
            v: with_consts(|cc| cc.pi(bits, RM)),
            bits,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn with_bits(mut self, bits: usize) -> Self {
        self.bits = bits;
        self
    }

    fn lift(&self, other: &Self) -> usize {
        self.bits.max(other.bits)
    }

    pub fn abs(&self) -> Self {
        Self {
            v: self.v.abs(),
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Self {
        Self {
            v: self.v.sqrt(self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn exp(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.exp(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn ln(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.ln(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn sin(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.sin(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn cos(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.cos(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn sinh(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.sinh(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn cosh(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.cosh(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn tanh(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.tanh(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    pub fn atan(&self) -> Self {
        Self {
            v: with_consts(|cc| self.v.atan(self.bits, RM, cc)),
            bits: self.bits,
        }
    }

    /// Four-quadrant arctangent of `y / x`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let bits = y.lift(x);
        let pi = Self::pi(bits);
        if x.is_zero() && y.is_zero() {
            return Self::zero(bits);
        }
        if x.is_sign_positive() {
            if x.is_zero() {
                // x == +0: sign of y decides
                let half = &pi / &Real::from_i64(2, bits);
                return if y.is_sign_negative() { -&half } else { half };
            }
            (&(y / x)).atan()
        } else if y.is_sign_negative() {
            &(&(y / x)).atan() - &pi
        } else {
            &(&(y / x)).atan() + &pi
        }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(self.bits);
        }
        let mut base = if n > 0 { self.clone() } else { self.recip() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Real power `self^p` for positive `self`, via `exp(p ln self)`.
    pub fn pow(&self, p: &Self) -> Self {
        (&self.ln() * p).exp()
    }

    pub fn recip(&self) -> Self {
        Self {
            v: self.v.reciprocal(self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn is_sign_positive(&self) -> bool {
        self.v.is_positive()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    /// Round-to-nearest conversion. Values outside the f64 exponent range
    /// saturate to signed infinity.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, n, sign, e, _) = self.v.as_raw_parts().expect("finite value");
        // value = sign * 0.mantissa * 2^e with little-endian words
        let mut acc = 0.0f64;
        let mut scale = e as f64 - n as f64;
        for w in words {
            acc += (*w as f64) * scale.exp2();
            scale += WORD_BIT_SIZE as f64;
        }
        if sign == Sign::Neg {
            -acc
        } else {
            acc
        }
    }

    /// Base-2 exponent of the value (the magnitude is in `[2^(e-1), 2^e)`),
    /// usable as an overflow-safe scale probe.
    pub fn exponent(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i64)
        }
    }

    fn cmp_inner(&self, other: &Self) -> Ordering {
        let s = self.v.cmp(&other.v).expect("NaN in comparison");
        match s.to_i64() {
            Some(x) if x < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_inner(other) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_inner(other))
    }
}

impl std::ops::Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let bits = self.lift(rhs);
        Real {
            v: self.v.add(&rhs.v, bits, RM),
            bits,
        }
    }
}

impl std::ops::Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        let bits = self.lift(rhs);
        Real {
            v: self.v.sub(&rhs.v, bits, RM),
            bits,
        }
    }
}

impl std::ops::Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        let bits = self.lift(rhs);
        Real {
            v: self.v.mul(&rhs.v, bits, RM),
            bits,
        }
    }
}

impl std::ops::Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        let bits = self.lift(rhs);
        Real {
            v: self.v.div(&rhs.v, bits, RM),
            bits,
        }
    }
}

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: self.v.neg(),
            bits: self.bits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: usize = 160;

    fn close(a: &Real, b: f64, tol: f64) {
        assert!(
            (a.to_f64() - b).abs() <= tol,
            "{} vs {}",
            a.to_f64(),
            b
        );
    }

    #[test]
    fn arithmetic_and_transcendentals_match_f64() {
        let x = Real::from_f64(0.37, B);
        close(&x.exp(), 0.37f64.exp(), 1e-15);
        close(&x.sin(), 0.37f64.sin(), 1e-15);
        close(&x.cos(), 0.37f64.cos(), 1e-15);
        close(&x.cosh(), 0.37f64.cosh(), 1e-15);
        close(&x.sqrt(), 0.37f64.sqrt(), 1e-15);
        close(&Real::pi(B), std::f64::consts::PI, 1e-15);
        close(&x.powi(7), 0.37f64.powi(7), 1e-15);
        close(&x.powi(-3), 0.37f64.powi(-3), 1e-12);
    }

    #[test]
    fn atan2_quadrants() {
        for &(y, x) in &[(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (0.5, 2.0)] {
            let r = Real::atan2(&Real::from_f64(y, B), &Real::from_f64(x, B));
            close(&r, y.atan2(x), 1e-15);
        }
    }

    #[test]
    fn bigint_conversion_exact() {
        let n: BigInt = BigInt::from(24061467864032622473692149727991u128);
        let r = Real::from_bigint(&n, B);
        // compare against the same value assembled in parts
        let hi = Real::from_f64(2.4061467864032622e31, B);
        let rel = (&(&r - &hi) / &hi).abs();
        assert!(rel.to_f64() < 1e-15);
        let neg = Real::from_bigint(&-&n, B);
        assert!(neg.is_sign_negative());
        assert!((&neg + &r).is_zero());
    }

    #[test]
    fn huge_exponents_survive() {
        let big = Real::from_f64(500.0, B).exp();
        close(&big, 500f64.exp(), 1e201);
        let huger = Real::from_f64(5000.0, B).exp();
        assert!(huger.to_f64().is_infinite());
        assert!(huger.exponent().unwrap() > 7000);
    }
}
