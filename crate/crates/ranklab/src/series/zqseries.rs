//! Two-variable truncated series: Laurent in `z`, power series in `q`.
//!
//! Storage is dense per q-exponent: row `n` holds the coefficients of
//! `z^m q^n` for `m` in a contiguous band. Bands stay small (at most `n` for
//! everything derived from the rank generating function), and dense rows
//! keep the convolutions cache-friendly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hp::{Complex, Real};
use crate::series::QSeries;

/// One q-row: coefficients of `z^m` for `m = lo .. lo + coeffs.len() - 1`.
/// An empty coefficient vector is the zero row.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZRow {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl ZRow {
    fn zero() -> Self {
        Self::default()
    }

    fn monomial(c: BigInt, m: i64) -> Self {
        Self {
            lo: m,
            coeffs: vec![c],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    fn coeff(&self, m: i64) -> BigInt {
        if self.coeffs.is_empty() || m < self.lo || m > self.hi() {
            BigInt::zero()
        } else {
            self.coeffs[(m - self.lo) as usize].clone()
        }
    }

    /// Strip zero coefficients at both ends so the band reflects the support.
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(BigInt::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    /// `self + other * z^shift` (optionally negated).
    fn combined(&self, other: &Self, shift: i64, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let olo = other.lo + shift;
        let ohi = other.hi() + shift;
        let lo = if self.is_zero() { olo } else { self.lo.min(olo) };
        let hi = if self.is_zero() { ohi } else { self.hi().max(ohi) };
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(olo - lo) as usize + i];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        let mut row = Self { lo, coeffs };
        row.trim();
        row
    }
}

/// Truncated series `sum c(m, n) z^m q^n` with exact integer coefficients,
/// `0 <= n <= trunc_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZQSeries {
    rows: Vec<ZRow>,
}

impl ZQSeries {
    pub fn zero(trunc_order: usize) -> Self {
        Self {
            rows: vec![ZRow::zero(); trunc_order + 1],
        }
    }

    pub fn one(trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        s.rows[0] = ZRow::monomial(BigInt::one(), 0);
        s
    }

    /// The monomial `c * z^m q^n`.
    pub fn monomial(c: BigInt, m: i64, n: usize, trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        if n <= trunc_order && !c.is_zero() {
            s.rows[n] = ZRow::monomial(c, m);
        }
        s
    }

    /// `1 / (1 - z^s q^j)` truncated: the geometric series
    /// `sum_{k} z^{sk} q^{jk}`. Requires `j >= 1` so the factor is a unit in
    /// the truncated ring, and `s` in `{-1, 0, 1}`.
    pub fn inverse_factor(s: i64, j: usize, trunc_order: usize) -> Result<Self> {
        Self::one(trunc_order).mul_inverse_factor(s, j)
    }

    fn check_s(s: i64) -> Result<()> {
        if s.abs() > 1 {
            return Err(Error::Domain(format!(
                "z-exponent step {s} not in {{-1, 0, 1}}"
            )));
        }
        Ok(())
    }

    /// Multiply by `1 / (1 - z^s q^j)`, exactly, respecting the truncation.
    pub fn mul_inverse_factor(mut self, s: i64, j: usize) -> Result<Self> {
        Self::check_s(s)?;
        if j == 0 {
            return Err(Error::Domain(
                "1 - z^s q^0 is not a unit in the truncated ring".into(),
            ));
        }
        for n in j..self.rows.len() {
            let prev = self.rows[n - j].clone();
            self.rows[n] = self.rows[n].combined(&prev, s, false);
        }
        Ok(self)
    }

    /// Multiply by `1 - z^s q^j`.
    pub fn mul_factor(mut self, s: i64, j: usize) -> Result<Self> {
        Self::check_s(s)?;
        if j == 0 {
            for row in &mut self.rows {
                *row = ZRow::zero();
            }
            return Ok(self);
        }
        for n in (j..self.rows.len()).rev() {
            let prev = self.rows[n - j].clone();
            self.rows[n] = self.rows[n].combined(&prev, s, true);
        }
        Ok(self)
    }

    /// Embed a one-variable series at the single z-exponent `m`, shifted by
    /// `q^{q_shift}`: the result is `z^m q^{q_shift} * s(q)` truncated.
    pub fn embed_q_series(s: &QSeries, m: i64, q_shift: usize, trunc_order: usize) -> Self {
        let mut out = Self::zero(trunc_order);
        for (k, c) in s.coeffs().iter().enumerate() {
            let n = k + q_shift;
            if n > trunc_order {
                break;
            }
            if !c.is_zero() {
                out.rows[n] = ZRow::monomial(c.clone(), m);
            }
        }
        out
    }

    /// Multiply by `q^d`.
    pub fn shift_q(mut self, d: usize) -> Self {
        let n = self.rows.len();
        for k in (0..n).rev() {
            self.rows[k] = if k >= d {
                self.rows[k - d].clone()
            } else {
                ZRow::zero()
            };
        }
        self
    }

    pub fn trunc_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficient of `z^m q^n`.
    pub fn coeff(&self, m: i64, n: usize) -> BigInt {
        self.rows[n].coeff(m)
    }

    /// Band of row `n`: `(min m, max m)` of the support, or `None` for a
    /// zero row.
    pub fn z_band(&self, n: usize) -> Option<(i64, i64)> {
        let row = &self.rows[n];
        if row.is_zero() {
            None
        } else {
            Some((row.lo, row.hi()))
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.trunc_order() != other.trunc_order() {
            return Err(Error::TruncationMismatch {
                lhs: self.trunc_order(),
                rhs: other.trunc_order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.combined(b, 0, false))
            .collect();
        Ok(Self { rows })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.combined(b, 0, true))
            .collect();
        Ok(Self { rows })
    }

    /// Exact truncated product (convolution in both `q` and `z`).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n_max = self.trunc_order();
        let mut rows = vec![ZRow::zero(); n_max + 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().take(n_max + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                let lo = a.lo + b.lo;
                let mut conv = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
                for (ia, ca) in a.coeffs.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (ib, cb) in b.coeffs.iter().enumerate() {
                        if !cb.is_zero() {
                            conv[ia + ib] += ca * cb;
                        }
                    }
                }
                let mut row = ZRow { lo, coeffs: conv };
                row.trim();
                rows[i + j] = rows[i + j].combined(&row, 0, false);
            }
        }
        Ok(Self { rows })
    }

    /// Extract the one-variable series of `z^m` coefficients:
    /// `sum_n c(m, n) q^n`.
    pub fn z_coefficient_series(&self, m: i64) -> QSeries {
        let coeffs = self.rows.iter().map(|row| row.coeff(m)).collect();
        QSeries::from_coeffs(coeffs).expect("rows are non-empty")
    }

    /// True if `c(m, n) = c(-m, n)` for all stored coefficients.
    pub fn is_z_symmetric(&self) -> bool {
        self.rows.iter().all(|row| {
            (row.lo..=row.hi()).all(|m| row.coeff(m) == row.coeff(-m))
        })
    }

    /// Substitute `z = zeta_t^j` (the root of unity `e^{2 pi i j / t}`),
    /// returning the complex coefficient of each `q^n`.
    ///
    /// Coefficients with the same `m mod t` are aggregated exactly in integer
    /// arithmetic first; only the final `t` multiplications are inexact.
    pub fn eval_root_of_unity(&self, j: usize, t: usize, digits: u32) -> Result<Vec<Complex>> {
        if t == 0 {
            return Err(Error::Domain("root-of-unity order t must be >= 1".into()));
        }
        if j >= t {
            return Err(Error::Domain(format!("need 0 <= j < t, got j={j}, t={t}")));
        }
        let bits = Real::bits_for_digits(digits);
        // zeta_t^{j*s} for s = 0..t depends only on j*s mod t.
        let roots: Vec<Complex> = (0..t)
            .map(|k| {
                let angle = &(&Real::from_i64(2, bits) * &Real::pi(bits))
                    * &(&Real::from_i64(((j * k) % t) as i64, bits) / &Real::from_i64(t as i64, bits));
                Complex::from_polar_unit(&angle)
            })
            .collect();
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut classes = vec![BigInt::zero(); t];
            for (i, c) in row.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let m = row.lo + i as i64;
                    classes[m.rem_euclid(t as i64) as usize] += c;
                }
            }
            let mut acc = Complex::zero(bits);
            for (s, class) in classes.iter().enumerate() {
                if !class.is_zero() {
                    acc = &acc + &roots[s].scale(&Real::from_bigint(class, bits));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Evaluate the full series at a complex point `(zeta, q)` by Horner in
    /// `q`, with exact integer coefficients lifted to the working precision.
    pub fn eval_at(&self, zeta: &Complex, q: &Complex) -> Complex {
        let bits = zeta.bits();
        let (mut lo, mut hi) = (0i64, 0i64);
        for row in &self.rows {
            if !row.is_zero() {
                lo = lo.min(row.lo);
                hi = hi.max(row.hi());
            }
        }
        // Power table zeta^m for m in [lo, hi].
        let zinv = zeta.recip();
        let mut pows = vec![Complex::one(bits); (hi - lo + 1) as usize];
        let mut p = Complex::one(bits);
        for m in 1..=hi.max(0) {
            p = &p * zeta;
            pows[(m - lo) as usize] = p.clone();
        }
        let mut p = Complex::one(bits);
        for m in 1..=(-lo).max(0) {
            p = &p * &zinv;
            pows[(-m - lo) as usize] = p.clone();
        }
        let mut acc = Complex::zero(bits);
        for row in self.rows.iter().rev() {
            acc = &acc * q;
            for (i, c) in row.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let m = row.lo + i as i64;
                    acc = &acc
                        + &pows[(m - lo) as usize].scale(&Real::from_bigint(c, bits));
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_factor_is_geometric_in_zq() {
        // 1/(1 - zq) at N=3 -> 1 + zq + z^2 q^2 + z^3 q^3
        let s = ZQSeries::inverse_factor(1, 1, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(s.coeff(n as i64, n), BigInt::one());
            assert_eq!(s.z_band(n), Some((n as i64, n as i64)));
        }
    }

    #[test]
    fn factor_round_trip() {
        let x = ZQSeries::inverse_factor(1, 1, 6)
            .unwrap()
            .mul_inverse_factor(-1, 2)
            .unwrap();
        for &(s, j) in &[(1i64, 3usize), (-1, 1), (0, 2)] {
            let round = x
                .clone()
                .mul_inverse_factor(s, j)
                .unwrap()
                .mul_factor(s, j)
                .unwrap();
            assert_eq!(round, x);
        }
    }

    #[test]
    fn zero_q_exponent_is_not_a_unit() {
        assert!(ZQSeries::inverse_factor(1, 0, 4).is_err());
    }

    #[test]
    fn band_growth_bound() {
        // 1/(1 - z q^j): band of row n is n/j * |s|.
        let s = ZQSeries::inverse_factor(-1, 2, 9).unwrap();
        for n in 0..=9 {
            if let Some((lo, hi)) = s.z_band(n) {
                assert!(hi - lo <= (9 / 2) as i64);
            }
        }
    }

    #[test]
    fn mul_matches_factor_shortcut() {
        let a = ZQSeries::inverse_factor(1, 1, 5).unwrap();
        let b = ZQSeries::inverse_factor(-1, 1, 5).unwrap();
        let via_mul = a.mul(&b).unwrap();
        let via_chain = a.mul_inverse_factor(-1, 1).unwrap();
        assert_eq!(via_mul, via_chain);
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = ZQSeries::one(3);
        let b = ZQSeries::one(4);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }
}
