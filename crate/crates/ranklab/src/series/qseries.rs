//! Truncated one-variable power series with exact integer coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A power series in `q`, truncated at a fixed order `N`: coefficients are
/// exact for exponents `0..=N` and unknown beyond.
///
/// The truncation order is fixed at construction. Arithmetic between series
/// of different orders is rejected rather than silently re-truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// The zero series `0 + O(q^{N+1})`.
    pub fn zero(trunc_order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); trunc_order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(trunc_order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, trunc_order)
    }

    /// The monomial `c * q^k`. Exponents beyond the truncation order are
    /// dropped.
    pub fn monomial(c: BigInt, k: usize, trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        if k <= trunc_order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Build a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("coefficient vector must be non-empty".into()));
        }
        Ok(Self { coeffs })
    }

    /// `1 - q^j` (the building block of Euler-type products).
    pub fn one_minus_q(j: usize, trunc_order: usize) -> Self {
        let mut s = Self::one(trunc_order);
        if j >= 1 && j <= trunc_order {
            s.coeffs[j] = -BigInt::one();
        }
        s
    }

    /// The Euler product `prod_{k=1..N} (1 - q^k)` truncated at order `N`.
    /// Its reciprocal generates the partition numbers.
    pub fn euler_product(trunc_order: usize) -> Self {
        let mut s = Self::one(trunc_order);
        for k in 1..=trunc_order {
            s.mul_one_minus_q(k);
        }
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^k`. Panics if `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BigInt::is_zero)
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
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Exact truncated product: coefficient of `q^n` is `sum_{i+j=n} a_i b_j`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.trunc_order();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse in the truncated ring. The constant term must
    /// be `+1` or `-1`.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.is_one() && *c0 != -BigInt::one() {
            return Err(Error::Domain(format!(
                "cannot invert series with constant term {c0}; must be a unit (+1 or -1)"
            )));
        }
        let n = self.trunc_order();
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = c0.clone(); // 1/(+1) = +1, 1/(-1) = -1
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            // c0 * out[k] + acc = 0, and c0 is +-1
            out[k] = if c0.is_one() { -acc } else { acc };
        }
        Ok(Self { coeffs: out })
    }

    /// In-place multiplication by `1 - q^j`.
    pub fn mul_one_minus_q(&mut self, j: usize) {
        if j == 0 {
            for c in &mut self.coeffs {
                *c = BigInt::zero();
            }
            return;
        }
        let n = self.trunc_order();
        for k in (j..=n).rev() {
            let sub = self.coeffs[k - j].clone();
            self.coeffs[k] -= sub;
        }
    }

    /// In-place division by `1 - q^j` (multiplication by the geometric
    /// series in `q^j`). Requires `j >= 1`.
    pub fn div_one_minus_q(&mut self, j: usize) -> Result<()> {
        if j == 0 {
            return Err(Error::Domain("1 - q^0 = 0 is not a unit".into()));
        }
        let n = self.trunc_order();
        for k in j..=n {
            let add = self.coeffs[k - j].clone();
            self.coeffs[k] += add;
        }
        Ok(())
    }

    /// In-place multiplication by `q^d` (shifting exponents up, dropping
    /// overflow past the truncation order).
    pub fn shift_q(&mut self, d: usize) {
        let n = self.trunc_order();
        for k in (0..=n).rev() {
            self.coeffs[k] = if k >= d {
                self.coeffs[k - d].clone()
            } else {
                BigInt::zero()
            };
        }
    }

    /// True if every stored coefficient is non-negative.
    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> QSeries {
        QSeries::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = qs(&[1, 1, 0]);
        let b = qs(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), qs(&[1, 0, -1]));
    }

    #[test]
    fn one_is_identity() {
        let a = qs(&[3, -2, 5, 0, 7]);
        assert_eq!(a.mul(&QSeries::one(4)).unwrap(), a);
    }

    #[test]
    fn geometric_square_by_hand() {
        // (sum q^n)^2 at N=4 -> 1 + 2q + 3q^2 + 4q^3 + 5q^4
        let g = QSeries::one_minus_q(1, 4).invert().unwrap();
        assert_eq!(g.mul(&g).unwrap(), qs(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn invert_geometric() {
        let inv = QSeries::one_minus_q(1, 6).invert().unwrap();
        assert_eq!(inv, qs(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(QSeries::one(3).invert().unwrap(), QSeries::one(3));
    }

    #[test]
    fn invert_counts_lattice_points() {
        // coefficient of q^12 in 1/((1-q^2)(1-q^3)) counts solutions of
        // 2a + 3b = 12: (a,b) in {(6,0),(3,2),(0,4)}.
        let mut s = QSeries::one_minus_q(2, 12);
        s.mul_one_minus_q(3);
        let inv = s.invert().unwrap();
        assert_eq!(*inv.coeff(12), BigInt::from(3));
        let brute = (0..=6)
            .filter(|a| (12 - 2 * a) % 3 == 0)
            .count();
        assert_eq!(brute, 3);
    }

    #[test]
    fn invert_round_trip() {
        let mut s = qs(&[-1, 4, -3, 2, 9, 0, -5]);
        let round = s.mul(&s.invert().unwrap()).unwrap();
        assert_eq!(round, QSeries::one(6));
        s.mul_one_minus_q(2);
        s.div_one_minus_q(2).unwrap();
        assert_eq!(s, qs(&[-1, 4, -3, 2, 9, 0, -5]));
    }

    #[test]
    fn invert_rejects_non_unit() {
        assert!(qs(&[2, 1]).invert().is_err());
        assert!(qs(&[0, 1]).invert().is_err());
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = QSeries::one(3);
        let b = QSeries::one(4);
        assert!(matches!(
            a.mul(&b),
            Err(Error::TruncationMismatch { lhs: 3, rhs: 4 })
        ));
    }

    #[test]
    fn partition_counts_from_euler_product() {
        let p = QSeries::euler_product(20).invert().unwrap();
        let expect = [1i64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(*p.coeff(n), BigInt::from(e));
        }
    }
}
