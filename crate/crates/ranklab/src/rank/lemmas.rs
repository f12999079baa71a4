//! Exact coefficient checks behind the monotonicity results: postage-stamp
//! representation counts, non-negativity of a Pochhammer quotient, the
//! closed forms of `(1-q)/((aq)_k (q/a)_k)` for `k = 1, 2`, the regrouping
//! of the rank generating function by those quotients, and the positivity
//! of the combined tail.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::rank::table::rank_series;
use crate::series::{QSeries, ZQSeries};

/// `1 / ((1 - q^3)(1 - q^4))`: the coefficient of `q^n` counts solutions of
/// `3j + 4k = n`.
pub fn postage_counts(trunc_order: usize) -> QSeries {
    let mut s = QSeries::one(trunc_order);
    s.div_one_minus_q(3).expect("j >= 1");
    s.div_one_minus_q(4).expect("j >= 1");
    s
}

/// Every `n` with `18 <= n <= n_max` has at least two representations
/// `3j + 4k = n`.
pub fn verify_postage_counts(n_max: usize) -> bool {
    let counts = postage_counts(n_max);
    let two = BigInt::from(2);
    (18..=n_max).all(|n| *counts.coeff(n) >= two)
}

/// `(1 - q^{m+1}) / ((1 - q^2)(1 - q^3))` has non-negative coefficients for
/// positive `m`, up to the truncation order.
pub fn verify_nonneg_ratio(m: usize, n_max: usize) -> Result<bool> {
    let mut s = QSeries::one(n_max);
    s.mul_one_minus_q(m + 1);
    s.div_one_minus_q(2)?;
    s.div_one_minus_q(3)?;
    Ok(s.all_nonnegative())
}

/// `(1 - q) / ((z q; q)_k (z^{-1} q; q)_k)` as an exact two-variable series.
pub fn symmetric_pochhammer_ratio(k: usize, trunc_order: usize) -> ZQSeries {
    let mut s = ZQSeries::one(trunc_order)
        .mul_factor(0, 1)
        .expect("s = 0 allowed");
    for j in 1..=k {
        s = s
            .mul_inverse_factor(1, j)
            .expect("unit factor")
            .mul_inverse_factor(-1, j)
            .expect("unit factor");
    }
    s
}

fn agree_up_to_band(a: &ZQSeries, b: &ZQSeries, m_band: i64) -> bool {
    (0..=a.trunc_order().min(b.trunc_order()))
        .all(|n| (-m_band..=m_band).all(|m| a.coeff(m, n) == b.coeff(m, n)))
}

/// The `k = 1` closed form: the quotient equals
/// `sum_{n >= 0} sum_{m = -n}^{n} (-1)^{m+n} z^m q^n`.
pub fn verify_expansion_k1(n_max: usize, m_band: i64) -> bool {
    let lhs = symmetric_pochhammer_ratio(1, n_max);
    let mut rhs = ZQSeries::zero(n_max);
    for n in 0..=n_max {
        for m in -(n as i64)..=n as i64 {
            let c = if (m + n as i64) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            rhs = rhs
                .add(&ZQSeries::monomial(c, m, n, n_max))
                .expect("same order");
        }
    }
    agree_up_to_band(&lhs, &rhs, m_band) && lhs.is_z_symmetric()
}

/// The `k = 2` closed form:
/// `-q + 1/(1-q^3) + q^2/(1-q^4) + q^8/((1-q^3)(1-q^4))
///  + sum_{m >= 1} (z^m + z^{-m}) q^m [ (1-q^{m+1})/((1-q^2)(1-q^3))
///                                      + q^{m+3}/((1-q^3)(1-q^4)) ]`.
pub fn verify_expansion_k2(n_max: usize, m_band: i64) -> Result<bool> {
    let lhs = symmetric_pochhammer_ratio(2, n_max);

    // z-free block
    let mut zfree = QSeries::one(n_max);
    zfree.div_one_minus_q(3)?;
    let mut t2 = QSeries::monomial(BigInt::one(), 2, n_max);
    t2.div_one_minus_q(4)?;
    let mut t3 = QSeries::monomial(BigInt::one(), 8, n_max);
    t3.div_one_minus_q(3)?;
    t3.div_one_minus_q(4)?;
    zfree = zfree.add(&t2)?.add(&t3)?;
    zfree = zfree.sub(&QSeries::monomial(BigInt::one(), 1, n_max))?;
    let mut rhs = ZQSeries::embed_q_series(&zfree, 0, 0, n_max);

    for m in 1..=n_max {
        let mut bracket = QSeries::one(n_max);
        bracket.mul_one_minus_q(m + 1);
        bracket.div_one_minus_q(2)?;
        bracket.div_one_minus_q(3)?;
        let mut b2 = QSeries::monomial(BigInt::one(), m + 3, n_max);
        b2.div_one_minus_q(3)?;
        b2.div_one_minus_q(4)?;
        bracket = bracket.add(&b2)?;
        for sign in [1i64, -1] {
            rhs = rhs.add(&ZQSeries::embed_q_series(&bracket, sign * m as i64, m, n_max))?;
        }
    }
    Ok(agree_up_to_band(&lhs, &rhs, m_band))
}

/// Regrouping of `sum_{n >= 0} (1-q) q^{n^2} / ((zq)_n (z^{-1}q)_n)` into
/// the `z^0` column plus `(z^m + z^{-m})`-paired one-variable pieces
/// extracted from the quotients for `k = 1, 2, 3, ...`.
pub fn verify_rank_series_decomposition(n_max: usize, m_band: i64) -> Result<bool> {
    // Left side: (1 - q) times the rank generating function.
    let lhs = rank_series(n_max).mul_factor(0, 1)?;

    // Right side: 1 - q, the z^0 column of each quotient shifted by q^{k^2},
    // and the paired columns for m >= 1.
    let mut rhs = ZQSeries::one(n_max).mul_factor(0, 1)?;
    let mut k = 1usize;
    while k * k <= n_max {
        let quotient = symmetric_pochhammer_ratio(k, n_max);
        if !quotient.is_z_symmetric() {
            return Ok(false);
        }
        let shift = k * k;
        rhs = rhs.add(&ZQSeries::embed_q_series(
            &quotient.z_coefficient_series(0),
            0,
            shift,
            n_max,
        ))?;
        for m in 1..=(n_max as i64) {
            let piece = quotient.z_coefficient_series(m);
            if piece.is_zero() {
                continue;
            }
            for sign in [1i64, -1] {
                rhs = rhs.add(&ZQSeries::embed_q_series(&piece, sign * m, shift, n_max))?;
            }
        }
        k += 1;
    }
    Ok(agree_up_to_band(&lhs, &rhs, m_band))
}

/// The combined tail `q^12/((1-q^3)(1-q^4)) - sum_{n >= 0} q^{2n+2}` has
/// coefficient at least 1 for every `30 <= n <= n_max`.
pub fn verify_tail_positivity(n_max: usize) -> Result<bool> {
    let mut head = QSeries::monomial(BigInt::one(), 12, n_max);
    head.div_one_minus_q(3)?;
    head.div_one_minus_q(4)?;
    let mut even = QSeries::monomial(BigInt::one(), 2, n_max);
    even.div_one_minus_q(2)?;
    let diff = head.sub(&even)?;
    Ok((30..=n_max).all(|n| *diff.coeff(n) >= BigInt::one()))
}
