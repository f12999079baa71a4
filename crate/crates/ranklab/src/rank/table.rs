//! Exact tables of rank counts `N(m, n)` and residue-class counts
//! `N(r, t; n)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rank::partition::partition_counts;
use crate::series::ZQSeries;

/// Expansion of the rank generating function
/// `sum_{k >= 0} q^{k^2} / ((z q; q)_k (z^{-1} q; q)_k)`
/// to the given truncation order. The coefficient of `z^m q^n` is `N(m, n)`.
pub fn rank_series(trunc_order: usize) -> ZQSeries {
    let mut acc = ZQSeries::one(trunc_order);
    let mut term = ZQSeries::one(trunc_order);
    let mut k = 1usize;
    while k * k <= trunc_order {
        // q^{k^2} / prod_{j<=k} (1 - z q^j)(1 - z^{-1} q^j), built up from
        // the previous term.
        term = term
            .shift_q(2 * k - 1)
            .mul_inverse_factor(1, k)
            .expect("unit factor")
            .mul_inverse_factor(-1, k)
            .expect("unit factor");
        acc = acc.add(&term).expect("same truncation order");
        k += 1;
    }
    acc
}

/// Exact table of `N(m, n)` for `0 <= |m| <= n <= n_max`. Only `m >= 0` is
/// stored; negative ranks resolve through the `N(-m, n) = N(m, n)` symmetry.
#[derive(Clone, Debug)]
pub struct RankTable {
    n_max: usize,
    rows: Vec<Vec<BigInt>>,
    partition: Vec<BigInt>,
}

impl RankTable {
    /// Build the table from the series expansion, validating symmetry, the
    /// rank band, and conservation of the partition count per row.
    pub fn build(n_max: usize) -> Result<Self> {
        let series = rank_series(n_max);
        let partition = partition_counts(n_max);
        let mut rows = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if let Some((lo, hi)) = series.z_band(n) {
                let cap = if n == 0 { 0 } else { n as i64 - 1 };
                if hi > cap || lo < -cap {
                    return Err(Error::CheckFailed(format!(
                        "rank band [{lo}, {hi}] exceeds |m| <= {cap} at n = {n}"
                    )));
                }
            }
            let mut row = Vec::with_capacity(n + 1);
            let mut total = BigInt::zero();
            for m in 0..=n as i64 {
                let c = series.coeff(m, n);
                if c != series.coeff(-m, n) {
                    return Err(Error::CheckFailed(format!(
                        "rank symmetry broken at m = {m}, n = {n}"
                    )));
                }
                total += if m == 0 { c.clone() } else { 2 * &c };
                row.push(c);
            }
            if total != partition[n] {
                return Err(Error::CheckFailed(format!(
                    "row sum {total} != p({n}) = {}",
                    partition[n]
                )));
            }
            rows.push(row);
        }
        Ok(Self {
            n_max,
            rows,
            partition,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `N(m, n)`; zero outside the stored band, symmetric in the sign of `m`.
    pub fn count(&self, m: i64, n: usize) -> BigInt {
        let m = m.unsigned_abs() as usize;
        if n > self.n_max || m > n {
            BigInt::zero()
        } else {
            self.rows[n][m].clone()
        }
    }

    /// Exact `p(n)` carried alongside the table.
    pub fn partition(&self, n: usize) -> &BigInt {
        &self.partition[n]
    }

    /// Full signed histogram of row `n`, in the oracle's output shape.
    pub fn row_histogram(&self, n: usize) -> BTreeMap<i64, BigInt> {
        let mut h = BTreeMap::new();
        for m in -(n as i64)..=n as i64 {
            let c = self.count(m, n);
            if !c.is_zero() {
                h.insert(m, c);
            }
        }
        h
    }
}

/// Exact table of `N(r, t; n)`: partitions of `n` with rank congruent to `r`
/// modulo `t`, computed by the finite fold `sum_k N(r + k t, n)`.
#[derive(Clone, Debug)]
pub struct RankModTable {
    t: usize,
    n_max: usize,
    rows: Vec<Vec<BigInt>>,
    partition: Vec<BigInt>,
}

impl RankModTable {
    pub fn build(table: &RankTable, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("modulus t must be >= 1".into()));
        }
        let n_max = table.n_max();
        let mut rows = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = Vec::with_capacity(t);
            for r in 0..t as i64 {
                let mut acc = BigInt::zero();
                let mut m = r;
                while m <= n as i64 {
                    acc += table.count(m, n);
                    m += t as i64;
                }
                let mut m = r - t as i64;
                while -m <= n as i64 {
                    acc += table.count(m, n);
                    m -= t as i64;
                }
                row.push(acc);
            }
            let total: BigInt = row.iter().sum();
            if total != *table.partition(n) {
                return Err(Error::CheckFailed(format!(
                    "residue fold row sum {total} != p({n})"
                )));
            }
            rows.push(row);
        }
        Ok(Self {
            t,
            n_max,
            rows,
            partition: table.partition[..=n_max].to_vec(),
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `N(r, t; n)`.
    pub fn count(&self, r: usize, n: usize) -> &BigInt {
        &self.rows[n][r]
    }

    pub fn partition(&self, n: usize) -> &BigInt {
        &self.partition[n]
    }
}

/// One reported violation from a table scan: the check it came from, the
/// witness cell, and both sides of the inequality as evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationRecord {
    pub kind: String,
    /// `m` for rank scans, `r` for residue scans.
    pub witness_index: i64,
    pub n: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::oracle::{rank_histogram, DEFAULT_ORACLE_LIMIT};

    #[test]
    fn expansion_matches_enumeration_to_25() {
        let table = RankTable::build(25).unwrap();
        for n in 0..=25usize {
            let brute = rank_histogram(n, DEFAULT_ORACLE_LIMIT).unwrap();
            let brute: BTreeMap<i64, BigInt> =
                brute.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect();
            assert_eq!(table.row_histogram(n), brute, "row {n}");
        }
    }

    #[test]
    fn pinned_cells() {
        let table = RankTable::build(12).unwrap();
        assert_eq!(table.count(0, 0), BigInt::from(1));
        assert_eq!(table.count(2, 4), BigInt::zero());
        assert_eq!(table.count(1, 7), BigInt::from(1));
        assert_eq!(table.count(1, 6), BigInt::from(2));
        assert_eq!(table.count(-1, 6), BigInt::from(2));
        // N(n-2, n) = 0
        for n in 2..=12 {
            assert_eq!(table.count(n as i64 - 2, n), BigInt::zero());
        }
    }

    #[test]
    fn fold_matches_direct_histogram() {
        let table = RankTable::build(20).unwrap();
        let folded = RankModTable::build(&table, 3).unwrap();
        assert_eq!(*folded.count(0, 5), BigInt::from(1));
        assert_eq!(*folded.count(1, 5), BigInt::from(3));
        assert_eq!(*folded.count(2, 5), BigInt::from(3));
    }

    #[test]
    fn modulus_one_gives_partition_counts() {
        let table = RankTable::build(15).unwrap();
        let folded = RankModTable::build(&table, 1).unwrap();
        for n in 0..=15 {
            assert_eq!(folded.count(0, n), table.partition(n));
        }
    }

    #[test]
    fn modulus_zero_rejected() {
        let table = RankTable::build(3).unwrap();
        assert!(RankModTable::build(&table, 0).is_err());
    }
}
