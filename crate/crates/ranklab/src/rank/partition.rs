//! Partition counting via the Euler pentagonal recurrence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact values of `p(0..=n_max)` from the pentagonal recurrence
/// `p(n) = sum_k (-1)^{k-1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_counts(n_max: usize) -> Vec<BigInt> {
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 as usize > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let sign_pos = k % 2 == 1;
            if sign_pos {
                acc += &p[n - g1 as usize];
            } else {
                acc -= &p[n - g1 as usize];
            }
            if g2 as usize <= n {
                if sign_pos {
                    acc += &p[n - g2 as usize];
                } else {
                    acc -= &p[n - g2 as usize];
                }
            }
            k += 1;
        }
        p.push(acc);
    }
    p
}

/// Exact `p(n)`.
pub fn partition_count(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("p(n) undefined for negative n = {n}")));
    }
    Ok(partition_counts(n as usize).pop().expect("non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::QSeries;

    #[test]
    fn small_values() {
        let p = partition_counts(10);
        let expect = [1i64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(p[n], BigInt::from(e));
        }
        assert_eq!(partition_count(0).unwrap(), BigInt::one());
        assert_eq!(partition_count(5).unwrap(), BigInt::from(7));
    }

    #[test]
    fn negative_rejected() {
        assert!(partition_count(-1).is_err());
    }

    #[test]
    fn p100_cross_checked_against_euler_product() {
        // Two independent routes: the recurrence and the coefficient of
        // q^100 in 1 / prod (1 - q^n).
        let p = partition_counts(100);
        assert_eq!(p[100], BigInt::from(190569292u64));
        let inv = QSeries::euler_product(100).invert().unwrap();
        for n in 0..=100 {
            assert_eq!(p[n], *inv.coeff(n));
        }
    }

    #[test]
    fn large_values_exceed_u64() {
        let p = partition_counts(500);
        assert_eq!(
            p[500],
            "2300165032574323995027".parse::<BigInt>().unwrap()
        );
        assert_eq!(p[200], BigInt::from(3972999029388u64));
    }
}
