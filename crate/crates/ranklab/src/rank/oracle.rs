//! Independent brute-force oracle: enumerate every partition of `n` in
//! decreasing-lexicographic order and histogram ranks directly from the
//! definition (largest part minus number of parts).
//!
//! This deliberately shares no machinery with the series expansion it is
//! used to check.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Default ceiling for the enumeration; p(60) is under a million partitions.
pub const DEFAULT_ORACLE_LIMIT: usize = 60;

/// Histogram `rank -> count` over all partitions of `n`, by exhaustive
/// enumeration. Refuses `n` above `limit`.
pub fn rank_histogram(n: usize, limit: usize) -> Result<BTreeMap<i64, u64>> {
    if n > limit {
        return Err(Error::Domain(format!(
            "enumeration oracle limited to n <= {limit}; got n = {n} (raise the limit explicitly to override)"
        )));
    }
    let mut hist = BTreeMap::new();
    if n == 0 {
        // The empty partition: largest part 0, zero parts, rank 0.
        hist.insert(0, 1);
        return Ok(hist);
    }
    // First (largest) part k chosen from n down to 1, then recurse with
    // parts bounded by k: this emits partitions in decreasing-lex order.
    for k in (1..=n).rev() {
        descend(n - k, k, k as i64, 1, &mut hist);
    }
    Ok(hist)
}

fn descend(remaining: usize, max_part: usize, largest: i64, parts: i64, hist: &mut BTreeMap<i64, u64>) {
    if remaining == 0 {
        *hist.entry(largest - parts).or_insert(0) += 1;
        return;
    }
    for k in (1..=max_part.min(remaining)).rev() {
        descend(remaining - k, k, largest, parts + 1, hist);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::partition::partition_counts;
    use num_bigint::BigInt;

    #[test]
    fn empty_partition() {
        let h = rank_histogram(0, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn all_seven_partitions_of_five() {
        // [5]:4  [4,1]:2  [3,2]:1  [3,1,1]:0  [2,2,1]:-1  [2,1,1,1]:-2  [1^5]:-4
        let h = rank_histogram(5, DEFAULT_ORACLE_LIMIT).unwrap();
        let expect = BTreeMap::from([(-4, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (4, 1)]);
        assert_eq!(h, expect);
    }

    #[test]
    fn histogram_total_is_partition_count() {
        let p = partition_counts(20);
        let h = rank_histogram(20, DEFAULT_ORACLE_LIMIT).unwrap();
        let total: u64 = h.values().sum();
        assert_eq!(BigInt::from(total), p[20]);
    }

    #[test]
    fn refuses_above_limit() {
        assert!(rank_histogram(61, DEFAULT_ORACLE_LIMIT).is_err());
        assert!(rank_histogram(61, 61).is_ok());
    }
}
