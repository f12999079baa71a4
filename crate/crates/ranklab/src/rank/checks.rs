//! Monotonicity scans over the exact tables. Scans collect violations into
//! records instead of failing: several of these checks are expected to
//! return specific nonempty exception sets.

use crate::rank::table::{RankModTable, RankTable, ViolationRecord};

/// All `(m, n)` with `0 <= m <= m_max`, `1 <= n <= n_max` where
/// `N(m, n) < N(m, n-1)`.
///
/// The expected exception set within `n <= 100`, `m <= 40` is
/// `{(1,7), (0,8), (3,11)}` together with every `(m, m+2)`.
pub fn weak_monotonicity(table: &RankTable, n_max: usize, m_max: i64) -> Vec<ViolationRecord> {
    let mut out = Vec::new();
    for m in 0..=m_max {
        for n in 1..=n_max.min(table.n_max()) {
            let cur = table.count(m, n);
            let prev = table.count(m, n - 1);
            if cur < prev {
                out.push(ViolationRecord {
                    kind: "weak_monotonicity".into(),
                    witness_index: m,
                    n,
                    lhs: cur,
                    rhs: prev,
                });
            }
        }
    }
    out
}

/// Violations of strict growth `N(m, n) > N(m, n-1)` inside the region
/// `m >= 1, n >= 2m + 25` and `m = 0, n >= 30`. Expected empty.
pub fn strict_monotonicity(table: &RankTable, n_max: usize) -> Vec<ViolationRecord> {
    let n_max = n_max.min(table.n_max());
    let mut out = Vec::new();
    let mut check = |m: i64, n: usize, out: &mut Vec<ViolationRecord>| {
        let cur = table.count(m, n);
        let prev = table.count(m, n - 1);
        if cur <= prev {
            out.push(ViolationRecord {
                kind: "strict_monotonicity".into(),
                witness_index: m,
                n,
                lhs: cur,
                rhs: prev,
            });
        }
    };
    for n in 30..=n_max {
        check(0, n, &mut out);
    }
    let m_cap = (n_max as i64 - 25) / 2;
    for m in 1..=m_cap.max(0) {
        for n in (2 * m + 25) as usize..=n_max {
            check(m, n, &mut out);
        }
    }
    out
}

/// Violations of `N(0, n) >= N(0, n-1) + 2` for `15 <= n <= n_max`.
/// Expected empty.
pub fn zero_rank_increment(table: &RankTable, n_max: usize) -> Vec<ViolationRecord> {
    let mut out = Vec::new();
    for n in 15..=n_max.min(table.n_max()) {
        let cur = table.count(0, n);
        let want = table.count(0, n - 1) + 2;
        if cur < want {
            out.push(ViolationRecord {
                kind: "zero_rank_increment".into(),
                witness_index: 0,
                n,
                lhs: cur,
                rhs: want,
            });
        }
    }
    out
}

/// Residue-class threshold: growth of `N(r, t; n)` is asserted only from
/// `max(2r + 25, 2(t - r) + 25)` onward.
pub fn residue_threshold(r: usize, t: usize) -> usize {
    (2 * r + 25).max(2 * (t - r) + 25)
}

/// Violations of `N(r, t; n) >= N(r, t; n-1)` for each `r < t`, scanning
/// `n` from the residue threshold up. Below-threshold cells are not
/// reported. Expected empty.
pub fn residue_monotonicity(folded: &RankModTable, n_max: usize) -> Vec<ViolationRecord> {
    let n_max = n_max.min(folded.n_max());
    let mut out = Vec::new();
    for r in 0..folded.t() {
        for n in residue_threshold(r, folded.t()).max(1)..=n_max {
            let cur = folded.count(r, n);
            let prev = folded.count(r, n - 1);
            if cur < prev {
                out.push(ViolationRecord {
                    kind: "residue_monotonicity".into(),
                    witness_index: r as i64,
                    n,
                    lhs: cur.clone(),
                    rhs: prev.clone(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::table::{RankModTable, RankTable};

    #[test]
    fn weak_exceptions_in_small_window() {
        let table = RankTable::build(20).unwrap();
        let v = weak_monotonicity(&table, 20, 10);
        let mut got: Vec<(i64, usize)> = v.iter().map(|r| (r.witness_index, r.n)).collect();
        got.sort();
        let mut expect: Vec<(i64, usize)> = (0..=10).map(|m| (m, m as usize + 2)).collect();
        expect.extend([(0, 8), (1, 7), (3, 11)]);
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn weak_scan_below_seven_sees_only_band_edge() {
        let table = RankTable::build(6).unwrap();
        let v = weak_monotonicity(&table, 6, 6);
        assert!(v.iter().all(|r| r.n as i64 == r.witness_index + 2));
    }

    #[test]
    fn empty_range_is_empty() {
        let table = RankTable::build(5).unwrap();
        assert!(weak_monotonicity(&table, 0, 5).is_empty());
        // strict region is empty below n = 27
        assert!(strict_monotonicity(&table, 5).is_empty());
    }

    #[test]
    fn strict_region_clean_to_80() {
        let table = RankTable::build(80).unwrap();
        assert!(strict_monotonicity(&table, 80).is_empty());
    }

    #[test]
    fn increment_exception_below_threshold_only() {
        let table = RankTable::build(60).unwrap();
        assert!(zero_rank_increment(&table, 60).is_empty());
        // (0, 8) is a genuine weak-monotonicity exception, below the
        // increment threshold of 15, so the scan must not see it.
        assert!(table.count(0, 8) < table.count(0, 7));
    }

    #[test]
    fn residue_thresholds() {
        assert_eq!(residue_threshold(0, 2), 29);
        assert_eq!(residue_threshold(1, 3), 29);
        assert_eq!(residue_threshold(0, 10), 45);
    }

    #[test]
    fn residue_scan_clean_for_t2_and_t3() {
        let table = RankTable::build(90).unwrap();
        for t in [2, 3] {
            let folded = RankModTable::build(&table, t).unwrap();
            assert!(residue_monotonicity(&folded, 90).is_empty());
        }
    }
}
