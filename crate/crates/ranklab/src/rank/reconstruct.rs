//! Reconstruction of the residue-class counts from root-of-unity
//! evaluations of the rank generating function:
//!
//! `N(r, t; n) = (1/t) [ p(n) + sum_{j=1}^{t-1} zeta_t^{-rj} * w_j(n) ]`
//!
//! where `w_j(n)` is the coefficient of `q^n` in the series evaluated at
//! `z = zeta_t^j`. The exact fold is the reference; the reconstruction is
//! the object under test.

use crate::error::Result;
use crate::hp::{Complex, Real};
use crate::rank::table::{rank_series, RankModTable, RankTable};

/// Worst-case deviation of the reconstruction from the exact table.
#[derive(Clone, Copy, Debug)]
pub struct ReconstructionDeviation {
    pub t: usize,
    pub n_max: usize,
    /// max over `r < t`, `n <= n_max` of `|Re(reconstructed) - exact|`
    pub max_abs: f64,
    /// max imaginary part of any reconstructed count (counts are real)
    pub max_imag: f64,
    pub worst_r: usize,
    pub worst_n: usize,
}

/// Reconstruct every `N(r, t; n)` for `n <= n_max` at the requested decimal
/// precision and compare against the exact fold.
pub fn residue_reconstruction(t: usize, n_max: usize, digits: u32) -> Result<ReconstructionDeviation> {
    let bits = Real::bits_for_digits(digits);
    let series = rank_series(n_max);
    let table = RankTable::build(n_max)?;
    let folded = RankModTable::build(&table, t)?;

    // w_j(n) for j = 1..t-1
    let evals: Vec<Vec<Complex>> = (1..t)
        .map(|j| series.eval_root_of_unity(j, t, digits))
        .collect::<Result<_>>()?;

    let two_pi = &Real::from_i64(2, bits) * &Real::pi(bits);
    let t_real = Real::from_i64(t as i64, bits);
    let mut worst = ReconstructionDeviation {
        t,
        n_max,
        max_abs: 0.0,
        max_imag: 0.0,
        worst_r: 0,
        worst_n: 0,
    };
    for r in 0..t {
        for n in 0..=n_max {
            let mut acc = Complex::new(Real::from_bigint(table.partition(n), bits), Real::zero(bits));
            for (idx, w) in evals.iter().enumerate() {
                let j = idx + 1;
                // zeta_t^{-rj}
                let angle = &(&two_pi * &Real::from_i64(-((r * j) as i64), bits)) / &t_real;
                acc = &acc + &(&Complex::from_polar_unit(&angle) * &w[n]);
            }
            acc = acc.scale(&t_real.recip());
            let exact = Real::from_bigint(folded.count(r, n), bits);
            let abs = (&acc.re - &exact).abs().to_f64();
            let imag = acc.im.abs().to_f64();
            if abs > worst.max_abs {
                worst.max_abs = abs;
                worst.worst_r = r;
                worst.worst_n = n;
            }
            worst.max_imag = worst.max_imag.max(imag);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_one_is_exact() {
        let d = residue_reconstruction(1, 30, 30).unwrap();
        assert_eq!(d.max_abs, 0.0);
        assert_eq!(d.max_imag, 0.0);
    }

    #[test]
    fn small_moduli_reconstruct_to_high_precision() {
        for t in 2..=5 {
            let d = residue_reconstruction(t, 40, 30).unwrap();
            assert!(d.max_abs < 1e-12, "t = {t}: {}", d.max_abs);
            assert!(d.max_imag < 1e-12, "t = {t}: {}", d.max_imag);
        }
    }

    #[test]
    fn alternating_evaluation_is_the_order_three_mock_theta() {
        // At z = -1 the series coefficients become
        // sum_m (-1)^m N(m, n): 1, 1, -2, 3, -3, 3, ...
        let series = rank_series(5);
        let vals = series.eval_root_of_unity(1, 2, 30).unwrap();
        let expect = [1i64, 1, -2, 3, -3, 3];
        for (n, &e) in expect.iter().enumerate() {
            let (re, im) = vals[n].to_f64_pair();
            assert!((re - e as f64).abs() < 1e-20, "n = {n}: {re}");
            assert!(im.abs() < 1e-20);
        }
    }

    #[test]
    fn conjugate_symmetry_of_evaluations() {
        let series = rank_series(12);
        let t = 7;
        for j in 1..t {
            let a = series.eval_root_of_unity(j, t, 30).unwrap();
            let b = series.eval_root_of_unity(t - j, t, 30).unwrap();
            for n in 0..=12 {
                let (ar, ai) = a[n].to_f64_pair();
                let (br, bi) = b[n].to_f64_pair();
                assert!((ar - br).abs() < 1e-20 && (ai + bi).abs() < 1e-20);
            }
        }
    }

    #[test]
    fn trivial_root_reproduces_partition_counts() {
        let series = rank_series(20);
        let vals = series.eval_root_of_unity(0, 1, 30).unwrap();
        let p = crate::rank::partition::partition_counts(20);
        for n in 0..=20usize {
            let (re, im) = vals[n].to_f64_pair();
            let want: f64 = p[n].to_string().parse::<f64>().unwrap();
            assert!((re - want).abs() < 1e-9 * want.max(1.0));
            assert!(im.abs() < 1e-20);
        }
    }
}
