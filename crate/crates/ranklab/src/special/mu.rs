//! The Appell-Lerch sum `mu(u, v; tau)` and the product
//! `theta(v; tau) mu(u, v; tau)`, which stays finite at the zeros of theta
//! and is the form the level-`l` decompositions actually use.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hp::{Complex, Real};
use crate::special::theta::{jacobi_theta_hp, sum_two_sided};
use crate::special::{lift, pi_i, two_pi_i, PrecisionSpec, POLE_GUARD};

/// Core of `theta(v; tau) * mu(u, v; tau)` on lifted arguments:
/// `e^{pi i u} sum_n (-1)^n e^{pi i (n^2+n) tau} e^{2 pi i n v} / (1 - e^{2 pi i n tau} e^{2 pi i u})`.
pub(crate) fn theta_mu_product_hp(
    u: &Complex,
    v: &Complex,
    tau: &Complex,
    prec: &PrecisionSpec,
) -> Result<Complex> {
    if !tau.im.is_sign_positive() || tau.im.is_zero() {
        return Err(Error::Domain(
            "tau must lie in the upper half-plane".into(),
        ));
    }
    let bits = prec.bits();
    let guard = Real::from_f64(POLE_GUARD, bits);
    let one = Complex::one(bits);
    let sum = sum_two_sided(bits, prec.series_tail_tol(), |n| {
        let n_r = Real::from_i64(n, bits);
        let expo = &pi_i(bits, &tau.scale(&(&n_r * &(&n_r + &Real::one(bits)))))
            + &two_pi_i(bits, &v.scale(&n_r));
        let mut numer = expo.exp();
        if n.rem_euclid(2) == 1 {
            numer = -&numer;
        }
        let denom = &one - &two_pi_i(bits, &(u + &tau.scale(&n_r))).exp();
        if denom.abs() < guard {
            return Err(Error::NearPole(format!(
                "|1 - e^{{2 pi i (u + n tau)}}| < {POLE_GUARD} at n = {n}"
            )));
        }
        Ok(&numer / &denom)
    })?;
    Ok(&pi_i(bits, u).exp() * &sum)
}

/// `theta(v; tau) * mu(u, v; tau)` as a single Appell-Lerch sum.
pub fn theta_mu_product(
    u: Complex64,
    v: Complex64,
    tau: Complex64,
    prec: &PrecisionSpec,
) -> Result<Complex> {
    let bits = prec.bits();
    theta_mu_product_hp(&lift(u, bits), &lift(v, bits), &lift(tau, bits), prec)
}

/// `mu(u, v; tau)`: the product sum divided by `theta(v; tau)`. Rejects
/// points where `theta(v; tau)` is too close to zero.
pub fn zwegers_mu(
    u: Complex64,
    v: Complex64,
    tau: Complex64,
    prec: &PrecisionSpec,
) -> Result<Complex> {
    let bits = prec.bits();
    let v_hp = lift(v, bits);
    let tau_hp = lift(tau, bits);
    let th = jacobi_theta_hp(&v_hp, &tau_hp, prec)?;
    if th.abs().to_f64() < POLE_GUARD {
        return Err(Error::NearPole(format!(
            "theta(v; tau) = {:?} is within {POLE_GUARD} of zero",
            th.to_f64_pair()
        )));
    }
    Ok(&theta_mu_product_hp(&lift(u, bits), &v_hp, &tau_hp, prec)? / &th)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> PrecisionSpec {
        PrecisionSpec::from_digits(30).unwrap()
    }

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matches_reference_value() {
        let v = zwegers_mu(c64(0.23, 0.07), c64(-0.41, 0.19), c64(0.21, 0.83), &prec()).unwrap();
        let (re, im) = v.to_f64_pair();
        assert!((re - 0.1325341107150273156).abs() < 1e-15, "re = {re}");
        assert!((im - 0.5719191343874064501).abs() < 1e-15, "im = {im}");
    }

    #[test]
    fn shift_in_u_negates() {
        let p = prec();
        let (u, v, tau) = (c64(0.23, 0.07), c64(-0.41, 0.19), c64(0.21, 0.83));
        let a = zwegers_mu(u, v, tau, &p).unwrap();
        let b = zwegers_mu(c64(u.re + 1.0, u.im), v, tau, &p).unwrap();
        assert!((&a + &b).abs().to_f64() < 1e-24);
    }

    #[test]
    fn near_pole_is_rejected() {
        // u = 0 puts the n = 0 denominator exactly at zero
        let p = prec();
        assert!(matches!(
            zwegers_mu(c64(0.0, 0.0), c64(0.3, 0.1), c64(0.0, 1.0), &p),
            Err(Error::NearPole(_))
        ));
        // v = 0 is a zero of theta
        assert!(matches!(
            zwegers_mu(c64(0.3, 0.0), c64(0.0, 0.0), c64(0.0, 1.0), &p),
            Err(Error::NearPole(_))
        ));
    }

    #[test]
    fn product_form_is_finite_at_theta_zero() {
        // theta(0; tau) = 0, but the product sum is regular there
        let p = prec();
        let v = theta_mu_product(c64(0.37, 0.0), c64(0.0, 0.0), c64(0.0, 1.0), &p).unwrap();
        assert!(v.is_finite());
        assert!(v.abs().to_f64() > 0.0);
    }

    #[test]
    fn doubling_cutoff_checked_by_tighter_precision() {
        let loose = theta_mu_product(c64(0.31, -0.1), c64(0.2, 0.25), c64(-0.15, 0.9), &prec()).unwrap();
        let tight = theta_mu_product(
            c64(0.31, -0.1),
            c64(0.2, 0.25),
            c64(-0.15, 0.9),
            &PrecisionSpec::from_digits(45).unwrap(),
        )
        .unwrap();
        assert!((&loose - &tight).abs().to_f64() < 1e-24);
    }
}
