//! The level-`l` Appell function, its split into a transformed Appell-Lerch
//! part and a Mordell-integral part at the cusp parameterization, the Euler
//! product, and the product-form route to the rank generating function.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hp::{Complex, Real};
use crate::rank::rank_series;
use crate::special::mordell::mordell_h_hp;
use crate::special::mu::theta_mu_product_hp;
use crate::special::theta::{jacobi_theta_hp, sum_two_sided};
use crate::special::{lift, pi_i, two_pi_i, PrecisionSpec, POLE_GUARD, SINGULARITY_GUARD};

/// Core of the level-`l` Appell function on lifted arguments:
/// `A_l(u, v; tau) = e^{pi i l u} sum_n (-1)^{ln} q^{l n (n+1)/2} e^{2 pi i n v} / (1 - e^{2 pi i u} q^n)`.
pub(crate) fn appell_a_hp(
    level: u32,
    u: &Complex,
    v: &Complex,
    tau: &Complex,
    prec: &PrecisionSpec,
) -> Result<Complex> {
    if level < 1 {
        return Err(Error::Domain("Appell level must be >= 1".into()));
    }
    if !tau.im.is_sign_positive() || tau.im.is_zero() {
        return Err(Error::Domain("tau must lie in the upper half-plane".into()));
    }
    let bits = prec.bits();
    let guard = Real::from_f64(POLE_GUARD, bits);
    let one = Complex::one(bits);
    let level_r = Real::from_i64(level as i64, bits);
    let half = Real::from_f64(0.5, bits);
    let sum = sum_two_sided(bits, prec.series_tail_tol(), |n| {
        let n_r = Real::from_i64(n, bits);
        // q^{l n (n+1) / 2} e^{2 pi i n v} as one exponential
        let tri = &(&n_r * &(&n_r + &Real::one(bits))) * &half;
        let expo = &two_pi_i(bits, &tau.scale(&(&tri * &level_r))).scale(&half)
            + &two_pi_i(bits, &v.scale(&n_r));
        let mut numer = expo.exp();
        if (level as i64 * n).rem_euclid(2) == 1 {
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
    Ok(&pi_i(bits, &u.scale(&level_r)).exp() * &sum)
}

/// Evaluate `A_l(u, v; tau)` by the direct two-sided series with certified
/// tail.
pub fn appell_a(
    level: u32,
    u: Complex64,
    v: Complex64,
    tau: Complex64,
    prec: &PrecisionSpec,
) -> Result<Complex> {
    let bits = prec.bits();
    appell_a_hp(level, &lift(u, bits), &lift(v, bits), &lift(tau, bits), prec)
}

/// Core of the Euler product `phi(tau) = prod_{n >= 1} (1 - q^n)`, truncated
/// once the remaining log-product is certifiably below the tail tolerance.
pub(crate) fn phi_euler_hp(tau: &Complex, prec: &PrecisionSpec) -> Result<Complex> {
    if !tau.im.is_sign_positive() || tau.im.is_zero() {
        return Err(Error::Domain("tau must lie in the upper half-plane".into()));
    }
    let bits = prec.bits();
    let q = two_pi_i(bits, tau).exp();
    let q_abs = q.abs();
    let one_minus = &Real::one(bits) - &q_abs;
    // |log prod_{n>N} (1 - q^n)| <= |q|^{N+1} / (1-|q|)^2
    let tol = &Real::from_f64(prec.series_tail_tol(), bits) * &(&one_minus * &one_minus);
    let mut acc = Complex::one(bits);
    let mut q_pow = Complex::one(bits);
    for n in 1..=1_000_000 {
        q_pow = &q_pow * &q;
        acc = &acc * &(&Complex::one(bits) - &q_pow);
        if q_pow.abs() < tol {
            return Ok(acc);
        }
        if n == 1_000_000 {
            break;
        }
    }
    Err(Error::Precision(
        "Euler product did not reach its tail bound within 1e6 factors (|q| too close to 1)".into(),
    ))
}

/// `phi(tau)` on f64 arguments.
pub fn phi_euler(tau: Complex64, prec: &PrecisionSpec) -> Result<Complex> {
    phi_euler_hp(&lift(tau, prec.bits()), prec)
}

/// The two pieces of `A_3(u, -tau; tau)` at `tau = i eps / (2 pi)`: the
/// transformed Appell-Lerch part and the Mordell-integral part, together
/// with the direct series value they must reproduce.
#[derive(Clone, Debug)]
pub struct A3Split {
    pub s1: Option<Complex>,
    pub s2: Option<Complex>,
    pub direct: Complex,
    /// Set when `u` falls inside the guard interval around the removable
    /// singularity at `u = 1/3`; only the direct value is computed there.
    pub near_singularity: bool,
    /// `|S1 + S2 - direct|` when the split was evaluated.
    pub split_deviation: Option<f64>,
}

/// Split `A_3(u, -tau; tau)`, `tau = i eps / (2 pi)`, into
///
/// `S1 = (1/(3 tau)) e^{pi i u (3u + 2 tau)/tau}
///        sum_{k=0}^{2} theta((k-1)/3; -1/(3 tau)) mu(u/tau, (k-1)/3; -1/(3 tau))`
///
/// `S2 = (e^{-pi i tau/3} / sqrt(-12 i tau))
///        sum_{k=0}^{2} e^{pi i (-k^2 tau/3 + (6uk + 2 tau k)/3)}
///          theta((k-1)/3; -1/(3 tau)) h(3u + tau - k tau; 3 tau)`
///
/// All transformed arguments are formed in the working precision. Inside the
/// guard interval around `u = 1/3` (where the `S1` representation has its
/// removable singularity) only the direct route is evaluated, flagged.
pub fn appell_a3_split(u: f64, eps: f64, prec: &PrecisionSpec) -> Result<A3Split> {
    if !(u > 0.0 && u <= 0.5) {
        return Err(Error::Domain(format!("need 0 < u <= 1/2, got u = {u}")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    let bits = prec.bits();
    let u_c = Complex::new(Real::from_f64(u, bits), Real::zero(bits));
    let tau = Complex::new(
        Real::zero(bits),
        &Real::from_f64(eps, bits) / &(&Real::from_i64(2, bits) * &Real::pi(bits)),
    );
    let v = -&tau;
    let direct = appell_a_hp(3, &u_c, &v, &tau, prec)?;
    if (u - 1.0 / 3.0).abs() < SINGULARITY_GUARD {
        return Ok(A3Split {
            s1: None,
            s2: None,
            direct,
            near_singularity: true,
            split_deviation: None,
        });
    }
    let three = Real::from_i64(3, bits);
    let tau_inv = tau.recip();
    // -1/(3 tau)
    let tau_t = -&tau_inv.scale(&three.recip());
    let z1 = &u_c * &tau_inv;

    // S1
    let mut s1_sum = Complex::zero(bits);
    for k in 0..3i64 {
        let z2 = Complex::new(&Real::from_i64(k - 1, bits) / &three, Real::zero(bits));
        s1_sum = &s1_sum + &theta_mu_product_hp(&z1, &z2, &tau_t, prec)?;
    }
    let s1_expo = pi_i(
        bits,
        &(&(&u_c * &(&u_c.scale(&three) + &tau.scale(&Real::from_i64(2, bits)))) * &tau_inv),
    );
    let s1 = &(&s1_expo.exp() * &s1_sum) * &tau.scale(&three).recip();

    // S2; the k = 1 term carries theta(0; .) = 0 and drops out exactly.
    let mut s2_sum = Complex::zero(bits);
    for k in [0i64, 2] {
        let k_r = Real::from_i64(k, bits);
        let theta_k = jacobi_theta_hp(
            &Complex::new(&Real::from_i64(k - 1, bits) / &three, Real::zero(bits)),
            &tau_t,
            prec,
        )?;
        // h(3u + (1 - k) tau; 3 tau)
        let h_arg = &u_c.scale(&three) + &tau.scale(&Real::from_i64(1 - k, bits));
        let h_k = mordell_h_hp(&h_arg, &tau.scale(&three), prec, None)?;
        // e^{pi i (-k^2 tau / 3 + (6uk + 2 tau k)/3)}
        let inner = &(-&tau.scale(&(&(&k_r * &k_r) / &three)))
            + &(&u_c.scale(&(&Real::from_i64(6, bits) * &k_r))
                + &tau.scale(&(&Real::from_i64(2, bits) * &k_r)))
                .scale(&three.recip());
        let expo = pi_i(bits, &inner);
        s2_sum = &s2_sum + &(&(&expo.exp() * &theta_k) * &h_k);
    }
    // e^{-pi i tau / 3} / sqrt(-12 i tau)
    let pref = &pi_i(bits, &(-&tau.scale(&three.recip()))).exp()
        / &tau.mul_i().scale(&Real::from_i64(-12, bits)).sqrt();
    let s2 = &pref * &s2_sum;

    let deviation = (&(&s1 + &s2) - &direct).abs().to_f64();
    Ok(A3Split {
        s1: Some(s1),
        s2: Some(s2),
        direct,
        near_singularity: false,
        split_deviation: Some(deviation),
    })
}

/// The product-form route to the rank generating function at
/// `zeta = e^{2 pi i z}`:
/// `(zeta^{-3/2} - zeta^{-1/2}) phi(tau)^{-1} A_3(z, -tau; tau)`,
/// with the fractional powers defined as `e^{-3 pi i z}` and `e^{-pi i z}`
/// (exponentials of the argument, not principal logarithms, so the identity
/// stays continuous across Re(z) = 1/2).
pub fn rank_appell_form(z: f64, tau: Complex64, prec: &PrecisionSpec) -> Result<Complex> {
    if !(z > 0.0 && z <= 0.5) {
        return Err(Error::Domain(format!("need 0 < z <= 1/2, got z = {z}")));
    }
    let bits = prec.bits();
    let z_c = Complex::new(Real::from_f64(z, bits), Real::zero(bits));
    let tau_c = lift(tau, bits);
    let v = -&tau_c;
    let a3 = appell_a_hp(3, &z_c, &v, &tau_c, prec)?;
    let phi = phi_euler_hp(&tau_c, prec)?;
    let prefactor = &(-&pi_i(bits, &z_c.scale(&Real::from_i64(3, bits)))).exp()
        - &(-&pi_i(bits, &z_c)).exp();
    Ok(&(&prefactor * &phi.recip()) * &a3)
}

/// Agreement of the product-form route with the truncated exact series.
#[derive(Clone, Debug)]
pub struct TwoRouteAgreement {
    pub product_route: Complex,
    pub series_route: Complex,
    pub abs_diff: f64,
    /// log10 of the certified bound on the series truncation error.
    pub truncation_log10_bound: f64,
}

/// Compare the product-form value against the truncated series
/// `sum_{n <= N} (sum_m N(m, n) zeta^m) q^n` with `zeta = e^{2 pi i z}`.
/// The truncation error is certified via `p(n) < e^{c sqrt(n)}`,
/// `c = pi sqrt(2/3)`.
pub fn rank_two_route_check(
    z: f64,
    tau: Complex64,
    trunc_order: usize,
    prec: &PrecisionSpec,
) -> Result<TwoRouteAgreement> {
    let bits = prec.bits();
    let product_route = rank_appell_form(z, tau, prec)?;
    let series = rank_series(trunc_order);
    let z_c = Complex::new(Real::from_f64(z, bits), Real::zero(bits));
    let zeta = two_pi_i(bits, &z_c).exp();
    let q = two_pi_i(bits, &lift(tau, bits)).exp();
    let series_route = series.eval_at(&zeta, &q);
    let abs_diff = (&product_route - &series_route).abs().to_f64();

    let q_abs_ln = -2.0 * std::f64::consts::PI * tau.im;
    let c = std::f64::consts::PI * (2.0f64 / 3.0).sqrt();
    let n = trunc_order as f64;
    let ratio_ln = q_abs_ln + c / (2.0 * n.sqrt());
    if ratio_ln >= 0.0 {
        return Err(Error::Precision(
            "tail ratio not contracting; increase the truncation order or Im tau".into(),
        ));
    }
    let tail_ln = c * n.sqrt() + (n + 1.0) * q_abs_ln - (-ratio_ln).ln_1p();
    Ok(TwoRouteAgreement {
        product_route,
        series_route,
        abs_diff,
        truncation_log10_bound: tail_ln / std::f64::consts::LN_10,
    })
}
