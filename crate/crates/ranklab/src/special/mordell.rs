//! The Mordell integral
//! `h(z; tau) = int_R e^{pi i tau x^2 - 2 pi z x} / cosh(pi x) dx`
//! evaluated by tanh-sinh quadrature on a certified truncation of the real
//! line, plus the closed-form two-branch bound on `|h|` at transformed
//! arguments.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hp::{Complex, Real};
use crate::special::{lift, PrecisionSpec, QuadratureSpec};

/// Core evaluation on lifted arguments. The integrand is analytic on the
/// real line with Gaussian decay; the double-exponential rule converges
/// geometrically in the refinement level, and refinement stops once doubling
/// the nodes moves the result by less than `quad_tol` relatively.
pub(crate) fn mordell_h_hp(
    z_c: &Complex,
    tau_c: &Complex,
    prec: &PrecisionSpec,
    quad: Option<QuadratureSpec>,
) -> Result<Complex> {
    let quad = match quad {
        Some(q) => q,
        None => {
            let (zr, zi) = z_c.to_f64_pair();
            let (tr, ti) = tau_c.to_f64_pair();
            QuadratureSpec::certify(Complex64::new(zr, zi), Complex64::new(tr, ti), prec.quad_tol())?
        }
    };
    let bits = prec.bits();
    let pi = Real::pi(bits);
    let two_pi = &pi + &pi;
    let half_pi = &pi / &Real::from_i64(2, bits);
    let x_max = Real::from_f64(quad.x_max, bits);
    let tail_tol = Real::from_f64(prec.quad_tol(), bits);

    // integrand f(x) = exp(pi i tau x^2 - 2 pi z x) / cosh(pi x)
    let integrand = |x: &Real| -> Complex {
        let x_sq = x * x;
        let expo = &tau_c.mul_i().scale(&(&pi * &x_sq)) - &z_c.scale(&(&two_pi * x));
        expo.exp().scale(&(&x * &pi).cosh().recip())
    };

    // tanh-sinh node at t: x = X tanh((pi/2) sinh t),
    // weight = X (pi/2) cosh t / cosh^2((pi/2) sinh t)
    let node = |t: &Real| -> (Real, Real) {
        let u = &half_pi * &t.sinh();
        let x = &x_max * &u.tanh();
        let cu = u.cosh();
        let w = &(&x_max * &(&half_pi * &t.cosh())) / &(&cu * &cu);
        (x, w)
    };

    // Level 0: h = 1, all integer nodes. Level L adds the odd multiples of
    // h = 2^-L and halves the previous estimate.
    let mut scale = Real::zero(bits);
    let mut contribution = |t: &Real, scale: &mut Real| -> Result<Complex> {
        let (x, w) = node(t);
        let c = &(&integrand(&x) + &integrand(&(-&x))) * &Complex::new(w, Real::zero(bits));
        let mag = c.abs();
        if !mag.is_finite() {
            return Err(Error::Precision("integrand overflow at quadrature node".into()));
        }
        if mag > *scale {
            *scale = mag;
        }
        Ok(c)
    };

    let zero = Real::zero(bits);
    let f0 = integrand(&zero).scale(&half_pi);
    scale = f0.abs();
    let mut estimate = f0;
    {
        let mut k = 1i64;
        let mut quiet = 0u32;
        loop {
            let t = Real::from_i64(k, bits);
            let c = contribution(&t, &mut scale)?;
            estimate = &estimate + &c;
            if c.abs() <= &tail_tol * &scale {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
            if k as usize > quad.max_nodes {
                return Err(Error::Precision("node budget exhausted at level 0".into()));
            }
        }
    }

    let mut h_step = 1.0f64;
    for level in 1..=quad.max_levels {
        h_step /= 2.0;
        let h_real = Real::from_f64(h_step, bits);
        let mut sum = Complex::zero(bits);
        let mut k = 1i64;
        let mut quiet = 0u32;
        loop {
            let t = &Real::from_i64(k, bits) * &h_real;
            let c = contribution(&t, &mut scale)?;
            sum = &sum + &c;
            if c.abs() <= &tail_tol * &scale {
                quiet += 1;
                if quiet >= 4 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 2;
            if k as usize > 2 * quad.max_nodes {
                return Err(Error::Precision(format!(
                    "node budget exhausted at level {level}"
                )));
            }
        }
        let refined = &estimate.scale(&Real::from_f64(0.5, bits)) + &sum.scale(&h_real);
        let change = (&refined - &estimate).abs();
        estimate = refined;
        if level >= 3 && change <= &tail_tol * &estimate.abs() {
            return Ok(estimate);
        }
        if level == quad.max_levels {
            return Err(Error::QuadratureNotConverged {
                last_delta: change.to_f64(),
                tol: prec.quad_tol(),
            });
        }
    }
    unreachable!("loop always returns at max_levels")
}

/// Evaluate `h(z; tau)`, `Im tau > 0`, with the truncation certified
/// automatically unless a spec is supplied.
pub fn mordell_h(
    z: Complex64,
    tau: Complex64,
    prec: &PrecisionSpec,
    quad: Option<QuadratureSpec>,
) -> Result<Complex> {
    let bits = prec.bits();
    mordell_h_hp(&lift(z, bits), &lift(tau, bits), prec, quad)
}

/// Two-branch bound on `|h(i beta / (kappa z) + alpha; i / (kappa z))|` for
/// `kappa >= 1`, `|alpha| < 1/2`, `-1/2 <= beta < 1/2`, `Re z > 0`.
pub fn mordell_h_bound(
    kappa: u32,
    alpha: f64,
    beta: f64,
    z: Complex64,
    bits: usize,
) -> Result<Real> {
    if kappa < 1 {
        return Err(Error::Domain("kappa must be a positive integer".into()));
    }
    if !(alpha.abs() < 0.5) {
        return Err(Error::Domain(format!("need |alpha| < 1/2, got {alpha}")));
    }
    if !(-0.5..0.5).contains(&beta) {
        return Err(Error::Domain(format!("need -1/2 <= beta < 1/2, got {beta}")));
    }
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("need Re z > 0, got {}", z.re)));
    }
    let pi = Real::pi(bits);
    let kappa_r = Real::from_i64(kappa as i64, bits);
    // Re(1/z) = Re(z) / |z|^2
    let re_inv = {
        let zr = Real::from_f64(z.re, bits);
        let zi = Real::from_f64(z.im, bits);
        &zr / &(&(&zr * &zr) + &(&zi * &zi))
    };
    let sqrt_kappa = kappa_r.sqrt();
    let inv_sqrt_re = re_inv.sqrt().recip();
    if beta == -0.5 {
        // (1 + kappa^{1/2} Re(1/z)^{-1/2}) e^{-(pi/(4 kappa)) Re(1/z)}
        let expo = -&(&(&pi / &(&Real::from_i64(4, bits) * &kappa_r)) * &re_inv);
        Ok(&(&Real::one(bits) + &(&sqrt_kappa * &inv_sqrt_re)) * &expo.exp())
    } else {
        // |sec(pi beta)| kappa^{1/2} Re(1/z)^{-1/2}
        //   e^{-(pi beta^2 / kappa) Re(1/z) + pi kappa alpha^2 Re(1/z)^{-1}}
        let beta_r = Real::from_f64(beta, bits);
        let alpha_r = Real::from_f64(alpha, bits);
        let sec = (&pi * &beta_r).cos().recip().abs();
        let expo = &(-&(&(&(&pi * &(&beta_r * &beta_r)) / &kappa_r) * &re_inv))
            + &(&(&(&pi * &kappa_r) * &(&alpha_r * &alpha_r)) / &re_inv);
        Ok(&(&sec * &(&sqrt_kappa * &inv_sqrt_re)) * &expo.exp())
    }
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
    fn matches_reference_values() {
        let p = prec();
        let v = mordell_h(c64(0.0, 0.0), c64(0.0, 1.0), &p, None).unwrap();
        let (re, im) = v.to_f64_pair();
        assert!((re - 0.6690633391358686045).abs() < 1e-15, "re = {re}");
        assert!(im.abs() < 1e-15);

        let v = mordell_h(c64(0.3, 0.0), c64(0.0, 1.0), &p, None).unwrap();
        assert!((v.to_f64_pair().0 - 0.7715805935783728168).abs() < 1e-15);

        let v = mordell_h(c64(0.3, 0.1), c64(0.2, 0.9), &p, None).unwrap();
        let (re, im) = v.to_f64_pair();
        assert!((re - 0.7592940148108303469).abs() < 1e-15, "re = {re}");
        assert!((im - 0.1300386992052662555).abs() < 1e-15, "im = {im}");
    }

    #[test]
    fn even_in_z() {
        let p = prec();
        let a = mordell_h(c64(0.37, 0.21), c64(0.1, 0.8), &p, None).unwrap();
        let b = mordell_h(c64(-0.37, -0.21), c64(0.1, 0.8), &p, None).unwrap();
        assert!((&a - &b).abs().to_f64() < 1e-24);
    }

    #[test]
    fn explicit_quadrature_spec_converges_like_auto() {
        let p = prec();
        let auto = mordell_h(c64(0.2, 0.0), c64(0.0, 1.2), &p, None).unwrap();
        let spec = QuadratureSpec::certify(c64(0.2, 0.0), c64(0.0, 1.2), p.quad_tol()).unwrap();
        let wider = QuadratureSpec {
            x_max: spec.x_max + 3.0,
            ..spec
        };
        let again = mordell_h(c64(0.2, 0.0), c64(0.0, 1.2), &p, Some(wider)).unwrap();
        assert!((&auto - &again).abs().to_f64() < 1e-22);
    }

    #[test]
    fn bound_branches_and_domain() {
        let bits = 128;
        // beta = 0, alpha = 0 reduces to kappa^{1/2} Re(1/z)^{-1/2}
        let b = mordell_h_bound(2, 0.0, 0.0, c64(1.5, 0.7), bits).unwrap();
        let re_inv = 1.5 / (1.5f64 * 1.5 + 0.7 * 0.7);
        assert!((b.to_f64() - (2.0f64).sqrt() / re_inv.sqrt()).abs() < 1e-12);
        // the beta = -1/2 branch
        let b = mordell_h_bound(1, 0.1, -0.5, c64(2.0, 0.0), bits).unwrap();
        let expect = (1.0 + (1.0f64 / 0.5).sqrt()) * (-std::f64::consts::PI / 4.0 * 0.5).exp();
        assert!((b.to_f64() - expect).abs() < 1e-12);
        // domain errors
        assert!(mordell_h_bound(0, 0.0, 0.0, c64(1.0, 0.0), bits).is_err());
        assert!(mordell_h_bound(1, 0.6, 0.0, c64(1.0, 0.0), bits).is_err());
        assert!(mordell_h_bound(1, 0.0, 0.5, c64(1.0, 0.0), bits).is_err());
        assert!(mordell_h_bound(1, 0.0, 0.0, c64(-1.0, 0.0), bits).is_err());
    }

    #[test]
    fn bound_dominates_h_at_a_transformed_point() {
        let p = prec();
        let (kappa, alpha, beta) = (1u32, 0.2f64, 0.3f64);
        let z = c64(1.2, 0.4);
        // arguments i beta/(kappa z) + alpha and i/(kappa z)
        let iz = Complex64::new(0.0, 1.0) / (z * kappa as f64);
        let arg_z = iz * beta + alpha;
        let h = mordell_h(arg_z, iz, &p, None).unwrap();
        let bound = mordell_h_bound(kappa, alpha, beta, z, p.bits()).unwrap();
        assert!(h.abs() <= bound, "|h| = {} > bound = {}", h.abs().to_f64(), bound.to_f64());
    }
}
