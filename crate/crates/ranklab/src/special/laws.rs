//! Seeded sample-point verification of the transformation laws and of the
//! Mordell-integral bound. All randomness flows from one 64-bit seed so a
//! report can be replayed byte for byte.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hp::{Complex, Real};
use crate::special::mordell::{mordell_h_bound, mordell_h_hp};
use crate::special::mu::theta_mu_product_hp;
use crate::special::theta::jacobi_theta_hp;
use crate::special::{pi_i, two_pi_i, PrecisionSpec, POLE_GUARD};

/// Residual summary for one transformation law over the sampled points.
#[derive(Clone, Debug)]
pub struct LawResult {
    pub law: String,
    pub samples: usize,
    pub max_residual: f64,
    /// Flattened coordinates of the worst sample (z/u/v then tau).
    pub worst_point: Vec<f64>,
    /// Draws rejected by the pole guards and redrawn.
    pub resamples: usize,
}

fn lift_pt(z: Complex64, bits: usize) -> Complex {
    Complex::from_f64(z.re, z.im, bits)
}

fn draw(rng: &mut ChaCha8Rng, re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> Complex64 {
    Complex64::new(rng.gen_range(re), rng.gen_range(im))
}

fn draw_tau(rng: &mut ChaCha8Rng) -> Complex64 {
    draw(rng, -0.4..0.4, 0.5..1.3)
}

/// `mu` from the product form plus a guarded division by theta.
fn mu_hp(u: &Complex, v: &Complex, tau: &Complex, prec: &PrecisionSpec) -> Result<Complex> {
    let th = jacobi_theta_hp(v, tau, prec)?;
    if th.abs().to_f64() < POLE_GUARD {
        return Err(Error::NearPole("theta(v; tau) near zero".into()));
    }
    Ok(&theta_mu_product_hp(u, v, tau, prec)? / &th)
}

/// `sqrt(-i tau)` on the principal branch (right half-plane for upper
/// half-plane tau).
fn sqrt_minus_i_tau(tau: &Complex) -> Complex {
    (-&tau.mul_i()).sqrt()
}

struct LawRun {
    law: &'static str,
    samples: usize,
    max_residual: f64,
    worst_point: Vec<f64>,
    resamples: usize,
}

impl LawRun {
    fn new(law: &'static str) -> Self {
        Self {
            law,
            samples: 0,
            max_residual: 0.0,
            worst_point: Vec::new(),
            resamples: 0,
        }
    }

    fn record(&mut self, residual: f64, point: Vec<f64>) {
        self.samples += 1;
        if residual > self.max_residual || self.samples == 1 {
            self.max_residual = residual;
            self.worst_point = point;
        }
    }

    fn finish(self) -> LawResult {
        LawResult {
            law: self.law.to_string(),
            samples: self.samples,
            max_residual: self.max_residual,
            worst_point: self.worst_point,
            resamples: self.resamples,
        }
    }
}

/// Run one law at `samples` points, redrawing on pole-guard rejections.
fn run_law(
    rng: &mut ChaCha8Rng,
    samples: usize,
    law: &'static str,
    mut eval: impl FnMut(&mut ChaCha8Rng) -> Result<(f64, Vec<f64>)>,
) -> Result<LawResult> {
    let mut run = LawRun::new(law);
    for _ in 0..samples {
        let mut attempts = 0;
        loop {
            match eval(rng) {
                Ok((residual, point)) => {
                    run.record(residual, point);
                    break;
                }
                Err(Error::NearPole(_)) => {
                    run.resamples += 1;
                    attempts += 1;
                    if attempts > 200 {
                        return Err(Error::Precision(format!(
                            "law {law}: 200 consecutive draws hit a pole guard"
                        )));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(run.finish())
}

/// Verify the theta laws (shift and inversion), the Appell-Lerch laws
/// (shift and inversion against the Mordell integral), the two Mordell
/// integral laws (inversion and shift), and the level decomposition for
/// `l = 1, 2, 3`, each at `samples` seeded points. Residuals are absolute.
pub fn transform_suite(samples: usize, seed: u64, prec: &PrecisionSpec) -> Result<Vec<LawResult>> {
    let bits = prec.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let one = Complex::one(bits);

    // theta(z + 1; tau) = -theta(z; tau)
    out.push(run_law(&mut rng, samples, "theta_shift", |rng| {
        let z = draw(rng, -0.8..0.8, -0.35..0.35);
        let tau = draw_tau(rng);
        let z_c = lift_pt(z, bits);
        let tau_c = lift_pt(tau, bits);
        let lhs = jacobi_theta_hp(&(&z_c + &one), &tau_c, prec)?;
        let rhs = -&jacobi_theta_hp(&z_c, &tau_c, prec)?;
        Ok(((&lhs - &rhs).abs().to_f64(), vec![z.re, z.im, tau.re, tau.im]))
    })?);

    // theta(z; tau) = (i / sqrt(-i tau)) e^{-pi i z^2 / tau} theta(z/tau; -1/tau)
    out.push(run_law(&mut rng, samples, "theta_inversion", |rng| {
        let z = draw(rng, -0.8..0.8, -0.35..0.35);
        let tau = draw_tau(rng);
        let z_c = lift_pt(z, bits);
        let tau_c = lift_pt(tau, bits);
        let tau_inv = tau_c.recip();
        let lhs = jacobi_theta_hp(&z_c, &tau_c, prec)?;
        let pref = &Complex::i(bits) / &sqrt_minus_i_tau(&tau_c);
        let gauss = (-&pi_i(bits, &(&(&z_c * &z_c) * &tau_inv))).exp();
        let rhs = &(&pref * &gauss)
            * &jacobi_theta_hp(&(&z_c * &tau_inv), &(-&tau_inv), prec)?;
        Ok(((&lhs - &rhs).abs().to_f64(), vec![z.re, z.im, tau.re, tau.im]))
    })?);

    // mu(u + 1, v; tau) = -mu(u, v; tau)
    out.push(run_law(&mut rng, samples, "mu_shift", |rng| {
        let u = draw(rng, -0.6..0.6, -0.3..0.3);
        let v = draw(rng, -0.6..0.6, -0.3..0.3);
        let tau = draw_tau(rng);
        let u_c = lift_pt(u, bits);
        let v_c = lift_pt(v, bits);
        let tau_c = lift_pt(tau, bits);
        let lhs = mu_hp(&(&u_c + &one), &v_c, &tau_c, prec)?;
        let rhs = -&mu_hp(&u_c, &v_c, &tau_c, prec)?;
        Ok(((&lhs - &rhs).abs().to_f64(), vec![u.re, u.im, v.re, v.im, tau.re, tau.im]))
    })?);

    // mu(u, v; tau) = -(1/sqrt(-i tau)) e^{pi i (u-v)^2 / tau}
    //                   mu(u/tau, v/tau; -1/tau) + (1/(2i)) h(u - v; tau)
    out.push(run_law(&mut rng, samples, "mu_inversion", |rng| {
        let u = draw(rng, -0.6..0.6, -0.3..0.3);
        let v = draw(rng, -0.6..0.6, -0.3..0.3);
        let tau = draw_tau(rng);
        let u_c = lift_pt(u, bits);
        let v_c = lift_pt(v, bits);
        let tau_c = lift_pt(tau, bits);
        let tau_inv = tau_c.recip();
        let lhs = mu_hp(&u_c, &v_c, &tau_c, prec)?;
        let diff = &u_c - &v_c;
        let gauss = pi_i(bits, &(&(&diff * &diff) * &tau_inv)).exp();
        let transformed = mu_hp(&(&u_c * &tau_inv), &(&v_c * &tau_inv), &(-&tau_inv), prec)?;
        let mordell = mordell_h_hp(&diff, &tau_c, prec, None)?;
        let rhs = &(-&(&(&gauss * &transformed) / &sqrt_minus_i_tau(&tau_c)))
            + &(&mordell / &Complex::i(bits).scale(&Real::from_i64(2, bits)));
        Ok(((&lhs - &rhs).abs().to_f64(), vec![u.re, u.im, v.re, v.im, tau.re, tau.im]))
    })?);

    // h(z; tau) = (1/sqrt(-i tau)) e^{pi i z^2 / tau} h(z/tau; -1/tau)
    out.push(run_law(&mut rng, samples, "mordell_inversion", |rng| {
        let z = draw(rng, -0.7..0.7, -0.3..0.3);
        let tau = draw_tau(rng);
        let z_c = lift_pt(z, bits);
        let tau_c = lift_pt(tau, bits);
        let tau_inv = tau_c.recip();
        let lhs = mordell_h_hp(&z_c, &tau_c, prec, None)?;
        let gauss = pi_i(bits, &(&(&z_c * &z_c) * &tau_inv)).exp();
        let rhs = &(&gauss * &mordell_h_hp(&(&z_c * &tau_inv), &(-&tau_inv), prec, None)?)
            / &sqrt_minus_i_tau(&tau_c);
        Ok(((&lhs - &rhs).abs().to_f64(), vec![z.re, z.im, tau.re, tau.im]))
    })?);

    // h(z; tau) + e^{-2 pi i z - pi i tau} h(z + tau; tau) = 2 e^{-pi i z - pi i tau / 4}
    out.push(run_law(&mut rng, samples, "mordell_shift", |rng| {
        let z = draw(rng, -0.7..0.7, -0.3..0.3);
        let tau = draw_tau(rng);
        let z_c = lift_pt(z, bits);
        let tau_c = lift_pt(tau, bits);
        let lhs_a = mordell_h_hp(&z_c, &tau_c, prec, None)?;
        let shift_factor = (&(-&two_pi_i(bits, &z_c)) - &pi_i(bits, &tau_c)).exp();
        let lhs_b = &shift_factor * &mordell_h_hp(&(&z_c + &tau_c), &tau_c, prec, None)?;
        let quarter = tau_c.scale(&Real::from_f64(0.25, bits));
        let rhs = (&(-&pi_i(bits, &z_c)) - &pi_i(bits, &quarter))
            .exp()
            .scale(&Real::from_i64(2, bits));
        Ok((
            (&(&lhs_a + &lhs_b) - &rhs).abs().to_f64(),
            vec![z.re, z.im, tau.re, tau.im],
        ))
    })?);

    // A_l(u, v; tau) = sum_{k < l} e^{2 pi i u k}
    //                    theta(v + k tau + (l-1)/2; l tau) mu(l u, v + k tau + (l-1)/2; l tau)
    for level in 1u32..=3 {
        let law: &'static str = match level {
            1 => "appell_level_1",
            2 => "appell_level_2",
            _ => "appell_level_3",
        };
        out.push(run_law(&mut rng, samples, law, |rng| {
            let u = draw(rng, -0.45..0.45, -0.25..0.25);
            let v = draw(rng, -0.45..0.45, -0.25..0.25);
            let tau = draw_tau(rng);
            let u_c = lift_pt(u, bits);
            let v_c = lift_pt(v, bits);
            let tau_c = lift_pt(tau, bits);
            let lhs = super::appell::appell_a_hp(level, &u_c, &v_c, &tau_c, prec)?;
            let level_r = Real::from_i64(level as i64, bits);
            let tau_l = tau_c.scale(&level_r);
            let offset = Real::from_f64((level as f64 - 1.0) / 2.0, bits);
            let mut rhs = Complex::zero(bits);
            for k in 0..level as i64 {
                let k_r = Real::from_i64(k, bits);
                let w = &(&v_c + &tau_c.scale(&k_r))
                    + &Complex::new(offset.clone(), Real::zero(bits));
                let p = theta_mu_product_hp(&u_c.scale(&level_r), &w, &tau_l, prec)?;
                rhs = &rhs + &(&two_pi_i(bits, &u_c.scale(&k_r)).exp() * &p);
            }
            Ok((
                (&lhs - &rhs).abs().to_f64(),
                vec![u.re, u.im, v.re, v.im, tau.re, tau.im],
            ))
        })?);
    }
    Ok(out)
}

/// One sampled check of the closed-form bound on the Mordell integral at
/// transformed arguments.
#[derive(Clone, Debug)]
pub struct BoundSample {
    pub kappa: u32,
    pub alpha: f64,
    pub beta: f64,
    pub z: (f64, f64),
    pub h_abs: f64,
    pub bound: f64,
}

impl BoundSample {
    pub fn violated(&self) -> bool {
        self.h_abs > self.bound * (1.0 + 1e-9)
    }
}

/// Sample admissible `(kappa, alpha, beta, z)` and check
/// `|h(i beta / (kappa z) + alpha; i / (kappa z))|` against the two-branch
/// bound. Every fifth draw pins `beta = -1/2` to exercise the second branch.
pub fn bound_suite(samples: usize, seed: u64, prec: &PrecisionSpec) -> Result<Vec<BoundSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let kappa = rng.gen_range(1u32..=3);
        let alpha = rng.gen_range(-0.45..0.45);
        let beta = if i % 5 == 4 {
            -0.5
        } else {
            rng.gen_range(-0.45..0.45)
        };
        let z = Complex64::new(rng.gen_range(0.6..2.0), rng.gen_range(-0.7..0.7));
        let i_over_kz = Complex64::new(0.0, 1.0) / (z * kappa as f64);
        let arg = i_over_kz * beta + alpha;
        let h = mordell_h_hp(
            &lift_pt(arg, prec.bits()),
            &lift_pt(i_over_kz, prec.bits()),
            prec,
            None,
        )?;
        let bound = mordell_h_bound(kappa, alpha, beta, z, prec.bits())?;
        out.push(BoundSample {
            kappa,
            alpha,
            beta,
            z: (z.re, z.im),
            h_abs: h.abs().to_f64(),
            bound: bound.to_f64(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_tight_tolerance() {
        let prec = PrecisionSpec::from_digits(30).unwrap();
        let results = transform_suite(4, 11, &prec).unwrap();
        assert_eq!(results.len(), 9);
        for r in &results {
            assert_eq!(r.samples, 4);
            assert!(r.max_residual < 1e-8, "{}: {}", r.law, r.max_residual);
        }
    }

    #[test]
    fn suite_is_reproducible() {
        let prec = PrecisionSpec::from_digits(30).unwrap();
        let a = transform_suite(2, 7, &prec).unwrap();
        let b = transform_suite(2, 7, &prec).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.max_residual, y.max_residual);
            assert_eq!(x.worst_point, y.worst_point);
            assert_eq!(x.resamples, y.resamples);
        }
    }

    #[test]
    fn bound_holds_on_small_sample() {
        let prec = PrecisionSpec::from_digits(30).unwrap();
        let samples = bound_suite(10, 3, &prec).unwrap();
        assert_eq!(samples.len(), 10);
        assert!(samples.iter().any(|s| s.beta == -0.5));
        for s in &samples {
            assert!(!s.violated(), "violation at {:?}", s);
        }
    }
}
