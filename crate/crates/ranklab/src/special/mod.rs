//! Configurable-precision evaluation of the Jacobi theta function, the
//! Appell-Lerch sums, the Mordell integral, and the level-`l` Appell
//! functions, together with their transformation laws.

mod appell;
mod laws;
mod mordell;
mod mu;
mod theta;

pub use appell::{appell_a, appell_a3_split, phi_euler, rank_appell_form, rank_two_route_check, A3Split, TwoRouteAgreement};
pub use laws::{bound_suite, transform_suite, BoundSample, LawResult};
pub use mordell::{mordell_h, mordell_h_bound};
pub use mu::{theta_mu_product, zwegers_mu};
pub use theta::jacobi_theta;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hp::{Complex, Real};

/// Rejection threshold on `|1 - e^{2 pi i (u + n tau)}|` for the Appell-Lerch
/// denominators.
pub const POLE_GUARD: f64 = 1e-6;

/// Width of the interval around `u = 1/3` inside which the transformed
/// route of the level-three Appell function is not evaluated (its
/// singularity there is removable but numerically hostile; the direct
/// series is regular).
pub const SINGULARITY_GUARD: f64 = 1e-3;

/// Requested precision for analytic evaluation: significant decimal digits
/// plus the relative tolerances used for series tails and quadrature
/// convergence.
#[derive(Clone, Copy, Debug)]
pub struct PrecisionSpec {
    digits: u32,
    series_tail_tol: f64,
    quad_tol: f64,
}

impl PrecisionSpec {
    /// Tolerances derived from the digit count: series tails certified a few
    /// digits below the working precision, quadrature convergence a few
    /// digits above it.
    pub fn from_digits(digits: u32) -> Result<Self> {
        if digits < 16 {
            return Err(Error::Domain(format!(
                "precision requires at least 16 significant digits, got {digits}"
            )));
        }
        Ok(Self {
            digits,
            series_tail_tol: 10f64.powi(-(digits as i32 + 5)),
            quad_tol: 10f64.powi(-(digits as i32 - 6)),
        })
    }

    /// Default digit count for evaluation at `tau = i eps / (2 pi)`:
    /// 30 digits suffice for `eps >= 0.5`; below that the transformed-route
    /// magnitudes grow like `exp(c / eps)` and 60 digits are needed. Below
    /// the documented floor of 0.05 the request is refused.
    pub fn for_epsilon(eps: f64) -> Result<Self> {
        if eps >= 0.5 {
            Self::from_digits(30)
        } else if eps >= 0.05 {
            Self::from_digits(60)
        } else {
            Err(Error::Precision(format!(
                "eps = {eps} is below the supported floor of 0.05; magnitudes near exp(24.7/eps) \
                 would need more than 60 digits of headroom"
            )))
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn series_tail_tol(&self) -> f64 {
        self.series_tail_tol
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    pub fn bits(&self) -> usize {
        Real::bits_for_digits(self.digits)
    }
}

impl Default for PrecisionSpec {
    fn default() -> Self {
        Self::from_digits(30).expect("30 >= 16")
    }
}

/// Double-exponential quadrature configuration for the Mordell integral:
/// truncation of the real line to `[-x_max, x_max]` plus refinement limits.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    /// Truncation point, certified against the Gaussian tail bound.
    pub x_max: f64,
    /// Refinement levels (node count roughly doubles per level).
    pub max_levels: u32,
    /// Hard cap on nodes per half-line per level.
    pub max_nodes: usize,
}

impl QuadratureSpec {
    /// Choose the truncation point for the integrand of `h(z; tau)` so the
    /// discarded tail is below `quad_tol` relative to the integrand peak:
    /// the integrand modulus is at most
    /// `2 exp(-pi y x^2 + 2 pi |Re z| x - pi |x|)` with `y = Im tau`.
    pub fn certify(z: Complex64, tau: Complex64, quad_tol: f64) -> Result<Self> {
        let y = tau.im;
        if y <= 0.0 {
            return Err(Error::Domain(format!(
                "tau must lie in the upper half-plane, got Im tau = {y}"
            )));
        }
        let a = z.re.abs();
        // log-magnitude g(x) = -pi y x^2 + (2 pi a - pi) x, peak at x*.
        let peak_x = ((2.0 * a - 1.0) / (2.0 * y)).max(0.0);
        let g = |x: f64| -std::f64::consts::PI * y * x * x + (2.0 * a - 1.0) * std::f64::consts::PI * x;
        let g_peak = g(peak_x);
        let budget = quad_tol.ln() + g_peak;
        // find X with g(X) + ln(tail factor) below the budget
        let mut x = peak_x + 1.0;
        for _ in 0..10_000 {
            let slope = 2.0 * std::f64::consts::PI * y * x - (2.0 * a - 1.0) * std::f64::consts::PI;
            if slope > 0.0 && g(x) + (2.0f64).ln() - slope.ln() <= budget {
                return Ok(Self {
                    x_max: x,
                    max_levels: 14,
                    max_nodes: 1 << 21,
                });
            }
            x += 0.5 + x * 0.05;
        }
        Err(Error::QuadratureTail {
            configured: x,
            required: f64::INFINITY,
        })
    }
}

/// A point `(u, v, tau)` with `Im tau > 0`, optionally remembered as coming
/// from the parameterization `tau = i eps / (2 pi)`.
#[derive(Clone, Copy, Debug)]
pub struct HalfPlanePoint {
    u: Complex64,
    v: Complex64,
    tau: Complex64,
    eps: Option<f64>,
}

impl HalfPlanePoint {
    pub fn from_tau(u: Complex64, v: Complex64, tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Domain(format!(
                "tau must lie in the upper half-plane, got Im tau = {}",
                tau.im
            )));
        }
        Ok(Self { u, v, tau, eps: None })
    }

    /// The cusp parameterization `tau = i eps / (2 pi)`, `v = -tau`.
    pub fn from_epsilon(u: f64, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("eps must be positive, got {eps}")));
        }
        let tau = Complex64::new(0.0, eps / (2.0 * std::f64::consts::PI));
        Ok(Self {
            u: Complex64::new(u, 0.0),
            v: -tau,
            tau,
            eps: Some(eps),
        })
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn v(&self) -> Complex64 {
        self.v
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.eps
    }

    /// `q = e^{2 pi i tau}` at the working precision.
    pub fn q(&self, bits: usize) -> Complex {
        let tau = lift(self.tau, bits);
        two_pi_i(bits, &tau).exp()
    }

    /// `q_0 = e^{-2 pi i / tau}` at the working precision.
    pub fn q0(&self, bits: usize) -> Complex {
        let tau = lift(self.tau, bits);
        (&-&two_pi_i(bits, &Complex::one(bits)) / &tau).exp()
    }

    /// `zeta = e^{2 pi i u}`.
    pub fn zeta(&self, bits: usize) -> Complex {
        let u = lift(self.u, bits);
        two_pi_i(bits, &u).exp()
    }
}

/// Lift an f64 point into the working precision (exactly).
pub(crate) fn lift(z: Complex64, bits: usize) -> Complex {
    Complex::from_f64(z.re, z.im, bits)
}

/// `2 pi i * z`.
pub(crate) fn two_pi_i(bits: usize, z: &Complex) -> Complex {
    z.mul_i().scale(&(&Real::from_i64(2, bits) * &Real::pi(bits)))
}

/// `pi i * z`.
pub(crate) fn pi_i(bits: usize, z: &Complex) -> Complex {
    z.mul_i().scale(&Real::pi(bits))
}
