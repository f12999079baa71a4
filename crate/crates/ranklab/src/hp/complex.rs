//! Complex arithmetic over [`Real`].

use super::Real;

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Self::new(Real::from_f64(re, bits), Real::from_f64(im, bits))
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_f64(1.0, 0.0, bits)
    }

    pub fn i(bits: usize) -> Self {
        Self::from_f64(0.0, 1.0, bits)
    }

    /// `e^{i angle}` for a real angle.
    pub fn from_polar_unit(angle: &Real) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self::new(-&self.im, self.re.clone())
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Self::new(&self.re / &d, &(-&self.im) / &d)
    }

    /// `e^z = e^{Re z} (cos Im z + i sin Im z)`.
    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Self::new(&m * &self.im.cos(), &m * &self.im.sin())
    }

    /// Principal square root (branch cut along the negative real axis,
    /// result in the closed right half-plane).
    pub fn sqrt(&self) -> Self {
        let bits = self.bits();
        if self.re.is_zero() && self.im.is_zero() {
            return Self::zero(bits);
        }
        let r = self.abs();
        let two = Real::from_i64(2, bits);
        if !self.re.is_sign_negative() {
            let a = (&(&r + &self.re) / &two).sqrt();
            let b = &self.im / &(&a * &two);
            Self::new(a, b)
        } else {
            let b_mag = (&(&r - &self.re) / &two).sqrt();
            let b = if self.im.is_sign_negative() {
                -&b_mag
            } else {
                b_mag
            };
            let a = &self.im / &(&b * &two);
            Self::new(a, b)
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        let bits = self.bits();
        if n == 0 {
            return Self::one(bits);
        }
        let mut base = if n > 0 { self.clone() } else { self.recip() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl std::ops::Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl std::ops::Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        self * &rhs.recip()
    }
}

impl std::ops::Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: usize = 160;

    fn close(z: &Complex, re: f64, im: f64, tol: f64) {
        let (a, b) = z.to_f64_pair();
        assert!((a - re).abs() <= tol && (b - im).abs() <= tol, "{a}+{b}i vs {re}+{im}i");
    }

    #[test]
    fn field_ops() {
        let a = Complex::from_f64(1.5, -0.5, B);
        let b = Complex::from_f64(-0.25, 2.0, B);
        close(&(&a * &b), 1.5 * -0.25 - -0.5 * 2.0, 1.5 * 2.0 + -0.5 * -0.25, 1e-14);
        close(&(&(&a / &b) * &b), 1.5, -0.5, 1e-14);
        close(&a.recip().scale(&a.norm_sqr()), 1.5, 0.5, 1e-14);
    }

    #[test]
    fn exp_and_polar() {
        let z = Complex::from_f64(0.3, 1.2, B);
        let e = z.exp();
        let m = 0.3f64.exp();
        close(&e, m * 1.2f64.cos(), m * 1.2f64.sin(), 1e-14);
        let u = Complex::from_polar_unit(&Real::from_f64(2.5, B));
        close(&u, 2.5f64.cos(), 2.5f64.sin(), 1e-15);
    }

    #[test]
    fn sqrt_principal_branch() {
        for &(re, im) in &[(2.0, 3.0), (-2.0, 3.0), (-2.0, -3.0), (2.0, -3.0), (0.0, 1.0), (4.0, 0.0)] {
            let z = Complex::from_f64(re, im, B);
            let s = z.sqrt();
            close(&(&s * &s), re, im, 1e-13);
            assert!(!s.re.is_sign_negative() || s.re.is_zero());
        }
        // right half-plane input (the -i*tau convention): continuous, Re > 0
        let z = Complex::from_f64(0.9, -0.2, B);
        assert!(z.sqrt().re.is_sign_positive());
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let z = Complex::from_f64(0.7, 0.4, B);
        let mut acc = Complex::one(B);
        for _ in 0..5 {
            acc = &acc * &z;
        }
        let p = z.powi(5);
        close(&(&p - &acc), 0.0, 0.0, 1e-14);
        let inv = z.powi(-5);
        close(&(&inv * &acc), 1.0, 0.0, 1e-13);
    }
}
