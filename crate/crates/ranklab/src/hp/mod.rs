//! Configurable-precision real and complex arithmetic backing the analytic
//! evaluations. Everything here is plumbing over `astro_float`.

mod complex;
mod real;

pub use complex::Complex;
pub use real::Real;
