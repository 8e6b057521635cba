//! Self-contained special functions used as independent oracles: Airy `Ai`
//! on the real line and Bessel `J0`, `Y0` (hence `H0^(1)`) on the positive axis.

mod airy;
mod bessel;

pub use airy::{airy_ai, airy_ai_prime, airy_ai_with_error, airy_pair, AIRY_RANGE};
pub use bessel::{bessel_j0_y0, bessel_j1_y1, hankel0, hankel0_with_error, HANKEL_MAX};

/// A value together with an estimate of its truncation and rounding error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult<T> {
    pub value: T,
    pub est_error: f64,
}
