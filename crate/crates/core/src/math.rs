//! Thin wrappers over `libm` so the crate builds without `std`.

use crate::Scalar;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn abs(z: Scalar) -> f64 {
    libm::hypot(z.re, z.im)
}

#[inline]
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

pub(crate) fn is_finite(z: Scalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
