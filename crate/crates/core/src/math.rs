//! Scalar float helpers that work with and without `std`.
//!
//! With `std` enabled these forward to the intrinsic-backed methods;
//! otherwise they fall back to `libm`. Both paths are deterministic
//! within a build, which is what the reproducibility contract needs.

#![allow(dead_code)]

use num_complex::Complex64;

#[cfg(feature = "std")]
#[inline]
pub fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn sin(x: f64) -> f64 {
    x.sin()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn cos(x: f64) -> f64 {
    x.cos()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn exp(x: f64) -> f64 {
    x.exp()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn log2(x: f64) -> f64 {
    x.log2()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn ceil(x: f64) -> f64 {
    x.ceil()
}

#[cfg(not(feature = "std"))]
#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    f64::abs(x)
}

#[inline]
pub fn max(a: f64, b: f64) -> f64 {
    f64::max(a, b)
}

#[inline]
pub fn min(a: f64, b: f64) -> f64 {
    f64::min(a, b)
}

/// e^{i phi} without going through a general complex exponential.
#[inline]
pub fn expi(phi: f64) -> Complex64 {
    Complex64::new(cos(phi), sin(phi))
}
