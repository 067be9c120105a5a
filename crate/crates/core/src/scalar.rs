//! Scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every literal used by this crate is representable.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `base^w` for a real positive base on the principal branch.
#[inline]
pub(crate) fn pow_real_base<T: Real>(base: T, w: Complex<T>) -> Complex<T> {
    debug_assert!(base > T::zero(), "principal power needs a positive base");
    (w * base.ln()).exp()
}

/// `exp(w) - 1` without cancellation for small `|w|`.
pub(crate) fn expm1_complex<T: Real>(w: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let s = (w.im * half).sin();
    let cos_m1 = -(s + s) * s;
    let ea = w.re.exp();
    Complex::new(w.re.exp_m1() * w.im.cos() + cos_m1, ea * w.im.sin())
}

/// True when `z` sits within `thresh` of an integer in `lo..=hi` (as reals).
pub(crate) fn near_integer_in<T: Real>(z: Complex<T>, lo: f64, hi: f64, thresh: T) -> Option<i64> {
    let r = z.re.round();
    let rf = r.to_f64()?;
    if rf < lo || rf > hi {
        return None;
    }
    if (z - Complex::new(r, T::zero())).norm() < thresh {
        Some(rf as i64)
    } else {
        None
    }
}

/// `Some(p)` when `z` is exactly the nonnegative integer `p`.
pub(crate) fn as_nonneg_integer<T: Real>(z: Complex<T>) -> Option<u64> {
    if z.im == T::zero() && z.re >= T::zero() && z.re == z.re.floor() && z.re < T::lit(9.0e15) {
        z.re.to_u64()
    } else {
        None
    }
}

pub(crate) fn fmt_complex<T: Real>(z: Complex<T>) -> String {
    if z.im == T::zero() {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
