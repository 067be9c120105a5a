use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{fmt_complex, near_integer_in, Real};

/// Real part at which the recurrence hands over to the asymptotic series.
pub const DIGAMMA_SHIFT: f64 = 12.0;
/// Distance to a nonpositive integer treated as a pole.
pub const DIGAMMA_POLE_TOL: f64 = 1e-12;

// B_{2k} / (2k), k = 1..8
#[allow(clippy::excessive_precision)]
const ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Digamma function ψ(z) for complex `z`.
///
/// Uses ψ(z) = ψ(z + 1) − 1/z until `Re z ≥ 12`, then
/// ψ(z) ≈ log z − 1/(2z) − Σ_{k=1..8} B_{2k}/(2k z^{2k}).
/// No reflection is used, so large negative real parts cost one step each.
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if let Some(p) = near_integer_in(z, f64::NEG_INFINITY, 0.0, T::lit(DIGAMMA_POLE_TOL)) {
        return Err(Error::Pole(format!(
            "digamma at z = {} (nonpositive integer {p})",
            fmt_complex(z)
        )));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!(
            "digamma at non-finite z = {}",
            fmt_complex(z)
        )));
    }

    let shift = T::lit(DIGAMMA_SHIFT);
    let mut w = z;
    let mut correction = Complex::new(T::zero(), T::zero());
    while w.re < shift {
        correction = correction + w.inv();
        w = w + T::one();
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let series = ASYMPTOTIC
        .iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &c| {
            acc * inv2 + T::lit(c)
        })
        * inv2;
    Ok(w.ln() - inv * T::lit(0.5) - series - correction)
}
