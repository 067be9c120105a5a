use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{fmt_complex, near_integer_in, Real};
use crate::series::{AitkenWatch, CompensatedSum, SeriesResult};

/// Hard cap on terms for Φ(t, 1, a) and Li_k(y).
pub const LERCH_MAX_TERMS: usize = 10_000_000;
const ACCELERATE_ABOVE: f64 = 0.75;

/// Lerch transcendent at s = 1: `Φ(t, 1, a) = Σ_{n≥0} t^n/(n + a)`.
///
/// Truncation is controlled by `|t|^{N+1} / ((1−|t|)·(N+1+Re a))`, valid once
/// `N + 1 + Re a > 0`. For `|t| > 0.75` the partial sums are also fed to
/// iterated Aitken Δ², which is accepted once it has settled; otherwise
/// summation continues directly up to [`LERCH_MAX_TERMS`].
pub fn lerch_phi1<T: Real>(t: T, a: Complex<T>, tol: T) -> Result<SeriesResult<T>> {
    if !(t.abs() < T::one()) {
        return Err(Error::Domain(format!(
            "Φ(t, 1, a) needs |t| < 1, got t = {t}"
        )));
    }
    if let Some(p) = near_integer_in(a, f64::NEG_INFINITY, 0.0, T::lit(1e-12)) {
        return Err(Error::Pole(format!(
            "Φ(t, 1, a) at a = {} (nonpositive integer {p})",
            fmt_complex(a)
        )));
    }
    if t == T::zero() {
        return Ok(SeriesResult::rounded(a.inv()));
    }

    let abs_t = t.abs();
    let accelerate = abs_t > T::lit(ACCELERATE_ABOVE);
    let one_minus = T::one() - abs_t;
    let mut acc = CompensatedSum::<T>::default();
    let mut watch = AitkenWatch::<T>::new();
    let mut power = T::one();

    for n in 0..LERCH_MAX_TERMS {
        let nf = T::from_usize_lossy(n);
        acc.add((a + nf).inv() * power);
        power = power * t;
        let sum = acc.value();
        let scale = T::one().max(sum.norm());
        let rounding = T::epsilon() * T::lit(4.0) * scale;

        let denom = nf + T::one() + a.re;
        if denom > T::zero() {
            let bound = power.abs() / (one_minus * denom);
            if bound <= tol * scale {
                return Ok(SeriesResult {
                    value: sum,
                    abs_error_estimate: bound + rounding,
                    terms_used: n + 1,
                    converged: true,
                });
            }
        }
        if accelerate {
            if let Some((est, err)) = watch.push(sum, tol) {
                return Ok(SeriesResult {
                    value: est,
                    abs_error_estimate: err + rounding,
                    terms_used: n + 1,
                    converged: true,
                });
            }
        }
    }
    let sum = acc.value();
    Ok(SeriesResult {
        value: sum,
        abs_error_estimate: power.abs() / one_minus,
        terms_used: LERCH_MAX_TERMS,
        converged: false,
    })
}

/// Polylogarithm `Li_k(y) = Σ_{n≥1} y^n / n^k` for real `|y| < 1`, or `y = 1`
/// with `k ≥ 2` (where it is ζ(k)).
pub fn polylog<T: Real>(k: u32, y: T, tol: T) -> Result<SeriesResult<T>> {
    if k == 0 {
        return Err(Error::Domain("Li_k needs k ≥ 1".into()));
    }
    if y == T::one() {
        if k == 1 {
            return Err(Error::Domain("Li_1(1) diverges".into()));
        }
        let z = zeta_int::<T>(k as i64)?;
        return Ok(SeriesResult::rounded(Complex::new(z, T::zero())));
    }
    if !(y.abs() < T::one()) {
        return Err(Error::Domain(format!(
            "Li_{k}(y) needs |y| < 1 or y = 1, got y = {y}"
        )));
    }
    if y == T::zero() {
        return Ok(SeriesResult::exact(Complex::new(T::zero(), T::zero())));
    }

    let one_minus = T::one() - y.abs();
    let mut acc = CompensatedSum::<T>::default();
    let mut power = T::one();
    for n in 1..=LERCH_MAX_TERMS {
        let nf = T::from_usize_lossy(n);
        power = power * y;
        acc.add(Complex::new(power / nf.powi(k as i32), T::zero()));
        let sum = acc.value();
        let scale = T::one().max(sum.norm());
        let bound = (power * y).abs() / ((nf + T::one()).powi(k as i32) * one_minus);
        if bound <= tol * scale {
            return Ok(SeriesResult {
                value: sum,
                abs_error_estimate: bound + T::epsilon() * T::lit(4.0) * scale,
                terms_used: n,
                converged: true,
            });
        }
    }
    Ok(SeriesResult {
        value: acc.value(),
        abs_error_estimate: power.abs() / one_minus,
        terms_used: LERCH_MAX_TERMS,
        converged: false,
    })
}

const ZETA_HEAD: u32 = 64;

/// Riemann ζ(k) for integer `k ≥ 2`: the first 63 terms summed directly and
/// the remainder from the integral `∫_N^∞ t^{−k} dt` with Euler–Maclaurin
/// endpoint corrections (error far below 1e−13).
pub fn zeta_int<T: Real>(k: i64) -> Result<T> {
    if k < 2 {
        return Err(Error::Domain(format!("ζ(k) needs integer k ≥ 2, got {k}")));
    }
    let kf = T::from_i64(k).expect("small integer");
    let n = T::from_u32(ZETA_HEAD).expect("small integer");
    let head = (1..ZETA_HEAD)
        .rev()
        .fold(T::zero(), |acc, m| acc + T::from_u32(m).unwrap().powf(-kf));
    let f_n = n.powf(-kf);
    let one = T::one();
    let two = one + one;
    // Σ_{m≥N} f(m) = ∫_N^∞ f + f(N)/2 − Σ_j B_{2j}/(2j)! f^{(2j−1)}(N)
    let integral = n * f_n / (kf - one);
    let d1 = kf * f_n / n;
    let d3 = kf * (kf + one) * (kf + two) * f_n / (n * n * n);
    let d5 = d3 * (kf + two + one) * (kf + two + two) / (n * n);
    let tail = integral + f_n / two + d1 / T::lit(12.0) - d3 / T::lit(720.0) + d5 / T::lit(30240.0);
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn lerch_examples() {
        let a = c(2.5);
        assert_eq!(lerch_phi1(0.0, a, 1e-12).unwrap().value, a.inv());
        let r = lerch_phi1(0.5, c(1.0), 1e-13).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 2.0 * LN_2).abs() < 1e-13);
        let r = lerch_phi1(0.5, c(2.0), 1e-13).unwrap();
        assert!((r.value.re - (4.0 * LN_2 - 2.0)).abs() < 1e-13);
    }

    #[test]
    fn lerch_near_one_agrees_with_closed_form() {
        // Φ(t, 1, 1) = −log(1 − t)/t
        for &t in &[0.8, 0.9, 0.99, 0.999, 0.9999] {
            let r = lerch_phi1(t, c(1.0), 1e-12).unwrap();
            let want = -(1.0f64 - t).ln() / t;
            assert!(r.converged, "t = {t}: {r:?}");
            assert!(
                (r.value.re - want).abs() <= 1e-10 * want.max(1.0),
                "t = {t}: {} vs {want}",
                r.value.re
            );
            assert!(
                (r.value.re - want).abs() <= 10.0 * r.abs_error_estimate + 1e-14,
                "t = {t}"
            );
        }
    }

    #[test]
    fn lerch_negative_and_complex_a() {
        // Φ(t, 1, a) with a = −1/2: Σ t^n/(n − 1/2); compare with plain summation.
        let t: f64 = 0.6;
        let a = c(-0.5);
        let mut s = 0.0;
        for n in (0..200).rev() {
            s += t.powi(n) / (n as f64 - 0.5);
        }
        let r = lerch_phi1(t, a, 1e-13).unwrap();
        assert!((r.value.re - s).abs() < 1e-13);

        let a = Complex::new(0.5, 2.0);
        let direct = (0..400)
            .rev()
            .fold(c(0.0), |acc, n| acc + (a + n as f64).inv() * 0.9f64.powi(n));
        let r = lerch_phi1(0.9, a, 1e-13).unwrap();
        assert!((r.value - direct).norm() < 1e-12, "{} vs {direct}", r.value);
    }

    #[test]
    fn lerch_errors() {
        assert!(matches!(
            lerch_phi1(1.0, c(1.0), 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            lerch_phi1(-1.2, c(1.0), 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            lerch_phi1(0.5, c(0.0), 1e-12),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            lerch_phi1(0.5, c(-3.0), 1e-12),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn polylog_examples() {
        let r = polylog(1, 0.3, 1e-14).unwrap();
        assert!((r.value.re + 0.7f64.ln()).abs() < 1e-14);
        let r = polylog(2, 0.5, 1e-14).unwrap();
        let want = PI * PI / 12.0 - LN_2 * LN_2 / 2.0;
        assert!((r.value.re - want).abs() < 1e-14);
        assert_eq!(polylog(3, 0.0, 1e-14).unwrap().value, c(0.0));
        let r = polylog(2, 1.0, 1e-14).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-14);
        let r = polylog(2, -0.5, 1e-14).unwrap();
        assert!((r.value.re - -0.448_414_206_923_646_2f64).abs() < 1e-14);
    }

    #[test]
    fn polylog_errors() {
        assert!(polylog(1, 1.0f64, 1e-12).is_err());
        assert!(polylog(2, 1.5f64, 1e-12).is_err());
        assert!(polylog(2, -1.0f64, 1e-12).is_err());
        assert!(polylog(0, 0.5f64, 1e-12).is_err());
    }

    #[test]
    fn zeta_values() {
        let z2: f64 = zeta_int(2).unwrap();
        assert!((z2 - PI * PI / 6.0).abs() < 1e-14, "{}", z2 - PI * PI / 6.0);
        let z4: f64 = zeta_int(4).unwrap();
        assert!((z4 - PI.powi(4) / 90.0).abs() < 1e-14);
        let z3: f64 = zeta_int(3).unwrap();
        assert!((z3 - 1.202_056_903_159_594_3).abs() < 1e-14);
        let z50: f64 = zeta_int(50).unwrap();
        assert!((z50 - (1.0 + 2f64.powi(-50))).abs() < 1e-20);
        assert!(zeta_int::<f64>(1).is_err());
        assert!(zeta_int::<f64>(-3).is_err());
    }

    #[test]
    fn zeta_brute_force_oracle() {
        // Brute force: 10^6 terms summed backwards plus ∫ tail N^{1−k}/(k−1).
        for k in 2..=7i32 {
            let n = 1_000_000usize;
            let mut s = 0.0;
            for m in (1..=n).rev() {
                s += (m as f64).powi(-k);
            }
            let nf = n as f64 + 0.5;
            s += nf.powi(1 - k) / (k - 1) as f64;
            let z: f64 = zeta_int(k as i64).unwrap();
            assert!((s - z).abs() < 1e-13, "k = {k}: {s} vs {z}");
        }
    }
}
