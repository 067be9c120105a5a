//! Numerical machinery shared by every evaluator: summation of infinite
//! series with tail estimation, Aitken Δ² extrapolation, Abel means and
//! adaptive Gauss–Kronrod quadrature.
//!
//! A term source is any `FnMut(usize) -> Complex<T>`. It is always called
//! with `n = 1, 2, 3, …` in increasing order, so it may carry running state
//! (a binomial coefficient built by a running product, a power of `x`);
//! it must produce the same sequence every time it is constructed anew.

mod accel;
mod quad;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

pub(crate) use accel::AitkenWatch;
pub use accel::{
    abel_mean, aitken_accelerate, levin_sum, levin_u, richardson_to_zero, ABEL_SCHEDULE,
};
pub use quad::adaptive_quadrature;

/// Default cap on the number of terms summed by [`partial_sum`].
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
/// Default tolerance for evaluations used inside other evaluations.
pub const INNER_TOL: f64 = 1e-12;
/// Default tolerance at identity-check level.
pub const CHECK_TOL: f64 = 1e-10;
/// Environment variable overriding [`DEFAULT_MAX_TERMS`].
pub const MAX_TERMS_ENV: &str = "HB_MAX_TERMS";

static MAX_TERMS_OVERRIDE: AtomicUsize = AtomicUsize::new(0);
static MAX_TERMS_FROM_ENV: OnceLock<usize> = OnceLock::new();

/// Series cap used by the evaluators: an explicit [`set_max_terms`] wins,
/// then `HB_MAX_TERMS`, then [`DEFAULT_MAX_TERMS`].
pub fn max_terms() -> usize {
    match MAX_TERMS_OVERRIDE.load(Ordering::Relaxed) {
        0 => *MAX_TERMS_FROM_ENV.get_or_init(|| {
            std::env::var(MAX_TERMS_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&n| n > 0)
                .unwrap_or(DEFAULT_MAX_TERMS)
        }),
        n => n,
    }
}

/// Overrides the process-wide series cap; `0` restores the env/default value.
pub fn set_max_terms(n: usize) {
    MAX_TERMS_OVERRIDE.store(n, Ordering::Relaxed);
}

/// Value of a series, quadrature or closed form together with an estimate
/// of its absolute error.
///
/// When `converged` is true the estimate is at most the requested tolerance
/// scaled by `max(1, |value|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult<T: Real> {
    pub value: Complex<T>,
    pub abs_error_estimate: T,
    pub terms_used: usize,
    pub converged: bool,
}

impl<T: Real> SeriesResult<T> {
    /// An exact value (error estimate zero).
    pub fn exact(value: Complex<T>) -> Self {
        Self {
            value,
            abs_error_estimate: T::zero(),
            terms_used: 0,
            converged: true,
        }
    }

    /// A closed-form value carrying only rounding error.
    pub(crate) fn rounded(value: Complex<T>) -> Self {
        Self {
            value,
            abs_error_estimate: T::epsilon() * T::lit(16.0) * value.norm(),
            terms_used: 0,
            converged: value.re.is_finite() && value.im.is_finite(),
        }
    }

    /// Maps the value by an exact affine step `a * value + b`, scaling the error.
    pub(crate) fn affine(self, a: Complex<T>, b: Complex<T>) -> Self {
        let value = a * self.value + b;
        Self {
            value,
            abs_error_estimate: self.abs_error_estimate * a.norm()
                + T::epsilon() * T::lit(8.0) * value.norm().max(b.norm()),
            terms_used: self.terms_used,
            converged: self.converged,
        }
    }
}

/// Compensated (Neumaier) accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum<T: Real> {
    re: (T, T),
    im: (T, T),
}

impl<T: Real> CompensatedSum<T> {
    pub(crate) fn add(&mut self, v: Complex<T>) {
        neumaier(&mut self.re, v.re);
        neumaier(&mut self.im, v.im);
    }

    pub(crate) fn value(&self) -> Complex<T> {
        Complex::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

fn neumaier<T: Real>(acc: &mut (T, T), x: T) {
    let (s, c) = *acc;
    let t = s + x;
    let c = if s.abs() >= x.abs() {
        c + ((s - t) + x)
    } else {
        c + ((x - t) + s)
    };
    *acc = (t, c);
}

const SMALL_RUN: usize = 3;
const RATIO_CAP: f64 = 0.99;
const RATIO_WINDOW: usize = 3;

/// Sums `Σ_{n≥1} terms(n)`.
///
/// Stops when `|term_n| ≤ tol·max(1, |S_n|)` for three consecutive terms and
/// the tail estimate is below the same threshold. The tail estimate is the
/// larger of the geometric bound `|term_n|·ρ/(1−ρ)` (ρ the largest recent
/// term ratio, capped at 0.99) and the algebraic-decay estimate
/// `n·|term_n|/(s−1)` with `s = n(1−ρ)` the observed decay exponent.
///
/// Alternating series (consecutive terms pointing in opposite directions)
/// use the alternating-series bound `|term_n|` instead and are additionally
/// accelerated by iterated Aitken Δ² over the last partial sums; the
/// accelerated value is accepted once two consecutive extrapolations agree
/// within the threshold.
///
/// Never fails: running out of terms returns `converged = false`.
pub fn partial_sum<T, F>(mut terms: F, tol: T, max_terms: usize) -> SeriesResult<T>
where
    T: Real,
    F: FnMut(usize) -> Complex<T>,
{
    let max_terms = max_terms.max(1);
    let zero = Complex::new(T::zero(), T::zero());
    let mut acc = CompensatedSum::<T>::default();
    let mut watch = AitkenWatch::<T>::new();
    let mut prev_term = zero;
    let mut ratios = [T::zero(); RATIO_WINDOW];
    let mut opposite = [false; RATIO_WINDOW + 1];
    let mut small_run = 0usize;
    let mut last_tail = T::infinity();
    let cap = T::lit(RATIO_CAP);

    for n in 1..=max_terms {
        let t = terms(n);
        acc.add(t);
        let sum = acc.value();
        let scale = T::one().max(sum.norm());
        let mag = t.norm();

        let slot = n % RATIO_WINDOW;
        ratios[slot] = if prev_term.norm() > T::zero() {
            mag / prev_term.norm()
        } else if mag > T::zero() {
            T::infinity()
        } else {
            T::zero()
        };
        opposite[n % (RATIO_WINDOW + 1)] =
            n > 1 && (t.re * prev_term.re + t.im * prev_term.im) < T::zero();
        prev_term = t;

        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return SeriesResult {
                value: sum,
                abs_error_estimate: T::infinity(),
                terms_used: n,
                converged: false,
            };
        }

        if mag <= tol * scale {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let rounding = T::epsilon() * T::lit(4.0) * scale;
        let warmed_up = n > RATIO_WINDOW + 1;
        let alternating = warmed_up && opposite.iter().all(|&o| o);

        let rho = ratios.iter().fold(T::zero(), |a, &b| a.max(b));
        let tail = if !warmed_up {
            T::infinity()
        } else if alternating {
            mag * T::one().max(rho)
        } else if rho >= T::one() {
            T::infinity()
        } else {
            let geometric = mag * rho.min(cap) / (T::one() - rho.min(cap));
            let decay = T::from_usize_lossy(n) * (T::one() - rho);
            let algebraic = if decay > T::one() {
                mag * T::from_usize_lossy(n) / (decay - T::one())
            } else {
                T::infinity()
            };
            geometric.max(algebraic)
        };
        last_tail = tail;

        if small_run >= SMALL_RUN && tail <= tol * scale {
            return SeriesResult {
                value: sum,
                abs_error_estimate: tail + rounding,
                terms_used: n,
                converged: true,
            };
        }

        if alternating {
            if let Some((est, err)) = watch.push(sum, tol) {
                return SeriesResult {
                    value: est,
                    abs_error_estimate: err + rounding,
                    terms_used: n,
                    converged: true,
                };
            }
        } else {
            watch.push(sum, tol);
        }
    }

    let sum = acc.value();
    SeriesResult {
        value: sum,
        abs_error_estimate: last_tail.max(prev_term.norm()),
        terms_used: max_terms,
        converged: false,
    }
}

/// Sums a finite list of terms with compensation; exact in the sense of
/// carrying rounding error only.
pub(crate) fn finite_sum<T: Real, I: IntoIterator<Item = Complex<T>>>(terms: I) -> SeriesResult<T> {
    let mut acc = CompensatedSum::<T>::default();
    let mut count = 0;
    let mut largest = T::zero();
    for t in terms {
        largest = largest.max(t.norm());
        acc.add(t);
        count += 1;
    }
    let value = acc.value();
    SeriesResult {
        value,
        abs_error_estimate: T::epsilon() * T::lit(4.0) * largest.max(value.norm()),
        terms_used: count,
        converged: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn geometric_half_sums_to_one() {
        let r = partial_sum(|n| c(0.5f64.powi(n as i32)), 1e-12, DEFAULT_MAX_TERMS);
        assert!(r.converged);
        assert!((r.value.re - 1.0).abs() < 1e-12);
        assert!(r.abs_error_estimate <= 1e-12);
    }

    #[test]
    fn alternating_harmonic_reaches_log2() {
        let r = partial_sum(
            |n| c(if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64),
            1e-10,
            DEFAULT_MAX_TERMS,
        );
        assert!(r.converged, "{r:?}");
        assert!((r.value.re - LN_2).abs() <= 1e-10, "{r:?}");
        assert!(r.terms_used < 1000);
    }

    #[test]
    fn harmonic_series_never_converges() {
        let r = partial_sum(|n| c(1.0 / n as f64), 1e-10, 10_000);
        assert!(!r.converged);
        assert_eq!(r.terms_used, 10_000);
    }

    #[test]
    fn algebraic_tail_is_not_underestimated() {
        // Σ 1/n^3 = ζ(3); the geometric bound alone would stop far too early.
        let zeta3 = 1.202_056_903_159_594_3;
        let r = partial_sum(|n| c(1.0 / (n as f64).powi(3)), 1e-9, DEFAULT_MAX_TERMS);
        assert!(r.converged);
        let err = (r.value.re - zeta3).abs();
        assert!(err <= 10.0 * r.abs_error_estimate, "{err} vs {r:?}");
    }

    #[test]
    fn deterministic() {
        let run = || partial_sum(|n| c((-0.7f64).powi(n as i32) / n as f64), 1e-12, 1000);
        assert_eq!(run(), run());
    }

    #[test]
    fn exact_zero_terms_stop_quickly() {
        let r = partial_sum(|n| if n <= 2 { c(1.0) } else { c(0.0) }, 1e-12, 100);
        assert!(r.converged);
        assert_eq!(r.value.re, 2.0);
        assert!(r.terms_used < 10);
    }

    #[test]
    fn zeta2_error_estimate() {
        let r = partial_sum(|n| c(1.0 / (n as f64 * n as f64)), 1e-6, DEFAULT_MAX_TERMS);
        assert!(r.converged);
        let err = (r.value.re - PI * PI / 6.0).abs();
        assert!(err <= 10.0 * r.abs_error_estimate);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut acc = CompensatedSum::<f64>::default();
        acc.add(c(1.0));
        for _ in 0..10 {
            acc.add(c(1e-16));
        }
        assert!((acc.value().re - (1.0 + 1e-15)).abs() < 1e-17);
    }
}
