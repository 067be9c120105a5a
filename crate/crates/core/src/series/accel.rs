use num_complex::Complex;

use super::{partial_sum, SeriesResult};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Iterated Aitken Δ² extrapolation of a sequence of partial sums.
///
/// Each pass maps `s_i, s_{i+1}, s_{i+2}` to `s_{i+2} − (Δs_{i+1})²/Δ²s_i`.
/// Passes continue while the last entry keeps settling; the last entry of
/// the deepest stable pass is returned. A degenerate second difference on
/// the first pass is an error; on deeper passes it ends the iteration.
pub fn aitken_accelerate<T: Real>(partial_sums: &[Complex<T>]) -> Result<Complex<T>> {
    if partial_sums.len() < 3 {
        return Err(Error::Domain(format!(
            "Aitken extrapolation needs at least 3 partial sums, got {}",
            partial_sums.len()
        )));
    }
    let floor = T::epsilon() * T::lit(4.0);
    let mut level = partial_sums.to_vec();
    let mut best: Option<Complex<T>> = None;
    let mut prev_change: Option<T> = None;

    while level.len() >= 3 {
        let mut next = Vec::with_capacity(level.len() - 2);
        let mut degenerate = false;
        for w in level.windows(3) {
            let d1 = w[1] - w[0];
            let d2 = w[2] - w[1];
            let den = d2 - d1;
            let scale = w[2].norm().max(T::min_positive_value());
            if den.norm() <= floor * scale {
                degenerate = true;
                break;
            }
            next.push(w[2] - d2 * d2 / den);
        }
        if degenerate {
            return best.ok_or(Error::DegenerateDifference);
        }
        let candidate = *next.last().expect("non-empty pass");
        if !(candidate.re.is_finite() && candidate.im.is_finite()) {
            return best.ok_or(Error::DegenerateDifference);
        }
        let reference = best.unwrap_or(*level.last().expect("non-empty pass"));
        let change = (candidate - reference).norm();
        if let Some(pc) = prev_change {
            if change > pc {
                break;
            }
        }
        best = Some(candidate);
        prev_change = Some(change);
        level = next;
    }
    best.ok_or(Error::DegenerateDifference)
}

/// Watches a stream of partial sums and reports an iterated-Aitken limit once
/// two consecutive extrapolations (spaced `every` sums apart) agree.
pub(crate) struct AitkenWatch<T: Real> {
    window: Vec<Complex<T>>,
    seen: usize,
    prev: Option<Complex<T>>,
    prev_diff: Option<T>,
}

pub(crate) const AITKEN_WINDOW: usize = 21;
const AITKEN_EVERY: usize = 8;

impl<T: Real> AitkenWatch<T> {
    pub(crate) fn new() -> Self {
        Self {
            window: Vec::with_capacity(AITKEN_WINDOW),
            seen: 0,
            prev: None,
            prev_diff: None,
        }
    }

    /// Records the next partial sum; `Some((limit, error))` once the
    /// extrapolations have settled within `tol·max(1, |limit|)`.
    pub(crate) fn push(&mut self, sum: Complex<T>, tol: T) -> Option<(Complex<T>, T)> {
        if self.window.len() == AITKEN_WINDOW {
            self.window.remove(0);
        }
        self.window.push(sum);
        self.seen += 1;
        if self.window.len() < AITKEN_WINDOW || !self.seen.is_multiple_of(AITKEN_EVERY) {
            return None;
        }
        match aitken_accelerate(&self.window) {
            Ok(est) if est.re.is_finite() && est.im.is_finite() => {
                let mut accepted = None;
                if let Some(prev) = self.prev {
                    let diff = (est - prev).norm();
                    let threshold = tol * T::one().max(est.norm());
                    if let Some(pd) = self.prev_diff {
                        if diff <= threshold && pd <= threshold {
                            accepted = Some((est, diff.max(pd)));
                        }
                    }
                    self.prev_diff = Some(diff);
                }
                self.prev = Some(est);
                accepted
            }
            _ => {
                self.prev = None;
                self.prev_diff = None;
                None
            }
        }
    }
}

/// Value at `h = 0` of the interpolating polynomial through `(h_i, v_i)`
/// (Neville's scheme).
pub fn richardson_to_zero<T: Real>(h: &[T], v: &[Complex<T>]) -> Complex<T> {
    assert_eq!(h.len(), v.len());
    let mut p = v.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, hm) = (h[i], h[i + m]);
            p[i] = (p[i + 1] * hi - p[i] * hm) / (hi - hm);
        }
    }
    p[0]
}

/// Radii at which the power series `Σ a_n r^n` is evaluated by [`abel_mean`].
pub const ABEL_SCHEDULE: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

/// Abel mean `lim_{r→1−} Σ_{n≥1} a_n r^n`.
///
/// The power series is summed at each radius of [`ABEL_SCHEDULE`] and the
/// four values are extrapolated in `h = 1 − r` to `h = 0` by a cubic
/// (Richardson order 3). The error estimate is the gap between the cubic and
/// the quadratic through the three radii closest to 1.
pub fn abel_mean<T, F>(mut terms: F, tol: T) -> SeriesResult<T>
where
    T: Real,
    F: FnMut(usize) -> Complex<T>,
{
    let cap = super::max_terms();
    let mut cache: Vec<Complex<T>> = Vec::new();
    let mut values = Vec::with_capacity(ABEL_SCHEDULE.len());
    let mut hs = Vec::with_capacity(ABEL_SCHEDULE.len());
    let mut inner_ok = true;
    let mut inner_err = T::zero();
    let mut used = 0;
    let inner_tol = tol * T::lit(1e-2);

    for &r in &ABEL_SCHEDULE {
        let r = T::lit(r);
        let mut power = T::one();
        let res = partial_sum(
            |n| {
                while cache.len() < n {
                    let k = cache.len() + 1;
                    cache.push(terms(k));
                }
                power = power * r;
                cache[n - 1] * power
            },
            inner_tol,
            cap,
        );
        inner_ok &= res.converged;
        inner_err = inner_err.max(res.abs_error_estimate);
        used = used.max(res.terms_used);
        values.push(res.value);
        hs.push(T::one() - r);
    }

    let cubic = richardson_to_zero(&hs, &values);
    let quadratic = richardson_to_zero(&hs[1..], &values[1..]);
    let estimate = (cubic - quadratic).norm() + inner_err;
    let converged = inner_ok && estimate <= tol * T::one().max(cubic.norm());
    SeriesResult {
        value: cubic,
        abs_error_estimate: estimate,
        terms_used: used,
        converged,
    }
}

/// Levin u-transform of the series whose first terms are `terms`
/// (`β = 1`, remainder estimates `ω_j = (j+1)·a_j`).
pub fn levin_u<T: Real>(terms: &[Complex<T>]) -> Result<Complex<T>> {
    if terms.len() < 2 {
        return Err(Error::Domain(format!(
            "Levin transform needs at least 2 terms, got {}",
            terms.len()
        )));
    }
    let k = terms.len() - 1;
    let kb = T::from_usize_lossy(k + 1);
    let mut num = Complex::new(T::zero(), T::zero());
    let mut den = num;
    let mut partial = num;
    let mut binom = T::one();
    for (j, &a) in terms.iter().enumerate() {
        partial = partial + a;
        if a.norm() == T::zero() {
            return Err(Error::DegenerateDifference);
        }
        let jb = T::from_usize_lossy(j + 1);
        let weight = binom * (jb / kb).powi(k as i32 - 1);
        let signed = if j % 2 == 0 { weight } else { -weight };
        let inv = (a * jb).inv() * signed;
        num = num + partial * inv;
        den = den + inv;
        binom = binom * T::from_usize_lossy(k - j) / T::from_usize_lossy(j + 1);
    }
    if den.norm() == T::zero() {
        return Err(Error::DegenerateDifference);
    }
    Ok(num / den)
}

/// Sum of `Σ_{n≥1} a_n` by Levin u-transforms of orders `2..=max_order`,
/// for monotone series with algebraic decay where partial sums are useless.
///
/// High orders lose accuracy to cancellation, so rather than stopping at the
/// first small change the order `k` minimizing
/// `max(|L_k − L_{k−1}|, |L_{k+1} − L_k|)` is selected; that maximum is the
/// error estimate.
pub fn levin_sum<T, F>(mut terms: F, tol: T, max_order: usize) -> SeriesResult<T>
where
    T: Real,
    F: FnMut(usize) -> Complex<T>,
{
    let max_order = max_order.max(4);
    let cached: Vec<Complex<T>> = (1..=max_order + 1).map(&mut terms).collect();
    if let Some(stop) = cached.iter().position(|t| t.norm() == T::zero()) {
        // An exactly vanishing term; series of interest here are then finite.
        if cached[stop..].iter().all(|t| t.norm() == T::zero()) {
            let sum = super::finite_sum(cached[..stop].iter().copied());
            return SeriesResult {
                terms_used: stop,
                ..sum
            };
        }
    }
    let mut estimates = Vec::with_capacity(max_order);
    for order in 2..=max_order {
        match levin_u(&cached[..=order]) {
            Ok(v) if v.re.is_finite() && v.im.is_finite() => estimates.push(v),
            _ => break,
        }
    }
    if estimates.len() < 3 {
        let sum = super::finite_sum(cached.iter().copied());
        return SeriesResult {
            abs_error_estimate: T::infinity(),
            converged: false,
            ..sum
        };
    }
    let mut best = (estimates[1], T::infinity(), 0usize);
    for i in 1..estimates.len() - 1 {
        let before = (estimates[i] - estimates[i - 1]).norm();
        let after = (estimates[i + 1] - estimates[i]).norm();
        let err = before.max(after);
        if err < best.1 {
            best = (estimates[i], err, i + 3);
        }
    }
    let (value, err, used) = best;
    let err = err + T::epsilon() * T::lit(16.0) * value.norm();
    SeriesResult {
        value,
        abs_error_estimate: err,
        terms_used: used,
        converged: err <= tol * T::one().max(value.norm()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn sums(mut term: impl FnMut(usize) -> f64, count: usize) -> Vec<Complex<f64>> {
        let mut s = 0.0;
        (1..=count)
            .map(|n| {
                s += term(n);
                c(s)
            })
            .collect()
    }

    #[test]
    fn geometric_partial_sums_extrapolate_to_one() {
        let s = sums(|n| 0.5f64.powi(n as i32), 10);
        let v = aitken_accelerate(&s).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14, "{v}");
    }

    #[test]
    fn alternating_harmonic_twenty_sums() {
        let s = sums(|n| if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64, 20);
        let v = aitken_accelerate(&s).unwrap();
        assert!((v.re - LN_2).abs() < 1e-8, "{}", (v.re - LN_2).abs());
    }

    #[test]
    fn constant_sequence_is_degenerate() {
        let s = vec![c(2.5); 3];
        assert_eq!(aitken_accelerate(&s), Err(Error::DegenerateDifference));
    }

    #[test]
    fn too_few_sums() {
        assert!(aitken_accelerate(&[c(1.0), c(2.0)]).is_err());
    }

    #[test]
    fn richardson_reproduces_cubics() {
        let f = |h: f64| 2.0 - 3.0 * h + 0.5 * h * h + 7.0 * h * h * h;
        let hs = [0.1, 0.01, 0.001, 0.0001];
        let vs: Vec<_> = hs.iter().map(|&h| c(f(h))).collect();
        let v = richardson_to_zero(&hs, &vs);
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn levin_zeta_two() {
        let r = levin_sum(|n| c(1.0 / (n * n) as f64), 1e-9, 24);
        assert!(r.converged, "{r:?}");
        let err = (r.value.re - std::f64::consts::PI.powi(2) / 6.0).abs();
        assert!(err < 1e-10 && err <= r.abs_error_estimate, "{r:?}");
        assert!(r.terms_used < 24);
    }

    #[test]
    fn levin_alternating_and_finite() {
        let r = levin_sum(
            |n| c(if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64),
            1e-12,
            24,
        );
        assert!((r.value.re - LN_2).abs() < 1e-12, "{r:?}");
        let r = levin_sum(|n| c(if n <= 3 { n as f64 } else { 0.0 }), 1e-12, 24);
        assert_eq!(r.value, c(6.0));
        assert!(levin_u::<f64>(&[c(1.0)]).is_err());
    }

    #[test]
    fn abel_grandi() {
        // 1 − 1 + 1 − … with terms indexed from n = 1.
        let r = abel_mean(|n| c(if n % 2 == 1 { 1.0 } else { -1.0 }), 1e-8);
        assert!(r.converged, "{r:?}");
        assert!((r.value.re - 0.5).abs() < 1e-8);
    }

    #[test]
    fn abel_divergent_binomial_series() {
        // Σ (n+1)(−1)^n / n, Abel sum −1/2 − log 2.
        let r = abel_mean(
            |n| c((n as f64 + 1.0) * if n % 2 == 0 { 1.0 } else { -1.0 } / n as f64),
            1e-6,
        );
        let expected = -0.5 - LN_2;
        assert!((r.value.re - expected).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn abel_of_convergent_series_is_its_sum() {
        let r = abel_mean(|n| c(if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64), 1e-8);
        assert!((r.value.re - LN_2).abs() < 1e-8, "{r:?}");
        let direct = partial_sum(
            |n| c(if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64),
            1e-10,
            super::super::DEFAULT_MAX_TERMS,
        );
        assert!(
            (r.value - direct.value).norm()
                <= r.abs_error_estimate + direct.abs_error_estimate + 1e-12
        );
    }
}
