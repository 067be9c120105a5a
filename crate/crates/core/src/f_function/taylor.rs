//! Taylor coefficients of `F(z, x)` in `z` at the origin.
//!
//! `F(z, x) = Σ_{k≥1} (−1)^{k−1} A_k(x) z^k` with
//!
//! ```text
//! A_k(x) = Σ_{n≥k} (−1)^{n−k} s(n, k) x^n / (n!·n)                      (Stirling form)
//!        = ζ(k+1) + Σ_{j=0..k} (−1)^{j−1}/j! · Li_{k−j+1}(1−x) · log^j(1−x)   (polylog form)
//! ```
//!
//! and `A_k(1) = ζ(k+1)`.
//!
//! The Stirling form takes rows `n ≤ 20` from the exact table and continues
//! with the normalized unsigned numbers `c(n, j) = |s(n, j)|/n!`, which obey
//! `c(n+1, j) = (c(n, j−1) + n·c(n, j))/(n+1)`. At `x = 1` the terms decay
//! only like `log^{k−1}(n)/n²`; the remainder beyond `n = 4000` is taken from
//! `c(n, k) = [z^k] Γ(n+z)/(Γ(z) Γ(n+1))` expanded to `O(n^{−3})` and
//! summed with Euler–Maclaurin.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{euler_gamma, polylog, stirling_first, zeta_int, STIRLING_MAX_N};

/// Largest supported coefficient index.
pub const TAYLOR_MAX_K: u32 = 6;

const CONTINUATION_CAP: usize = 10_000_000;
const ASYMPTOTIC_FROM: usize = 4000;

/// The bracketed coefficient `A_k(x)` in both forms. The coefficient of
/// `z^k` in `F(z, x)` is `(−1)^{k−1} A_k(x)`; see [`TaylorCoeff::series_coefficient`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorCoeff<T: Real> {
    pub k: u32,
    pub stirling: T,
    pub polylog: T,
    /// Error estimate of the Stirling form (truncation and tail model).
    pub stirling_error: T,
    /// Error estimate of the polylog form.
    pub polylog_error: T,
}

impl<T: Real> TaylorCoeff<T> {
    /// `(−1)^{k−1} A_k(x)` from the Stirling form.
    pub fn series_coefficient(&self) -> T {
        if self.k % 2 == 1 {
            self.stirling
        } else {
            T::zero() - self.stirling
        }
    }

    pub fn difference(&self) -> T {
        (self.stirling - self.polylog).abs()
    }
}

/// `A_k(x)` for `1 ≤ k ≤ 6` and `0 ≤ x ≤ 1` in the Stirling and polylog forms.
pub fn f_taylor_coeff<T: Real>(k: u32, x: T, tol: T) -> Result<TaylorCoeff<T>> {
    if k == 0 || k > TAYLOR_MAX_K {
        return Err(Error::Range(format!(
            "Taylor coefficients supported for 1 ≤ k ≤ {TAYLOR_MAX_K}, got k = {k}"
        )));
    }
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::Domain(format!(
            "Taylor coefficients need 0 ≤ x ≤ 1 (the polylog form uses Li(1−x)), got x = {x}"
        )));
    }
    let (stirling, stirling_error) = stirling_form(k as usize, x, tol)?;
    let (polylog, polylog_error) = polylog_form(k, x, tol)?;
    Ok(TaylorCoeff {
        k,
        stirling,
        polylog,
        stirling_error,
        polylog_error,
    })
}

/// `Σ_{k=1..6} (−1)^{k−1} A_k(x) z^k`.
pub fn taylor_polynomial<T: Real>(z: Complex<T>, x: T, tol: T) -> Result<Complex<T>> {
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut power = Complex::new(T::one(), T::zero());
    for k in 1..=TAYLOR_MAX_K {
        power = power * z;
        let c = f_taylor_coeff(k, x, tol)?;
        acc = acc + power * c.series_coefficient();
    }
    Ok(acc)
}

fn polylog_form<T: Real>(k: u32, x: T, tol: T) -> Result<(T, T)> {
    let zeta = zeta_int::<T>(k as i64 + 1)?;
    if x == T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    if x == T::one() {
        return Ok((zeta, T::epsilon() * zeta));
    }
    let y = T::one() - x;
    let log = y.ln();
    let mut acc = zeta;
    let mut err = T::epsilon() * zeta;
    let mut log_pow = T::one();
    let mut fact = T::one();
    for j in 0..=k {
        if j > 0 {
            log_pow = log_pow * log;
            fact = fact * T::from_u32(j).unwrap();
        }
        let li = polylog(k - j + 1, y, tol * T::lit(1e-2))?;
        let sign = if j % 2 == 1 { T::one() } else { -T::one() };
        let term = sign * li.value.re * log_pow / fact;
        acc = acc + term;
        err = err + li.abs_error_estimate * log_pow.abs() / fact + T::epsilon() * term.abs();
    }
    Ok((acc, err))
}

fn stirling_form<T: Real>(k: usize, x: T, tol: T) -> Result<(T, T)> {
    if x == T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    let table = stirling_first(STIRLING_MAX_N)?;
    let mut sum = T::zero();
    let mut comp = T::zero();
    let add = |v: T, sum: &mut T, comp: &mut T| {
        let t = *sum + v;
        *comp = *comp
            + if sum.abs() >= v.abs() {
                (*sum - t) + v
            } else {
                (v - t) + *sum
            };
        *sum = t;
    };

    // Exact rows.
    let mut factorial = T::one();
    let mut power = T::one();
    for n in 1..=STIRLING_MAX_N {
        factorial = factorial * T::from_usize_lossy(n);
        power = power * x;
        if n < k {
            continue;
        }
        let unsigned = T::from_i64(table.get(n, k).abs()).unwrap();
        add(
            unsigned / factorial * power / T::from_usize_lossy(n),
            &mut sum,
            &mut comp,
        );
    }

    // Normalized continuation, c[j] = |s(n, j)|/n!.
    let mut c: Vec<T> = (0..=k)
        .map(|j| T::from_i64(table.get(STIRLING_MAX_N, j).abs()).unwrap() / factorial)
        .collect();
    let mut n = STIRLING_MAX_N;
    let at_one = x == T::one();
    let stop_at = if at_one {
        ASYMPTOTIC_FROM
    } else {
        CONTINUATION_CAP
    };
    let mut last_term = T::infinity();
    while n < stop_at {
        let nf = T::from_usize_lossy(n);
        let next = T::from_usize_lossy(n + 1);
        for j in (1..=k).rev() {
            c[j] = (c[j - 1] + nf * c[j]) / next;
        }
        c[0] = T::zero();
        n += 1;
        power = power * x;
        let term = c[k] * power / next;
        add(term, &mut sum, &mut comp);
        last_term = term;
        if !at_one {
            // Terms decay like x^n up to a slowly varying factor.
            let bound = term * x / (T::one() - x) * T::lit(2.0);
            if bound <= tol * T::lit(1e-2) * T::one().max(sum.abs()) {
                return Ok((sum + comp, bound + T::epsilon() * T::lit(8.0) * sum.abs()));
            }
        }
    }
    if !at_one {
        return Ok((sum + comp, last_term * x / (T::one() - x)));
    }
    let (tail, tail_err) = asymptotic_tail::<T>(k, n)?;
    Ok((
        sum + comp + tail,
        tail_err + T::epsilon() * T::lit(8.0) * sum.abs(),
    ))
}

/// Power series of 1/Γ(z) to degree `deg`: `z·exp(γz − Σ_{j≥2} (−1)^j ζ(j) z^j / j)`.
fn reciprocal_gamma_series<T: Real>(deg: usize) -> Result<Vec<T>> {
    let mut a = vec![T::zero(); deg];
    if deg > 1 {
        a[1] = euler_gamma::<T>();
    }
    for (j, slot) in a.iter_mut().enumerate().skip(2) {
        let z = zeta_int::<T>(j as i64)?;
        let sign = if j % 2 == 0 { -T::one() } else { T::one() };
        *slot = sign * z / T::from_usize_lossy(j);
    }
    // e = exp(a) with e_0 = 1, e_m = (1/m) Σ_{j=1..m} j a_j e_{m−j}
    let mut e = vec![T::zero(); deg];
    e[0] = T::one();
    for m in 1..deg {
        let mut s = T::zero();
        for j in 1..=m {
            s = s + T::from_usize_lossy(j) * a[j] * e[m - j];
        }
        e[m] = s / T::from_usize_lossy(m);
    }
    let mut g = vec![T::zero(); deg + 1];
    g[1..(deg + 1)].copy_from_slice(&e[..deg]);
    Ok(g)
}

fn poly_mul<T: Real>(a: &[T], b: &[T], deg: usize) -> Vec<T> {
    let mut out = vec![T::zero(); deg + 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            if i + j <= deg {
                out[i + j] = out[i + j] + ai * bj;
            }
        }
    }
    out
}

/// `Σ_{n>N} log^m(n) / n^q` by Euler–Maclaurin with the `f'` correction.
fn log_power_tail<T: Real>(m: usize, q: usize, big_n: usize) -> T {
    let nf = T::from_usize_lossy(big_n);
    let l = nf.ln();
    let qm1 = T::from_usize_lossy(q - 1);
    let n_pow = nf.powi(q as i32 - 1);
    // ∫_N^∞ L^m t^{−q} dt = Σ_{i=0..m} m!/i! · L^i / ((q−1)^{m−i+1} N^{q−1})
    let mut integral = T::zero();
    let mut ratio = T::one(); // m!/i!
    for i in (0..=m).rev() {
        integral = integral + ratio * l.powi(i as i32) / (qm1.powi((m - i + 1) as i32) * n_pow);
        ratio = ratio * T::from_usize_lossy(i.max(1));
    }
    let f = l.powi(m as i32) / nf.powi(q as i32);
    let m_t = T::from_usize_lossy(m);
    let q_t = T::from_usize_lossy(q);
    let l_m1 = if m == 0 {
        T::zero()
    } else {
        l.powi(m as i32 - 1)
    };
    let df = (m_t * l_m1 - q_t * l.powi(m as i32)) / nf.powi(q as i32 + 1);
    integral - f / T::lit(2.0) - df / T::lit(12.0)
}

/// Remainder `Σ_{n>N} c(n, k)/n` at `x = 1` and an error estimate.
fn asymptotic_tail<T: Real>(k: usize, big_n: usize) -> Result<(T, T)> {
    let g = reciprocal_gamma_series::<T>(k + 1)?;
    let half = T::lit(0.5);
    let p1 = [T::zero(), -half, half];
    let inv24 = T::one() / T::lit(24.0);
    let p2 = [
        T::zero(),
        T::lit(-2.0) * inv24,
        T::lit(9.0) * inv24,
        T::lit(-10.0) * inv24,
        T::lit(3.0) * inv24,
    ];
    let h = [g.clone(), poly_mul(&g, &p1, k), poly_mul(&g, &p2, k)];

    let mut tail = T::zero();
    let mut last_order = T::zero();
    for (p, hp) in h.iter().enumerate() {
        let mut order = T::zero();
        let mut fact = T::one();
        for m in 0..=k {
            if m > 0 {
                fact = fact * T::from_usize_lossy(m);
            }
            let coeff = hp.get(k - m).copied().unwrap_or(T::zero()) / fact;
            if coeff != T::zero() {
                order = order + coeff * log_power_tail::<T>(m, 2 + p, big_n);
            }
        }
        tail = tail + order;
        last_order = order;
    }
    Ok((tail, last_order.abs() + T::epsilon() * tail.abs()))
}
