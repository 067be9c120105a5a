use num_complex::Complex;

use super::dispatch::eval_without_functional_eq;
use crate::error::{Error, Result};
use crate::scalar::{
    as_nonneg_integer, expm1_complex, fmt_complex, near_integer_in, pow_real_base, Real,
};
use crate::series::{self, adaptive_quadrature, finite_sum, levin_sum, partial_sum, SeriesResult};
use crate::special::{digamma, euler_gamma, harmonic, lerch_phi1, BinomialSeq};

/// Distance to a pole of `F` below which evaluators raise [`Error::Pole`].
pub const F_POLE_TOL: f64 = 1e-8;

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn is_zero<T: Real>(z: Complex<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}

fn check_x<T: Real>(x: T) -> Result<()> {
    if x.is_finite() && x.abs() <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "F(z, x) needs −1 ≤ x ≤ 1, got x = {x}"
        )))
    }
}

fn negative_integer_pole<T: Real>(z: Complex<T>, what: &str) -> Result<()> {
    match near_integer_in(z, f64::NEG_INFINITY, -1.0, T::lit(F_POLE_TOL)) {
        Some(p) => Err(Error::Pole(format!(
            "{what} at z = {} (negative integer {p})",
            fmt_complex(z)
        ))),
        None => Ok(()),
    }
}

/// Defining series, summed by [`partial_sum`]. Positive-integer `z` gives a
/// finite sum.
pub fn f_series<T: Real>(z: Complex<T>, x: T, tol: T) -> Result<SeriesResult<T>> {
    check_x(x)?;
    if x == T::zero() || is_zero(z) {
        return Ok(SeriesResult::exact(zero()));
    }
    if let Some(p) = as_nonneg_integer(z) {
        let terms = BinomialSeq::new(z)
            .enumerate()
            .skip(1)
            .take(p as usize)
            .map(|(n, b)| {
                let n = n as i32;
                let sign = if n % 2 == 1 { T::one() } else { -T::one() };
                b * (sign * x.powi(n) / T::from_i32(n).unwrap())
            });
        return Ok(finite_sum(terms));
    }
    if x.abs() == T::one() && z.re <= T::zero() {
        return Err(Error::Domain(format!(
            "defining series of F diverges at x = {x} for Re z = {} ≤ 0",
            z.re
        )));
    }
    let terms = || {
        let mut binom = BinomialSeq::new(z);
        binom.next();
        let neg_x = -x;
        let mut power = T::one();
        move |n: usize| {
            power = power * neg_x;
            let b = binom.next().expect("infinite");
            -b * (power / T::from_usize_lossy(n))
        }
    };
    let direct = partial_sum(terms(), tol, series::max_terms());
    if direct.converged || x.abs() < T::one() {
        return Ok(direct);
    }
    // At x = 1 the terms are of one sign and decay only like n^{−Re z−2}.
    let levin = levin_sum(terms(), tol, SERIES_LEVIN_ORDER);
    Ok(if levin.abs_error_estimate < direct.abs_error_estimate {
        levin
    } else {
        direct
    })
}

const SERIES_LEVIN_ORDER: usize = 20;

/// `F(p, x) = H_p − Σ_{k=1..p} (1−x)^k / k` for integer `p ≥ 0`, any real `x`.
pub fn f_finite_integer<T: Real>(p: u64, x: T) -> Complex<T> {
    let u = T::one() - x;
    let mut power = T::one();
    let terms = (1..=p).map(|k| {
        power = power * u;
        Complex::new(-power / T::from_u64(k).unwrap(), T::zero())
    });
    let h: T = harmonic(p);
    let tail = finite_sum(terms).value;
    Complex::new(h, T::zero()) + tail
}

/// `F(z, 1) = ψ(z+1) + γ`, valid for every `z ∉ {−1, −2, …}`.
pub fn f_at_one<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    negative_integer_pole(z, "F(z, 1)")?;
    if is_zero(z) {
        return Ok(zero());
    }
    Ok(digamma(z + T::one())? + euler_gamma::<T>())
}

/// Closed form for `0 < x ≤ 1`:
/// `ψ(z+1) + γ + log x + (1−x)^{z+1} Φ(1−x, 1, z+1)`.
pub fn f_closed_pos<T: Real>(z: Complex<T>, x: T, tol: T) -> Result<SeriesResult<T>> {
    if !(x > T::zero() && x <= T::one()) {
        return Err(Error::Domain(format!(
            "closed form for x > 0 needs 0 < x ≤ 1, got x = {x}"
        )));
    }
    negative_integer_pole(z, "F(z, x) closed form")?;
    if is_zero(z) {
        return Ok(SeriesResult::exact(zero()));
    }
    let head = digamma(z + T::one())? + euler_gamma::<T>();
    if x == T::one() {
        return Ok(SeriesResult::rounded(head));
    }
    let t = T::one() - x;
    let a = z + T::one();
    let phi = lerch_phi1(t, a, tol)?;
    let prefactor = pow_real_base(t, a);
    let log_x = x.ln();
    let value = head + log_x + prefactor * phi.value;
    let rounding =
        T::epsilon() * T::lit(8.0) * (head.norm() + log_x.abs() + (prefactor * phi.value).norm());
    Ok(SeriesResult {
        value,
        abs_error_estimate: phi.abs_error_estimate * prefactor.norm() + rounding,
        terms_used: phi.terms_used,
        converged: phi.converged,
    })
}

/// Closed form for `−1 ≤ x < 0`:
/// `ψ(1−z) + γ + log(−x) + (1−(1−x)^z)/z + (1−x)^{z−1} Φ(1/(1−x), 1, 1−z)`.
pub fn f_closed_neg<T: Real>(z: Complex<T>, x: T, tol: T) -> Result<SeriesResult<T>> {
    if !(x >= -T::one() && x < T::zero()) {
        return Err(Error::Domain(format!(
            "closed form for x < 0 needs −1 ≤ x < 0, got x = {x}"
        )));
    }
    if is_zero(z) {
        return Ok(SeriesResult::exact(zero()));
    }
    if let Some(p) = near_integer_in(z, 1.0, f64::INFINITY, T::lit(F_POLE_TOL)) {
        return Err(Error::Pole(format!(
            "closed form for x < 0 at z = {} (positive integer {p})",
            fmt_complex(z)
        )));
    }
    let u = T::one() - x;
    let ln_u = u.ln();
    let one = Complex::new(T::one(), T::zero());
    let head = digamma(one - z)? + euler_gamma::<T>() + (-x).ln();
    let middle = -expm1_complex(z * ln_u) / z;
    let a = one - z;
    let phi = lerch_phi1(u.recip(), a, tol)?;
    let prefactor = pow_real_base(u, z - T::one());
    let lerch_part = prefactor * phi.value;
    let value = head + middle + lerch_part;
    let rounding = T::epsilon() * T::lit(8.0) * (head.norm() + middle.norm() + lerch_part.norm());
    Ok(SeriesResult {
        value,
        abs_error_estimate: phi.abs_error_estimate * prefactor.norm() + rounding,
        terms_used: phi.terms_used,
        converged: phi.converged,
    })
}

/// `∫_0^x (1 − (1−t)^z)/t dt` by adaptive quadrature; the integrand's
/// removable singularity at `t = 0` takes its limit value `z`. At `x = 1`
/// the substitution `1 − t = s^m` removes the branch point at `t = 1`.
pub fn f_integral<T: Real>(z: Complex<T>, x: T, tol: T) -> Result<SeriesResult<T>> {
    check_x(x)?;
    if x == T::zero() || is_zero(z) {
        return Ok(SeriesResult::exact(zero()));
    }
    if x == T::one() && z.re <= -T::one() {
        return Err(Error::Domain(format!(
            "integral representation at x = 1 needs Re z > −1, got Re z = {}",
            z.re
        )));
    }
    if x == T::one() && as_nonneg_integer(z).is_none() {
        return Ok(integral_to_one(z, tol));
    }
    let integrand = |t: T| {
        if t == T::zero() {
            z
        } else {
            -expm1_complex(z * (-t).ln_1p()) / t
        }
    };
    Ok(adaptive_quadrature(integrand, T::zero(), x, tol))
}

/// `∫_0^1 m s^{m−1} (1 − s^{mz}) / (1 − s^m) ds`, with `m` large enough that
/// the integrand has a few continuous derivatives at `s = 0`.
fn integral_to_one<T: Real>(z: Complex<T>, tol: T) -> SeriesResult<T> {
    let m = (T::lit(6.0) / (z.re + T::one()))
        .ceil()
        .max(T::one())
        .min(T::lit(64.0));
    let m_minus_one = m - T::one();
    let integrand = move |s: T| {
        if s == T::one() {
            return z * m;
        }
        if s == T::zero() {
            return if m == T::one() {
                Complex::new(T::one(), T::zero())
            } else {
                zero()
            };
        }
        let ln_s = s.ln();
        let denom = -(m * ln_s).exp_m1();
        if s < T::lit(0.5) {
            // s^{m−1} − s^{m(z+1)−1} without overflowing s^{mz} for Re z < 0.
            let a = (m_minus_one * ln_s).exp();
            let b = ((z + T::one()) * m - T::one()) * ln_s;
            (Complex::new(a, T::zero()) - b.exp()) * (m / denom)
        } else {
            -expm1_complex(z * (m * ln_s)) * ((m_minus_one * ln_s).exp() * m / denom)
        }
    };
    adaptive_quadrature(integrand, T::zero(), T::one(), tol)
}

/// Functional equation `F(z, x) = log(1−x) + F(−z−1, −x/(1−x))` for
/// `−1 ≤ x < 1/2`. The transplanted point `y = −x/(1−x)` lies in `(−1, 1/2]`
/// and is evaluated without this method.
pub fn f_functional_eq<T: Real>(z: Complex<T>, x: T, tol: T) -> Result<SeriesResult<T>> {
    if !(x >= -T::one() && x < T::lit(0.5)) {
        return Err(Error::Domain(format!(
            "functional equation needs −1 ≤ x < 1/2, got x = {x}"
        )));
    }
    if x == T::zero() || is_zero(z) {
        return Ok(SeriesResult::exact(zero()));
    }
    let u = T::one() - x;
    let y = -x / u;
    assert!(
        y > -T::one() && y <= T::lit(0.5),
        "transplanted argument {y} outside (−1, 1/2]"
    );
    let w = -z - T::one();
    let inner = eval_without_functional_eq(w, y, tol)?;
    Ok(inner.result.affine(
        Complex::new(T::one(), T::zero()),
        Complex::new(u.ln(), T::zero()),
    ))
}
