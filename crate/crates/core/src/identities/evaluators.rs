use std::f64::consts::{LN_2, PI};

use num_complex::Complex;

use super::report::{IdentityReport, ParamValue};
use crate::error::{Error, Result};
use crate::f_function::{
    eval_without_functional_eq, f_at_one, f_eval, f_finite_integer, f_functional_eq, FEvalRequest,
    F_POLE_TOL,
};
use crate::scalar::{as_nonneg_integer, fmt_complex, near_integer_in, pow_real_base};
use crate::series::{abel_mean, finite_sum, levin_sum, max_terms, partial_sum, SeriesResult};
use crate::special::{digamma, harmonic, lerch_phi1, shifted_binomials, BinomialSeq, EULER_GAMMA};

type C = Complex<f64>;
type SR = SeriesResult<f64>;

/// `Γ(3/4)`.
pub const GAMMA_THREE_QUARTERS: f64 = 1.225_416_702_465_177_6;

/// Largest order tried by the Levin summation at `x = 1`.
const LEVIN_MAX_ORDER: usize = 20;
/// Accuracy floor requested from Levin summation; beyond it cancellation dominates.
const LEVIN_TOL_FLOOR: f64 = 1e-8;
/// Accuracy floor requested from Abel means.
const ABEL_TOL_FLOOR: f64 = 1e-6;

fn c(re: f64) -> C {
    Complex::new(re, 0.0)
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn sum<F: FnMut(usize) -> C>(terms: F, tol: f64) -> SR {
    partial_sum(terms, tol, max_terms())
}

/// `Σ_{n≥1} binom(z, n) H_n w^n`.
fn binom_harmonic_sum(z: C, w: C, tol: f64) -> SR {
    if let Some(p) = as_nonneg_integer(z) {
        let mut h = 0.0;
        let mut power = c(1.0);
        let terms = BinomialSeq::new(z)
            .enumerate()
            .skip(1)
            .take(p as usize)
            .map(|(n, b)| {
                h += 1.0 / n as f64;
                power *= w;
                b * power * h
            });
        return finite_sum(terms);
    }
    let mut binom = BinomialSeq::new(z);
    binom.next();
    let mut h = 0.0;
    let mut power = c(1.0);
    sum(
        |n| {
            h += 1.0 / n as f64;
            power *= w;
            binom.next().expect("infinite") * power * h
        },
        tol,
    )
}

/// `Σ_{n≥1} binom(n+z, n) H_n x^n`.
fn shifted_harmonic_sum(z: C, x: f64, tol: f64) -> SR {
    let mut binom = shifted_binomials(z);
    binom.next();
    let mut h = 0.0;
    let mut power = 1.0;
    sum(
        |n| {
            h += 1.0 / n as f64;
            power *= x;
            binom.next().expect("infinite") * (power * h)
        },
        tol,
    )
}

/// `Σ_{n≥1} binom(n+z, n) w^n / n`.
fn shifted_log_sum(z: C, w: f64, tol: f64) -> SR {
    let mut binom = shifted_binomials(z);
    binom.next();
    let mut power = 1.0;
    sum(
        |n| {
            power *= w;
            binom.next().expect("infinite") * (power / n as f64)
        },
        tol,
    )
}

fn feval(z: C, x: f64, tol: f64) -> Result<(SR, String)> {
    let e = f_eval(&FEvalRequest::auto(z, x, tol))?;
    Ok((e.result, format!("f_eval:{}", e.method)))
}

fn reject_negative_integer(z: C, what: &str) -> Result<()> {
    match near_integer_in(z, f64::NEG_INFINITY, -1.0, F_POLE_TOL) {
        Some(p) => Err(Error::Pole(format!(
            "{what}: z = {} is the negative integer {p}",
            fmt_complex(z)
        ))),
        None => Ok(()),
    }
}

/// Combines a closed-form head with a series part into one result.
fn with_series(head: C, part: &SR, factor: C) -> SR {
    let value = head + factor * part.value;
    SeriesResult {
        value,
        abs_error_estimate: part.abs_error_estimate * factor.norm()
            + 8.0 * f64::EPSILON * (head.norm() + (factor * part.value).norm()),
        terms_used: part.terms_used,
        converged: part.converged,
    }
}

fn scaled(r: &SR, factor: C, shift: C) -> SR {
    SeriesResult {
        value: r.value * factor + shift,
        abs_error_estimate: r.abs_error_estimate * factor.norm()
            + 4.0 * f64::EPSILON * shift.norm(),
        ..*r
    }
}

fn closed(value: C) -> SR {
    SeriesResult {
        value,
        abs_error_estimate: 8.0 * f64::EPSILON * value.norm(),
        terms_used: 0,
        converged: true,
    }
}

/// `Σ binom(z, n) H_n x^n = (x+1)^z F(z, x/(x+1))` for `−1/2 < x < 1`.
pub fn thm7_eq1(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x > -0.5 && x < 1.0) {
        return Err(domain(format!("needs −1/2 < x < 1, got x = {x}")));
    }
    let lhs = binom_harmonic_sum(z, c(x), tol);
    let (f, method) = feval(z, x / (x + 1.0), tol)?;
    let rhs = scaled(&f, pow_real_base(1.0 + x, z), c(0.0));
    Ok(IdentityReport::new(
        "thm7_eq1",
        &[("z", z.into()), ("x", x.into())],
        &lhs,
        "partial_sum",
        &rhs,
        &method,
    ))
}

/// The same sum against the explicit digamma expansion
/// `(x+1)^z (ψ(z+1) + γ + log(x/(1+x)) + Σ_{n≥1} (1+x)^{−n−z}/(n+z))`
/// for `0 < x < 1`.
pub fn thm7_eq2(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(format!("needs 0 < x < 1, got x = {x}")));
    }
    reject_negative_integer(z, "digamma expansion")?;
    let lhs = binom_harmonic_sum(z, c(x), tol);
    let q = 1.0 / (1.0 + x);
    let mut power = 1.0;
    let tail = sum(
        |n| {
            power *= q;
            c(power) / (z + n as f64)
        },
        tol,
    );
    let prefactor = pow_real_base(1.0 + x, z);
    let head = digamma(z + 1.0)? + EULER_GAMMA + (x / (1.0 + x)).ln();
    let inner = with_series(head, &tail, pow_real_base(q, z));
    let rhs = scaled(&inner, prefactor, c(0.0));
    Ok(IdentityReport::new(
        "thm7_eq2",
        &[("z", z.into()), ("x", x.into())],
        &lhs,
        "partial_sum",
        &rhs,
        "digamma+partial_sum",
    ))
}

/// `Σ binom(n+z, n) H_n x^n = (1−x)^{−z−1} (F(z, x) − log(1−x))` for `|x| < 1`.
pub fn thm7_eq3(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x.abs() < 1.0) {
        return Err(domain(format!("needs |x| < 1, got x = {x}")));
    }
    let lhs = shifted_harmonic_sum(z, x, tol);
    let (f, method) = feval(z, x, tol)?;
    let rhs = scaled(
        &f,
        pow_real_base(1.0 - x, -z - 1.0),
        c(-(-x).ln_1p()) * pow_real_base(1.0 - x, -z - 1.0),
    );
    Ok(IdentityReport::new(
        "thm7_eq3",
        &[("z", z.into()), ("x", x.into())],
        &lhs,
        "partial_sum",
        &rhs,
        &method,
    ))
}

/// `−H_p − log(1−x) + Σ_{k=1..p} 1/(k (1−x)^k)`.
fn shifted_log_finite(p: u64, x: f64) -> C {
    let u = 1.0 - x;
    let mut power = 1.0;
    let mut acc = -(-x).ln_1p() - harmonic::<f64>(p);
    for k in 1..=p {
        power *= u;
        acc += 1.0 / (k as f64 * power);
    }
    c(acc)
}

/// `Σ binom(n+z, n) x^n / n = −log(1−x) − F(z, −x/(1−x))` for `−1 < x < 1/2`,
/// or the finite form for integer `z = p ≥ 0` and `|x| < 1`.
pub fn cor6(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    let params: [(&str, ParamValue); 2] = [("z", z.into()), ("x", x.into())];
    if let Some(p) = as_nonneg_integer(z) {
        if !(x.abs() < 1.0) {
            return Err(domain(format!("needs |x| < 1 for integer z, got x = {x}")));
        }
        let lhs = shifted_log_sum(z, x, tol);
        let rhs = closed(shifted_log_finite(p, x));
        return Ok(IdentityReport::new(
            "cor6",
            &params,
            &lhs,
            "partial_sum",
            &rhs,
            "finite_form",
        ));
    }
    if !(x > -1.0 && x < 0.5) {
        return Err(domain(format!("needs −1 < x < 1/2, got x = {x}")));
    }
    let lhs = shifted_log_sum(z, x, tol);
    let (f, method) = feval(z, -x / (1.0 - x), tol)?;
    let rhs = scaled(&f, c(-1.0), c(-(-x).ln_1p()));
    Ok(IdentityReport::new(
        "cor6",
        &params,
        &lhs,
        "partial_sum",
        &rhs,
        &method,
    ))
}

/// Abel mean of the divergent `Σ binom(n+z, n) (−1)^n / n` against
/// `−H_p − log 2 + Σ_{k=1..p} 1/(k 2^k)` (integer `z = p`) or
/// `−log 2 − F(z, 1/2)`.
pub fn cor6_abel(z: C, tol: f64) -> Result<IdentityReport> {
    let mut binom = shifted_binomials(z);
    binom.next();
    let lhs = abel_mean(
        |n| {
            let b = binom.next().expect("infinite");
            if n % 2 == 0 {
                b / n as f64
            } else {
                -b / n as f64
            }
        },
        tol.max(ABEL_TOL_FLOOR),
    );
    let (rhs, method) = match as_nonneg_integer(z) {
        Some(p) => (
            closed(shifted_log_finite(p, -1.0)),
            "finite_form".to_string(),
        ),
        None => {
            let (f, method) = feval(z, 0.5, tol)?;
            (scaled(&f, c(-1.0), c(-LN_2)), method)
        }
    };
    Ok(IdentityReport::new(
        "cor6_abel",
        &[("z", z.into())],
        &lhs,
        "abel_mean",
        &rhs,
        &method,
    ))
}

/// `Σ C(2n, n) (−1)^n H_n x^n / 4^n = (2/√(1+x)) log((1+√(1+x))/(2√(1+x)))`
/// for `−1 < x ≤ 1`.
pub fn cor8(x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x > -1.0 && x <= 1.0) {
        return Err(domain(format!("needs −1 < x ≤ 1, got x = {x}")));
    }
    // C(2n, n) (−1)^n / 4^n = binom(−1/2, n)
    let lhs = binom_harmonic_sum(c(-0.5), c(x), tol);
    let s = (1.0 + x).sqrt();
    let rhs = closed(c(2.0 / s * ((1.0 + s) / (2.0 * s)).ln()));
    let lhs_method = if x == 1.0 {
        "partial_sum+aitken"
    } else {
        "partial_sum"
    };
    Ok(IdentityReport::new(
        "cor8",
        &[("x", x.into())],
        &lhs,
        lhs_method,
        &rhs,
        "closed_form",
    ))
}

/// `Σ binom(n+p, n) H_n x^n = (1−x)^{−p−1} (H_p − log(1−x) − Σ_{k≤p} (1−x)^k/k)`.
pub fn cor9(p: u64, x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x.abs() < 1.0) {
        return Err(domain(format!("needs |x| < 1, got x = {x}")));
    }
    let z = c(p as f64);
    let lhs = shifted_harmonic_sum(z, x, tol);
    let bracket = f_finite_integer(p, x) - (-x).ln_1p();
    let rhs = closed(bracket * (1.0 - x).powi(-(p as i32) - 1));
    Ok(IdentityReport::new(
        "cor9",
        &[("p", (p as f64).into()), ("x", x.into())],
        &lhs,
        "partial_sum",
        &rhs,
        "finite_form",
    ))
}

/// `F(z, y) = (1−y)^z Σ binom(z, n) H_n (y/(1−y))^n` for `−1 ≤ y < 1/2`.
pub fn cor10(z: C, y: f64, tol: f64) -> Result<IdentityReport> {
    if !(-1.0..0.5).contains(&y) {
        return Err(domain(format!("needs −1 ≤ y < 1/2, got y = {y}")));
    }
    let (lhs, method) = feval(z, y, tol)?;
    let s = binom_harmonic_sum(z, c(y / (1.0 - y)), tol);
    let rhs = scaled(&s, pow_real_base(1.0 - y, z), c(0.0));
    Ok(IdentityReport::new(
        "cor10",
        &[("z", z.into()), ("y", y.into())],
        &lhs,
        &method,
        &rhs,
        "partial_sum",
    ))
}

fn require_re_above_minus_one(z: C) -> Result<()> {
    if z.re > -1.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "needs Re z > −1, got z = {}",
            fmt_complex(z)
        )))
    }
}

/// `Σ binom(z, n) H_n = 2^z (ψ(z+1) + γ − log 2) + Φ(1/2, 1, z+1)/2` for `Re z > −1`.
pub fn cor11(z: C, tol: f64) -> Result<IdentityReport> {
    require_re_above_minus_one(z)?;
    let lhs = binom_harmonic_sum(z, c(1.0), tol);
    if z == c(0.0) {
        return Ok(IdentityReport::new(
            "cor11",
            &[("z", z.into())],
            &lhs,
            "finite_sum",
            &SeriesResult::exact(z),
            "exact",
        ));
    }
    let phi = lerch_phi1(0.5, z + 1.0, tol)?;
    let head = pow_real_base(2.0, z) * (digamma(z + 1.0)? + EULER_GAMMA - LN_2);
    let rhs = with_series(head, &phi, c(0.5));
    let lhs_method = if as_nonneg_integer(z).is_some() {
        "finite_sum"
    } else {
        "partial_sum+aitken"
    };
    Ok(IdentityReport::new(
        "cor11",
        &[("z", z.into())],
        &lhs,
        lhs_method,
        &rhs,
        "digamma+lerch",
    ))
}

/// `Σ binom(z, n) (−1)^{n−1} H_n / 2^n`.
fn cor12_lhs(z: C, tol: f64) -> SR {
    scaled(&binom_harmonic_sum(z, c(-0.5), tol), c(-1.0), c(0.0))
}

/// `Σ binom(z, n) (−1)^{n−1} H_n / 2^n = −2^{−z} F(z, −1)` for `Re z > −1`.
pub fn cor12(z: C, tol: f64) -> Result<IdentityReport> {
    require_re_above_minus_one(z)?;
    let lhs = cor12_lhs(z, tol);
    let (f, method) = feval(z, -1.0, tol)?;
    let rhs = scaled(&f, -pow_real_base(2.0, -z), c(0.0));
    Ok(IdentityReport::new(
        "cor12",
        &[("z", z.into())],
        &lhs,
        "partial_sum",
        &rhs,
        &method,
    ))
}

/// The same sum against
/// `2^{−z} ((2^z − 1)/z − ψ(1−z) − γ − 2^{z−1} Φ(1/2, 1, 1−z))`,
/// for `Re z > −1`, `z ∉ {0, 1, 2, …}`.
pub fn cor12_phi(z: C, tol: f64) -> Result<IdentityReport> {
    require_re_above_minus_one(z)?;
    if let Some(p) = near_integer_in(z, 0.0, f64::INFINITY, F_POLE_TOL) {
        return Err(Error::Pole(format!(
            "Lerch form undefined at the nonnegative integer z = {p}"
        )));
    }
    let lhs = cor12_lhs(z, tol);
    let two_z = pow_real_base(2.0, z);
    let phi = lerch_phi1(0.5, c(1.0) - z, tol)?;
    let head = (two_z - 1.0) / z - digamma(c(1.0) - z)? - EULER_GAMMA;
    let inner = with_series(head, &phi, -two_z * 0.5);
    let rhs = scaled(&inner, pow_real_base(2.0, -z), c(0.0));
    Ok(IdentityReport::new(
        "cor12_phi",
        &[("z", z.into())],
        &lhs,
        "partial_sum",
        &rhs,
        "digamma+lerch",
    ))
}

/// `Σ binom(z, n) H_n / 2^n = (3/2)^z (ψ(z+1) + γ − log 3 + (2/3)^{z+1} Φ(2/3, 1, z+1))`.
pub fn cor13(z: C, tol: f64) -> Result<IdentityReport> {
    reject_negative_integer(z, "digamma form")?;
    let lhs = binom_harmonic_sum(z, c(0.5), tol);
    if z == c(0.0) {
        return Ok(IdentityReport::new(
            "cor13",
            &[("z", z.into())],
            &lhs,
            "finite_sum",
            &SeriesResult::exact(z),
            "exact",
        ));
    }
    let phi = lerch_phi1(2.0 / 3.0, z + 1.0, tol)?;
    let head = digamma(z + 1.0)? + EULER_GAMMA - 3f64.ln();
    let inner = with_series(head, &phi, pow_real_base(2.0 / 3.0, z + 1.0));
    let rhs = scaled(&inner, pow_real_base(1.5, z), c(0.0));
    Ok(IdentityReport::new(
        "cor13",
        &[("z", z.into())],
        &lhs,
        "partial_sum",
        &rhs,
        "digamma+lerch",
    ))
}

/// `log(x ((x+1)^{1/4} + 1) / ((x+1) ((x+1)^{1/4} − 1)))`, which tends to
/// `3 log 2` as `x → 0`.
pub fn cor14_log_bracket(x: f64) -> f64 {
    let quarter_log = x.ln_1p() / 4.0;
    let s_minus_one = quarter_log.exp_m1();
    let s = 1.0 + s_minus_one;
    (x / s_minus_one).ln() + (s + 1.0).ln() - x.ln_1p()
}

/// `Σ (−1)^{n−1} Γ(n − 1/4) H_n x^n / n!` against its closed form for
/// `−1 < x ≤ 1`, `x ≠ 0`.
pub fn cor14(x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x > -1.0 && x <= 1.0) {
        return Err(domain(format!("needs −1 < x ≤ 1, got x = {x}")));
    }
    if x == 0.0 {
        return Err(domain(
            "x = 0 is a removable singularity of the closed form; see cor14_limit".into(),
        ));
    }
    // ratio = Γ(n − 1/4)/n!
    let mut ratio = GAMMA_THREE_QUARTERS / -0.25;
    let mut h = 0.0;
    let mut power = -1.0;
    let lhs = sum(
        |n| {
            let nf = n as f64;
            ratio *= (nf - 1.25) / nf;
            h += 1.0 / nf;
            power *= -x;
            c(ratio * h * power)
        },
        tol,
    );
    let t = (x.ln_1p() / 4.0).exp();
    let bracket =
        4.0 - PI / 2.0 - 3.0 * LN_2 - 4.0 / t + cor14_log_bracket(x) + 2.0 * (1.0 / t).atan();
    let rhs = closed(c(4.0 * GAMMA_THREE_QUARTERS * t * bracket));
    let lhs_method = if x == 1.0 {
        "partial_sum+aitken"
    } else {
        "partial_sum"
    };
    Ok(IdentityReport::new(
        "cor14",
        &[("x", x.into())],
        &lhs,
        lhs_method,
        &rhs,
        "closed_form",
    ))
}

/// The log bracket of [`cor14`] at small `x` against its limit `3 log 2`.
pub fn cor14_limit(x: f64) -> Result<IdentityReport> {
    if !(x != 0.0 && x.abs() <= 1e-3) {
        return Err(domain(format!(
            "limit check needs 0 < |x| ≤ 1e−3, got x = {x}"
        )));
    }
    let lhs = closed(c(cor14_log_bracket(x)));
    let rhs = closed(c(3.0 * LN_2));
    Ok(IdentityReport::new(
        "cor14_limit",
        &[("x", x.into())],
        &lhs,
        "closed_form",
        &rhs,
        "constant",
    ))
}

/// `Σ_{n≥1} t^{4n+1}/(4n+1) = −t + log((1+t)/(1−t))/4 + arctan(t)/2` for `|t| < 1`.
pub fn cor14_hansen(t: f64, tol: f64) -> Result<IdentityReport> {
    if !(t.abs() < 1.0) {
        return Err(domain(format!("needs |t| < 1, got t = {t}")));
    }
    let t4 = t.powi(4);
    let mut power = t;
    let lhs = sum(
        |n| {
            power *= t4;
            c(power / (4 * n + 1) as f64)
        },
        tol,
    );
    let rhs = closed(c(-t + 0.5 * t.atanh() + 0.5 * t.atan()));
    Ok(IdentityReport::new(
        "cor14_hansen",
        &[("t", t.into())],
        &lhs,
        "partial_sum",
        &rhs,
        "closed_form",
    ))
}

fn require_transplant_domain(x: f64) -> Result<()> {
    if (-1.0..0.5).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("needs −1 ≤ x < 1/2, got x = {x}")))
    }
}

/// `F(z, x) = log(1−x) − Σ (−x/(1−x))^n binom(n+z, n) / n` for `−1 ≤ x < 1/2`.
pub fn thm5_eq1(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    require_transplant_domain(x)?;
    let (lhs, method) = feval(z, x, tol)?;
    let s = shifted_log_sum(z, -x / (1.0 - x), tol);
    let rhs = scaled(&s, c(-1.0), c((-x).ln_1p()));
    Ok(IdentityReport::new(
        "thm5_eq1",
        &[("z", z.into()), ("x", x.into())],
        &lhs,
        &method,
        &rhs,
        "partial_sum",
    ))
}

/// `F(z, x) = log(1−x) + F(−z−1, −x/(1−x))` for `−1 ≤ x < 1/2`; the left
/// side never uses the functional equation.
pub fn thm5_eq2(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    require_transplant_domain(x)?;
    let direct = eval_without_functional_eq(z, x, tol)?;
    let rhs = f_functional_eq(z, x, tol)?;
    Ok(IdentityReport::new(
        "thm5_eq2",
        &[("z", z.into()), ("x", x.into())],
        &direct.result,
        &format!("f_eval:{}", direct.method),
        &rhs,
        "functional_eq",
    ))
}

/// `F(z, x/(1+x)) = −log(1+x) + F(−z−1, −x)` for `−1/2 < x ≤ 1`.
pub fn thm5_eq3(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    if !(x > -0.5 && x <= 1.0) {
        return Err(domain(format!("needs −1/2 < x ≤ 1, got x = {x}")));
    }
    let (lhs, lhs_method) = feval(z, x / (1.0 + x), tol)?;
    let (f, rhs_method) = feval(-z - 1.0, -x, tol)?;
    let rhs = scaled(&f, c(1.0), c(-x.ln_1p()));
    Ok(IdentityReport::new(
        "thm5_eq3",
        &[("z", z.into()), ("x", x.into())],
        &lhs,
        &lhs_method,
        &rhs,
        &rhs_method,
    ))
}

/// Both sides of the series transformation
/// `a_0 log(1+x) + Σ_{n≥1} a_n x^n/n = Σ_{n≥1} (x/(1+x))^n/n · Σ_{k=0..n} C(n, k) a_k`
/// for coefficients `a_n` (`n ≥ 0`). The inner binomial transform is summed
/// term by term.
pub fn euler_transform_sides<F: Fn(usize) -> C>(coeffs: F, x: f64, tol: f64) -> Result<(SR, SR)> {
    if !(x.abs() < 1.0 && x > -0.5) {
        return Err(domain(format!(
            "needs |x| < 1 and |x/(1+x)| < 1, got x = {x}"
        )));
    }
    let mut a: Vec<C> = vec![coeffs(0)];
    let a0 = a[0];
    let mut power = 1.0;
    let series = sum(
        |n| {
            power *= x;
            coeffs(n) * (power / n as f64)
        },
        tol,
    );
    let lhs = with_series(a0 * x.ln_1p(), &series, c(1.0));

    let w = x / (1.0 + x);
    let mut wpow = 1.0;
    let rhs = sum(
        |n| {
            while a.len() <= n {
                a.push(coeffs(a.len()));
            }
            let mut inner = CompensatedC::default();
            let mut binom = 1.0;
            for (k, &ak) in a.iter().enumerate().take(n + 1) {
                inner.add(ak * binom);
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            wpow *= w;
            inner.value() * (wpow / n as f64)
        },
        tol,
    );
    Ok((lhs, rhs))
}

#[derive(Default)]
struct CompensatedC {
    re: (f64, f64),
    im: (f64, f64),
}

impl CompensatedC {
    fn add(&mut self, v: C) {
        for (acc, x) in [(&mut self.re, v.re), (&mut self.im, v.im)] {
            let t = acc.0 + x;
            acc.1 += if acc.0.abs() >= x.abs() {
                (acc.0 - t) + x
            } else {
                (x - t) + acc.0
            };
            acc.0 = t;
        }
    }

    fn value(&self) -> C {
        Complex::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// The series transformation with `a_n = binom(z, n)`, where the inner sums
/// reproduce Vandermonde's `binom(n+z, n)`.
pub fn euler_transform(z: C, x: f64, tol: f64) -> Result<IdentityReport> {
    let binoms: Vec<C> = BinomialSeq::new(z).take(4096).collect();
    let (lhs, rhs) = euler_transform_sides(
        |n| {
            binoms
                .get(n)
                .copied()
                .unwrap_or_else(|| crate::special::binomial_z(z, n as u64))
        },
        x,
        tol,
    )?;
    Ok(IdentityReport::new(
        "euler_transform",
        &[("z", z.into()), ("x", x.into())],
        &lhs,
        "partial_sum",
        &rhs,
        "binomial_transform",
    ))
}

/// Defining series at `x = 1`, `Σ binom(z, n) (−1)^{n−1}/n`, against
/// `ψ(z+1) + γ` for `Re z > −1`.
pub fn prop2(z: C, tol: f64) -> Result<IdentityReport> {
    require_re_above_minus_one(z)?;
    let (lhs, lhs_method) = if let Some(p) = as_nonneg_integer(z) {
        let terms = BinomialSeq::new(z)
            .enumerate()
            .skip(1)
            .take(p as usize)
            .map(|(n, b)| {
                if n % 2 == 1 {
                    b / n as f64
                } else {
                    -b / n as f64
                }
            });
        (finite_sum(terms), "finite_sum")
    } else {
        let mut binom = BinomialSeq::new(z);
        binom.next();
        let r = levin_sum(
            |n| {
                let b = binom.next().expect("infinite") / n as f64;
                if n % 2 == 1 {
                    b
                } else {
                    -b
                }
            },
            tol.max(LEVIN_TOL_FLOOR),
            LEVIN_MAX_ORDER,
        );
        (r, "levin")
    };
    let rhs = closed(f_at_one(z)?);
    Ok(IdentityReport::new(
        "prop2",
        &[("z", z.into())],
        &lhs,
        lhs_method,
        &rhs,
        "digamma",
    ))
}

/// Collects parameter names for skip records.
pub(crate) fn params_for(
    names: &[(&str, ParamValue)],
) -> std::collections::BTreeMap<String, ParamValue> {
    names.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn z(re: f64) -> C {
        c(re)
    }

    fn assert_sides(r: &IdentityReport, expected: f64, eps: f64) {
        assert!(r.converged, "{r:?}");
        assert!(
            (r.lhs.re - expected).abs() <= eps && r.lhs.im.abs() <= eps,
            "lhs {r:?}"
        );
        assert!(
            (r.rhs.re - expected).abs() <= eps && r.rhs.im.abs() <= eps,
            "rhs {r:?}"
        );
    }

    #[test]
    fn thm7_examples() {
        assert_sides(&thm7_eq1(z(1.0), 0.3, TOL).unwrap(), 0.3, 1e-15);
        let r = thm7_eq1(z(0.0), 0.6, TOL).unwrap();
        assert_eq!((r.lhs.re, r.rhs.re, r.abs_residual), (0.0, 0.0, 0.0));
        assert!(thm7_eq1(z(-0.5), 0.5, TOL).unwrap().abs_residual <= 1e-9);
        assert!(thm7_eq1(z(0.5), -0.5, TOL).is_err());

        assert_sides(&thm7_eq2(z(1.0), 0.3, TOL).unwrap(), 0.3, 1e-12);
        assert!(matches!(thm7_eq2(z(-2.0), 0.3, TOL), Err(Error::Pole(_))));

        assert_sides(&thm7_eq3(z(0.0), 0.5, TOL).unwrap(), 2.0 * LN_2, 1e-11);
        assert_sides(
            &thm7_eq3(z(1.0), 0.5, TOL).unwrap(),
            4.0 * (0.5 + LN_2),
            1e-10,
        );
        assert!((4.0 * (0.5 + LN_2) - 4.772589).abs() < 1e-6);
        let r = thm7_eq3(Complex::new(0.3, 1.1), 0.0, TOL).unwrap();
        assert_eq!(r.abs_residual, 0.0);
    }

    #[test]
    fn cor6_examples() {
        assert_sides(&cor6(z(1.0), 0.5, TOL).unwrap(), 1.0 + LN_2, 1e-11);
        assert_sides(&cor6(z(0.0), 0.3, TOL).unwrap(), -(0.7f64).ln(), 1e-12);
        let expected = -1.5 - 1.5f64.ln() + 1.0 / 1.5 + 1.0 / (2.0 * 1.5 * 1.5);
        assert_sides(&cor6(z(2.0), -0.5, TOL).unwrap(), expected, 1e-12);
        // general z uses the transplanted F
        let r = cor6(z(0.5), 0.3, TOL).unwrap();
        assert!(
            r.rhs_method.starts_with("f_eval:") && r.abs_residual < 1e-10,
            "{r:?}"
        );
        assert!(cor6(z(0.5), 0.6, TOL).is_err());
    }

    #[test]
    fn cor6_abel_examples() {
        let r = cor6_abel(z(1.0), TOL).unwrap();
        assert!((r.rhs.re - (-0.5 - LN_2)).abs() < 1e-15);
        assert!((r.rhs.re + 1.193147).abs() < 1e-6);
        assert!(r.abs_residual < 1e-3, "{r:?}");
        let r = cor6_abel(z(2.0), TOL).unwrap();
        assert!((r.rhs.re - (-7.0 / 8.0 - LN_2)).abs() < 1e-15);
        assert!(r.abs_residual < 1e-3, "{r:?}");
    }

    #[test]
    fn abel_means_approach_monotonically() {
        // p = 1: Σ (n+1)(−1)^n r^n / n in closed form is −log(1+r) − r/(1+r).
        let target = -0.5 - LN_2;
        let mut prev_gap = f64::INFINITY;
        for r in [0.9, 0.99, 0.999] {
            let mut power = 1.0;
            let s = sum(
                |n| {
                    power *= -r;
                    c((n + 1) as f64 * power / n as f64)
                },
                1e-14,
            );
            let exact = -(1.0 + r).ln() - r / (1.0 + r);
            assert!((s.value.re - exact).abs() < 1e-10);
            let gap = (s.value.re - target).abs();
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
    }

    #[test]
    fn cor8_examples() {
        let r = cor8(0.0, TOL).unwrap();
        assert_eq!((r.lhs.re, r.rhs.re), (0.0, 0.0));
        let r = cor8(1.0, 1e-10).unwrap();
        let expected = 2f64.sqrt() * ((1.0 + 2f64.sqrt()) / (2.0 * 2f64.sqrt())).ln();
        assert!((expected + 0.223_936_734_922_359_76).abs() < 1e-15);
        assert!((r.lhs.re - expected).abs() < 1e-4, "{r:?}");
        let s = 0.5f64.sqrt();
        let r = cor8(-0.5, TOL).unwrap();
        assert_sides(&r, 2.0 / s * ((1.0 + s) / (2.0 * s)).ln(), 1e-11);
        assert!(cor8(-1.0, TOL).is_err());
    }

    #[test]
    fn cor9_examples() {
        assert_sides(&cor9(0, 0.5, TOL).unwrap(), 2.0 * LN_2, 1e-11);
        assert_sides(&cor9(1, 0.5, TOL).unwrap(), 4.0 * (0.5 + LN_2), 1e-10);
        let r = cor9(3, 0.0, TOL).unwrap();
        assert_eq!(r.lhs.re, 0.0);
        assert!(r.rhs.re.abs() < 1e-15);
    }

    #[test]
    fn cor10_examples() {
        let r = cor10(Complex::new(0.7, -0.2), 0.0, TOL).unwrap();
        assert_eq!(r.abs_residual, 0.0);
        assert_sides(&cor10(z(1.0), 0.25, TOL).unwrap(), 0.25, 1e-14);
        let r = cor10(z(-0.5), -1.0, TOL).unwrap();
        let neg = crate::f_function::f_closed_neg(z(-0.5), -1.0, TOL).unwrap();
        assert!((r.rhs.re - neg.value.re).abs() < 1e-11, "{r:?}");
        assert!(cor10(z(0.5), 0.5, TOL).is_err());
    }

    #[test]
    fn cor11_examples() {
        assert_sides(&cor11(z(1.0), TOL).unwrap(), 1.0, 1e-12);
        assert_sides(&cor11(z(2.0), TOL).unwrap(), 3.5, 1e-12);
        let r = cor11(z(-0.5), 1e-10).unwrap();
        let at_one = cor8(1.0, 1e-10).unwrap();
        assert!((r.rhs.re - at_one.rhs.re).abs() < 1e-9, "{r:?} {at_one:?}");
        assert!((r.lhs.re - at_one.lhs.re).abs() < 1e-12);
        assert!(r.abs_residual < 1e-8, "{r:?}");
        assert!(cor11(z(-1.0), TOL).is_err());
    }

    #[test]
    fn cor12_examples() {
        assert_sides(&cor12(z(1.0), TOL).unwrap(), 0.5, 1e-14);
        let r = cor12(z(0.0), TOL).unwrap();
        assert_eq!((r.lhs.re, r.rhs.re), (0.0, 0.0));
        let a = cor12(z(0.5), TOL).unwrap();
        let b = cor12_phi(z(0.5), TOL).unwrap();
        assert!((a.rhs.re - b.rhs.re).abs() < 1e-9);
        assert!(a.abs_residual < 1e-10 && b.abs_residual < 1e-10);
        assert!(matches!(cor12_phi(z(0.0), TOL), Err(Error::Pole(_))));
        assert!(matches!(cor12_phi(z(2.0), TOL), Err(Error::Pole(_))));
    }

    #[test]
    fn cor13_examples() {
        assert_sides(&cor13(z(1.0), TOL).unwrap(), 0.5, 1e-12);
        let r = cor13(z(0.0), TOL).unwrap();
        assert_eq!(r.lhs.re, 0.0);
        assert_eq!(r.rhs.norm_like(), 0.0);
        let half = cor13(z(-0.5), TOL).unwrap();
        let via_cor8 = cor8(0.5, TOL).unwrap();
        assert!((half.lhs.re - via_cor8.lhs.re).abs() < 1e-12);
        assert!((half.rhs.re - via_cor8.rhs.re).abs() < 1e-11);
        assert!(matches!(cor13(z(-3.0), TOL), Err(Error::Pole(_))));
    }

    #[test]
    fn cor14_examples() {
        assert!((cor14_log_bracket(1e-6) - 3.0 * LN_2).abs() < 1e-6);
        assert!(cor14_limit(1e-6).unwrap().abs_residual < 1e-6);
        assert!(cor14_limit(0.5).is_err());
        let r = cor14(-0.5, TOL).unwrap();
        assert!(r.abs_residual < 1e-9, "{r:?}");
        let r = cor14(1.0, 1e-10).unwrap();
        assert!(r.abs_residual < 1e-7, "{r:?}");
        assert!(cor14(0.0, TOL)
            .unwrap_err()
            .to_string()
            .contains("cor14_limit"));
        // Γ(n − 1/4)/n! at n = 1, 2 is Γ(3/4) and (3/4)Γ(3/4)/2.
        let r = cor14(1e-3, TOL).unwrap();
        let h2 = 1.5;
        let first_two = GAMMA_THREE_QUARTERS * 1e-3 - 0.375 * GAMMA_THREE_QUARTERS * h2 * 1e-6;
        assert!((r.lhs.re - first_two).abs() < 1e-9);
    }

    #[test]
    fn hansen_series() {
        for t in [0.0, 0.3, 0.8, -0.6] {
            let r = cor14_hansen(t, TOL).unwrap();
            assert!(r.abs_residual < 1e-12, "{r:?}");
        }
        assert!(cor14_hansen(1.0, TOL).is_err());
    }

    #[test]
    fn functional_equation_examples() {
        for (zv, x) in [
            (z(0.5), -1.0),
            (Complex::new(1.0, 2.0), 0.3),
            (z(-0.75), -0.4),
        ] {
            assert!(thm5_eq1(zv, x, TOL).unwrap().abs_residual < 1e-10);
            assert!(thm5_eq2(zv, x, TOL).unwrap().abs_residual < 1e-10);
        }
        assert!(thm5_eq3(z(0.5), 1.0, TOL).unwrap().abs_residual < 1e-10);
        assert!(thm5_eq2(z(0.5), 0.5, TOL).is_err());
        assert!(thm5_eq3(z(0.5), -0.5, TOL).is_err());
    }

    #[test]
    fn euler_transform_examples() {
        let (l, r) =
            euler_transform_sides(|n| c(if n <= 1 { 1.0 } else { 0.0 }), 0.5, TOL).unwrap();
        let expected = 1.5f64.ln() + 0.5;
        assert!((l.value.re - expected).abs() < 1e-15);
        assert!((r.value.re - expected).abs() < 1e-12, "{r:?}");
        let (l, r) = euler_transform_sides(|_| c(0.0), 0.5, TOL).unwrap();
        assert_eq!((l.value.re, r.value.re), (0.0, 0.0));
        assert!(euler_transform(z(-0.5), 0.3, TOL).unwrap().abs_residual <= 1e-9);
        assert!(euler_transform(z(0.5), -0.6, TOL).is_err());
    }

    #[test]
    fn prop2_at_one() {
        for zv in [0.5, 1.5, 2.25] {
            let r = prop2(z(zv), 1e-10).unwrap();
            assert!(r.converged && r.abs_residual < 1e-6, "{r:?}");
        }
        let r = prop2(z(3.0), TOL).unwrap();
        assert!((r.lhs.re - 11.0 / 6.0).abs() < 1e-15 && r.abs_residual < 1e-14);
    }

    trait NormLike {
        fn norm_like(&self) -> f64;
    }

    impl NormLike for super::super::report::ComplexValue {
        fn norm_like(&self) -> f64 {
            self.re.hypot(self.im)
        }
    }
}
