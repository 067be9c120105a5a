use num_complex::Complex;

use super::representations::{
    f_at_one, f_closed_neg, f_closed_pos, f_finite_integer, f_functional_eq, f_integral, f_series,
    F_POLE_TOL,
};
use super::{FEvalRequest, FEvaluation, MethodChoice};
use crate::error::{Error, Result};
use crate::scalar::{as_nonneg_integer, fmt_complex, near_integer_in, Real};
use crate::series::SeriesResult;

/// Evaluates `F(z, x)` with the requested method.
///
/// `Auto` takes exact shortcuts for `z = 0` or `x = 0`, the finite form for
/// nonnegative integer `z`, `ψ(z+1) + γ` at `x = 1`, and otherwise the closed
/// form for the sign of `x`; when that fails it falls back to the defining
/// series and, for `x < 0`, to the functional equation.
pub fn f_eval<T: Real>(req: &FEvalRequest<T>) -> Result<FEvaluation<T>> {
    let FEvalRequest { z, x, method, tol } = *req;
    if !(x.is_finite() && x.abs() <= T::one()) {
        return Err(Error::Domain(format!(
            "F(z, x) is evaluated for −1 ≤ x ≤ 1 only, got x = {x}"
        )));
    }
    let result = match method {
        MethodChoice::Auto => return auto(z, x, tol, true),
        MethodChoice::Series => f_series(z, x, tol)?,
        MethodChoice::ClosedPos => f_closed_pos(z, x, tol)?,
        MethodChoice::ClosedNeg => f_closed_neg(z, x, tol)?,
        MethodChoice::Integral => f_integral(z, x, tol)?,
        MethodChoice::FunctionalEq => f_functional_eq(z, x, tol)?,
        MethodChoice::AtOne => {
            if x != T::one() {
                return Err(Error::Domain(format!(
                    "at_one evaluates F(z, 1) only, got x = {x}"
                )));
            }
            SeriesResult::rounded(f_at_one(z)?)
        }
        MethodChoice::FiniteInteger => match as_nonneg_integer(z) {
            Some(p) => SeriesResult::rounded(f_finite_integer(p, x)),
            None => {
                return Err(Error::Domain(format!(
                    "finite form needs a nonnegative integer z, got z = {}",
                    fmt_complex(z)
                )))
            }
        },
    };
    Ok(FEvaluation { result, method })
}

/// The `Auto` policy without the functional equation; used for the
/// transplanted point inside the functional equation itself.
pub(crate) fn eval_without_functional_eq<T: Real>(
    z: Complex<T>,
    x: T,
    tol: T,
) -> Result<FEvaluation<T>> {
    auto(z, x, tol, false)
}

type Evaluator<T> = fn(Complex<T>, T, T) -> Result<SeriesResult<T>>;

fn auto<T: Real>(z: Complex<T>, x: T, tol: T, allow_functional_eq: bool) -> Result<FEvaluation<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    if x == T::zero() {
        return Ok(FEvaluation {
            result: SeriesResult::exact(zero),
            method: MethodChoice::Series,
        });
    }
    if let Some(p) = as_nonneg_integer(z) {
        let result = if p == 0 {
            SeriesResult::exact(zero)
        } else {
            SeriesResult::rounded(f_finite_integer(p, x))
        };
        return Ok(FEvaluation {
            result,
            method: MethodChoice::FiniteInteger,
        });
    }

    let mut attempts: Vec<(MethodChoice, Evaluator<T>)> = Vec::new();
    if x == T::one() {
        attempts.push((MethodChoice::AtOne, |z, _, _| {
            f_at_one(z).map(SeriesResult::rounded)
        }));
    } else if x > T::zero() {
        attempts.push((MethodChoice::ClosedPos, f_closed_pos));
    } else {
        attempts.push((MethodChoice::ClosedNeg, f_closed_neg));
    }
    attempts.push((MethodChoice::Series, f_series));
    if allow_functional_eq && x < T::zero() {
        attempts.push((MethodChoice::FunctionalEq, f_functional_eq));
    }

    for (method, eval) in attempts {
        if let Ok(result) = eval(z, x, tol) {
            return Ok(FEvaluation { result, method });
        }
    }
    Err(Error::NoAdmissibleMethod {
        z: fmt_complex(z),
        x: format!("{x}"),
    })
}

/// Representations (excluding `finite_integer`, `at_one` and `auto`) whose
/// domain contains `(z, x)`. The closed forms are left out at their poles:
/// negative integers for `x > 0`, positive integers for `x < 0`.
pub fn admissible_methods<T: Real>(z: Complex<T>, x: T) -> Vec<MethodChoice> {
    let pole_tol = T::lit(F_POLE_TOL);
    let negative_integer = near_integer_in(z, f64::NEG_INFINITY, -1.0, pole_tol).is_some();
    let positive_integer = near_integer_in(z, 1.0, f64::INFINITY, pole_tol).is_some();
    let mut out = vec![];
    if x.abs() < T::one() || (x.abs() == T::one() && z.re > T::zero()) {
        out.push(MethodChoice::Series);
    }
    if x > T::zero() && x <= T::one() && !negative_integer {
        out.push(MethodChoice::ClosedPos);
    }
    if x >= -T::one() && x < T::zero() && !positive_integer {
        out.push(MethodChoice::ClosedNeg);
    }
    if x >= -T::one() && (x < T::one() || z.re > -T::one()) {
        out.push(MethodChoice::Integral);
    }
    if x >= -T::one() && x < T::lit(0.5) {
        out.push(MethodChoice::FunctionalEq);
    }
    out
}
