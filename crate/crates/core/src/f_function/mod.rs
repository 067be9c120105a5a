//! The function `F(z, x) = Σ_{n≥1} binom(z, n) (−1)^(n−1) x^n / n`.
//!
//! Each representation is a separate evaluator so that they can be checked
//! against one another:
//!
//! | method            | formula                                                         | domain                      |
//! |-------------------|-----------------------------------------------------------------|-----------------------------|
//! | `series`          | defining series                                                 | `|x| < 1`, or `|x| = 1`, `Re z > 0` |
//! | `finite_integer`  | `H_p − Σ_{k≤p} (1−x)^k/k`                                       | `z = p ∈ ℕ`                 |
//! | `closed_pos`      | `ψ(z+1) + γ + log x + (1−x)^{z+1} Φ(1−x, 1, z+1)`               | `0 < x ≤ 1`                 |
//! | `closed_neg`      | `ψ(1−z) + γ + log(−x) + (1−(1−x)^z)/z + (1−x)^{z−1} Φ(1/(1−x), 1, 1−z)` | `−1 ≤ x < 0`     |
//! | `integral`        | `∫_0^x (1 − (1−t)^z)/t dt`                                      | `−1 ≤ x < 1`; `x = 1` if `Re z > −1` |
//! | `at_one`          | `ψ(z+1) + γ`                                                    | `x = 1`                     |
//! | `functional_eq`   | `log(1−x) + F(−z−1, −x/(1−x))`                                  | `−1 ≤ x < 1/2`              |
//!
//! [`f_eval`] dispatches between them.

mod dispatch;
mod representations;
mod taylor;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::scalar::Real;
use crate::series::SeriesResult;

pub(crate) use dispatch::eval_without_functional_eq;
pub use dispatch::{admissible_methods, f_eval};
pub use representations::{
    f_at_one, f_closed_neg, f_closed_pos, f_finite_integer, f_functional_eq, f_integral, f_series,
    F_POLE_TOL,
};
pub use taylor::{f_taylor_coeff, taylor_polynomial, TaylorCoeff, TAYLOR_MAX_K};

/// Evaluation strategy for `F(z, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodChoice {
    Series,
    ClosedPos,
    ClosedNeg,
    Integral,
    FunctionalEq,
    FiniteInteger,
    AtOne,
    Auto,
}

impl MethodChoice {
    pub const ALL: [MethodChoice; 8] = [
        MethodChoice::Series,
        MethodChoice::ClosedPos,
        MethodChoice::ClosedNeg,
        MethodChoice::Integral,
        MethodChoice::FunctionalEq,
        MethodChoice::FiniteInteger,
        MethodChoice::AtOne,
        MethodChoice::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodChoice::Series => "series",
            MethodChoice::ClosedPos => "closed_pos",
            MethodChoice::ClosedNeg => "closed_neg",
            MethodChoice::Integral => "integral",
            MethodChoice::FunctionalEq => "functional_eq",
            MethodChoice::FiniteInteger => "finite_integer",
            MethodChoice::AtOne => "at_one",
            MethodChoice::Auto => "auto",
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        MethodChoice::ALL
            .into_iter()
            .find(|m| m.name() == norm)
            .ok_or_else(|| {
                let names: Vec<_> = MethodChoice::ALL.iter().map(|m| m.name()).collect();
                format!("unknown method '{s}', expected one of {}", names.join(", "))
            })
    }
}

/// A request to evaluate `F(z, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FEvalRequest<T: Real> {
    pub z: Complex<T>,
    pub x: T,
    pub method: MethodChoice,
    pub tol: T,
}

impl<T: Real> FEvalRequest<T> {
    pub fn auto(z: Complex<T>, x: T, tol: T) -> Self {
        Self {
            z,
            x,
            method: MethodChoice::Auto,
            tol,
        }
    }
}

/// Result of [`f_eval`]: the value and the strategy that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FEvaluation<T: Real> {
    pub result: SeriesResult<T>,
    pub method: MethodChoice,
}
