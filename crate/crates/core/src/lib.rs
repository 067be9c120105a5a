//! Binomial series with harmonic numbers.
//!
//! The central object is
//!
//! ```text
//! F(z, x) = Σ_{n≥1} binom(z, n) (-1)^(n-1) x^n / n
//! ```
//!
//! evaluated through its defining series, closed forms in terms of the
//! digamma function and the Lerch transcendent Φ(t, 1, a), an integral
//! representation and a functional equation. On top of it the
//! [`identities`] module evaluates series such as Σ binom(z, n) H_n x^n in
//! closed form and by direct summation and reports the residuals.
//!
//! The numerical core is generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`); the identity harness and reports use `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod f_function;
pub mod identities;
pub mod scalar;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use f_function::{
    f_eval, f_taylor_coeff, FEvalRequest, FEvaluation, MethodChoice, TaylorCoeff,
};
pub use identities::{Identity, IdentityReport, Outcome};
pub use scalar::Real;
pub use series::SeriesResult;
pub use special::{StirlingTable, EULER_GAMMA};

pub use num_complex::Complex;

/// Complex value with `f64` components; the codomain of the evaluators.
pub type Complex64 = Complex<f64>;
/// Complex value with `f32` components.
pub type Complex32 = Complex<f32>;
/// Series/quadrature result in double precision.
pub type SeriesResult64 = SeriesResult<f64>;
/// Series/quadrature result in single precision.
pub type SeriesResult32 = SeriesResult<f32>;
