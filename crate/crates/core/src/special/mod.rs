//! Special functions and exact combinatorial quantities used throughout:
//! harmonic numbers, generalized binomial coefficients, the digamma
//! function, Φ(t, 1, a), polylogarithms, ζ at integers and Stirling numbers
//! of the first kind.

mod digamma;
mod lerch;
mod stirling;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num};

use crate::scalar::{as_nonneg_integer, Real};

pub use digamma::{digamma, DIGAMMA_POLE_TOL, DIGAMMA_SHIFT};
pub use lerch::{lerch_phi1, polylog, zeta_int};
pub use stirling::{stirling_first, StirlingTable, STIRLING_MAX_N};

/// Euler's constant γ.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// γ in the scalar type `T`.
#[inline]
pub fn euler_gamma<T: Real>() -> T {
    T::lit(EULER_GAMMA)
}

/// Harmonic number `H_n = Σ_{k=1..n} 1/k`, summed smallest term first.
///
/// Generic over any numeric type with exact or rounded division, so it
/// works for `f64` as well as `num_rational::Rational64`.
pub fn harmonic<T: Num + FromPrimitive + Clone>(n: u64) -> T {
    (1..=n).rev().fold(T::zero(), |acc, k| {
        let k = T::from_u64(k).expect("index representable");
        acc + T::one() / k
    })
}

/// Generalized binomial coefficient `binom(z, n) = Π_{k<n} (z − k)/(k + 1)`.
///
/// Exactly `1` for `n = 0` and exactly `0` when `z` is a nonnegative
/// integer smaller than `n`.
pub fn binomial_z<T: Real>(z: Complex<T>, n: u64) -> Complex<T> {
    if let Some(p) = as_nonneg_integer(z) {
        if p < n {
            return Complex::new(T::zero(), T::zero());
        }
    }
    BinomialSeq::new(z)
        .nth(n as usize)
        .expect("binomial sequence is infinite")
}

/// The sequence `binom(z, 0), binom(z, 1), …` by running product.
#[derive(Debug, Clone)]
pub struct BinomialSeq<T: Real> {
    z: Complex<T>,
    next_index: u64,
    current: Complex<T>,
}

impl<T: Real> BinomialSeq<T> {
    pub fn new(z: Complex<T>) -> Self {
        Self {
            z,
            next_index: 0,
            current: Complex::new(T::one(), T::zero()),
        }
    }
}

impl<T: Real> Iterator for BinomialSeq<T> {
    type Item = Complex<T>;

    fn next(&mut self) -> Option<Complex<T>> {
        let out = self.current;
        let k = T::from_u64(self.next_index).expect("index representable");
        self.current = self.current * (self.z - k) / (k + T::one());
        self.next_index += 1;
        Some(out)
    }
}

/// `binom(n + z, n)` for `n = 0, 1, …`, computed as `(−1)^n binom(−z−1, n)`.
pub fn shifted_binomials<T: Real>(z: Complex<T>) -> impl Iterator<Item = Complex<T>> {
    let w = -z - T::one();
    BinomialSeq::new(w)
        .enumerate()
        .map(|(n, b)| if n % 2 == 0 { b } else { -b })
}

/// Central binomial coefficient `C(2n, n)` for `n ≤ 33` (fits `u64`).
pub fn central_binomial(n: u32) -> u64 {
    assert!(n <= 33, "C(2n, n) overflows u64 beyond n = 33");
    (1..=n as u64).fold(1u64, |acc, k| acc * (n as u64 + k) / k)
}
