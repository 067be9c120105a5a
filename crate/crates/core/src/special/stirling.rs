use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest `n` for which every `s(n, k)` fits a signed 64-bit integer with
/// room for the next recurrence step.
pub const STIRLING_MAX_N: usize = 20;

/// Signed Stirling numbers of the first kind `s(n, k)`, `0 ≤ k ≤ n ≤ max_n`:
/// the coefficients of `z(z−1)⋯(z−n+1) = Σ_k s(n, k) z^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<i64>>,
}

/// Builds the table by `s(n+1, k) = s(n, k−1) − n·s(n, k)`.
pub fn stirling_first(max_n: usize) -> Result<StirlingTable> {
    if max_n > STIRLING_MAX_N {
        return Err(Error::Range(format!(
            "Stirling table limited to n ≤ {STIRLING_MAX_N} for exact 64-bit entries, requested {max_n}"
        )));
    }
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![1]);
    for n in 0..max_n {
        let prev = &rows[n];
        let ni = n as i64;
        let next: Vec<i64> = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1] } else { 0 };
                let here = prev.get(k).copied().unwrap_or(0);
                left - ni * here
            })
            .collect();
        rows.push(next);
    }
    Ok(StirlingTable { max_n, rows })
}

impl StirlingTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `s(n, k)`; zero for `k > n`. Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> i64 {
        self.rows[n].get(k).copied().unwrap_or(0)
    }

    /// Row `n`: `s(n, 0), …, s(n, n)`.
    pub fn row(&self, n: usize) -> &[i64] {
        &self.rows[n]
    }

    /// `Σ_k s(n, k) z^k` in exact integer arithmetic.
    pub fn eval_row_exact(&self, n: usize, z: i128) -> i128 {
        self.rows[n]
            .iter()
            .rev()
            .fold(0i128, |acc, &s| acc * z + s as i128)
    }

    /// `Σ_k s(n, k) z^k` for complex `z`.
    pub fn eval_row<T: Real>(&self, n: usize, z: Complex<T>) -> Complex<T> {
        self.rows[n]
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &s| {
                acc * z + T::from_i64(s).expect("Stirling entry representable")
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let t = stirling_first(6).unwrap();
        assert_eq!(t.get(3, 2), -3);
        assert_eq!(t.get(4, 1), -6);
        assert_eq!(t.row(4), &[0, -6, 11, -6, 1]);
        for n in 0..=6 {
            assert_eq!(t.get(n, n), 1);
        }
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(2, 5), 0);
    }

    #[test]
    fn boundary_entries_at_cap() {
        let t = stirling_first(STIRLING_MAX_N).unwrap();
        let fact19: i64 = (1..=19).product();
        assert_eq!(t.get(20, 1), -fact19);
        for n in 1..=20 {
            assert_eq!(t.get(n, 0), 0);
            assert_eq!(t.get(n, n), 1);
        }
    }

    #[test]
    fn overflow_guard() {
        assert!(matches!(stirling_first(21), Err(Error::Range(_))));
        assert!(stirling_first(25).is_err());
    }

    #[test]
    fn recurrence_holds_everywhere() {
        let t = stirling_first(STIRLING_MAX_N).unwrap();
        for n in 0..STIRLING_MAX_N {
            for k in 1..=n + 1 {
                assert_eq!(t.get(n + 1, k), t.get(n, k - 1) - n as i64 * t.get(n, k));
            }
        }
    }

    proptest! {
        #[test]
        fn rows_are_falling_factorials(z in -12i128..12) {
            let t = stirling_first(STIRLING_MAX_N).unwrap();
            for n in 0..=STIRLING_MAX_N {
                let falling: i128 = (0..n as i128).map(|j| z - j).product();
                prop_assert_eq!(t.eval_row_exact(n, z), falling);
            }
        }

        #[test]
        fn rows_match_complex_falling_factorials(re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let t = stirling_first(12).unwrap();
            let z = Complex::new(re, im);
            for n in 0..=12 {
                let falling = (0..n).fold(Complex::new(1.0, 0.0), |acc, j| acc * (z - j as f64));
                let got = t.eval_row(n, z);
                prop_assert!((got - falling).norm() <= 1e-9 * falling.norm().max(1.0));
            }
        }
    }
}
