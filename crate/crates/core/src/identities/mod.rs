//! Series identities with harmonic numbers, each evaluated from both sides.
//!
//! Every identity is an [`Identity`] with a catalog of parameter points; one
//! evaluation yields an [`IdentityReport`] carrying both sides, their
//! residual and the methods used. Points outside an identity's domain are
//! recorded as [`Skip`]s instead of failing a sweep.
//!
//! | name              | left side                                   | right side |
//! |-------------------|---------------------------------------------|------------|
//! | `thm5_eq1`        | `F(z, x)`                                   | `log(1−x) − Σ (−x/(1−x))^n binom(n+z, n)/n` |
//! | `thm5_eq2`        | `F(z, x)` without the functional equation   | `log(1−x) + F(−z−1, −x/(1−x))` |
//! | `thm5_eq3`        | `F(z, x/(1+x))`                             | `−log(1+x) + F(−z−1, −x)` |
//! | `euler_transform` | `log(1+x) + Σ binom(z, n) x^n/n`            | `Σ (x/(1+x))^n/n · Σ_k C(n, k) binom(z, k)` |
//! | `prop2`           | `Σ binom(z, n) (−1)^{n−1}/n` (Levin)        | `ψ(z+1) + γ` |
//! | `cor6`            | `Σ binom(n+z, n) x^n/n`                     | `−log(1−x) − F(z, −x/(1−x))` or the finite form |
//! | `cor6_abel`       | Abel mean of `Σ binom(n+z, n) (−1)^n/n`     | `−H_p − log 2 + Σ 1/(k 2^k)` or `−log 2 − F(z, 1/2)` |
//! | `thm7_eq1`        | `Σ binom(z, n) H_n x^n`                     | `(x+1)^z F(z, x/(x+1))` |
//! | `thm7_eq2`        | `Σ binom(z, n) H_n x^n`                     | digamma expansion |
//! | `thm7_eq3`        | `Σ binom(n+z, n) H_n x^n`                   | `(1−x)^{−z−1} (F(z, x) − log(1−x))` |
//! | `cor8`            | `Σ C(2n, n) (−1)^n H_n x^n/4^n`             | `(2/√(1+x)) log((1+√(1+x))/(2√(1+x)))` |
//! | `cor9`            | `Σ binom(n+p, n) H_n x^n`                   | finite form |
//! | `cor10`           | `F(z, y)`                                   | `(1−y)^z Σ binom(z, n) H_n (y/(1−y))^n` |
//! | `cor11`           | `Σ binom(z, n) H_n`                         | `2^z (ψ(z+1) + γ − log 2) + Φ(1/2, 1, z+1)/2` |
//! | `cor12`           | `Σ binom(z, n) (−1)^{n−1} H_n/2^n`          | `−2^{−z} F(z, −1)` (and the Lerch form as `cor12_phi`) |
//! | `cor13`           | `Σ binom(z, n) H_n/2^n`                     | `(3/2)^z (ψ(z+1) + γ − log 3 + (2/3)^{z+1} Φ(2/3, 1, z+1))` |
//! | `cor14`           | `Σ (−1)^{n−1} Γ(n−1/4) H_n x^n/n!`          | closed form with `(x+1)^{1/4}` |
//! | `cor14_limit`     | log bracket of `cor14` near `x = 0`         | `3 log 2` |
//! | `cor14_hansen`    | `Σ t^{4n+1}/(4n+1)`                         | `−t + log((1+t)/(1−t))/4 + arctan(t)/2` |

mod catalog;
mod evaluators;
mod report;

pub use catalog::{catalog, grid, sweep, Axes, Identity, Point};
pub use evaluators::{
    cor10, cor11, cor12, cor12_phi, cor13, cor14, cor14_hansen, cor14_limit, cor14_log_bracket,
    cor6, cor6_abel, cor8, cor9, euler_transform, euler_transform_sides, prop2, thm5_eq1, thm5_eq2,
    thm5_eq3, thm7_eq1, thm7_eq2, thm7_eq3, GAMMA_THREE_QUARTERS,
};
pub use report::{
    write_csv, write_json_lines, ComplexValue, IdentityReport, Outcome, ParamValue, Skip, Summary,
    CSV_HEADER,
};
