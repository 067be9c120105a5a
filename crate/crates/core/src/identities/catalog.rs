use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;

use super::evaluators::*;
use super::report::{IdentityReport, Outcome, ParamValue, Skip};
use crate::error::Result;
use crate::scalar::as_nonneg_integer;

type C = Complex<f64>;

/// Which parameters an identity reads from a [`Point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axes {
    /// `z` and a real argument.
    ZX,
    /// `z` only.
    Z,
    /// The real argument only.
    X,
}

/// The identities that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Thm5Eq1,
    Thm5Eq2,
    Thm5Eq3,
    EulerTransform,
    Prop2,
    Cor6,
    Cor6Abel,
    Thm7Eq1,
    Thm7Eq2,
    Thm7Eq3,
    Cor8,
    Cor9,
    Cor10,
    Cor11,
    Cor12,
    Cor13,
    Cor14,
    Cor14Limit,
    Cor14Hansen,
}

impl Identity {
    pub const ALL: [Identity; 19] = [
        Identity::Thm5Eq1,
        Identity::Thm5Eq2,
        Identity::Thm5Eq3,
        Identity::EulerTransform,
        Identity::Prop2,
        Identity::Cor6,
        Identity::Cor6Abel,
        Identity::Thm7Eq1,
        Identity::Thm7Eq2,
        Identity::Thm7Eq3,
        Identity::Cor8,
        Identity::Cor9,
        Identity::Cor10,
        Identity::Cor11,
        Identity::Cor12,
        Identity::Cor13,
        Identity::Cor14,
        Identity::Cor14Limit,
        Identity::Cor14Hansen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Thm5Eq1 => "thm5_eq1",
            Identity::Thm5Eq2 => "thm5_eq2",
            Identity::Thm5Eq3 => "thm5_eq3",
            Identity::EulerTransform => "euler_transform",
            Identity::Prop2 => "prop2",
            Identity::Cor6 => "cor6",
            Identity::Cor6Abel => "cor6_abel",
            Identity::Thm7Eq1 => "thm7_eq1",
            Identity::Thm7Eq2 => "thm7_eq2",
            Identity::Thm7Eq3 => "thm7_eq3",
            Identity::Cor8 => "cor8",
            Identity::Cor9 => "cor9",
            Identity::Cor10 => "cor10",
            Identity::Cor11 => "cor11",
            Identity::Cor12 => "cor12",
            Identity::Cor13 => "cor13",
            Identity::Cor14 => "cor14",
            Identity::Cor14Limit => "cor14_limit",
            Identity::Cor14Hansen => "cor14_hansen",
        }
    }

    pub fn axes(self) -> Axes {
        match self {
            Identity::Prop2
            | Identity::Cor6Abel
            | Identity::Cor11
            | Identity::Cor12
            | Identity::Cor13 => Axes::Z,
            Identity::Cor8 | Identity::Cor14 | Identity::Cor14Limit | Identity::Cor14Hansen => {
                Axes::X
            }
            _ => Axes::ZX,
        }
    }

    /// Report name of the `z` parameter.
    pub fn z_name(self) -> &'static str {
        match self {
            Identity::Cor9 => "p",
            _ => "z",
        }
    }

    /// Report name of the real parameter.
    pub fn x_name(self) -> &'static str {
        match self {
            Identity::Cor10 => "y",
            Identity::Cor14Hansen => "t",
            _ => "x",
        }
    }

    fn params(self, point: Point) -> Vec<(&'static str, ParamValue)> {
        let z: ParamValue = match self {
            Identity::Cor9 => point.z.re.into(),
            _ => point.z.into(),
        };
        match self.axes() {
            Axes::ZX => vec![(self.z_name(), z), (self.x_name(), point.x.into())],
            Axes::Z => vec![(self.z_name(), z)],
            Axes::X => vec![(self.x_name(), point.x.into())],
        }
    }

    /// Evaluates the identity at `point`. Precondition and pole failures
    /// become skips; `cor12` also yields its Lerch-form companion `cor12_phi`.
    pub fn run(self, point: Point, tol: f64) -> Vec<Outcome> {
        let Point { z, x } = point;
        let mut out = vec![self.outcome(self.name(), point, || match self {
            Identity::Thm5Eq1 => thm5_eq1(z, x, tol),
            Identity::Thm5Eq2 => thm5_eq2(z, x, tol),
            Identity::Thm5Eq3 => thm5_eq3(z, x, tol),
            Identity::EulerTransform => euler_transform(z, x, tol),
            Identity::Prop2 => prop2(z, tol),
            Identity::Cor6 => cor6(z, x, tol),
            Identity::Cor6Abel => cor6_abel(z, tol),
            Identity::Thm7Eq1 => thm7_eq1(z, x, tol),
            Identity::Thm7Eq2 => thm7_eq2(z, x, tol),
            Identity::Thm7Eq3 => thm7_eq3(z, x, tol),
            Identity::Cor8 => cor8(x, tol),
            Identity::Cor9 => match as_nonneg_integer(z) {
                Some(p) => cor9(p, x, tol),
                None => Err(crate::Error::Domain(format!(
                    "p must be a nonnegative integer, got {}",
                    z.re
                ))),
            },
            Identity::Cor10 => cor10(z, x, tol),
            Identity::Cor11 => cor11(z, tol),
            Identity::Cor12 => cor12(z, tol),
            Identity::Cor13 => cor13(z, tol),
            Identity::Cor14 => cor14(x, tol),
            Identity::Cor14Limit => cor14_limit(x),
            Identity::Cor14Hansen => cor14_hansen(x, tol),
        })];
        if self == Identity::Cor12 {
            out.push(self.outcome("cor12_phi", point, || cor12_phi(z, tol)));
        }
        out
    }

    fn outcome(
        self,
        name: &str,
        point: Point,
        eval: impl FnOnce() -> Result<IdentityReport>,
    ) -> Outcome {
        match eval() {
            Ok(r) => Outcome::Report(r),
            Err(e) => Outcome::Skipped(Skip {
                identity_name: name.to_string(),
                params: params_for(&self.params(point)),
                reason: e.to_string(),
            }),
        }
    }

    /// Parameter points swept by `--identity all`.
    pub fn catalog_points(self) -> Vec<Point> {
        let zx = |zs: &[C], xs: &[f64]| -> Vec<Point> {
            zs.iter()
                .flat_map(|&z| xs.iter().map(move |&x| Point { z, x }))
                .collect()
        };
        let zs = |zs: &[C]| zs.iter().map(|&z| Point { z, x: 0.0 }).collect::<Vec<_>>();
        let xs = |xs: &[f64]| {
            xs.iter()
                .map(|&x| Point {
                    z: Complex::new(0.0, 0.0),
                    x,
                })
                .collect::<Vec<_>>()
        };
        let base = base_z_grid();
        match self {
            Identity::Thm5Eq1 | Identity::Thm5Eq2 => {
                zx(&base, &[-1.0, -0.8, -0.6, -0.4, -0.2, 0.1, 0.2, 0.3, 0.45])
            }
            Identity::Thm5Eq3 => zx(&base, &[-0.45, -0.3, -0.1, 0.2, 0.5, 0.8, 1.0]),
            Identity::EulerTransform => zx(&base, &[-0.3, 0.1, 0.3, 0.6, 0.9]),
            Identity::Prop2 => zs(&[
                c(0.25),
                c(0.5),
                c(0.75),
                c(1.5),
                c(2.25),
                c(3.5),
                c(-0.25),
                c(-0.5),
                c(1.0),
                c(2.0),
                c(3.0),
                c(4.5),
                Complex::new(0.5, 0.5),
                Complex::new(1.0, 2.0),
                Complex::new(-0.5, 1.0),
                Complex::new(0.25, -0.75),
                Complex::new(2.0, -1.0),
                Complex::new(1.5, 0.5),
                Complex::new(0.75, 1.5),
                Complex::new(3.0, 1.0),
            ]),
            Identity::Cor6 => {
                let mut pts = zx(&base, &[-0.9, -0.6, -0.3, 0.2, 0.45]);
                pts.extend(zx(
                    &[c(0.0), c(1.0), c(2.0), c(3.0)],
                    &[-0.9, -0.5, 0.3, 0.6, 0.9],
                ));
                pts
            }
            Identity::Cor6Abel => zs(&[
                c(0.0),
                c(1.0),
                c(2.0),
                c(3.0),
                c(-0.75),
                c(-0.5),
                c(-0.25),
                c(0.25),
                c(0.5),
                c(0.75),
                c(1.5),
                c(2.5),
                c(-1.5),
                c(-2.5),
                Complex::new(0.5, 0.5),
                Complex::new(1.0, 1.0),
                Complex::new(-0.5, 1.0),
                Complex::new(0.25, -0.75),
                Complex::new(2.0, -1.0),
                Complex::new(1.5, 2.0),
            ]),
            Identity::Thm7Eq1 => zx(&base, &[-0.4, -0.2, 0.1, 0.3, 0.5, 0.7, 0.9]),
            Identity::Thm7Eq2 => zx(&base, &[0.1, 0.3, 0.5, 0.7, 0.9]),
            Identity::Thm7Eq3 => zx(&base, &[-0.9, -0.5, -0.2, 0.2, 0.5, 0.9]),
            Identity::Cor8 => xs(&grid(-0.9, 1.0, 0.1, 1)),
            Identity::Cor9 => zx(
                &[c(0.0), c(1.0), c(2.0), c(3.0), c(5.0)],
                &[-0.9, -0.5, 0.2, 0.5, 0.9],
            ),
            Identity::Cor10 => zx(&base, &[-1.0, -0.6, -0.3, 0.2, 0.4]),
            Identity::Cor11 | Identity::Cor12 | Identity::Cor13 => {
                let mut list = half_plane_z_grid();
                if self == Identity::Cor13 {
                    list.extend([c(-1.5), c(-2.5)]);
                }
                zs(&list)
            }
            Identity::Cor14 => {
                let mut g = vec![-0.95];
                g.extend(grid(-0.9, -0.1, 0.1, 1));
                g.extend(grid(0.1, 1.0, 0.1, 1));
                xs(&g)
            }
            Identity::Cor14Limit => xs(&[1e-6, -1e-6, 1e-7, -1e-7, 1e-8]),
            Identity::Cor14Hansen => {
                let mut g = grid(0.05, 0.95, 0.05, 2);
                g.push(0.99);
                xs(&g)
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == norm)
            .ok_or_else(|| {
                format!(
                    "unknown identity '{s}', expected one of: {}, all",
                    Identity::ALL.map(|i| i.name()).join(", ")
                )
            })
    }
}

/// A parameter point; identities ignore the coordinates they do not use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub z: C,
    pub x: f64,
}

fn c(re: f64) -> C {
    Complex::new(re, 0.0)
}

fn base_z_grid() -> Vec<C> {
    vec![
        c(-0.75),
        c(-0.5),
        c(-0.25),
        c(0.25),
        c(0.5),
        c(1.5),
        c(2.7),
        Complex::new(0.5, 0.5),
        Complex::new(1.0, 2.0),
        Complex::new(-0.5, 1.0),
    ]
}

fn half_plane_z_grid() -> Vec<C> {
    vec![
        c(-0.9),
        c(-0.75),
        c(-0.5),
        c(-0.25),
        c(0.25),
        c(0.5),
        c(0.75),
        c(1.0),
        c(1.5),
        c(2.0),
        c(2.7),
        c(3.0),
        c(3.5),
        c(5.0),
        Complex::new(0.5, 0.5),
        Complex::new(1.0, 2.0),
        Complex::new(-0.5, 1.0),
        Complex::new(0.25, -0.75),
        Complex::new(2.0, -1.0),
        Complex::new(-0.25, 2.0),
    ]
}

/// `start, start+step, …` up to `stop` inclusive, rounded to `decimals`.
pub fn grid(start: f64, stop: f64, step: f64, decimals: i32) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as i64;
    let scale = 10f64.powi(decimals);
    (0..=count.max(-1))
        .map(|i| {
            let v = ((start + i as f64 * step) * scale).round() / scale;
            if v == 0.0 {
                0.0
            } else {
                v
            }
        })
        .collect()
}

/// Every identity with its catalog points, in catalog order.
pub fn catalog() -> Vec<(Identity, Point)> {
    Identity::ALL
        .into_iter()
        .flat_map(|id| id.catalog_points().into_iter().map(move |p| (id, p)))
        .collect()
}

/// Evaluates the jobs in parallel; the outcomes keep the job order.
pub fn sweep(jobs: &[(Identity, Point)], tol: f64) -> Vec<Outcome> {
    jobs.par_iter()
        .map(|&(id, point)| id.run(point, tol))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert_eq!("THM7-EQ1".parse::<Identity>().unwrap(), Identity::Thm7Eq1);
        let err = "cor99".parse::<Identity>().unwrap_err();
        assert!(err.contains("cor14_hansen") && err.contains("all"));
    }

    #[test]
    fn grids() {
        assert_eq!(grid(0.0, 2.0, 0.5, 1), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        let g = grid(-0.8, 0.8, 0.2, 1);
        assert_eq!(g.len(), 9);
        assert_eq!(g[4], 0.0);
        assert_eq!(g[7], 0.6);
        assert_eq!(grid(1.0, 0.0, 0.5, 1), Vec::<f64>::new());
    }

    #[test]
    fn catalog_has_twenty_points_per_identity() {
        for id in Identity::ALL {
            let n = id.catalog_points().len();
            let small = matches!(id, Identity::Cor14Limit);
            assert!(small || n >= 20, "{id}: {n} points");
        }
    }

    #[test]
    fn precondition_failures_are_skips() {
        let out = Identity::Cor8.run(Point { z: c(0.0), x: -1.0 }, 1e-10);
        assert!(matches!(&out[..], [Outcome::Skipped(s)] if s.identity_name == "cor8"));
        let out = Identity::Cor12.run(Point { z: c(2.0), x: 0.0 }, 1e-10);
        assert!(
            matches!(&out[..], [Outcome::Report(_), Outcome::Skipped(s)] if s.identity_name == "cor12_phi")
        );
        let out = Identity::Cor9.run(Point { z: c(1.5), x: 0.2 }, 1e-10);
        assert!(matches!(&out[..], [Outcome::Skipped(s)] if s.params.contains_key("p")));
    }
}
