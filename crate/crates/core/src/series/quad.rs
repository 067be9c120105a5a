use num_complex::Complex;

use super::SeriesResult;
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const MAX_INTERVALS: usize = 5000;
const MAX_DEPTH: u32 = 200;

struct Interval<T: Real> {
    a: T,
    b: T,
    value: Complex<T>,
    error: T,
    depth: u32,
    splittable: bool,
}

/// 15-point Kronrod estimate and |K15 − G7| on `[a, b]`. Abscissae are
/// interior, so integrable endpoint singularities are never sampled.
fn kronrod15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> (Complex<T>, T) {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half_len * T::lit(x);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    let value = kronrod * half_len;
    let error = ((kronrod - gauss) * half_len).norm();
    (value, error)
}

/// Globally adaptive Gauss–Kronrod (G7/K15) quadrature of `f` over `[a, b]`
/// (`b < a` allowed).
///
/// The interval with the largest error estimate is bisected until the summed
/// estimates drop below `tol·max(1, |I|)`. Running out of intervals or
/// bisection depth yields `converged = false`. `terms_used` counts the final
/// subintervals.
pub fn adaptive_quadrature<T, F>(f: F, a: T, b: T, tol: T) -> SeriesResult<T>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if a == b {
        return SeriesResult::exact(Complex::new(T::zero(), T::zero()));
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut intervals = vec![Interval {
        a,
        b,
        value,
        error,
        depth: 0,
        splittable: true,
    }];

    loop {
        let total: Complex<T> = intervals
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |s, iv| s + iv.value);
        let err: T = intervals.iter().fold(T::zero(), |s, iv| s + iv.error);
        let finite = total.re.is_finite() && total.im.is_finite() && err.is_finite();
        let target = tol * T::one().max(total.norm());
        let rounding = T::epsilon() * T::lit(16.0) * total.norm();
        if finite && err <= target {
            return SeriesResult {
                value: total,
                abs_error_estimate: err + rounding,
                terms_used: intervals.len(),
                converged: true,
            };
        }

        let worst = intervals
            .iter()
            .enumerate()
            .filter(|(_, iv)| iv.splittable)
            .max_by(|(_, p), (_, q)| {
                p.error
                    .partial_cmp(&q.error)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i);
        let Some(idx) = worst.filter(|_| finite && intervals.len() < MAX_INTERVALS) else {
            return SeriesResult {
                value: total,
                abs_error_estimate: if err.is_finite() { err } else { T::infinity() },
                terms_used: intervals.len(),
                converged: false,
            };
        };

        let iv = intervals.swap_remove(idx);
        let mid = T::lit(0.5) * (iv.a + iv.b);
        let width_floor =
            T::epsilon() * T::lit(64.0) * iv.a.abs().max(iv.b.abs()).max(T::min_positive_value());
        if iv.depth >= MAX_DEPTH || (iv.b - iv.a).abs() <= width_floor || mid == iv.a || mid == iv.b
        {
            intervals.push(Interval {
                splittable: false,
                ..iv
            });
            continue;
        }
        for (lo, hi) in [(iv.a, mid), (mid, iv.b)] {
            let (value, error) = kronrod15(&f, lo, hi);
            intervals.push(Interval {
                a: lo,
                b: hi,
                value,
                error,
                depth: iv.depth + 1,
                splittable: true,
            });
        }
    }
}
