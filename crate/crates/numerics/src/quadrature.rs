//! Globally adaptive Gauss–Kronrod (7/15) quadrature for real and complex
//! integrands, plus a composite trapezoid rule used as a test oracle.
//!
//! The 15-point Kronrod rule never evaluates the interval endpoints, so
//! integrable endpoint singularities (e.g. `1/r` factors at `r = 0`) are
//! tolerated.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(relative_tolerance: f64, absolute_tolerance: f64, max_subdivisions: usize) -> Self {
        Self {
            relative_tolerance,
            absolute_tolerance,
            max_subdivisions,
        }
    }

    pub fn validate(&self) -> Result<(), QuadratureError<f64>> {
        if self.relative_tolerance > 0.0
            && self.absolute_tolerance > 0.0
            && self.max_subdivisions >= 1
        {
            Ok(())
        } else {
            Err(QuadratureError::InvalidSpec)
        }
    }

    /// Same spec with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            relative_tolerance: self.relative_tolerance * factor,
            absolute_tolerance: self.absolute_tolerance * factor,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::new(1e-10, 1e-14, 2000)
    }
}

/// Values that can be integrated: a vector space over `f64` with a norm.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError<T: std::fmt::Debug> {
    #[error("invalid quadrature specification (tolerances must be > 0, subdivisions >= 1, a < b)")]
    InvalidSpec,
    #[error("maximum subdivisions exceeded: best estimate {estimate:?} with error bound {error}")]
    MaxSubdivisionsExceeded { estimate: T, error: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
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
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod15<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Result<(T, f64), f64> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite_value() {
        return Err(center);
    }
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite_value() {
            return Err(x1);
        }
        if !f2.is_finite_value() {
            return Err(x2);
        }
        let sum = f1 + f2;
        kronrod = kronrod + sum * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + sum * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let err = (kronrod - gauss).magnitude() * half.abs();
    Ok((value, err))
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the summed
/// error is below `max(absolute_tolerance, relative_tolerance * |result|)`.
pub fn integrate<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult<T>, QuadratureError<T>>
where
    T: QuadValue + std::fmt::Debug,
    F: Fn(f64) -> T,
{
    if spec.validate().is_err() || !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::InvalidSpec);
    }
    let (v0, e0) = kronrod15(&f, a, b).map_err(|x| QuadratureError::NonFinite { x })?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: v0,
        error: e0,
    });
    let mut total = v0;
    let mut total_err = e0;
    let mut subdivisions = 1;
    loop {
        let target = spec
            .absolute_tolerance
            .max(spec.relative_tolerance * total.magnitude());
        if total_err <= target {
            return Ok(QuadResult {
                value: total,
                error: total_err,
                subdivisions,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(QuadratureError::MaxSubdivisionsExceeded {
                estimate: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval collapsed to floating-point resolution; accept it.
            return Err(QuadratureError::MaxSubdivisionsExceeded {
                estimate: total,
                error: total_err,
            });
        }
        let (vl, el) = kronrod15(&f, worst.a, mid).map_err(|x| QuadratureError::NonFinite { x })?;
        let (vr, er) = kronrod15(&f, mid, worst.b).map_err(|x| QuadratureError::NonFinite { x })?;
        total = total - worst.value + vl + vr;
        total_err = total_err - worst.error + el + er;
        // Guard against cancellation drift in the running error sum.
        if total_err < 0.0 {
            total_err = heap.iter().map(|s| s.error).sum::<f64>() + el + er;
        }
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: vl,
            error: el,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: vr,
            error: er,
        });
        subdivisions += 1;
    }
}

/// Integrates over consecutive breakpoints `points[0] < points[1] < ...`,
/// summing the per-piece results. Each piece gets the full tolerance spec.
pub fn integrate_piecewise<T, F>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadResult<T>, QuadratureError<T>>
where
    T: QuadValue + std::fmt::Debug,
    F: Fn(f64) -> T,
{
    if points.len() < 2 {
        return Err(QuadratureError::InvalidSpec);
    }
    let mut value = T::zero();
    let mut error = 0.0;
    let mut subdivisions = 0;
    for w in points.windows(2) {
        let r = integrate(&f, w[0], w[1], spec)?;
        value = value + r.value;
        error += r.error;
        subdivisions += r.subdivisions;
    }
    Ok(QuadResult {
        value,
        error,
        subdivisions,
    })
}

/// Composite trapezoid rule with `n` panels. Used as an independent oracle.
pub fn trapezoid<T: QuadValue, F: Fn(f64) -> T>(f: F, a: f64, b: f64, n: usize) -> T {
    let n = n.max(1);
    let h = (b - a) / n as f64;
    let mut acc = (f(a) + f(b)) * 0.5;
    for i in 1..n {
        acc = acc + f(a + h * i as f64);
    }
    acc * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn linear_integrand() {
        let r = integrate(|x: f64| x, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn complex_exponential() {
        let r = integrate(
            |z: f64| Complex64::new(0.0, PI * z).exp(),
            0.0,
            1.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        let expected = Complex64::new(0.0, 2.0 / PI);
        assert!((r.value - expected).norm() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_is_tolerated() {
        let spec = QuadratureSpec::new(1e-10, 1e-14, 5000);
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let spec = QuadratureSpec::new(1e-15, 1e-300, 2);
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &spec).unwrap_err();
        match err {
            QuadratureError::MaxSubdivisionsExceeded { estimate, error } => {
                assert!(estimate.is_finite() && error > 0.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn trapezoid_converges_quadratically() {
        let exact = 2.0;
        let e1 = (trapezoid(f64::sin, 0.0, PI, 100) - exact).abs();
        let e2 = (trapezoid(f64::sin, 0.0, PI, 200) - exact).abs();
        assert!((e1 / e2 - 4.0).abs() < 0.01);
    }
}
