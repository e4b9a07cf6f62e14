//! Bracketed scalar root finding.
//!
//! The solver is a Brent-style hybrid of bisection, secant and inverse
//! quadratic interpolation. It never leaves the initial bracket and the
//! bracket width shrinks monotonically, which makes it safe for functions
//! that are only known to be continuous on the bracket.

use thiserror::Error;

/// Bracket and tolerance for [`find_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSpec {
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// Absolute tolerance on the abscissa.
    pub tolerance: f64,
}

impl RootSpec {
    pub fn new(bracket_lo: f64, bracket_hi: f64, tolerance: f64) -> Self {
        Self {
            bracket_lo,
            bracket_hi,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("invalid bracket [{lo}, {hi}] or tolerance {tol}")]
    InvalidSpec { lo: f64, hi: f64, tol: f64 },
    #[error("no sign change: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("function returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("no convergence after {iterations} iterations (bracket [{lo}, {hi}])")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },
}

const MAX_ITERATIONS: usize = 200;

fn eval<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64, RootError> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(RootError::NonFinite { x })
    }
}

/// Finds a root of `f` inside `[spec.bracket_lo, spec.bracket_hi]`.
///
/// The endpoints must have opposite signs (an exact zero at an endpoint is
/// returned directly). The returned abscissa is always inside the bracket.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, spec: RootSpec) -> Result<f64, RootError> {
    let RootSpec {
        bracket_lo: lo,
        bracket_hi: hi,
        tolerance,
    } = spec;
    if !(lo < hi) || !(tolerance > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(RootError::InvalidSpec {
            lo,
            hi,
            tol: tolerance,
        });
    }
    let f_lo = eval(&mut f, lo)?;
    let f_hi = eval(&mut f, hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(RootError::NoSignChange { lo, hi, f_lo, f_hi });
    }

    // b is the current best estimate, a the previous one, c the contrapoint.
    let (mut a, mut fa) = (lo, f_lo);
    let (mut b, mut fb) = (hi, f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tolerance;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b.clamp(lo, hi));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = eval(&mut f, b)?;
    }
    Err(RootError::NoConvergence {
        iterations: MAX_ITERATIONS,
        lo: b.min(c),
        hi: b.max(c),
    })
}

/// Samples `f` on `n + 1` equally spaced points of `[lo, hi]` and returns the
/// sub-intervals on which the sign changes, in increasing order.
///
/// Non-finite samples are skipped, so brackets never straddle a pole that the
/// sampler happened to hit.
pub fn scan_sign_changes<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Vec<(f64, f64)> {
    let n = n.max(1);
    let h = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let x = if i == n { hi } else { lo + h * i as f64 };
        let y = f(x);
        if !y.is_finite() {
            prev = None;
            continue;
        }
        if let Some((px, py)) = prev {
            if py == 0.0 {
                // handled when it was the right endpoint
            } else if y == 0.0 || py.signum() != y.signum() {
                out.push((px, x));
            }
        }
        prev = Some((x, y));
    }
    out
}
