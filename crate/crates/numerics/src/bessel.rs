//! Integer-order Bessel functions of the first kind `J_n` and modified
//! Bessel functions of the second kind `K_n`, with their derivatives.
//!
//! * `J_n`: ascending power series where it is free of cancellation
//!   (`x²/4 <= n + 1` or `x <= 2`), otherwise Miller's downward recurrence
//!   normalised by `J_0 + 2 Σ J_2k = 1`.
//! * `K_n`: `K_0`, `K_1` from their logarithmic series for `x <= 2` and from
//!   Steed's continued fraction (Temme's CF2) for `x > 2`, then the stable
//!   upward recurrence `K_{n+1} = K_{n-1} + (2n/x) K_n`. Exponentially scaled
//!   variants `e^x K_n(x)` are exposed so callers can form ratios of cladding
//!   profiles without underflow.

use thiserror::Error;

/// Largest order accepted by the public [`bessel`] entry point.
pub const MAX_ORDER: u32 = 64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    JPrime,
    K,
    KPrime,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BesselError {
    #[error("{kind:?} is not defined for argument {argument}")]
    OutOfDomain { kind: BesselKind, argument: f64 },
    #[error("order {order} outside the supported range 0..={MAX_ORDER}")]
    OrderOutOfRange { order: u32 },
    #[error("K_{order}({argument}) overflows the double-precision range")]
    Overflow { order: u32, argument: f64 },
    #[error("K_{order}({argument}) underflows the double-precision range")]
    Underflow { order: u32, argument: f64 },
}

/// Evaluates `J_m`, `J'_m`, `K_m` or `K'_m` at `argument`.
pub fn bessel(kind: BesselKind, order: u32, argument: f64) -> Result<f64, BesselError> {
    if order > MAX_ORDER {
        return Err(BesselError::OrderOutOfRange { order });
    }
    if !argument.is_finite() {
        return Err(BesselError::OutOfDomain { kind, argument });
    }
    match kind {
        BesselKind::J => Ok(bessel_j(order, argument)),
        BesselKind::JPrime => Ok(bessel_j_with_derivative(order, argument).1),
        BesselKind::K | BesselKind::KPrime => {
            if argument <= 0.0 {
                return Err(BesselError::OutOfDomain { kind, argument });
            }
            let (k, kp) = bessel_k_with_derivative(order, argument)?;
            Ok(if kind == BesselKind::K { k } else { kp })
        }
    }
}

// ---------------------------------------------------------------------------
// J_n
// ---------------------------------------------------------------------------

fn use_series(n: u32, x: f64) -> bool {
    x <= 2.0 || 0.25 * x * x <= (n + 1) as f64
}

fn j_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=n {
        term *= half / i as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (n as f64 + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

/// `J_0..=J_nmax` at `x > 0` by Miller's algorithm.
fn j_miller(nmax: u32, x: f64) -> Vec<f64> {
    let big = (nmax as f64).max(x);
    let mut start = (big + 12.0 * big.cbrt() + 30.0).ceil() as u32;
    if start % 2 == 1 {
        start += 1;
    }
    let mut out = vec![0.0; nmax as usize + 1];
    let mut j_next = 0.0; // J_{k+1}
    let mut j_cur = 1e-30; // J_k
    let mut norm = 0.0;
    let two_over_x = 2.0 / x;
    let mut k = start;
    loop {
        if k <= nmax {
            out[k as usize] = j_cur;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j_cur } else { 2.0 * j_cur };
        }
        if k == 0 {
            break;
        }
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        k -= 1;
        if j_cur.abs() > 1e200 {
            j_cur *= 1e-200;
            j_next *= 1e-200;
            norm *= 1e-200;
            for v in out.iter_mut() {
                *v *= 1e-200;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

fn j_nonneg(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if use_series(n, x) {
        j_series(n, x)
    } else {
        j_miller(n, x)[n as usize]
    }
}

/// `J_n(x)` for any finite real `x`.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    if x < 0.0 {
        let v = j_nonneg(n, -x);
        if n % 2 == 1 {
            -v
        } else {
            v
        }
    } else {
        j_nonneg(n, x)
    }
}

/// `(J_n(x), J'_n(x))`, computed from a shared evaluation of neighbouring
/// orders.
pub fn bessel_j_with_derivative(n: u32, x: f64) -> (f64, f64) {
    if x > 0.0 && !use_series(n + 1, x) {
        let v = j_miller(n + 1, x);
        let jn = v[n as usize];
        let jp = if n == 0 {
            -v[1]
        } else {
            0.5 * (v[n as usize - 1] - v[n as usize + 1])
        };
        return (jn, jp);
    }
    let jn = bessel_j(n, x);
    let jp = if n == 0 {
        -bessel_j(1, x)
    } else {
        0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))
    };
    (jn, jp)
}

// ---------------------------------------------------------------------------
// K_n
// ---------------------------------------------------------------------------

/// Unscaled `(K_0, K_1)` by their ascending series, valid for `0 < x <= 2`.
fn k01_series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let ln_half = (0.5 * x).ln();

    // K_0 = -(ln(x/2) + γ) I_0 + Σ_{k>=1} H_k y^k / (k!)^2
    let mut t = 1.0;
    let mut i0 = 1.0;
    let mut harm_sum = 0.0;
    let mut h = 0.0;
    let mut k = 1.0;
    loop {
        t *= y / (k * k);
        h += 1.0 / k;
        i0 += t;
        harm_sum += t * h;
        if t * h.max(1.0) <= 1e-17 * i0 {
            break;
        }
        k += 1.0;
    }
    let k0 = -(ln_half + EULER_GAMMA) * i0 + harm_sum;

    // K_1 = 1/x + ln(x/2) I_1 - (x/4) Σ_{k>=0} [ψ(k+1) + ψ(k+2)] y^k / (k!(k+1)!)
    let mut u = 1.0;
    let mut s_i1 = 1.0;
    let mut hk = 0.0;
    let mut s_psi = -2.0 * EULER_GAMMA + 1.0;
    let mut k = 1.0;
    loop {
        u *= y / (k * (k + 1.0));
        hk += 1.0 / k;
        let hk1 = hk + 1.0 / (k + 1.0);
        s_i1 += u;
        let term = u * (-2.0 * EULER_GAMMA + hk + hk1);
        s_psi += term;
        if u <= 1e-17 * s_i1 && term.abs() <= 1e-17 * s_psi.abs().max(1e-300) {
            break;
        }
        k += 1.0;
    }
    let i1 = 0.5 * x * s_i1;
    let k1 = 1.0 / x + ln_half * i1 - 0.25 * x * s_psi;
    (k0, k1)
}

/// Scaled `(e^x K_0, e^x K_1)` by Steed's evaluation of Temme's continued
/// fraction, valid for `x > 2` (converges for any `x > 0`, fast for large x).
fn k01_scaled_cf(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..100_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// Scaled `(e^x K_0(x), e^x K_1(x))` for `x > 0`.
fn k01_scaled(x: f64) -> (f64, f64) {
    if x <= 2.0 {
        let (k0, k1) = k01_series(x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        k01_scaled_cf(x)
    }
}

/// Scaled `e^x K_n(x)` for orders `0..=nmax`.
fn k_scaled_orders(nmax: u32, x: f64) -> Result<Vec<f64>, BesselError> {
    let (k0, k1) = k01_scaled(x);
    let mut out = Vec::with_capacity(nmax as usize + 1);
    out.push(k0);
    if nmax >= 1 {
        out.push(k1);
    }
    for n in 1..nmax {
        let next = out[n as usize - 1] + 2.0 * n as f64 / x * out[n as usize];
        if !next.is_finite() {
            return Err(BesselError::Overflow {
                order: n + 1,
                argument: x,
            });
        }
        out.push(next);
    }
    Ok(out)
}

fn check_k_arg(order: u32, x: f64) -> Result<(), BesselError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(BesselError::OutOfDomain {
            kind: BesselKind::K,
            argument: x,
        });
    }
    let _ = order;
    Ok(())
}

/// Exponentially scaled `e^x K_n(x)`.
pub fn bessel_k_scaled(n: u32, x: f64) -> Result<f64, BesselError> {
    check_k_arg(n, x)?;
    Ok(k_scaled_orders(n, x)?[n as usize])
}

/// Scaled `(e^x K_n(x), e^x K'_n(x))`.
pub fn bessel_k_scaled_with_derivative(n: u32, x: f64) -> Result<(f64, f64), BesselError> {
    check_k_arg(n, x)?;
    let v = k_scaled_orders(n + 1, x)?;
    let kn = v[n as usize];
    let kp = if n == 0 {
        -v[1]
    } else {
        -0.5 * (v[n as usize - 1] + v[n as usize + 1])
    };
    Ok((kn, kp))
}

fn unscale(order: u32, x: f64, scaled: f64) -> Result<f64, BesselError> {
    let v = scaled * (-x).exp();
    if !v.is_finite() {
        Err(BesselError::Overflow { order, argument: x })
    } else if v.abs() < f64::MIN_POSITIVE {
        Err(BesselError::Underflow { order, argument: x })
    } else {
        Ok(v)
    }
}

/// `K_n(x)` for `x > 0`. Overflow (small `x`, large `n`) and underflow
/// (large `x`) are reported as errors rather than returned as `inf`/`0`.
pub fn bessel_k(n: u32, x: f64) -> Result<f64, BesselError> {
    let s = bessel_k_scaled(n, x)?;
    unscale(n, x, s)
}

/// `(K_n(x), K'_n(x))` for `x > 0`.
pub fn bessel_k_with_derivative(n: u32, x: f64) -> Result<(f64, f64), BesselError> {
    let (k, kp) = bessel_k_scaled_with_derivative(n, x)?;
    Ok((unscale(n, x, k)?, unscale(n, x, kp)?))
}
