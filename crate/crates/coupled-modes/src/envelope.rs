use crate::expsum::ExpSum;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvelopeError {
    #[error("invalid envelope parameters: {0}")]
    InvalidParams(String),
}

/// Propagation direction of the photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Asymptotic-out family: which photon, and which mode it leaves in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvelopeFamily {
    /// Signal leaving at `z = L` in mode `m`.
    SignalOutM,
    /// Signal leaving at `z = L` in mode `m′`.
    SignalOutMp,
    /// Idler leaving at `z = 0` in mode `m`.
    IdlerOutM,
    /// Idler leaving at `z = 0` in mode `m′`.
    IdlerOutMp,
}

impl EnvelopeFamily {
    pub const ALL: [Self; 4] = [Self::SignalOutM, Self::SignalOutMp, Self::IdlerOutM, Self::IdlerOutMp];

    pub fn direction(self) -> Direction {
        match self {
            Self::SignalOutM | Self::SignalOutMp => Direction::Forward,
            Self::IdlerOutM | Self::IdlerOutMp => Direction::Backward,
        }
    }

    /// True when the photon leaves in the high mode `m′`.
    pub fn exits_high(self) -> bool {
        matches!(self, Self::SignalOutMp | Self::IdlerOutMp)
    }

    /// Amplitudes `(low, high)` at the exit face.
    pub fn exit_values(self) -> (Complex64, Complex64) {
        if self.exits_high() {
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        } else {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        }
    }
}

/// Coefficients of the coupled-mode system. Rates in 1/m, `delta` in
/// rad/s, group velocities in m/s, length in m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeParams {
    pub kappa: Complex64,
    pub delta: f64,
    pub d: f64,
    pub gamma: f64,
    pub v_g_m: f64,
    pub v_g_mp: f64,
    pub length: f64,
}

impl EnvelopeParams {
    pub fn new(kappa: Complex64, delta: f64, d: f64, v_g_m: f64, v_g_mp: f64, length: f64) -> Result<Self, EnvelopeError> {
        let finite = kappa.re.is_finite() && kappa.im.is_finite() && delta.is_finite() && d.is_finite();
        if !finite {
            return Err(EnvelopeError::InvalidParams("non-finite coupling or detuning".into()));
        }
        if !(v_g_m > 0.0 && v_g_mp > 0.0 && v_g_m.is_finite() && v_g_mp.is_finite()) {
            return Err(EnvelopeError::InvalidParams("group velocities must be positive".into()));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(EnvelopeError::InvalidParams(format!("length must be positive, got {length}")));
        }
        Ok(Self {
            kappa,
            delta,
            d,
            gamma: d.hypot(kappa.norm()),
            v_g_m,
            v_g_mp,
            length,
        })
    }

    /// Parameters from the phase mismatch `Δ = k^{m′} − k^{m} − K` instead of `d`.
    pub fn from_mismatch(
        kappa: Complex64,
        delta: f64,
        mismatch: f64,
        v_g_m: f64,
        v_g_mp: f64,
        length: f64,
    ) -> Result<Self, EnvelopeError> {
        let d = 0.5 * (delta * (1.0 / v_g_mp - 1.0 / v_g_m) - mismatch);
        Self::new(kappa, delta, d, v_g_m, v_g_mp, length)
    }

    /// `Δ = δ(1/v′ − 1/v) − 2d`, the phase mismatch in the equations.
    pub fn mismatch(&self) -> f64 {
        self.delta * (1.0 / self.v_g_mp - 1.0 / self.v_g_m) - 2.0 * self.d
    }

    /// `κ/γ` and `d/γ`, defined as 0 in the fully uncoupled limit `γ = 0`.
    fn ratios(&self) -> (Complex64, f64) {
        if self.gamma == 0.0 {
            (Complex64::new(0.0, 0.0), 0.0)
        } else {
            (self.kappa / self.gamma, self.d / self.gamma)
        }
    }
}

/// Closed-form envelopes of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSolution {
    pub family: EnvelopeFamily,
    pub params: EnvelopeParams,
    low: ExpSum,
    high: ExpSum,
}

impl EnvelopeSolution {
    /// `(a_low(z), a_high(z))`: amplitudes on modes `m` and `m′`.
    pub fn at(&self, z: f64) -> (Complex64, Complex64) {
        (self.low.evaluate(z), self.high.evaluate(z))
    }

    /// Exponential-sum form of the amplitude on mode `m`.
    pub fn low(&self) -> &ExpSum {
        &self.low
    }

    /// Exponential-sum form of the amplitude on mode `m′`.
    pub fn high(&self) -> &ExpSum {
        &self.high
    }

    /// Amplitude on the low (`false`) or high (`true`) mode.
    pub fn component(&self, high: bool) -> &ExpSum {
        if high {
            &self.high
        } else {
            &self.low
        }
    }
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `A e^{iαz} [cos(γx) + i t sin(γx)]` with `x = s z + x0`, as an
/// exponential sum (`A` complex, `t` complex).
fn carrier_trig(amp: Complex64, alpha: f64, gamma: f64, s: f64, x0: f64, cos_w: Complex64, sin_w: Complex64) -> ExpSum {
    // cos γx = (e^{iγx} + e^{−iγx})/2, sin γx = (e^{iγx} − e^{−iγx})/(2i)
    let plus = (cos_w * 0.5 + sin_w / (2.0 * I)) * Complex64::from_polar(1.0, gamma * x0);
    let minus = (cos_w * 0.5 - sin_w / (2.0 * I)) * Complex64::from_polar(1.0, -gamma * x0);
    let mut terms = Vec::with_capacity(2);
    if plus != c(0.0) {
        terms.push((amp * plus, alpha + gamma * s));
    }
    if minus != c(0.0) {
        terms.push((amp * minus, alpha - gamma * s));
    }
    ExpSum::new(terms)
}

/// Closed-form envelopes of `family`. The constant phase factors are those
/// of the printed solutions.
pub fn envelopes(params: EnvelopeParams, family: EnvelopeFamily) -> EnvelopeSolution {
    let EnvelopeParams {
        kappa: _,
        delta,
        d,
        gamma,
        v_g_m: v,
        v_g_mp: vp,
        length: l,
    } = params;
    let (k_over_g, d_over_g) = params.ratios();
    let zero = c(0.0);
    let (low, high) = match family {
        EnvelopeFamily::SignalOutM => {
            // e^{i(L−z)(d+δ/v)} [cos γ(L−z) − i(d/γ) sin γ(L−z)]
            let a = d + delta / v;
            let low = carrier_trig(Complex64::from_polar(1.0, l * a), -a, gamma, -1.0, l, c(1.0), -I * d_over_g);
            // −i(κ*/γ) e^{i[(L+z)d − δ(z/v′ − L/v)]} sin γ(L−z)
            let amp = -I * k_over_g.conj() * Complex64::from_polar(1.0, l * d + delta * l / v);
            let high = carrier_trig(amp, d - delta / vp, gamma, -1.0, l, zero, c(1.0));
            (low, high)
        }
        EnvelopeFamily::SignalOutMp => {
            // −i(κ/γ) e^{−i[d(L+z) − δ(L/v′ − z/v)]} sin γ(L−z)
            let amp = -I * k_over_g * Complex64::from_polar(1.0, -d * l + delta * l / vp);
            let low = carrier_trig(amp, -d - delta / v, gamma, -1.0, l, zero, c(1.0));
            // e^{i(L−z)(−d+δ/v′)} [cos γ(L−z) + i(d/γ) sin γ(L−z)]
            let a = -d + delta / vp;
            let high = carrier_trig(Complex64::from_polar(1.0, l * a), -a, gamma, -1.0, l, c(1.0), I * d_over_g);
            (low, high)
        }
        EnvelopeFamily::IdlerOutM => {
            // e^{iz(d+δ/v)} [cos γz − i(d/γ) sin γz]
            let low = carrier_trig(c(1.0), d + delta / v, gamma, 1.0, 0.0, c(1.0), -I * d_over_g);
            // −i(κ*/γ) e^{−iz(d − δ/v′)} sin γz
            let high = carrier_trig(-I * k_over_g.conj(), -(d - delta / vp), gamma, 1.0, 0.0, zero, c(1.0));
            (low, high)
        }
        EnvelopeFamily::IdlerOutMp => {
            // −i(κ/γ) e^{iz(d+δ/v)} sin γz
            let low = carrier_trig(-I * k_over_g, d + delta / v, gamma, 1.0, 0.0, zero, c(1.0));
            // e^{−iz(d − δ/v′)} [cos γz + i(d/γ) sin γz]
            let high = carrier_trig(c(1.0), -(d - delta / vp), gamma, 1.0, 0.0, c(1.0), I * d_over_g);
            (low, high)
        }
    };
    EnvelopeSolution {
        family,
        params,
        low,
        high,
    }
}
