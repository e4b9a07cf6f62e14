use crate::envelope::{Direction, EnvelopeFamily, EnvelopeParams};
use num_complex::Complex64;

/// One sample of the numerically integrated envelopes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSample {
    pub z: f64,
    pub low: Complex64,
    pub high: Complex64,
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Right-hand side `(a′, b′)` of the coupled-mode system at `z`.
fn rhs(p: &EnvelopeParams, direction: Direction, z: f64, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let mismatch = p.mismatch();
    let (dv, dvp) = (p.delta / p.v_g_m, p.delta / p.v_g_mp);
    match direction {
        // i a′ − (δ/v) a + κ b e^{iΔz} = 0
        Direction::Forward => {
            let e = Complex64::from_polar(1.0, mismatch * z);
            (-I * dv * a + I * p.kappa * b * e, -I * dvp * b + I * p.kappa.conj() * a * e.conj())
        }
        // −i a′ − (δ/v) a + κ b e^{−iΔz} = 0
        Direction::Backward => {
            let e = Complex64::from_polar(1.0, -mismatch * z);
            (I * dv * a - I * p.kappa * b * e, I * dvp * b - I * p.kappa.conj() * a * e.conj())
        }
    }
}

/// Classical fourth-order Runge–Kutta integration of the coupled-mode
/// system with `steps` equal steps, starting from the exit face of
/// `family` (`z = L` going backward for signals, `z = 0` going forward for
/// idlers). Returns `steps + 1` samples ordered by increasing `z`.
pub fn ode_oracle(params: &EnvelopeParams, family: EnvelopeFamily, steps: usize) -> Vec<OdeSample> {
    let steps = steps.max(1);
    let direction = family.direction();
    let (mut a, mut b) = family.exit_values();
    let (z0, h) = match direction {
        Direction::Forward => (params.length, -params.length / steps as f64),
        Direction::Backward => (0.0, params.length / steps as f64),
    };
    let mut out = Vec::with_capacity(steps + 1);
    out.push(OdeSample { z: z0, low: a, high: b });
    for n in 0..steps {
        let z = z0 + h * n as f64;
        let (k1a, k1b) = rhs(params, direction, z, a, b);
        let (k2a, k2b) = rhs(params, direction, z + 0.5 * h, a + k1a * (0.5 * h), b + k1b * (0.5 * h));
        let (k3a, k3b) = rhs(params, direction, z + 0.5 * h, a + k2a * (0.5 * h), b + k2b * (0.5 * h));
        let (k4a, k4b) = rhs(params, direction, z + h, a + k3a * h, b + k3b * h);
        a += (k1a + k2a * 2.0 + k3a * 2.0 + k4a) * (h / 6.0);
        b += (k1b + k2b * 2.0 + k3b * 2.0 + k4b) * (h / 6.0);
        let z_next = if n + 1 == steps { z0 + h * steps as f64 } else { z + h };
        out.push(OdeSample { z: z_next, low: a, high: b });
    }
    if direction == Direction::Forward {
        out.reverse();
    }
    out
}
