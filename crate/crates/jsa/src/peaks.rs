use crate::config::{EnvelopeCarrier, GratingPair, OutputChannel};
use crate::engine::{envelope_detunings, JsaEngine};
use crate::error::JsaError;
use crate::model::{SpectralModel, SpectralPoint};
use fwm_grating::GratingSpec;
use fwm_numerics::{find_root, scan_sign_changes, RootSpec};
use num_complex::Complex64;

/// Which of `±γ_s`, `±γ_i` a lobe belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeakSigns {
    pub signal: i8,
    pub idler: i8,
}

impl PeakSigns {
    pub const ALL: [Self; 4] = [
        Self { signal: 1, idler: 1 },
        Self { signal: 1, idler: -1 },
        Self { signal: -1, idler: 1 },
        Self { signal: -1, idler: -1 },
    ];
}

/// Predicted centre of one lobe of the converted JSA; `detuning` is `None`
/// when the lobe lies outside the searched window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub signs: PeakSigns,
    pub detuning: Option<f64>,
}

const SCAN_INTERVALS: usize = 4000;

/// Total `z` rate of one exponential of the dominant (low, low) source
/// term of the doubly converted JSA:
///
/// ```text
/// p = k₁ − k₂ − k_s + k_i + (d_s + δ_s/v_s) − (d_i + δ_i/v_i) ± γ_s ± γ_i
/// ```
///
/// The lobe is centred where `p = 0`. With `δ = d = 0` this reduces to
/// `Δk ± |κ_s| ± |κ_i| = 0`.
pub(crate) fn lobe_rate(model: &SpectralModel, point: &SpectralPoint, signs: PeakSigns, carrier: EnvelopeCarrier) -> f64 {
    let side = |modes: &[(f64, f64)], omega: f64, kappa: Complex64, grating: &GratingSpec| {
        let (delta, d) = envelope_detunings(grating, carrier, omega, modes[0], modes[1]);
        (d + delta / modes[0].1, d.hypot(kappa.norm()))
    };
    let gs = model.signal.grating.as_ref().expect("checked by caller");
    let gi = model.idler.grating.as_ref().expect("checked by caller");
    let (carrier_s, gamma_s) = side(&point.signal, point.omega_s, point.kappa_signal, gs);
    let (carrier_i, gamma_i) = side(&point.idler, point.omega_i, point.kappa_idler, gi);
    point.phase_mismatch(0, 0) + carrier_s - carrier_i
        + f64::from(signs.signal) * gamma_s
        + f64::from(signs.idler) * gamma_i
}

impl JsaEngine {
    /// Centres of the four lobes of the JSA of pairs generated in the low
    /// modes and converted by both gratings, searched in `window` (rad/s).
    pub fn peak_positions(&self, gratings: &GratingPair, window: (f64, f64)) -> Result<Vec<Peak>, JsaError> {
        let (Some(gs), Some(gi)) = (gratings.signal, gratings.idler) else {
            return Err(JsaError::ChannelUnreachable("lobe positions need a grating on each photon".into()));
        };
        let channel = OutputChannel::new(gs.resonance.to, gi.resonance.to);
        let model = self.model(channel, gratings, window)?;
        let mut peaks = Vec::with_capacity(4);
        for signs in PeakSigns::ALL {
            let rate = |dw: f64| lobe_rate(&model, &model.at(dw), signs, self.options().envelope_carrier);
            let brackets = scan_sign_changes(rate, window.0, window.1, SCAN_INTERVALS);
            let tolerance = 1e-9 * (window.1 - window.0);
            let mut roots = Vec::new();
            for (lo, hi) in brackets {
                if let Ok(x) = find_root(rate, RootSpec::new(lo, hi, tolerance)) {
                    roots.push(x);
                }
            }
            let detuning = roots.into_iter().min_by(|a, b| a.abs().total_cmp(&b.abs()));
            peaks.push(Peak { signs, detuning });
        }
        Ok(peaks)
    }
}
