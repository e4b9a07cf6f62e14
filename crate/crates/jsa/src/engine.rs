use crate::config::{EnvelopeCarrier, GratingPair, JsaOptions, OutputChannel, PumpConfig, ZIntegration};
use crate::error::JsaError;
use crate::grid::{DetuningGrid, JsaGrid};
use crate::model::{PhotonModes, SpectralModel, SpectralPoint};
use fwm_coupled_modes::{envelopes, EnvelopeFamily, EnvelopeParams, ExpSum};
use fwm_fiber_modes::{FiberSpec, Normalization};
use fwm_grating::{GratingSpec, TargetPhoton};
use fwm_numerics::integrate;
use fwm_oam_basis::{OamLabel, Sam, UnitCounterConstruction};
use fwm_overlap::{angular_momentum_allowed, Allowed, OverlapSetup};
use num_complex::Complex64;
use rayon::prelude::*;

/// Evaluates JSAs for one fiber and pump configuration.
///
/// Mode profiles are normalized to unit field energy at their own
/// frequency; only ratios of JSA integrals are physically meaningful, and
/// those do not depend on the overall scale.
#[derive(Debug, Clone)]
pub struct JsaEngine {
    setup: OverlapSetup,
    pump: PumpConfig,
    options: JsaOptions,
}

/// How the envelope detunings are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Detuning {
    /// `δ` and `d` from the dispersion of the modes.
    Dispersive(EnvelopeCarrier),
    /// `δ = d = 0`: perfectly phase-matched conversion at every frequency.
    Ideal,
}

impl JsaEngine {
    pub fn new(fiber: FiberSpec, pump: PumpConfig, options: JsaOptions) -> Self {
        let setup = OverlapSetup::new(fiber, Normalization::FieldEnergy, UnitCounterConstruction::HybridFormula);
        Self::with_setup(setup, pump, options)
    }

    pub fn with_setup(setup: OverlapSetup, pump: PumpConfig, options: JsaOptions) -> Self {
        Self { setup, pump, options }
    }

    pub fn setup(&self) -> &OverlapSetup {
        &self.setup
    }

    pub fn pump(&self) -> &PumpConfig {
        &self.pump
    }

    pub fn options(&self) -> &JsaOptions {
        &self.options
    }

    pub fn with_options(&self, options: JsaOptions) -> Self {
        Self {
            options,
            ..self.clone()
        }
    }

    /// Gratings converting the signal `O₁⁺ → O_{m′}⁺` at `ω₁` and the idler
    /// `O₋₁⁻ → O₋ₘ′⁻` at `ω₂`, both exactly phase matched at those
    /// frequencies.
    pub fn resonant_gratings(&self, m_prime: i32, delta_eps0: f64) -> Result<GratingPair, JsaError> {
        let bank = &self.setup.bank;
        let signal = GratingSpec::resonant(
            bank,
            OamLabel::new(1, Sam::Plus)?,
            OamLabel::new(m_prime, Sam::Plus)?,
            self.pump.omega1(),
            delta_eps0,
            TargetPhoton::Signal,
        )?;
        let idler = GratingSpec::resonant(
            bank,
            OamLabel::new(-1, Sam::Minus)?,
            OamLabel::new(-m_prime, Sam::Minus)?,
            self.pump.omega2(),
            delta_eps0,
            TargetPhoton::Idler,
        )?;
        Ok(GratingPair::both(signal, idler))
    }

    /// Frequency-dependent inputs tabulated over `window` (rad/s).
    pub fn model(&self, channel: OutputChannel, gratings: &GratingPair, window: (f64, f64)) -> Result<SpectralModel, JsaError> {
        let model = SpectralModel::build(
            &self.setup,
            &self.pump,
            channel,
            gratings,
            window,
            self.options.interpolation_nodes,
            self.options.kappa_prefactor,
        )?;
        let (s, i) = (model.signal.modes[0], model.idler.modes[0]);
        if angular_momentum_allowed(s, i) == Allowed::Forbidden {
            return Err(JsaError::ForbiddenChannel(OutputChannel::new(s, i).to_string()));
        }
        Ok(model)
    }

    /// JSA of a pair generated directly in `channel`, without gratings.
    pub fn jsa_no_grating(&self, channel: OutputChannel, grid: &DetuningGrid) -> Result<JsaGrid, JsaError> {
        self.jsa(channel, &GratingPair::none(), grid, false)
    }

    /// JSA of pairs leaving in `channel`, summed over every source pair the
    /// gratings can convert into it, or only the pair generated in both
    /// low modes when `dominant_only` is set.
    pub fn jsa(
        &self,
        channel: OutputChannel,
        gratings: &GratingPair,
        grid: &DetuningGrid,
        dominant_only: bool,
    ) -> Result<JsaGrid, JsaError> {
        let model = self.model(channel, gratings, (grid.min, grid.max))?;
        self.evaluate(&model, grid, dominant_only, Detuning::Dispersive(self.options.envelope_carrier))
    }

    /// Coupled-mode parameters of the signal and idler gratings at detuning
    /// `dw`, with the detunings the JSA hands to the envelopes.
    pub fn envelope_params(
        &self,
        model: &SpectralModel,
        dw: f64,
    ) -> Result<(Option<EnvelopeParams>, Option<EnvelopeParams>), JsaError> {
        let point = model.at(dw);
        let carrier = self.options.envelope_carrier;
        let params = |photon: &PhotonModes, modes: &[(f64, f64)], omega: f64, kappa: Complex64| {
            photon
                .grating
                .map(|g| {
                    let (delta, d) = envelope_detunings(&g, carrier, omega, modes[0], modes[1]);
                    EnvelopeParams::new(kappa, delta, d, modes[0].1, modes[1].1, self.pump.length)
                })
                .transpose()
        };
        Ok((
            params(&model.signal, &point.signal, point.omega_s, point.kappa_signal)?,
            params(&model.idler, &point.idler, point.omega_i, point.kappa_idler)?,
        ))
    }

    pub(crate) fn evaluate(
        &self,
        model: &SpectralModel,
        grid: &DetuningGrid,
        dominant_only: bool,
        detuning: Detuning,
    ) -> Result<JsaGrid, JsaError> {
        let xs = grid.values();
        let terms: Vec<Vec<Complex64>> = xs
            .par_iter()
            .map(|&dw| self.source_terms(model, &model.at(dw), dominant_only, detuning))
            .collect::<Result<_, _>>()?;
        let (signal, idler) = model.source_labels();
        let mut term_labels = Vec::new();
        for s in &signal {
            for i in &idler {
                term_labels.push(OutputChannel::new(*s, *i).to_string());
            }
        }
        if dominant_only {
            term_labels.truncate(1);
        }
        let (w1, w2) = (self.pump.omega1(), self.pump.omega2());
        let omega_s: Vec<f64> = xs.iter().map(|dw| w1 + dw).collect();
        Ok(JsaGrid {
            channel: model.channel(),
            omega_i: omega_s.iter().map(|ws| w1 + w2 - ws).collect(),
            omega_s,
            amplitude: terms.iter().map(|t| t.iter().sum()).collect(),
            detuning: xs,
            terms,
            term_labels,
            normalization_reference: "none".into(),
        })
    }

    /// Contribution of each source pair at one detuning.
    pub(crate) fn source_terms(
        &self,
        model: &SpectralModel,
        point: &SpectralPoint,
        dominant_only: bool,
        detuning: Detuning,
    ) -> Result<Vec<Complex64>, JsaError> {
        let length = self.pump.length;
        let exit = model.channel();
        let (ns, ni) = (model.signal.count, model.idler.count);
        let mut out = Vec::with_capacity(ns * ni);
        for ys in 0..ns {
            let env_s = envelope(&model.signal, exit.signal, ys, point, true, length, detuning)?;
            for yi in 0..ni {
                if dominant_only && (ys, yi) != (0, 0) {
                    continue;
                }
                let env_i = envelope(&model.idler, exit.idler, yi, point, false, length, detuning)?;
                let overlap = point.overlap(ys, yi);
                let dk = point.phase_mismatch(ys, yi);
                let value = match self.options.z_integration {
                    ZIntegration::ClosedForm => (&env_s.conj() * &env_i.conj()).shifted(dk).scaled(overlap).integrate(length),
                    ZIntegration::Adaptive(spec) => {
                        let f = |z: f64| {
                            Complex64::from_polar(1.0, dk * z) * env_s.evaluate(z).conj() * env_i.evaluate(z).conj()
                        };
                        integrate(f, 0.0, length, &spec)
                            .map_err(|e| JsaError::QuadratureFailure(e.to_string()))?
                            .value
                            * overlap
                    }
                };
                out.push(value);
            }
        }
        Ok(out)
    }
}

/// Amplitude `a_{y→exit}(z)` of the photon created in source mode `y`
/// reaching the output in mode `exit`, as an exponential sum.
fn envelope(
    photon: &PhotonModes,
    exit: OamLabel,
    y: usize,
    point: &SpectralPoint,
    is_signal: bool,
    length: f64,
    detuning: Detuning,
) -> Result<ExpSum, JsaError> {
    let Some(grating) = photon.grating else {
        return Ok(ExpSum::single(Complex64::new(1.0, 0.0), 0.0));
    };
    let (modes, omega, kappa) = if is_signal {
        (&point.signal, point.omega_s, point.kappa_signal)
    } else {
        (&point.idler, point.omega_i, point.kappa_idler)
    };
    let (v_low, v_high) = (modes[0].1, modes[1].1);
    let (delta, d) = match detuning {
        Detuning::Dispersive(carrier) => envelope_detunings(&grating, carrier, omega, modes[0], modes[1]),
        Detuning::Ideal => (0.0, 0.0),
    };
    let params = EnvelopeParams::new(kappa, delta, d, v_low, v_high, length)?;
    let exits_high = exit == photon.modes[1];
    let family = match (is_signal, exits_high) {
        (true, false) => EnvelopeFamily::SignalOutM,
        (true, true) => EnvelopeFamily::SignalOutMp,
        (false, false) => EnvelopeFamily::IdlerOutM,
        (false, true) => EnvelopeFamily::IdlerOutMp,
    };
    Ok(envelopes(params, family).component(y == 1).clone())
}

/// `(δ, d)` handed to the envelope solutions for a photon at `omega` with
/// low and high modes `(k, v_g)`.
pub(crate) fn envelope_detunings(
    grating: &GratingSpec,
    carrier: EnvelopeCarrier,
    omega: f64,
    (k_low, v_low): (f64, f64),
    (k_high, v_high): (f64, f64),
) -> (f64, f64) {
    let mismatch = grating.wavevector() + k_low - k_high;
    match carrier {
        EnvelopeCarrier::Absorbed => (0.0, 0.5 * mismatch),
        EnvelopeCarrier::Explicit => {
            let delta = grating.resonance.omega_t - omega;
            (delta, 0.5 * (delta * (1.0 / v_high - 1.0 / v_low) + mismatch))
        }
    }
}
