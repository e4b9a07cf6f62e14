use crate::config::{GratingPair, OutputChannel, PumpConfig};
use crate::error::JsaError;
use fwm_fiber_modes::ModeLabel;
use fwm_grating::{coupling_constant, CouplingPoint, GratingSpec, KappaPrefactor};
use fwm_numerics::{chebyshev_points, Chebyshev};
use fwm_oam_basis::{hybrid_partner, OamLabel};
use fwm_overlap::{fwm_overlap, Frequencies, FwmChannel, OverlapSetup};
use num_complex::Complex64;
use rayon::prelude::*;

/// The modes one photon can occupy: a single mode without a grating, or the
/// `(low, high)` pair of its grating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PhotonModes {
    pub(crate) grating: Option<GratingSpec>,
    pub(crate) modes: [OamLabel; 2],
    pub(crate) count: usize,
}

impl PhotonModes {
    pub(crate) fn new(exit: OamLabel, grating: Option<GratingSpec>, channel: &OutputChannel) -> Result<Self, JsaError> {
        match grating {
            None => Ok(Self {
                grating,
                modes: [exit, exit],
                count: 1,
            }),
            Some(g) => {
                let (low, high) = (g.resonance.from, g.resonance.to);
                if exit != low && exit != high {
                    return Err(JsaError::ChannelUnreachable(channel.to_string()));
                }
                Ok(Self {
                    grating,
                    modes: [low, high],
                    count: 2,
                })
            }
        }
    }

    pub(crate) fn labels(&self) -> &[OamLabel] {
        &self.modes[..self.count]
    }
}

/// Frequency-dependent inputs of the JSA at one detuning.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint {
    pub detuning: f64,
    pub omega_s: f64,
    pub omega_i: f64,
    /// Pump wavenumbers (forward, backward), rad/m.
    pub k_pumps: (f64, f64),
    /// Wavenumber and group velocity of each signal mode at `ω_s`.
    pub signal: Vec<(f64, f64)>,
    /// Wavenumber and group velocity of each idler mode at `ω̄_i`.
    pub idler: Vec<(f64, f64)>,
    pub kappa_signal: Complex64,
    pub kappa_idler: Complex64,
    /// Overlap of every (signal mode, idler mode) source pair, row-major.
    pub overlaps: Vec<Complex64>,
}

impl SpectralPoint {
    pub fn overlap(&self, ys: usize, yi: usize) -> Complex64 {
        self.overlaps[ys * self.idler.len() + yi]
    }

    /// `k₁ − k₂ − k_s(ω_s) + k_i(ω̄_i)` for source modes `ys`, `yi`.
    pub fn phase_mismatch(&self, ys: usize, yi: usize) -> f64 {
        self.k_pumps.0 - self.k_pumps.1 - self.signal[ys].0 + self.idler[yi].0
    }
}

/// Chebyshev interpolants of every frequency-dependent quantity over a
/// detuning window, for one choice of modes and gratings.
#[derive(Debug, Clone)]
pub struct SpectralModel {
    pub(crate) channel: OutputChannel,
    pub(crate) signal: PhotonModes,
    pub(crate) idler: PhotonModes,
    omega1: f64,
    omega2: f64,
    k_pumps: (f64, f64),
    window: (f64, f64),
    k_s: Vec<Chebyshev<f64>>,
    v_s: Vec<Chebyshev<f64>>,
    k_i: Vec<Chebyshev<f64>>,
    v_i: Vec<Chebyshev<f64>>,
    kappa_s: Chebyshev<Complex64>,
    kappa_i: Chebyshev<Complex64>,
    overlaps: Vec<Chebyshev<Complex64>>,
}

struct NodeSample {
    signal: Vec<(f64, f64)>,
    idler: Vec<(f64, f64)>,
    kappa_s: Complex64,
    kappa_i: Complex64,
    overlaps: Vec<Complex64>,
}

fn dispersion(setup: &OverlapSetup, label: OamLabel, omega: f64) -> Result<(f64, f64), JsaError> {
    let p = setup
        .bank
        .dispersion()
        .get_or_solve(setup.fiber(), hybrid_partner(label)?, omega)?;
    Ok((p.k, p.v_g))
}

fn kappa(
    setup: &OverlapSetup,
    photon: &PhotonModes,
    omega: f64,
    prefactor: KappaPrefactor,
) -> Result<Complex64, JsaError> {
    match &photon.grating {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(g) => Ok(coupling_constant(&setup.bank, g, photon.modes[0], photon.modes[1], omega, prefactor)?),
    }
}

impl SpectralModel {
    /// Samples the model on `nodes` Chebyshev points of `window` (rad/s).
    pub(crate) fn build(
        setup: &OverlapSetup,
        pump: &PumpConfig,
        channel: OutputChannel,
        gratings: &GratingPair,
        window: (f64, f64),
        nodes: usize,
        prefactor: KappaPrefactor,
    ) -> Result<Self, JsaError> {
        let signal = PhotonModes::new(channel.signal, gratings.signal, &channel)?;
        let idler = PhotonModes::new(channel.idler, gratings.idler, &channel)?;
        let (omega1, omega2) = (pump.omega1(), pump.omega2());
        let k_pumps = pump_wavenumbers(setup, omega1, omega2)?;
        let xs = chebyshev_points(nodes, window.0, window.1);
        let samples: Vec<NodeSample> = xs
            .par_iter()
            .map(|&dw| {
                let omega_s = omega1 + dw;
                let omega_i = omega1 + omega2 - omega_s;
                let freqs = Frequencies {
                    signal: omega_s,
                    idler: omega_i,
                    pump1: omega1,
                    pump2: omega2,
                };
                let mut overlaps = Vec::with_capacity(signal.count * idler.count);
                for &ys in signal.labels() {
                    for &yi in idler.labels() {
                        overlaps.push(fwm_overlap(&FwmChannel::new(ys, yi, freqs), setup)?);
                    }
                }
                Ok(NodeSample {
                    signal: signal
                        .labels()
                        .iter()
                        .map(|&l| dispersion(setup, l, omega_s))
                        .collect::<Result<_, JsaError>>()?,
                    idler: idler
                        .labels()
                        .iter()
                        .map(|&l| dispersion(setup, l, omega_i))
                        .collect::<Result<_, JsaError>>()?,
                    kappa_s: kappa(setup, &signal, omega_s, prefactor)?,
                    kappa_i: kappa(setup, &idler, omega_i, prefactor)?,
                    overlaps,
                })
            })
            .collect::<Result<_, JsaError>>()?;
        let (a, b) = window;
        let real = |f: &dyn Fn(&NodeSample) -> f64| Chebyshev::from_values(a, b, samples.iter().map(f).collect());
        let cplx =
            |f: &dyn Fn(&NodeSample) -> Complex64| Chebyshev::from_values(a, b, samples.iter().map(f).collect());
        Ok(Self {
            channel,
            signal,
            idler,
            omega1,
            omega2,
            k_pumps,
            window,
            k_s: (0..signal.count).map(|j| real(&|s| s.signal[j].0)).collect(),
            v_s: (0..signal.count).map(|j| real(&|s| s.signal[j].1)).collect(),
            k_i: (0..idler.count).map(|j| real(&|s| s.idler[j].0)).collect(),
            v_i: (0..idler.count).map(|j| real(&|s| s.idler[j].1)).collect(),
            kappa_s: cplx(&|s| s.kappa_s),
            kappa_i: cplx(&|s| s.kappa_i),
            overlaps: (0..signal.count * idler.count)
                .map(|j| cplx(&|s| s.overlaps[j]))
                .collect(),
        })
    }

    /// Same tabulation for another exit channel reachable with the same
    /// gratings.
    pub fn with_channel(&self, channel: OutputChannel) -> Result<Self, JsaError> {
        let signal = PhotonModes::new(channel.signal, self.signal.grating, &channel)?;
        let idler = PhotonModes::new(channel.idler, self.idler.grating, &channel)?;
        if signal.labels() != self.signal.labels() || idler.labels() != self.idler.labels() {
            return Err(JsaError::ChannelUnreachable(channel.to_string()));
        }
        Ok(Self {
            channel,
            ..self.clone()
        })
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn channel(&self) -> OutputChannel {
        self.channel
    }

    /// Source-mode labels of the signal and idler, low mode first.
    pub fn source_labels(&self) -> (Vec<OamLabel>, Vec<OamLabel>) {
        (self.signal.labels().to_vec(), self.idler.labels().to_vec())
    }

    /// Coupling constant and detunings `δ = ω_t − ω`,
    /// `2d = δ(1/v′ − 1/v) + K + k^{m}(ω) − k^{m′}(ω)` of the signal and idler
    /// gratings at detuning `dw`, as defined for the grating alone.
    pub fn couplings(&self, dw: f64) -> (Option<CouplingPoint>, Option<CouplingPoint>) {
        let p = self.at(dw);
        let point = |photon: &PhotonModes, modes: &[(f64, f64)], omega: f64, kappa: Complex64| {
            photon.grating.map(|g| {
                let ((k_low, v_low), (k_high, v_high)) = (modes[0], modes[1]);
                let delta = g.resonance.omega_t - omega;
                let d = 0.5 * (delta * (1.0 / v_high - 1.0 / v_low) + g.wavevector() + k_low - k_high);
                CouplingPoint::new(kappa, delta, d)
            })
        };
        (
            point(&self.signal, &p.signal, p.omega_s, p.kappa_signal),
            point(&self.idler, &p.idler, p.omega_i, p.kappa_idler),
        )
    }

    /// Interpolated inputs at detuning `dw`.
    pub fn at(&self, dw: f64) -> SpectralPoint {
        let omega_s = self.omega1 + dw;
        SpectralPoint {
            detuning: dw,
            omega_s,
            omega_i: self.omega1 + self.omega2 - omega_s,
            k_pumps: self.k_pumps,
            signal: self.k_s.iter().zip(&self.v_s).map(|(k, v)| (k.evaluate(dw), v.evaluate(dw))).collect(),
            idler: self.k_i.iter().zip(&self.v_i).map(|(k, v)| (k.evaluate(dw), v.evaluate(dw))).collect(),
            kappa_signal: self.kappa_s.evaluate(dw),
            kappa_idler: self.kappa_i.evaluate(dw),
            overlaps: self.overlaps.iter().map(|c| c.evaluate(dw)).collect(),
        }
    }
}

/// Wavenumbers of the fundamental-mode pumps.
fn pump_wavenumbers(setup: &OverlapSetup, omega1: f64, omega2: f64) -> Result<(f64, f64), JsaError> {
    let he11 = ModeLabel::he(1)?;
    let cache = setup.bank.dispersion();
    Ok((
        cache.get_or_solve(setup.fiber(), he11, omega1)?.k,
        cache.get_or_solve(setup.fiber(), he11, omega2)?.k,
    ))
}
