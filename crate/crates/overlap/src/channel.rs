use fwm_oam_basis::OamLabel;

/// Outcome of the azimuthal selection rule for a signal–idler pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Allowed {
    /// Total charge `ℓ_s + ℓ_i = 0`.
    Conserving,
    /// `ℓ_s + ℓ_i = ±2`: angular momentum exchanged with the pump spin.
    SpinOrbit,
    Forbidden,
}

/// Selection rule `±m_s ± m_i + σ_s + σ_i ∈ {−2, 0, 2}`.
pub fn angular_momentum_allowed(signal: OamLabel, idler: OamLabel) -> Allowed {
    match signal.total_charge() + idler.total_charge() {
        0 => Allowed::Conserving,
        2 | -2 => Allowed::SpinOrbit,
        _ => Allowed::Forbidden,
    }
}

/// A four-wave-mixing channel: both pumps in the even `HE_{1,1}` mode, the
/// signal propagating forward and the idler backward. Frequencies in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FwmChannel {
    pub signal: OamLabel,
    pub idler: OamLabel,
    pub omega_s: f64,
    pub omega_i: f64,
    pub omega_1: f64,
    pub omega_2: f64,
}

/// Angular frequencies (rad/s) of the four fields of a channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    pub signal: f64,
    pub idler: f64,
    pub pump1: f64,
    pub pump2: f64,
}

impl Frequencies {
    /// All four fields at one frequency.
    pub fn common(omega: f64) -> Self {
        Self {
            signal: omega,
            idler: omega,
            pump1: omega,
            pump2: omega,
        }
    }

    /// Signal at the first pump frequency and idler at the second
    /// (zero detuning).
    pub fn degenerate_with_pumps(pump1: f64, pump2: f64) -> Self {
        Self {
            signal: pump1,
            idler: pump2,
            pump1,
            pump2,
        }
    }
}

impl FwmChannel {
    pub fn new(signal: OamLabel, idler: OamLabel, frequencies: Frequencies) -> Self {
        Self {
            signal,
            idler,
            omega_s: frequencies.signal,
            omega_i: frequencies.idler,
            omega_1: frequencies.pump1,
            omega_2: frequencies.pump2,
        }
    }

    pub fn frequencies(&self) -> Frequencies {
        Frequencies {
            signal: self.omega_s,
            idler: self.omega_i,
            pump1: self.omega_1,
            pump2: self.omega_2,
        }
    }

    pub fn allowed(&self) -> Allowed {
        angular_momentum_allowed(self.signal, self.idler)
    }
}
