use crate::error::ModeError;
use std::fmt;

/// Mode family of a first-radial-order guided mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    HE,
    EH,
    TE,
    TM,
}

/// Even/odd azimuthal parity of a hybrid mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

/// Which root of the factored eigenvalue equation a mode belongs to.
///
/// The hybrid equation is quadratic in `J'_m/(U J_m)`; the smaller root
/// carries the HE modes (and TM for `m = 0`), the larger one the EH modes
/// (and TE for `m = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    He,
    Eh,
}

/// Identity of a guided mode with radial order `n = 1`.
///
/// The radial order is fixed by construction: there is no way to name a
/// higher radial mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeLabel {
    family: Family,
    azimuthal_m: u32,
    parity: Parity,
}

impl ModeLabel {
    pub const RADIAL_N: u32 = 1;

    /// TE/TM require `m = 0`; HE/EH require `m ≥ 1`.
    pub fn new(family: Family, azimuthal_m: u32, parity: Parity) -> Result<Self, ModeError> {
        match family {
            Family::TE | Family::TM if azimuthal_m != 0 => Err(ModeError::InvalidLabel(format!(
                "{family:?} modes have azimuthal order 0, got {azimuthal_m}"
            ))),
            Family::HE | Family::EH if azimuthal_m == 0 => Err(ModeError::InvalidLabel(format!(
                "{family:?} modes need azimuthal order >= 1 (order 0 is TE/TM)"
            ))),
            _ if azimuthal_m > fwm_numerics::MAX_ORDER - 2 => Err(ModeError::InvalidLabel(format!(
                "azimuthal order {azimuthal_m} exceeds the supported range"
            ))),
            _ => Ok(Self {
                family,
                azimuthal_m,
                parity,
            }),
        }
    }

    /// Even HE_{m,1}.
    pub fn he(m: u32) -> Result<Self, ModeError> {
        Self::new(Family::HE, m, Parity::Even)
    }

    /// Even EH_{m,1}.
    pub fn eh(m: u32) -> Result<Self, ModeError> {
        Self::new(Family::EH, m, Parity::Even)
    }

    pub fn te() -> Self {
        Self {
            family: Family::TE,
            azimuthal_m: 0,
            parity: Parity::Even,
        }
    }

    pub fn tm() -> Self {
        Self {
            family: Family::TM,
            azimuthal_m: 0,
            parity: Parity::Even,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn azimuthal_m(&self) -> u32 {
        self.azimuthal_m
    }

    pub fn radial_n(&self) -> u32 {
        Self::RADIAL_N
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(&self, parity: Parity) -> Self {
        Self { parity, ..*self }
    }

    pub fn branch(&self) -> Branch {
        match self.family {
            Family::HE | Family::TM => Branch::He,
            Family::EH | Family::TE => Branch::Eh,
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.parity {
            Parity::Even => "e",
            Parity::Odd => "o",
        };
        match self.family {
            Family::TE | Family::TM => write!(f, "{:?}0,1", self.family),
            _ => write!(f, "{:?}{},1({p})", self.family, self.azimuthal_m),
        }
    }
}
