use crate::error::OamError;
use fwm_fiber_modes::{Family, ModeLabel, Parity};
use std::fmt;
use std::str::FromStr;

/// Spin angular momentum (circular polarization handedness).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sam {
    Plus,
    Minus,
}

impl Sam {
    pub fn sign(self) -> i32 {
        match self {
            Sam::Plus => 1,
            Sam::Minus => -1,
        }
    }

    pub fn from_sign(sign: i32) -> Self {
        if sign >= 0 {
            Sam::Plus
        } else {
            Sam::Minus
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sam::Plus => Sam::Minus,
            Sam::Minus => Sam::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sam::Plus => '+',
            Sam::Minus => '-',
        }
    }
}

/// Identity of an OAM mode `O_{charge}^{sam}` with radial order 1.
///
/// Labels made with [`OamLabel::new`] always map to a stable hybrid mode.
/// The unit-charge counter-rotating modes (`O_{±1}^{∓}`), which are built
/// from TE and TM modes, can only be made with [`OamLabel::tabulation`] and
/// exist solely so that their overlap integrals can be tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OamLabel {
    oam_charge: i32,
    sam: Sam,
}

/// Which hybrid family is reported for counter-rotating modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerConvention {
    /// `EH_{|m|−1}`, as required by the mode construction.
    ModeConstruction,
    /// `HE_{|m|−1}`: the superscript printed in the reference SAM/OAM
    /// listing for `O_2^−`, kept only for comparison.
    ReferenceListing,
}

impl OamLabel {
    pub const RADIAL_N: u32 = 1;

    pub fn new(oam_charge: i32, sam: Sam) -> Result<Self, OamError> {
        let label = Self::tabulation(oam_charge, sam)?;
        if label.is_unit_counter() {
            return Err(OamError::UnstableMode {
                charge: oam_charge,
                sam: sam.symbol(),
            });
        }
        Ok(label)
    }

    /// Like [`OamLabel::new`] but also admits `O_{±1}^{∓}`.
    pub fn tabulation(oam_charge: i32, sam: Sam) -> Result<Self, OamError> {
        if oam_charge.unsigned_abs() > 60 {
            return Err(OamError::InvalidLabel(format!(
                "charge {oam_charge} outside the supported range"
            )));
        }
        Ok(Self { oam_charge, sam })
    }

    pub fn oam_charge(&self) -> i32 {
        self.oam_charge
    }

    pub fn sam(&self) -> Sam {
        self.sam
    }

    pub fn radial_n(&self) -> u32 {
        Self::RADIAL_N
    }

    /// Sign of the orbital charge; for charge 0 the spin sign.
    pub fn handedness(&self) -> i32 {
        match self.oam_charge.signum() {
            0 => self.sam.sign(),
            s => s,
        }
    }

    /// Spin and orbital momentum point the same way (charge 0 counts as
    /// co-rotating).
    pub fn is_co_rotating(&self) -> bool {
        self.oam_charge == 0 || self.oam_charge.signum() == self.sam.sign()
    }

    /// `O_{±1}^{∓}`, built from TE and TM modes.
    pub fn is_unit_counter(&self) -> bool {
        !self.is_co_rotating() && self.oam_charge.abs() == 1
    }

    /// Total azimuthal phase charge `ℓ = m + σ`.
    pub fn total_charge(&self) -> i32 {
        self.oam_charge + self.sam.sign()
    }

    /// Azimuthal order of the underlying hybrid mode, `|ℓ|`.
    pub fn hybrid_order(&self) -> u32 {
        self.total_charge().unsigned_abs()
    }

    /// The label with both charge and spin reversed.
    pub fn conjugate(&self) -> Self {
        Self {
            oam_charge: -self.oam_charge,
            sam: self.sam.flipped(),
        }
    }
}

impl fmt::Display for OamLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{:+}{}", self.oam_charge, self.sam.symbol())
    }
}

impl FromStr for OamLabel {
    type Err = OamError;

    /// Parses `"+3+"`, `"-1-"`, `"O+2-"` or `"0+"`: signed charge followed
    /// by the spin sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches(['O', 'o']);
        let bad = || OamError::InvalidLabel(format!("cannot parse {s:?}; expected e.g. \"+3+\" or \"-1-\""));
        let sam = match t.chars().last().ok_or_else(bad)? {
            '+' => Sam::Plus,
            '-' => Sam::Minus,
            _ => return Err(bad()),
        };
        let charge: i32 = t[..t.len() - 1].parse().map_err(|_| bad())?;
        Self::new(charge, sam)
    }
}

/// Hybrid mode whose circular superposition forms `label`.
pub fn hybrid_partner(label: OamLabel) -> Result<ModeLabel, OamError> {
    hybrid_partner_with(label, PartnerConvention::ModeConstruction)
}

pub fn hybrid_partner_with(label: OamLabel, convention: PartnerConvention) -> Result<ModeLabel, OamError> {
    if label.is_unit_counter() {
        return Err(OamError::UnstableMode {
            charge: label.oam_charge,
            sam: label.sam.symbol(),
        });
    }
    let m = label.oam_charge.unsigned_abs();
    let (family, order) = if label.is_co_rotating() {
        (Family::HE, m + 1)
    } else {
        match convention {
            PartnerConvention::ModeConstruction => (Family::EH, m - 1),
            PartnerConvention::ReferenceListing => (Family::HE, m - 1),
        }
    };
    Ok(ModeLabel::new(family, order, Parity::Even)?)
}
