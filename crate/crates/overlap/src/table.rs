use crate::channel::{angular_momentum_allowed, Allowed, Frequencies, FwmChannel};
use crate::error::OverlapError;
use crate::integral::{fwm_overlap, OverlapSetup};
use fwm_oam_basis::{OamLabel, Sam};
use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt;

/// One of the eight sign/spin combinations `(±m_s, σ_s; ±m_i, σ_i)` with
/// the signal spin fixed to `+`. The orbital orders `m_s, m_i ≥ 1` index
/// the table cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OverlapFamily {
    pub signal_sign: i32,
    pub signal_sam: Sam,
    pub idler_sign: i32,
    pub idler_sam: Sam,
}

impl OverlapFamily {
    pub const fn new(signal_sign: i32, signal_sam: Sam, idler_sign: i32, idler_sam: Sam) -> Self {
        Self {
            signal_sign,
            signal_sam,
            idler_sign,
            idler_sam,
        }
    }

    /// `(+m, +; −m, −)`: both photons co-rotating, opposite charges.
    pub const CO_ROTATING: Self = Self::new(1, Sam::Plus, -1, Sam::Minus);
    /// `(+m, +; +m, −)`.
    pub const CO_SIGNAL_COUNTER_IDLER: Self = Self::new(1, Sam::Plus, 1, Sam::Minus);
    /// `(+m, +; −m, +)`.
    pub const CO_SIGNAL_COUNTER_IDLER_FLIPPED: Self = Self::new(1, Sam::Plus, -1, Sam::Plus);
    /// `(−m, +; +m, −)`: both photons counter-rotating, opposite charges.
    pub const COUNTER_ROTATING: Self = Self::new(-1, Sam::Plus, 1, Sam::Minus);
    /// `(−m, +; −m, −)`.
    pub const COUNTER_SIGNAL_CO_IDLER: Self = Self::new(-1, Sam::Plus, -1, Sam::Minus);
    /// `(−m, +; +m, +)`.
    pub const COUNTER_SIGNAL_CO_IDLER_FLIPPED: Self = Self::new(-1, Sam::Plus, 1, Sam::Plus);
    /// `(−m, +; −m, +)`: counter-rotating, equal charges.
    pub const COUNTER_EQUAL_CHARGE: Self = Self::new(-1, Sam::Plus, -1, Sam::Plus);
    /// `(+m, +; +m, +)`: identically zero by the selection rule.
    pub const CO_EQUAL_CHARGE: Self = Self::new(1, Sam::Plus, 1, Sam::Plus);

    pub fn all() -> [Self; 8] {
        [
            Self::CO_ROTATING,
            Self::CO_SIGNAL_COUNTER_IDLER,
            Self::CO_SIGNAL_COUNTER_IDLER_FLIPPED,
            Self::COUNTER_ROTATING,
            Self::COUNTER_SIGNAL_CO_IDLER,
            Self::COUNTER_SIGNAL_CO_IDLER_FLIPPED,
            Self::COUNTER_EQUAL_CHARGE,
            Self::CO_EQUAL_CHARGE,
        ]
    }

    /// Signal and idler labels of cell `(m_s, m_i)`. Unit-charge
    /// counter-rotating modes are admitted here because they are tabulated.
    pub fn labels(&self, m_s: u32, m_i: u32) -> Result<(OamLabel, OamLabel), OverlapError> {
        if m_s == 0 || m_i == 0 {
            return Err(OverlapError::InvalidRequest("orbital orders start at 1".into()));
        }
        Ok((
            OamLabel::tabulation(self.signal_sign * m_s as i32, self.signal_sam)?,
            OamLabel::tabulation(self.idler_sign * m_i as i32, self.idler_sam)?,
        ))
    }

    /// True when no cell can satisfy the selection rule.
    pub fn is_identically_zero(&self) -> bool {
        let co = |sign: i32, sam: Sam| sign == sam.sign();
        co(self.signal_sign, self.signal_sam)
            && co(self.idler_sign, self.idler_sam)
            && self.signal_sign == self.idler_sign
    }

    /// Compact file-name-safe tag, e.g. `p+_m-`.
    pub fn tag(&self) -> String {
        let s = |x: i32| if x > 0 { 'p' } else { 'm' };
        let t = |x: Sam| if x == Sam::Plus { '+' } else { '-' };
        format!(
            "{}{}_{}{}",
            s(self.signal_sign),
            t(self.signal_sam),
            s(self.idler_sign),
            t(self.idler_sam)
        )
    }
}

impl fmt::Display for OverlapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: i32| if x > 0 { '+' } else { '-' };
        let t = |x: Sam| if x == Sam::Plus { '+' } else { '-' };
        write!(
            f,
            "({}m_s,{}; {}m_i,{})",
            s(self.signal_sign),
            t(self.signal_sam),
            s(self.idler_sign),
            t(self.idler_sam)
        )
    }
}

/// Overlap values of one family for `1 ≤ m_s, m_i ≤ max_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTable {
    pub family: OverlapFamily,
    pub max_m: u32,
    pub frequencies: Frequencies,
    values: Vec<Complex64>,
}

impl OverlapTable {
    /// Value of cell `(m_s, m_i)`, both starting at 1.
    pub fn get(&self, m_s: u32, m_i: u32) -> Complex64 {
        self.values[((m_s - 1) * self.max_m + (m_i - 1)) as usize]
    }

    /// Number of cells whose value is not exactly zero.
    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|v| v.re != 0.0 || v.im != 0.0).count()
    }
}

/// Evaluates a whole family table, cells in parallel.
pub fn overlap_table(
    family: OverlapFamily,
    max_m: u32,
    frequencies: &Frequencies,
    setup: &OverlapSetup,
) -> Result<OverlapTable, OverlapError> {
    if max_m == 0 {
        return Err(OverlapError::InvalidRequest("max_m must be at least 1".into()));
    }
    let cells: Vec<(u32, u32)> = (1..=max_m).flat_map(|s| (1..=max_m).map(move |i| (s, i))).collect();
    let values = if family.is_identically_zero() {
        vec![Complex64::new(0.0, 0.0); cells.len()]
    } else {
        cells
            .par_iter()
            .map(|&(m_s, m_i)| {
                let (signal, idler) = family.labels(m_s, m_i)?;
                if angular_momentum_allowed(signal, idler) == Allowed::Forbidden {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                fwm_overlap(&FwmChannel::new(signal, idler, *frequencies), setup)
            })
            .collect::<Result<Vec<_>, OverlapError>>()?
    };
    Ok(OverlapTable {
        family,
        max_m,
        frequencies: *frequencies,
        values,
    })
}
