use crate::config::{GratingPair, OutputChannel};
use crate::engine::JsaEngine;
use crate::error::JsaError;
use crate::grid::DetuningGrid;

/// Fraction of the window (per side) inspected for spectral leakage.
const TAIL_FRACTION: f64 = 0.02;
/// Largest acceptable `|Φ|²` near the window edges relative to the peak.
const TAIL_LIMIT: f64 = 1e-6;
const MAX_WIDENINGS: usize = 4;
/// Largest phase advance `L·|dΔk/dω|·spacing` of the direct-generation
/// spectrum between neighbouring grid points.
const MAX_PHASE_STEP: f64 = std::f64::consts::FRAC_PI_4;

/// Ratio of pairs emitted into a channel with and without gratings.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRatio {
    pub ratio: f64,
    /// `∫|Φ|² dΔω` with the gratings.
    pub with_gratings: f64,
    /// `∫|Φ|² dΔω` of direct generation into the same channel.
    pub without_gratings: f64,
    /// Grid actually used, after any widening.
    pub grid: DetuningGrid,
    pub widenings: usize,
    /// Worst edge-to-peak intensity ratio of the two spectra.
    pub tail_ratio: f64,
}

impl JsaEngine {
    /// `∫|Φ^{grating}|² / ∫|Φ^{direct}|²` for pairs leaving in `channel`.
    ///
    /// The window is doubled (at fixed spacing) until both spectra have
    /// decayed to below 10⁻⁶ of their peak at the edges.
    pub fn pair_ratio(
        &self,
        channel: OutputChannel,
        gratings: &GratingPair,
        grid: &DetuningGrid,
        dominant_only: bool,
    ) -> Result<PairRatio, JsaError> {
        self.check_resolution(channel, grid)?;
        let mut grid = *grid;
        for widenings in 0..=MAX_WIDENINGS {
            let with = self.jsa(channel, gratings, &grid, dominant_only)?;
            let without = self.jsa_no_grating(channel, &grid)?;
            let tail_ratio = with.tail_ratio(TAIL_FRACTION).max(without.tail_ratio(TAIL_FRACTION));
            if tail_ratio < TAIL_LIMIT {
                let (num, den) = (with.integrated_intensity(), without.integrated_intensity());
                return Ok(PairRatio {
                    ratio: num / den,
                    with_gratings: num,
                    without_gratings: den,
                    grid,
                    widenings,
                    tail_ratio,
                });
            }
            if widenings == MAX_WIDENINGS {
                return Err(JsaError::GridTooNarrow {
                    attempts: widenings,
                    tail_ratio,
                });
            }
            grid = grid.widened(2.0);
        }
        unreachable!("loop returns on its last iteration")
    }

    /// Rejects grids too coarse to resolve the sinc lobes of direct
    /// generation, whose integral would otherwise be silently wrong.
    fn check_resolution(&self, channel: OutputChannel, grid: &DetuningGrid) -> Result<(), JsaError> {
        let model = self.model(channel, &GratingPair::none(), (grid.min, grid.max))?;
        let h = 1e-3 * (grid.max - grid.min);
        let centre = 0.5 * (grid.min + grid.max);
        let slope = (model.at(centre + h).phase_mismatch(0, 0) - model.at(centre - h).phase_mismatch(0, 0)) / (2.0 * h);
        let phase_step = slope.abs() * self.pump().length * grid.spacing();
        if phase_step > MAX_PHASE_STEP {
            return Err(JsaError::GridTooCoarse {
                phase_step,
                limit: MAX_PHASE_STEP,
            });
        }
        Ok(())
    }
}
