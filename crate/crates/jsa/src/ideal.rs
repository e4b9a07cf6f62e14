use crate::config::{GratingPair, OutputChannel};
use crate::engine::{Detuning, JsaEngine};
use crate::error::JsaError;
use crate::grid::{DetuningGrid, JsaGrid};

/// The four output components of pairs generated in the low modes of both
/// gratings when conversion is perfectly phase matched at every frequency
/// (`δ = d = 0`):
///
/// - `phi[0]`: both photons stay low (`cos · cos`),
/// - `phi[1]`: only the idler converts (`cos · sin`),
/// - `phi[2]`: only the signal converts (`sin · cos`),
/// - `phi[3]`: both convert (`sin · sin`).
#[derive(Debug, Clone, PartialEq)]
pub struct IdealComponents {
    pub channels: [OutputChannel; 4],
    pub phi: [JsaGrid; 4],
}

pub fn ideal_components(engine: &JsaEngine, gratings: &GratingPair, grid: &DetuningGrid) -> Result<IdealComponents, JsaError> {
    let (Some(gs), Some(gi)) = (gratings.signal, gratings.idler) else {
        return Err(JsaError::ChannelUnreachable("ideal components need a grating on each photon".into()));
    };
    let (s, sp) = (gs.resonance.from, gs.resonance.to);
    let (i, ip) = (gi.resonance.from, gi.resonance.to);
    let channels = [
        OutputChannel::new(s, i),
        OutputChannel::new(s, ip),
        OutputChannel::new(sp, i),
        OutputChannel::new(sp, ip),
    ];
    let base = engine.model(channels[0], gratings, (grid.min, grid.max))?;
    let component = |c: OutputChannel| -> Result<JsaGrid, JsaError> {
        engine.evaluate(&base.with_channel(c)?, grid, true, Detuning::Ideal)
    };
    Ok(IdealComponents {
        channels,
        phi: [
            component(channels[0])?,
            component(channels[1])?,
            component(channels[2])?,
            component(channels[3])?,
        ],
    })
}
