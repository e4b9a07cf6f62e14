//! Envelopes of a photon oscillating between two OAM modes `m` ("low")
//! and `m′` ("high") under a helical grating.
//!
//! Signal photons propagate forward and satisfy
//!
//! ```text
//! i a′ − (δ/v)  a + κ  b e^{iΔz} = 0
//! i b′ − (δ/v′) b + κ* a e^{−iΔz} = 0
//! ```
//!
//! with `Δ = k^{m′} − k^{m} − K`, i.e. `2d = δ(1/v′ − 1/v) − Δ`. Idler photons
//! propagate backward; their equations follow from `z → −z` and
//! `−i d/dz`, with the same `d`. Each family is an asymptotic-out mode: the
//! photon leaves the grating purely in one of the two modes (at `z = L` for
//! the signal, at `z = 0` for the idler).

mod envelope;
mod expsum;
mod ode;

pub use envelope::{envelopes, Direction, EnvelopeError, EnvelopeFamily, EnvelopeParams, EnvelopeSolution};
pub use expsum::{integrate_exponential, ExpSum};
pub use ode::{ode_oracle, OdeSample};
