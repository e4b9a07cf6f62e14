use crate::error::OamError;
use crate::label::OamLabel;
use crate::profile::{hybrid_vector_profile, oam_profile_with, UnitCounterConstruction, VectorModeProfile};
use fwm_fiber_modes::{DispersionCache, FiberSpec, ModeLabel, Normalization};
use fwm_numerics::QuadratureSpec;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

/// Memo table of normalized vector profiles for one fiber and one
/// normalization convention.
///
/// Lookups share a read lock; misses are computed outside any lock and
/// inserted under the write lock (first insertion wins, and all racers
/// compute the same deterministic value).
#[derive(Debug)]
pub struct ProfileBank {
    fiber: FiberSpec,
    normalization: Normalization,
    quad: QuadratureSpec,
    unit_counter: UnitCounterConstruction,
    dispersion: DispersionCache,
    oam: RwLock<HashMap<(OamLabel, u64), Arc<VectorModeProfile>>>,
    hybrid: RwLock<HashMap<(ModeLabel, u64), Arc<VectorModeProfile>>>,
}

fn lookup_or_insert<K: Eq + Hash + Copy>(
    map: &RwLock<HashMap<K, Arc<VectorModeProfile>>>,
    key: K,
    make: impl FnOnce() -> Result<VectorModeProfile, OamError>,
) -> Result<Arc<VectorModeProfile>, OamError> {
    if let Some(p) = map.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(p));
    }
    let made = Arc::new(make()?);
    let mut w = map.write().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(w.entry(key).or_insert(made)))
}

impl ProfileBank {
    pub fn new(
        fiber: FiberSpec,
        normalization: Normalization,
        quad: QuadratureSpec,
        unit_counter: UnitCounterConstruction,
    ) -> Self {
        Self {
            fiber,
            normalization,
            quad,
            unit_counter,
            dispersion: DispersionCache::new(),
            oam: RwLock::new(HashMap::new()),
            hybrid: RwLock::new(HashMap::new()),
        }
    }

    pub fn fiber(&self) -> &FiberSpec {
        &self.fiber
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    pub fn unit_counter(&self) -> UnitCounterConstruction {
        self.unit_counter
    }

    pub fn dispersion(&self) -> &DispersionCache {
        &self.dispersion
    }

    pub fn oam(&self, label: OamLabel, omega: f64) -> Result<Arc<VectorModeProfile>, OamError> {
        lookup_or_insert(&self.oam, (label, omega.to_bits()), || {
            oam_profile_with(
                &self.fiber,
                label,
                omega,
                self.normalization,
                &self.quad,
                self.unit_counter,
                Some(&self.dispersion),
            )
        })
    }

    pub fn hybrid(&self, label: ModeLabel, omega: f64) -> Result<Arc<VectorModeProfile>, OamError> {
        lookup_or_insert(&self.hybrid, (label, omega.to_bits()), || {
            hybrid_vector_profile(&self.fiber, label, omega, self.normalization, &self.quad, Some(&self.dispersion))
        })
    }
}
