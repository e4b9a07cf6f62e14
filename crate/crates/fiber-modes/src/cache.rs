use crate::error::ModeError;
use crate::fiber::FiberSpec;
use crate::label::{Family, ModeLabel};
use crate::solver::{solve_mode, DispersionPoint};
use std::collections::HashMap;
use std::sync::RwLock;

type Key = ([u64; 3], Family, u32, u64);

/// Memo table of solved modes keyed by fiber, family, order and frequency.
///
/// Reads take a shared lock; a miss solves outside the lock and then
/// inserts under the write lock, so concurrent readers never observe a
/// partially written entry. Two threads racing on the same miss both solve
/// and insert the same deterministic value.
#[derive(Debug, Default)]
pub struct DispersionCache {
    table: RwLock<HashMap<Key, DispersionPoint>>,
}

impl DispersionCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(fiber: &FiberSpec, label: ModeLabel, omega: f64) -> Key {
        (
            [
                fiber.core_index().to_bits(),
                fiber.cladding_index().to_bits(),
                fiber.core_radius().to_bits(),
            ],
            label.family(),
            label.azimuthal_m(),
            omega.to_bits(),
        )
    }

    pub fn get(&self, fiber: &FiberSpec, label: ModeLabel, omega: f64) -> Option<DispersionPoint> {
        let table = self.table.read().unwrap_or_else(|e| e.into_inner());
        table.get(&Self::key(fiber, label, omega)).copied()
    }

    pub fn get_or_solve(
        &self,
        fiber: &FiberSpec,
        label: ModeLabel,
        omega: f64,
    ) -> Result<DispersionPoint, ModeError> {
        if let Some(p) = self.get(fiber, label, omega) {
            return Ok(p);
        }
        let p = solve_mode(fiber, label, omega)?;
        let mut table = self.table.write().unwrap_or_else(|e| e.into_inner());
        Ok(*table.entry(Self::key(fiber, label, omega)).or_insert(p))
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
