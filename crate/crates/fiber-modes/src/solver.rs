//! Exact eigenvalue solver for first-radial-order modes.
//!
//! With `X = J'_m(U)/(U J_m(U))` and `Y = K'_m(W)/(W K_m(W))` the hybrid
//! eigenvalue equation
//!
//! ```text
//! (X + Y)(X + ρY) = m²(1/U² + 1/W²)(1/U² + ρ/W²),   ρ = ε_cl/ε_co,
//! ```
//!
//! is a quadratic in `X`. Taking one of its two roots fixes the branch (HE
//! or EH; TM or TE at `m = 0`) and leaves the pole-free scalar equation
//! `J'_m(U) − U·X_branch(U)·J_m(U) = 0`, whose first sign change on
//! `0 < U < V` is the `n = 1` mode. Because the function has no poles, every
//! sign change found by the scan brackets a genuine root.

use crate::error::ModeError;
use crate::fiber::{FiberSpec, SPEED_OF_LIGHT};
use crate::label::{Branch, Family, ModeLabel};
use fwm_numerics::{
    bessel_j_with_derivative, bessel_k_scaled_with_derivative, find_root, scan_sign_changes,
    RootSpec,
};

/// Number of sub-intervals of the sign-change scan over `U ∈ (0, V)`.
pub const SCAN_POINTS: usize = 2000;

/// Relative angular-frequency step of the symmetric group-velocity difference.
pub const GROUP_VELOCITY_STEP: f64 = 1e-6;

const U_LOWER_FRACTION: f64 = 1e-4;
const U_UPPER_FRACTION: f64 = 1.0 - 1e-9;

/// Solution of the eigenvalue problem for one mode at one frequency.
///
/// Even and odd parities share the same point; it records the family and
/// azimuthal order but not the parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub family: Family,
    pub azimuthal_m: u32,
    /// Angular frequency, rad/s.
    pub omega: f64,
    pub n_eff: f64,
    /// Propagation constant, rad/m.
    pub k: f64,
    /// Lateral wavenumber in the core, rad/m.
    pub u: f64,
    /// Lateral attenuation constant in the cladding, rad/m.
    pub w: f64,
    /// Hybrid parameter `s` (0 for TE/TM).
    pub s: f64,
    /// Group velocity dω/dk, m/s.
    pub v_g: f64,
    /// Normalized frequency.
    pub v: f64,
    /// `U = u·a`.
    pub big_u: f64,
    /// `W = w·a`.
    pub big_w: f64,
}

fn j_ratio(m: u32, big_u: f64) -> f64 {
    let (j, jp) = bessel_j_with_derivative(m, big_u);
    jp / (big_u * j)
}

fn k_ratio(m: u32, big_w: f64) -> f64 {
    match bessel_k_scaled_with_derivative(m, big_w) {
        // The exponential scaling cancels in the ratio.
        Ok((k, kp)) => kp / (big_w * k),
        Err(_) => f64::NAN,
    }
}

/// Root of the quadratic for `J'/(UJ)` on the requested branch.
fn branch_x(rho: f64, m: u32, big_u: f64, big_w: f64, branch: Branch) -> f64 {
    let y = k_ratio(m, big_w);
    let m2 = (m * m) as f64;
    let (iu2, iw2) = (1.0 / (big_u * big_u), 1.0 / (big_w * big_w));
    let rhs = m2 * (iu2 + iw2) * (iu2 + rho * iw2);
    let root = (((1.0 - rho) * y).powi(2) + 4.0 * rhs).sqrt();
    let sign = match branch {
        Branch::He => -1.0,
        Branch::Eh => 1.0,
    };
    0.5 * (-(1.0 + rho) * y + sign * root)
}

/// Pole-free branch function `J'_m(U) − U·X·J_m(U)` at normalized
/// frequency `v`. Non-finite outside `0 < U < V`.
pub fn branch_function(fiber: &FiberSpec, m: u32, branch: Branch, big_u: f64, v: f64) -> f64 {
    if !(big_u > 0.0 && big_u < v) {
        return f64::NAN;
    }
    let big_w = (v * v - big_u * big_u).sqrt();
    let x = branch_x(fiber.permittivity_ratio(), m, big_u, big_w, branch);
    let (j, jp) = bessel_j_with_derivative(m, big_u);
    jp - big_u * x * j
}

/// Relative residual of the unfactored hybrid eigenvalue equation at `U`.
///
/// The difference of both sides is divided by `(|X| + |Y|)² + RHS`, which
/// is the natural magnitude of either side.
pub fn characteristic_residual(fiber: &FiberSpec, m: u32, big_u: f64, v: f64) -> f64 {
    let rho = fiber.permittivity_ratio();
    let big_w = (v * v - big_u * big_u).sqrt();
    let x = j_ratio(m, big_u);
    let y = k_ratio(m, big_w);
    let m2 = (m * m) as f64;
    let (iu2, iw2) = (1.0 / (big_u * big_u), 1.0 / (big_w * big_w));
    let rhs = m2 * (iu2 + iw2) * (iu2 + rho * iw2);
    let lhs = (x + y) * (x + rho * y);
    (lhs - rhs).abs() / ((x.abs() + y.abs()).powi(2) + rhs)
}

fn validate_omega(omega: f64) -> Result<(), ModeError> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(ModeError::InvalidFrequency { omega })
    }
}

fn scan_window(v: f64) -> (f64, f64) {
    (U_LOWER_FRACTION * v, U_UPPER_FRACTION * v)
}

fn root_in(
    fiber: &FiberSpec,
    m: u32,
    branch: Branch,
    v: f64,
    bracket: (f64, f64),
) -> Result<f64, ModeError> {
    let spec = RootSpec::new(bracket.0, bracket.1, 1e-15 * v.max(1.0));
    Ok(find_root(|x| branch_function(fiber, m, branch, x, v), spec)?)
}

/// All roots `U` of the label's branch at normalized frequency `v`, in
/// increasing order (radial orders 1, 2, …).
pub fn guided_roots(fiber: &FiberSpec, label: ModeLabel, v: f64) -> Result<Vec<f64>, ModeError> {
    let (lo, hi) = scan_window(v);
    let (m, branch) = (label.azimuthal_m(), label.branch());
    scan_sign_changes(|x| branch_function(fiber, m, branch, x, v), lo, hi, SCAN_POINTS)
        .into_iter()
        .map(|b| root_in(fiber, m, branch, v, b))
        .collect()
}

/// Normalized lateral wavenumber `U` of the `n = 1` mode at normalized
/// frequency `v`.
pub fn solve_u(fiber: &FiberSpec, label: ModeLabel, v: f64) -> Result<f64, ModeError> {
    let (lo, hi) = scan_window(v);
    let (m, branch) = (label.azimuthal_m(), label.branch());
    let brackets = scan_sign_changes(|x| branch_function(fiber, m, branch, x, v), lo, hi, SCAN_POINTS);
    let first = brackets.first().ok_or_else(|| ModeError::NotGuided {
        label: label.to_string(),
        v,
    })?;
    let u1 = root_in(fiber, m, branch, v, *first)?;
    if let Some(second) = brackets.get(1) {
        let u2 = root_in(fiber, m, branch, v, *second)?;
        if (u2 - u1).abs() < 1e-9 * v {
            return Err(ModeError::BranchAmbiguity {
                label: label.to_string(),
                first: u1,
                second: u2,
            });
        }
    }
    Ok(u1)
}

fn propagation_constant(fiber: &FiberSpec, omega: f64, big_u: f64) -> f64 {
    let k0 = omega / SPEED_OF_LIGHT;
    let a = fiber.core_radius() * 1e-6;
    let u = big_u / a;
    (k0 * k0 * fiber.core_permittivity() - u * u).sqrt()
}

fn k_at(fiber: &FiberSpec, label: ModeLabel, omega: f64) -> Result<f64, ModeError> {
    let u = solve_u(fiber, label, fiber.v_at_omega(omega))?;
    Ok(propagation_constant(fiber, omega, u))
}

/// Solves the `n = 1` mode named by `label` at angular frequency `omega`.
pub fn solve_mode(fiber: &FiberSpec, label: ModeLabel, omega: f64) -> Result<DispersionPoint, ModeError> {
    validate_omega(omega)?;
    let v = fiber.v_at_omega(omega);
    let big_u = solve_u(fiber, label, v)?;
    let big_w = (v * v - big_u * big_u).sqrt();
    let a = fiber.core_radius() * 1e-6;
    let k = propagation_constant(fiber, omega, big_u);
    let m = label.azimuthal_m();
    let s = if m == 0 {
        0.0
    } else {
        let (iu2, iw2) = (1.0 / (big_u * big_u), 1.0 / (big_w * big_w));
        m as f64 * (iu2 + iw2) / (j_ratio(m, big_u) + k_ratio(m, big_w))
    };
    let h = GROUP_VELOCITY_STEP * omega;
    let k_plus = k_at(fiber, label, omega + h)?;
    let k_minus = k_at(fiber, label, omega - h)?;
    Ok(DispersionPoint {
        family: label.family(),
        azimuthal_m: m,
        omega,
        n_eff: k * SPEED_OF_LIGHT / omega,
        k,
        u: big_u / a,
        w: big_w / a,
        s,
        v_g: 2.0 * h / (k_plus - k_minus),
        v,
        big_u,
        big_w,
    })
}

/// Group velocity with an explicit relative step, for convergence checks.
pub(crate) fn group_velocity_with_step(
    fiber: &FiberSpec,
    label: ModeLabel,
    omega: f64,
    relative_step: f64,
) -> Result<f64, ModeError> {
    let h = relative_step * omega;
    Ok(2.0 * h / (k_at(fiber, label, omega + h)? - k_at(fiber, label, omega - h)?))
}

impl DispersionPoint {
    /// Group velocity recomputed with a different relative step.
    pub fn group_velocity_with_step(
        &self,
        fiber: &FiberSpec,
        parity_free_label: ModeLabel,
        relative_step: f64,
    ) -> Result<f64, ModeError> {
        group_velocity_with_step(fiber, parity_free_label, self.omega, relative_step)
    }

    /// True if the point belongs to the label's family and order.
    pub fn matches(&self, label: ModeLabel) -> bool {
        self.family == label.family() && self.azimuthal_m == label.azimuthal_m()
    }
}
