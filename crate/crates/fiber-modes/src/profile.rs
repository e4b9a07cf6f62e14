//! Radial field profiles of the solved modes.
//!
//! A profile stores the φ-independent radial parts `(e_r, e_φ, e_z)` of the
//! electric field. For an even hybrid mode of azimuthal order `m` the full
//! field is `(e_r cos mφ, e_φ sin mφ, e_z cos mφ)·e^{i(kz − ωt)}`; odd modes
//! rotate the pattern by `π/(2m)`. Inside the core the profile uses
//! `J̄(r) = J_m(ur)/J_m(ua)`, outside `K̄(r) = K_m(wr)/K_m(wa)`:
//!
//! ```text
//! core:     e_r = (iβ/u²)[s m/r J̄ − u J̄'],   e_φ = (iβ/u²)[m/r J̄ − s u J̄'],   e_z = J̄
//! cladding: e_r = −(iβ/w²)[s m/r K̄ − w K̄'],  e_φ = −(iβ/w²)[m/r K̄ − s w K̄'],  e_z = K̄
//! ```
//!
//! The magnetic field follows from Faraday's law, `H = ∇×E/(i k₀)` in units
//! where the vacuum impedance is 1, so no separate H-profile coefficients
//! are needed.

use crate::error::ModeError;
use crate::fiber::{FiberSpec, SPEED_OF_LIGHT};
use crate::label::{Family, ModeLabel};
use crate::solver::DispersionPoint;
use fwm_numerics::{
    bessel_j, bessel_j_with_derivative, bessel_k_scaled, bessel_k_scaled_with_derivative,
    find_root, integrate, QuadValue, QuadratureSpec, RootSpec,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Radial integrals stop where `|K_m(wr)/K_m(wa)|` falls below this ratio.
pub const TRUNCATION_RATIO: f64 = 1e-16;

/// How a profile is scaled to unit size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Longitudinal Poynting flux `½ Re ∬ (E × H*)_z d²r = 1`.
    Poynting,
    /// Transverse field energy `∬ |E|² d²r = 1` (all three components).
    FieldEnergy,
}

/// Functional form used to build a profile from a dispersion point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileShape {
    /// The hybrid-mode expressions above. At `m = 0` they reduce to a
    /// TM-type field `(e_r, 0, e_z)`.
    Hybrid,
    /// The azimuthally polarized TE field: only `e_φ`, proportional to
    /// `J_1(ur)` in the core and `K_1(wr)` in the cladding.
    TransverseElectric,
}

/// Radial field parts at one radius plus `∂e_z/∂r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialField {
    /// `(e_r, e_φ, e_z)`.
    pub e: [Complex64; 3],
    pub dez_dr: Complex64,
    /// `m e_z / r`, finite at the origin.
    pub m_ez_over_r: Complex64,
}

/// Radial profile of one mode. Lengths in µm, wavenumbers in rad/µm.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    shape: ProfileShape,
    family: Family,
    m: u32,
    a: f64,
    u: f64,
    w: f64,
    beta: f64,
    k0: f64,
    s: f64,
    j_at_a: f64,
    j0_at_a: f64,
    k_scaled_at_a: f64,
    k0_scaled_at_a: f64,
    scale: f64,
    truncation_radius: f64,
}

/// Profile of `label` built from a point solved for the same family and
/// order. TE labels use [`ProfileShape::TransverseElectric`], all others
/// [`ProfileShape::Hybrid`].
pub fn radial_profile(
    fiber: &FiberSpec,
    point: &DispersionPoint,
    label: ModeLabel,
) -> Result<RadialProfile, ModeError> {
    if !point.matches(label) {
        return Err(ModeError::InconsistentInput(format!(
            "dispersion point is for {:?}{} but label is {label}",
            point.family, point.azimuthal_m
        )));
    }
    let shape = if label.family() == Family::TE {
        ProfileShape::TransverseElectric
    } else {
        ProfileShape::Hybrid
    };
    radial_profile_with_shape(fiber, point, shape)
}

/// Profile of an explicit shape at a solved point. The TE shape needs an
/// order-0 point.
pub fn radial_profile_with_shape(
    fiber: &FiberSpec,
    point: &DispersionPoint,
    shape: ProfileShape,
) -> Result<RadialProfile, ModeError> {
    if shape == ProfileShape::TransverseElectric && point.azimuthal_m != 0 {
        return Err(ModeError::InconsistentInput(
            "the TE shape requires azimuthal order 0".into(),
        ));
    }
    let a = fiber.core_radius();
    let v_check = (point.big_u.powi(2) + point.big_w.powi(2)).sqrt();
    if !(point.big_u > 0.0 && point.big_w > 0.0) || ((v_check - point.v) / point.v).abs() > 1e-9 {
        return Err(ModeError::InconsistentInput(
            "dispersion point violates U, W > 0 and U² + W² = V²".into(),
        ));
    }
    let m = point.azimuthal_m;
    let (u, w) = (point.big_u / a, point.big_w / a);
    let profile = RadialProfile {
        shape,
        family: point.family,
        m,
        a,
        u,
        w,
        beta: point.k * 1e-6,
        k0: point.omega / SPEED_OF_LIGHT * 1e-6,
        s: point.s,
        j_at_a: bessel_j(m, point.big_u),
        j0_at_a: bessel_j(0, point.big_u),
        k_scaled_at_a: bessel_k_scaled(m, point.big_w)?,
        k0_scaled_at_a: bessel_k_scaled(0, point.big_w)?,
        scale: 1.0,
        truncation_radius: 0.0,
    };
    let truncation_radius = profile.find_truncation_radius()?;
    Ok(RadialProfile {
        truncation_radius,
        ..profile
    })
}

/// Rescales `profile` so that its normalization integral equals 1.
pub fn normalize(
    profile: &RadialProfile,
    normalization: Normalization,
    quad: &QuadratureSpec,
) -> Result<RadialProfile, ModeError> {
    let value = profile.normalization_integral(normalization, quad)?;
    if !(value > 0.0 && value.is_finite()) {
        return Err(ModeError::DegenerateFlux { value });
    }
    Ok(profile.scaled(1.0 / value.sqrt()))
}

/// Rescales `profile` to unit longitudinal Poynting flux.
pub fn poynting_normalize(profile: &RadialProfile, quad: &QuadratureSpec) -> Result<RadialProfile, ModeError> {
    normalize(profile, Normalization::Poynting, quad)
}

/// `∫₀^∞ f(r) dr` split at the core boundary and truncated at `r_max`.
pub fn integrate_radial<T, F>(f: F, core_radius: f64, r_max: f64, quad: &QuadratureSpec) -> Result<T, ModeError>
where
    T: QuadValue + std::fmt::Debug,
    F: Fn(f64) -> T,
{
    let inner = integrate(&f, 0.0, core_radius, quad).map_err(|e| ModeError::Quadrature(e.to_string()))?;
    let outer = integrate(&f, core_radius, r_max, quad).map_err(|e| ModeError::Quadrature(e.to_string()))?;
    Ok(inner.value + outer.value)
}

impl RadialProfile {
    pub fn shape(&self) -> ProfileShape {
        self.shape
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn azimuthal_m(&self) -> u32 {
        self.m
    }

    /// Core radius, µm.
    pub fn core_radius(&self) -> f64 {
        self.a
    }

    /// Radius (µm) beyond which the cladding profile is below
    /// [`TRUNCATION_RATIO`] of its value at the core boundary.
    pub fn truncation_radius(&self) -> f64 {
        self.truncation_radius
    }

    /// Overall factor applied to the raw expressions.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Propagation constant, rad/µm.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Lateral wavenumbers `(u, w)`, rad/µm.
    pub fn lateral(&self) -> (f64, f64) {
        (self.u, self.w)
    }

    /// Same profile multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            scale: self.scale * factor,
            ..self.clone()
        }
    }

    /// `(∫cos² mφ dφ, ∫sin² mφ dφ)`: the azimuthal weights of the
    /// cos-type `(e_r, e_z)` and sin-type `e_φ` components.
    pub fn angular_weights(&self) -> (f64, f64) {
        if self.m == 0 {
            (2.0 * PI, 2.0 * PI)
        } else {
            (PI, PI)
        }
    }

    fn log_k_ratio(&self, r: f64) -> f64 {
        let k = bessel_k_scaled(self.m, self.w * r).unwrap_or(f64::NAN);
        (k / self.k_scaled_at_a).ln() - self.w * (r - self.a)
    }

    fn find_truncation_radius(&self) -> Result<f64, ModeError> {
        let target = TRUNCATION_RATIO.ln();
        let mut hi = self.a + 1.0 / self.w;
        while self.log_k_ratio(hi) > target {
            hi = self.a + 2.0 * (hi - self.a);
        }
        let spec = RootSpec::new(self.a, hi, 1e-9 * hi);
        Ok(find_root(|r| self.log_k_ratio(r) - target, spec)?)
    }

    /// Radial field at `r` (µm).
    pub fn evaluate(&self, r: f64) -> RadialField {
        let raw = match self.shape {
            ProfileShape::Hybrid => self.hybrid(r),
            ProfileShape::TransverseElectric => self.transverse_electric(r),
        };
        RadialField {
            e: raw.e.map(|c| c * self.scale),
            dez_dr: raw.dez_dr * self.scale,
            m_ez_over_r: raw.m_ez_over_r * self.scale,
        }
    }

    /// `(e_r, e_φ, e_z)` at `r` (µm).
    pub fn field(&self, r: f64) -> [Complex64; 3] {
        self.evaluate(r).e
    }

    /// Radial parts `(h_r, h_φ)` of the transverse magnetic field at `r`, in
    /// units with unit vacuum impedance. For even modes `h_r` carries
    /// `sin mφ` and `h_φ` carries `cos mφ`.
    pub fn magnetic_transverse(&self, r: f64) -> [Complex64; 2] {
        let RadialField {
            e,
            dez_dr,
            m_ez_over_r,
        } = self.evaluate(r);
        let ik0 = Complex64::new(0.0, self.k0);
        let ib = Complex64::new(0.0, self.beta);
        [(-m_ez_over_r - ib * e[1]) / ik0, (ib * e[0] - dez_dr) / ik0]
    }

    /// `½ Re ∬ (E × H*)_z d²r`.
    pub fn poynting_flux(&self, quad: &QuadratureSpec) -> Result<f64, ModeError> {
        integrate_radial(|r| self.flux_density(r), self.a, self.truncation_radius, quad)
    }

    /// Radial integrand of [`Self::poynting_flux`], including the factor `r`.
    pub fn flux_density(&self, r: f64) -> f64 {
        let e = self.field(r);
        let [h_r, h_phi] = self.magnetic_transverse(r);
        let (wc, ws) = self.angular_weights();
        0.5 * r * (wc * (e[0] * h_phi.conj()).re - ws * (e[1] * h_r.conj()).re)
    }

    /// `∬ |E|² d²r`.
    pub fn field_energy(&self, quad: &QuadratureSpec) -> Result<f64, ModeError> {
        integrate_radial(|r| self.energy_density(r), self.a, self.truncation_radius, quad)
    }

    /// Radial integrand of [`Self::field_energy`], including the factor `r`.
    pub fn energy_density(&self, r: f64) -> f64 {
        let e = self.field(r);
        let (wc, ws) = self.angular_weights();
        r * (wc * (e[0].norm_sqr() + e[2].norm_sqr()) + ws * e[1].norm_sqr())
    }

    pub fn normalization_integral(&self, normalization: Normalization, quad: &QuadratureSpec) -> Result<f64, ModeError> {
        match normalization {
            Normalization::Poynting => self.poynting_flux(quad),
            Normalization::FieldEnergy => self.field_energy(quad),
        }
    }

    /// `m J̄(r)/r`, using the small-argument limit at the origin.
    fn m_over_r(&self, r: f64, value: f64) -> f64 {
        if r > 0.0 {
            self.m as f64 * value / r
        } else if self.m == 1 {
            0.5 * self.u / self.j_at_a
        } else {
            0.0
        }
    }

    fn hybrid(&self, r: f64) -> RadialField {
        let m = self.m as f64;
        let s = self.s;
        if r <= self.a {
            let (j, jp) = bessel_j_with_derivative(self.m, self.u * r);
            let (jb, jpb) = (j / self.j_at_a, jp / self.j_at_a);
            let mj = self.m_over_r(r, jb);
            let pre = Complex64::new(0.0, self.beta / (self.u * self.u));
            RadialField {
                e: [
                    pre * (s * mj - self.u * jpb),
                    pre * (mj - s * self.u * jpb),
                    Complex64::new(jb, 0.0),
                ],
                dez_dr: Complex64::new(self.u * jpb, 0.0),
                m_ez_over_r: Complex64::new(mj, 0.0),
            }
        } else {
            let x = self.w * r;
            let (k, kp) = bessel_k_scaled_with_derivative(self.m, x).unwrap_or((f64::NAN, f64::NAN));
            let decay = (-(x - self.w * self.a)).exp() / self.k_scaled_at_a;
            let (kb, kpb) = (k * decay, kp * decay);
            let mk = m * kb / r;
            let pre = Complex64::new(0.0, -self.beta / (self.w * self.w));
            RadialField {
                e: [
                    pre * (s * mk - self.w * kpb),
                    pre * (mk - s * self.w * kpb),
                    Complex64::new(kb, 0.0),
                ],
                dez_dr: Complex64::new(self.w * kpb, 0.0),
                m_ez_over_r: Complex64::new(mk, 0.0),
            }
        }
    }

    fn transverse_electric(&self, r: f64) -> RadialField {
        let zero = Complex64::new(0.0, 0.0);
        let e_phi = if r <= self.a {
            // (iβ/u²)(−u J̄₀') with J₀' = −J₁
            Complex64::new(0.0, self.beta / self.u) * (bessel_j(1, self.u * r) / self.j0_at_a)
        } else {
            let x = self.w * r;
            let k1 = bessel_k_scaled(1, x).unwrap_or(f64::NAN);
            let decay = (-(x - self.w * self.a)).exp() / self.k0_scaled_at_a;
            // −(iβ/w²)(−w K̄₀') with K₀' = −K₁
            Complex64::new(0.0, -self.beta / self.w) * (k1 * decay)
        };
        RadialField {
            e: [zero, e_phi, zero],
            dez_dr: zero,
            m_ez_over_r: zero,
        }
    }
}
