use crate::error::OamError;
use crate::label::{hybrid_partner, OamLabel};
use fwm_fiber_modes::{
    integrate_radial, normalize, radial_profile, radial_profile_with_shape, solve_mode,
    DispersionCache, DispersionPoint, FiberSpec, ModeLabel, Normalization, Parity, ProfileShape,
    RadialProfile,
};
use fwm_numerics::QuadratureSpec;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// How the unit-charge counter-rotating modes `O_{±1}^{∓}` are built.
///
/// These modes have no stable hybrid partner; they only enter as entries of
/// overlap tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnitCounterConstruction {
    /// The hybrid-mode expressions at azimuthal order 0 (a field
    /// `(e_r, 0, e_z)` with charge 0) evaluated at the TE eigenvalue and
    /// normalized on its own. This is the form that reproduces the
    /// reference overlap tables.
    #[default]
    HybridFormula,
    /// The physical circular superposition `(TM ∓ i·TE)/√2` of separately
    /// normalized TM and TE modes, each at its own eigenvalue.
    TeTmSuperposition,
}

/// One single-charge term of a vector profile: the radial field of
/// `sources[source]`, multiplied component-wise by `weights`, times
/// `e^{i·charge·φ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub charge: i32,
    pub source: usize,
    pub weights: [Complex64; 3],
}

/// Complex vector field `E(r, φ)` in cylindrical components, as a sum of
/// single-charge harmonics.
#[derive(Debug, Clone)]
pub struct VectorModeProfile {
    label: Option<OamLabel>,
    omega: f64,
    sources: Vec<RadialProfile>,
    harmonics: Vec<Harmonic>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn solve(
    fiber: &FiberSpec,
    label: ModeLabel,
    omega: f64,
    cache: Option<&DispersionCache>,
) -> Result<DispersionPoint, OamError> {
    Ok(match cache {
        Some(cache) => cache.get_or_solve(fiber, label, omega)?,
        None => solve_mode(fiber, label, omega)?,
    })
}

fn normalized_source(
    fiber: &FiberSpec,
    label: ModeLabel,
    shape: Option<ProfileShape>,
    omega: f64,
    normalization: Normalization,
    quad: &QuadratureSpec,
    cache: Option<&DispersionCache>,
) -> Result<RadialProfile, OamError> {
    let point = solve(fiber, label, omega, cache)?;
    let raw = match shape {
        Some(shape) => radial_profile_with_shape(fiber, &point, shape)?,
        None => radial_profile(fiber, &point, label)?,
    };
    Ok(normalize(&raw, normalization, quad)?)
}

/// Normalized vector profile of the OAM mode `label` at `omega`, using the
/// default construction for `O_{±1}^{∓}`.
pub fn oam_profile(
    fiber: &FiberSpec,
    label: OamLabel,
    omega: f64,
    normalization: Normalization,
    quad: &QuadratureSpec,
) -> Result<VectorModeProfile, OamError> {
    oam_profile_with(fiber, label, omega, normalization, quad, UnitCounterConstruction::default(), None)
}

/// [`oam_profile`] with an explicit unit-counter construction and an
/// optional shared dispersion cache.
pub fn oam_profile_with(
    fiber: &FiberSpec,
    label: OamLabel,
    omega: f64,
    normalization: Normalization,
    quad: &QuadratureSpec,
    construction: UnitCounterConstruction,
    cache: Option<&DispersionCache>,
) -> Result<VectorModeProfile, OamError> {
    let hand = label.handedness() as f64;
    if !label.is_unit_counter() {
        let partner = hybrid_partner(label)?;
        let source = normalized_source(fiber, partner, None, omega, normalization, quad, cache)?;
        let w = FRAC_1_SQRT_2;
        return Ok(VectorModeProfile {
            label: Some(label),
            omega,
            sources: vec![source],
            harmonics: vec![Harmonic {
                charge: label.total_charge(),
                source: 0,
                weights: [c(w, 0.0), c(0.0, -hand * w), c(w, 0.0)],
            }],
        });
    }
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    match construction {
        UnitCounterConstruction::HybridFormula => {
            let source = normalized_source(
                fiber,
                ModeLabel::te(),
                Some(ProfileShape::Hybrid),
                omega,
                normalization,
                quad,
                cache,
            )?;
            Ok(VectorModeProfile {
                label: Some(label),
                omega,
                sources: vec![source],
                harmonics: vec![Harmonic {
                    charge: 0,
                    source: 0,
                    weights: [one, zero, one],
                }],
            })
        }
        UnitCounterConstruction::TeTmSuperposition => {
            let tm = normalized_source(fiber, ModeLabel::tm(), None, omega, normalization, quad, cache)?;
            let te = normalized_source(fiber, ModeLabel::te(), None, omega, normalization, quad, cache)?;
            let w = FRAC_1_SQRT_2;
            Ok(VectorModeProfile {
                label: Some(label),
                omega,
                sources: vec![tm, te],
                harmonics: vec![
                    Harmonic {
                        charge: 0,
                        source: 0,
                        weights: [c(w, 0.0), zero, c(w, 0.0)],
                    },
                    Harmonic {
                        charge: 0,
                        source: 1,
                        weights: [zero, c(0.0, -hand * w), zero],
                    },
                ],
            })
        }
    }
}

/// Normalized vector profile of an even or odd hybrid mode.
///
/// Even: `(e_r cos mφ, e_φ sin mφ, e_z cos mφ)`; odd:
/// `(e_r sin mφ, −e_φ cos mφ, e_z sin mφ)`; order 0 has no angular
/// dependence.
pub fn hybrid_vector_profile(
    fiber: &FiberSpec,
    label: ModeLabel,
    omega: f64,
    normalization: Normalization,
    quad: &QuadratureSpec,
    cache: Option<&DispersionCache>,
) -> Result<VectorModeProfile, OamError> {
    let source = normalized_source(fiber, label, None, omega, normalization, quad, cache)?;
    let m = label.azimuthal_m() as i32;
    let harmonics = if m == 0 {
        let one = c(1.0, 0.0);
        vec![Harmonic {
            charge: 0,
            source: 0,
            weights: [one, one, one],
        }]
    } else {
        // cos mφ = (e⁺ + e⁻)/2,  sin mφ = (e⁺ − e⁻)/(2i)
        let (cos_p, cos_m) = (c(0.5, 0.0), c(0.5, 0.0));
        let (sin_p, sin_m) = (c(0.0, -0.5), c(0.0, 0.5));
        let (plus, minus) = match label.parity() {
            Parity::Even => ([cos_p, sin_p, cos_p], [cos_m, sin_m, cos_m]),
            Parity::Odd => ([sin_p, -cos_p, sin_p], [sin_m, -cos_m, sin_m]),
        };
        vec![
            Harmonic {
                charge: m,
                source: 0,
                weights: plus,
            },
            Harmonic {
                charge: -m,
                source: 0,
                weights: minus,
            },
        ]
    };
    Ok(VectorModeProfile {
        label: None,
        omega,
        sources: vec![source],
        harmonics,
    })
}

impl VectorModeProfile {
    /// Builds a profile from explicit sources and harmonics.
    pub fn from_parts(
        label: Option<OamLabel>,
        omega: f64,
        sources: Vec<RadialProfile>,
        harmonics: Vec<Harmonic>,
    ) -> Result<Self, OamError> {
        if sources.is_empty() || harmonics.iter().any(|h| h.source >= sources.len()) {
            return Err(OamError::InvalidLabel("harmonic refers to a missing source".into()));
        }
        Ok(Self {
            label,
            omega,
            sources,
            harmonics,
        })
    }

    pub fn label(&self) -> Option<OamLabel> {
        self.label
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn sources(&self) -> &[RadialProfile] {
        &self.sources
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    /// Distinct azimuthal charges present, in first-appearance order.
    pub fn charges(&self) -> Vec<i32> {
        let mut out = Vec::new();
        for h in &self.harmonics {
            if !out.contains(&h.charge) {
                out.push(h.charge);
            }
        }
        out
    }

    /// The single azimuthal phase charge of a pure vortex, if there is one.
    pub fn azimuthal_phase_charge(&self) -> Option<i32> {
        match self.charges().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    /// Radial vector multiplying `e^{i·charge·φ}` at radius `r` (µm).
    pub fn radial_for_charge(&self, charge: i32, r: f64) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for h in self.harmonics.iter().filter(|h| h.charge == charge) {
            let e = self.sources[h.source].field(r);
            for k in 0..3 {
                out[k] += h.weights[k] * e[k];
            }
        }
        out
    }

    /// Full field `(E_r, E_φ, E_z)` at `(r, φ)`.
    pub fn evaluate(&self, r: f64, phi: f64) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for charge in self.charges() {
            let phase = Complex64::from_polar(1.0, charge as f64 * phi);
            let v = self.radial_for_charge(charge, r);
            for k in 0..3 {
                out[k] += v[k] * phase;
            }
        }
        out
    }

    /// Core radius (µm) shared by all sources.
    pub fn core_radius(&self) -> f64 {
        self.sources[0].core_radius()
    }

    /// Largest truncation radius of the sources (µm).
    pub fn truncation_radius(&self) -> f64 {
        self.sources.iter().map(|s| s.truncation_radius()).fold(0.0, f64::max)
    }
}

/// `|∬ d²r Σ_μ a_μ* b_μ|`, with the azimuthal integral done analytically
/// (`2π` for equal charges, zero otherwise).
pub fn orthogonality_check(a: &VectorModeProfile, b: &VectorModeProfile, quad: &QuadratureSpec) -> Result<f64, OamError> {
    let pairs: Vec<i32> = a.charges().into_iter().filter(|q| b.charges().contains(q)).collect();
    if pairs.is_empty() {
        return Ok(0.0);
    }
    let r_max = a.truncation_radius().max(b.truncation_radius());
    let value: Complex64 = integrate_radial(
        |r| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &q in &pairs {
                let (x, y) = (a.radial_for_charge(q, r), b.radial_for_charge(q, r));
                for k in 0..3 {
                    acc += x[k].conj() * y[k];
                }
            }
            acc * (2.0 * PI * r)
        },
        a.core_radius(),
        r_max,
        quad,
    )?;
    Ok(value.norm())
}
