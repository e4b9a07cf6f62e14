//! Run configuration: a strict TOML schema, validated into typed inputs.
//!
//! Every physical value must be given explicitly with its unit; only
//! numerical tolerances and output options have defaults.

use crate::units::{Dimension, Quantity};
use fwm_fiber_modes::{omega_from_wavelength, FiberSpec};
use fwm_grating::TargetPhoton;
use fwm_jsa::{DetuningGrid, EnvelopeCarrier, OutputChannel, PumpConfig, ZIntegration};
use fwm_numerics::QuadratureSpec;
use fwm_oam_basis::OamLabel;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Range;
use toml::Spanned;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub fiber: FiberSection,
    pub pump: PumpSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gratings: Vec<GratingSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub channels: Vec<ChannelSection>,
    pub grid: GridSection,
    #[serde(default)]
    pub numerics: NumericsSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSection {
    pub core_index: Spanned<f64>,
    pub cladding_index: Spanned<f64>,
    pub core_radius: Spanned<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpSection {
    /// Forward pump wavelength.
    pub lambda1: Spanned<Quantity>,
    /// Backward pump wavelength.
    pub lambda2: Spanned<Quantity>,
    pub length: Spanned<Quantity>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Photon {
    Signal,
    Idler,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GratingSection {
    pub photon: Photon,
    /// Mode the photon is generated in, e.g. `"+1+"`.
    pub from: Spanned<String>,
    /// Mode the grating converts it to, e.g. `"+3+"`.
    pub to: Spanned<String>,
    pub delta_eps0: Spanned<f64>,
    /// Wavelength of exact phase matching; defaults to the pump wavelength
    /// of the photon's direction (`lambda1` for the signal, `lambda2` for
    /// the idler).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_wavelength: Option<Spanned<Quantity>>,
    /// Explicit period; when absent the resonant period is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<Spanned<Quantity>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    pub signal: Spanned<String>,
    pub idler: Spanned<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Lower detuning `ω_s − ω₁`.
    pub min: Spanned<Quantity>,
    pub max: Spanned<Quantity>,
    pub points: Spanned<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZMethod {
    ClosedForm,
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Carrier {
    Absorbed,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JsiNormalization {
    /// Each JSI divided by its own maximum.
    SelfMax,
    /// Divided by the maximum of direct generation into the same channel.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsSection {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
    pub interpolation_nodes: usize,
    pub z_integration: ZMethod,
    pub envelope_carrier: Carrier,
    pub dominant_only: bool,
    pub jsi_normalization: JsiNormalization,
    /// Largest orbital order of the overlap and fidelity tables.
    pub max_order: u32,
    pub envelope_samples: usize,
}

impl Default for NumericsSection {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-10,
            absolute_tolerance: 1e-18,
            max_subdivisions: 4000,
            interpolation_nodes: 24,
            z_integration: ZMethod::ClosedForm,
            envelope_carrier: Carrier::Absorbed,
            dominant_only: false,
            jsi_normalization: JsiNormalization::SelfMax,
            max_order: 4,
            envelope_samples: 201,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub directory: String,
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: "out".into(),
            format: Format::Csv,
        }
    }
}

/// One problem with the configuration, located by field path and, when
/// known, by line and column.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{} (line {l}, column {c}): {}", self.path, self.message),
            _ => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

/// A grating as requested; its period is resolved against the fiber at
/// run time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingRequest {
    pub photon: TargetPhoton,
    pub from: OamLabel,
    pub to: OamLabel,
    pub delta_eps0: f64,
    pub omega_t: f64,
    /// Explicit period in metres.
    pub period: Option<f64>,
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// The parsed file, echoed into every metadata sidecar.
    pub file: ConfigFile,
    pub fiber: FiberSpec,
    pub pump: PumpConfig,
    pub gratings: Vec<GratingRequest>,
    pub channels: Vec<OutputChannel>,
    pub grid: DetuningGrid,
    pub quadrature: QuadratureSpec,
    pub z_integration: ZIntegration,
    pub envelope_carrier: EnvelopeCarrier,
}

impl RunConfig {
    /// The configuration in canonical TOML form.
    pub fn canonical(&self) -> String {
        canonical_text(&self.file)
    }

    pub fn grating(&self, photon: TargetPhoton) -> Option<&GratingRequest> {
        self.gratings.iter().find(|g| g.photon == photon)
    }
}

pub fn canonical_text(file: &ConfigFile) -> String {
    toml::to_string(file).expect("configuration always serializes")
}

struct Locator<'a> {
    text: &'a str,
    errors: Vec<ConfigError>,
}

impl Locator<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
        (line, column)
    }

    fn push(&mut self, path: &str, span: Option<Range<usize>>, message: impl Into<String>) {
        let (line, column) = match span {
            Some(s) => {
                let (l, c) = self.position(s.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        self.errors.push(ConfigError {
            path: path.into(),
            line,
            column,
            message: message.into(),
        });
    }

    fn positive(&mut self, path: &str, v: &Spanned<f64>) -> f64 {
        let x = *v.get_ref();
        if !(x > 0.0 && x.is_finite()) {
            self.push(path, Some(v.span()), format!("must be positive, got {x}"));
        }
        x
    }

    fn quantity(&mut self, path: &str, q: &Spanned<Quantity>, dimension: Dimension, positive: bool) -> f64 {
        let value = q.get_ref();
        if value.dimension() != dimension {
            let expected = match dimension {
                Dimension::Length => "a length (nm, um, mm, cm, m)",
                Dimension::AngularFrequency => "a frequency (THz, rad/s)",
            };
            self.push(path, Some(q.span()), format!("expected {expected}, got {value}"));
        } else if positive && !(value.si() > 0.0) {
            self.push(path, Some(q.span()), format!("must be positive, got {value}"));
        }
        value.si()
    }

    fn label(&mut self, path: &str, s: &Spanned<String>) -> Option<OamLabel> {
        match s.get_ref().parse::<OamLabel>() {
            Ok(l) => Some(l),
            Err(e) => {
                self.push(path, Some(s.span()), e.to_string());
                None
            }
        }
    }
}

/// Dotted path of the key on the line containing `offset`, e.g.
/// `pump.lambda1`, located by the nearest preceding table header.
fn key_path(text: &str, offset: usize) -> String {
    let offset = offset.min(text.len());
    let line_start = text[..offset].rfind('\n').map_or(0, |p| p + 1);
    let line = text[line_start..].lines().next().unwrap_or("");
    let section = text[..line_start]
        .lines()
        .rev()
        .map(str::trim)
        .find(|l| l.starts_with('['))
        .map(|l| l.trim_matches(|c| c == '[' || c == ']').trim().to_string());
    let key = line
        .split_once('=')
        .map(|(k, _)| k.trim().to_string())
        .filter(|k| !k.is_empty() && !k.starts_with('['));
    match (section, key) {
        (Some(s), Some(k)) => format!("{s}.{k}"),
        (Some(s), None) => s,
        (None, Some(k)) => k,
        (None, None) => "config".into(),
    }
}

/// Parses and validates a configuration, reporting every problem found.
pub fn validate(text: &str) -> Result<RunConfig, Vec<ConfigError>> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| {
        let mut loc = Locator { text, errors: vec![] };
        let path = e.span().map_or_else(|| "config".to_string(), |s| key_path(text, s.start));
        loc.push(&path, e.span(), e.message().to_string());
        loc.errors
    })?;
    let mut loc = Locator { text, errors: vec![] };

    let n_co = loc.positive("fiber.core_index", &file.fiber.core_index);
    let n_cl = loc.positive("fiber.cladding_index", &file.fiber.cladding_index);
    let radius = loc.quantity("fiber.core_radius", &file.fiber.core_radius, Dimension::Length, true);
    let fiber = if n_co > n_cl && n_cl > 0.0 && radius > 0.0 {
        FiberSpec::new(n_co, n_cl, radius * 1e6).ok()
    } else {
        if n_co <= n_cl && n_cl > 0.0 {
            loc.push(
                "fiber.core_index",
                Some(file.fiber.core_index.span()),
                format!("must exceed the cladding index {n_cl}"),
            );
        }
        None
    };

    let lambda1 = loc.quantity("pump.lambda1", &file.pump.lambda1, Dimension::Length, true);
    let lambda2 = loc.quantity("pump.lambda2", &file.pump.lambda2, Dimension::Length, true);
    let length = loc.quantity("pump.length", &file.pump.length, Dimension::Length, true);
    let pump = PumpConfig::new(lambda1 * 1e6, lambda2 * 1e6, length);

    let mut gratings = Vec::new();
    for (j, g) in file.gratings.iter().enumerate() {
        let path = |f: &str| format!("gratings[{j}].{f}");
        let from = loc.label(&path("from"), &g.from);
        let to = loc.label(&path("to"), &g.to);
        let delta_eps0 = loc.positive(&path("delta_eps0"), &g.delta_eps0);
        let (photon, default_lambda) = match g.photon {
            Photon::Signal => (TargetPhoton::Signal, lambda1),
            Photon::Idler => (TargetPhoton::Idler, lambda2),
        };
        let design = match &g.design_wavelength {
            Some(q) => loc.quantity(&path("design_wavelength"), q, Dimension::Length, true),
            None => default_lambda,
        };
        let period = g
            .period
            .as_ref()
            .map(|q| loc.quantity(&path("period"), q, Dimension::Length, true));
        if gratings.iter().any(|r: &GratingRequest| r.photon == photon) {
            loc.push(&path("photon"), None, "at most one grating per photon");
        }
        if let (Some(from), Some(to)) = (from, to) {
            if from == to {
                loc.push(&path("to"), Some(g.to.span()), "must differ from `from`");
            }
            gratings.push(GratingRequest {
                photon,
                from,
                to,
                delta_eps0,
                omega_t: omega_from_wavelength(design * 1e6),
                period,
            });
        }
    }

    let mut channels = Vec::new();
    for (j, c) in file.channels.iter().enumerate() {
        let signal = loc.label(&format!("channels[{j}].signal"), &c.signal);
        let idler = loc.label(&format!("channels[{j}].idler"), &c.idler);
        if let (Some(s), Some(i)) = (signal, idler) {
            channels.push(OutputChannel::new(s, i));
        }
    }

    let min = loc.quantity("grid.min", &file.grid.min, Dimension::AngularFrequency, false);
    let max = loc.quantity("grid.max", &file.grid.max, Dimension::AngularFrequency, false);
    let points = *file.grid.points.get_ref();
    let grid = if points < 2 {
        loc.push("grid.points", Some(file.grid.points.span()), format!("need at least 2 points, got {points}"));
        None
    } else if !(min < max) {
        loc.push("grid.max", Some(file.grid.max.span()), "must exceed grid.min");
        None
    } else {
        DetuningGrid::new(min, max, points as usize).ok()
    };

    let n = &file.numerics;
    let quadrature = QuadratureSpec::new(n.relative_tolerance, n.absolute_tolerance, n.max_subdivisions);
    if quadrature.validate().is_err() {
        loc.push("numerics", None, "tolerances must be positive and max_subdivisions at least 1");
    }
    if n.interpolation_nodes < 2 {
        loc.push("numerics.interpolation_nodes", None, "need at least 2 nodes");
    }
    if n.max_order == 0 {
        loc.push("numerics.max_order", None, "must be at least 1");
    }
    if n.envelope_samples < 2 {
        loc.push("numerics.envelope_samples", None, "need at least 2 samples");
    }

    if !loc.errors.is_empty() {
        return Err(loc.errors);
    }
    Ok(RunConfig {
        fiber: fiber.expect("validated above"),
        pump,
        gratings,
        channels,
        grid: grid.expect("validated above"),
        quadrature,
        z_integration: match n.z_integration {
            ZMethod::ClosedForm => ZIntegration::ClosedForm,
            ZMethod::Adaptive => ZIntegration::Adaptive(quadrature),
        },
        envelope_carrier: match n.envelope_carrier {
            Carrier::Absorbed => EnvelopeCarrier::Absorbed,
            Carrier::Explicit => EnvelopeCarrier::Explicit,
        },
        file,
    })
}
