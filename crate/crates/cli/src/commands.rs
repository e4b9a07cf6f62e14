//! The subcommands. Each one computes a set of tables from a validated
//! configuration and hands them to the [`Writer`].

use crate::config::{JsiNormalization, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table, Writer};
use crate::units::{Dimension, Quantity};
use clap::{Subcommand, ValueEnum};
use fwm_coupled_modes::{envelopes, EnvelopeFamily};
use fwm_grating::{coupling_constant, resonant_period, GratingSpec, Resonance, TargetPhoton};
use fwm_jsa::{bell_fidelity, count_peaks, GratingPair, JsaEngine, JsaGrid, JsaOptions, OutputChannel};
use fwm_oam_basis::{hybrid_partner, OamLabel, Sam};
use fwm_overlap::{overlap_table, Frequencies, OverlapFamily, OverlapSetup};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhotonArg {
    Signal,
    Idler,
}

impl PhotonArg {
    fn target(self) -> TargetPhoton {
        match self {
            Self::Signal => TargetPhoton::Signal,
            Self::Idler => TargetPhoton::Idler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExitMode {
    /// The photon leaves in the mode it was generated in.
    Low,
    /// The photon leaves in the mode the grating converts it to.
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFrequencies {
    /// All fields at the common tabulation wavelength.
    Tabulation,
    /// Signal at the forward pump frequency, idler at the backward one.
    Pumps,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Check the configuration and print it in canonical form.
    Validate,
    /// Dispersion of every mode referenced by the configuration over the
    /// detuning grid, and optionally an intensity/phase map of one mode.
    Modes {
        /// OAM mode to map on an (r, φ) grid at the forward pump frequency.
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 121)]
        radial_points: usize,
        #[arg(long, default_value_t = 72)]
        angular_points: usize,
    },
    /// The eight overlap-integral families up to the configured order.
    OverlapTables {
        #[arg(long, value_enum, default_value_t = TableFrequencies::Tabulation)]
        frequencies: TableFrequencies,
    },
    /// |κ| against the grating charge for one input mode.
    CouplingMap {
        #[arg(long, default_value = "+1+")]
        from: String,
        #[arg(long, value_enum, default_value_t = PhotonArg::Signal)]
        photon: PhotonArg,
        #[arg(long, default_value_t = 12)]
        max_charge: i32,
        /// Perturbation strength; defaults to that of the configured grating.
        #[arg(long)]
        delta_eps0: Option<f64>,
    },
    /// Coupled-mode envelopes along the fiber for the first channel.
    Envelopes {
        #[arg(long, value_enum, default_value_t = PhotonArg::Signal)]
        photon: PhotonArg,
        #[arg(long, value_enum, default_value_t = ExitMode::High)]
        exit: ExitMode,
        /// Signal detuning, with unit (e.g. "0.5 THz").
        #[arg(long, default_value = "0 THz")]
        detuning: String,
    },
    /// Joint spectral amplitude and intensity of every channel.
    Jsi,
    /// Pair count with the gratings relative to direct generation.
    PairRatio,
    /// Bell-state fidelity table.
    Fidelity,
    /// Predicted and observed lobe positions of the converted spectrum.
    Peaks,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Validate => "validate",
            Self::Modes { .. } => "modes",
            Self::OverlapTables { .. } => "overlap-tables",
            Self::CouplingMap { .. } => "coupling-map",
            Self::Envelopes { .. } => "envelopes",
            Self::Jsi => "jsi",
            Self::PairRatio => "pair-ratio",
            Self::Fidelity => "fidelity",
            Self::Peaks => "peaks",
        }
    }
}

/// Builds the engine for `config`.
pub fn engine(config: &RunConfig) -> JsaEngine {
    let options = JsaOptions {
        interpolation_nodes: config.file.numerics.interpolation_nodes,
        z_integration: config.z_integration,
        envelope_carrier: config.envelope_carrier,
        ..JsaOptions::default()
    };
    JsaEngine::new(config.fiber, config.pump, options)
}

/// Resolves the configured gratings against the engine's mode bank.
pub fn gratings(config: &RunConfig, engine: &JsaEngine) -> Result<GratingPair, CliError> {
    let bank = &engine.setup().bank;
    let resolve = |photon: TargetPhoton| -> Result<Option<GratingSpec>, CliError> {
        let Some(r) = config.grating(photon) else {
            return Ok(None);
        };
        let spec = match r.period {
            None => GratingSpec::resonant(bank, r.from, r.to, r.omega_t, r.delta_eps0, r.photon)?,
            Some(period) => {
                let sign = resonant_period(bank, r.from, r.to, r.omega_t)?.signum();
                let resonance = Resonance {
                    from: r.from,
                    to: r.to,
                    omega_t: r.omega_t,
                };
                let charge = r.to.total_charge() - r.from.total_charge();
                GratingSpec::new(charge, period, r.delta_eps0, r.photon, resonance, sign)?
            }
        };
        Ok(Some(spec))
    };
    Ok(GratingPair {
        signal: resolve(TargetPhoton::Signal)?,
        idler: resolve(TargetPhoton::Idler)?,
    })
}

fn require_channels(config: &RunConfig) -> Result<&[OutputChannel], CliError> {
    if config.channels.is_empty() {
        return Err(CliError::argument("channels", "this command needs at least one channel"));
    }
    Ok(&config.channels)
}

fn label_arg(argument: &str, text: &str) -> Result<OamLabel, CliError> {
    text.parse().map_err(|e| CliError::argument(argument, e))
}

fn c(x: f64) -> Cell {
    Cell::Num(x)
}

fn grating_summary(g: &Option<GratingSpec>) -> Value {
    match g {
        None => Value::Null,
        Some(g) => json!({
            "topological_charge": g.topological_charge,
            "period_m": g.period,
            "wavevector_per_m": g.wavevector(),
            "delta_eps0": g.delta_eps0,
            "from": g.resonance.from.to_string(),
            "to": g.resonance.to.to_string(),
            "design_omega_rad_per_s": g.resonance.omega_t,
        }),
    }
}

/// Runs `command`, writing its tables through `writer`. Returns a summary
/// of the results for the terminal.
pub fn execute(command: &Command, config: &RunConfig, writer: &mut Writer) -> Result<Value, CliError> {
    match command {
        Command::Validate => Ok(json!({ "canonical": config.canonical() })),
        Command::Modes {
            map,
            radial_points,
            angular_points,
        } => modes(config, writer, map.as_deref(), *radial_points, *angular_points),
        Command::OverlapTables { frequencies } => overlap_tables(config, writer, *frequencies),
        Command::CouplingMap {
            from,
            photon,
            max_charge,
            delta_eps0,
        } => coupling_map(config, writer, from, *photon, *max_charge, *delta_eps0),
        Command::Envelopes { photon, exit, detuning } => envelope_traces(config, writer, *photon, *exit, detuning),
        Command::Jsi => jsi(config, writer),
        Command::PairRatio => pair_ratio(config, writer),
        Command::Fidelity => fidelity(config, writer),
        Command::Peaks => peaks(config, writer),
    }
}

fn modes(
    config: &RunConfig,
    writer: &mut Writer,
    map: Option<&str>,
    radial_points: usize,
    angular_points: usize,
) -> Result<Value, CliError> {
    let engine = engine(config);
    let bank = &engine.setup().bank;
    let mut labels: Vec<(PhotonArg, OamLabel)> = Vec::new();
    let mut add = |photon, label| {
        if !labels.contains(&(photon, label)) {
            labels.push((photon, label));
        }
    };
    for ch in &config.channels {
        add(PhotonArg::Signal, ch.signal);
        add(PhotonArg::Idler, ch.idler);
    }
    for g in &config.gratings {
        let photon = match g.photon {
            TargetPhoton::Signal => PhotonArg::Signal,
            TargetPhoton::Idler => PhotonArg::Idler,
        };
        add(photon, g.from);
        add(photon, g.to);
    }
    let (w1, w2) = (config.pump.omega1(), config.pump.omega2());
    let detunings = config.grid.values();
    let tasks: Vec<(PhotonArg, OamLabel, f64)> = labels
        .iter()
        .flat_map(|&(p, l)| detunings.iter().map(move |&dw| (p, l, dw)))
        .collect();
    let rows = tasks
        .par_iter()
        .map(|&(photon, label, dw)| -> Result<Vec<Cell>, CliError> {
            let omega = match photon {
                PhotonArg::Signal => w1 + dw,
                PhotonArg::Idler => w2 - dw,
            };
            let hybrid = hybrid_partner(label)?;
            let p = bank.dispersion().get_or_solve(bank.fiber(), hybrid, omega)?;
            Ok(vec![
                format!("{photon:?}").to_lowercase().into(),
                label.to_string().into(),
                hybrid.to_string().into(),
                c(dw),
                c(omega),
                c(p.n_eff),
                c(p.k),
                c(p.u),
                c(p.w),
                c(p.s),
                c(p.v_g),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(
        "dispersion",
        &[
            "photon", "label", "hybrid", "detuning_rad_per_s", "omega_rad_per_s", "n_eff", "k_per_m", "u_per_m",
            "w_per_m", "s", "v_g_m_per_s",
        ],
    );
    rows.into_iter().for_each(|r| table.push(r));
    writer.write(&table, json!({}))?;

    let mut summary = json!({
        "modes": labels.iter().map(|(p, l)| format!("{p:?} {l}")).collect::<Vec<_>>(),
        "v_parameter_forward_pump": config.fiber.v_at_omega(w1),
        "v_parameter_backward_pump": config.fiber.v_at_omega(w2),
    });
    if let Some(text) = map {
        let label = label_arg("--map", text)?;
        if radial_points < 2 || angular_points < 1 {
            return Err(CliError::argument("--radial-points", "need at least 2 radial and 1 angular point"));
        }
        let profile = bank.oam(label, w1)?;
        let r_max = 1.5 * profile.core_radius();
        let mut map = Table::new(
            "mode_map",
            &["r_um", "phi_rad", "intensity", "phase_r", "phase_phi", "phase_z"],
        );
        for i in 0..radial_points {
            let r = r_max * i as f64 / (radial_points - 1) as f64;
            for j in 0..angular_points {
                let phi = 2.0 * PI * j as f64 / angular_points as f64;
                let e = profile.evaluate(r, phi);
                let intensity: f64 = e.iter().map(|x| x.norm_sqr()).sum();
                map.push(vec![c(r), c(phi), c(intensity), c(e[0].arg()), c(e[1].arg()), c(e[2].arg())]);
            }
        }
        writer.write(&map, json!({ "label": label.to_string(), "omega_rad_per_s": w1 }))?;
        summary["map"] = json!(label.to_string());
    }
    Ok(summary)
}

fn overlap_tables(config: &RunConfig, writer: &mut Writer, frequencies: TableFrequencies) -> Result<Value, CliError> {
    let (setup, freqs) = match frequencies {
        TableFrequencies::Tabulation => OverlapSetup::tabulation(config.fiber),
        TableFrequencies::Pumps => {
            let (setup, _) = OverlapSetup::tabulation(config.fiber);
            (setup, Frequencies::degenerate_with_pumps(config.pump.omega1(), config.pump.omega2()))
        }
    };
    let max_m = config.file.numerics.max_order;
    let mut summary = Vec::new();
    for family in OverlapFamily::all() {
        let t = overlap_table(family, max_m, &freqs, &setup)?;
        let mut table = Table::new(
            format!("overlap_{}", family.tag()),
            &["m_s", "m_i", "signal", "idler", "re", "im", "abs"],
        );
        for m_s in 1..=max_m {
            for m_i in 1..=max_m {
                let (s, i) = family.labels(m_s, m_i)?;
                let v = t.get(m_s, m_i);
                table.push(vec![
                    Cell::Int(m_s.into()),
                    Cell::Int(m_i.into()),
                    s.to_string().into(),
                    i.to_string().into(),
                    c(v.re),
                    c(v.im),
                    c(v.norm()),
                ]);
            }
        }
        let diagonal: Vec<f64> = (1..=max_m).map(|m| t.get(m, m).re).collect();
        let extra = json!({
            "family": family.to_string(),
            "nonzero": t.nonzero_count(),
            "diagonal_re": diagonal,
            "frequencies_rad_per_s": {
                "signal": freqs.signal, "idler": freqs.idler, "pump1": freqs.pump1, "pump2": freqs.pump2,
            },
            "output_scale": setup.output_scale,
            "normalization": format!("{:?}", setup.bank.normalization()),
        });
        writer.write(&table, extra.clone())?;
        summary.push(extra);
    }
    Ok(json!({ "families": summary }))
}

fn coupling_map(
    config: &RunConfig,
    writer: &mut Writer,
    from: &str,
    photon: PhotonArg,
    max_charge: i32,
    delta_eps0: Option<f64>,
) -> Result<Value, CliError> {
    let from = label_arg("--from", from)?;
    let target = photon.target();
    let delta_eps0 = match delta_eps0 {
        Some(x) if x > 0.0 && x.is_finite() => x,
        Some(x) => return Err(CliError::argument("--delta-eps0", format!("must be positive, got {x}"))),
        None => config
            .grating(target)
            .or(config.gratings.first())
            .map(|g| g.delta_eps0)
            .ok_or_else(|| CliError::argument("--delta-eps0", "no grating configured; give the perturbation explicitly"))?,
    };
    if max_charge < 1 {
        return Err(CliError::argument("--max-charge", "must be at least 1"));
    }
    let engine = engine(config);
    let bank = &engine.setup().bank;
    let omega = match photon {
        PhotonArg::Signal => config.pump.omega1(),
        PhotonArg::Idler => config.pump.omega2(),
    };
    let mut candidates = Vec::new();
    for m_g in -max_charge..=max_charge {
        for sam in [Sam::Plus, Sam::Minus] {
            let charge = from.oam_charge() + m_g + from.sam().sign() - sam.sign();
            if let Ok(to) = OamLabel::new(charge, sam) {
                if to != from {
                    candidates.push((m_g, to));
                }
            }
        }
    }
    let results: Vec<_> = candidates
        .par_iter()
        .map(|&(m_g, to)| {
            let resonance = Resonance { from, to, omega_t: omega };
            let grating = GratingSpec::new(m_g, 1.0, delta_eps0, target, resonance, 1.0)?;
            let kappa = coupling_constant(bank, &grating, from, to, omega, engine.options().kappa_prefactor);
            Ok::<_, CliError>((m_g, to, kappa))
        })
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(
        "coupling_map",
        &["m_g", "from", "to", "spin_flip", "kappa_re_per_m", "kappa_im_per_m", "kappa_abs_per_m"],
    );
    let mut unguided = Vec::new();
    for (m_g, to, kappa) in results {
        match kappa {
            Ok(k) => table.push(vec![
                Cell::Int(m_g.into()),
                from.to_string().into(),
                to.to_string().into(),
                Cell::Int((to.sam() != from.sam()).into()),
                c(k.re),
                c(k.im),
                c(k.norm()),
            ]),
            Err(_) => unguided.push(to.to_string()),
        }
    }
    let extra = json!({ "from": from.to_string(), "omega_rad_per_s": omega, "delta_eps0": delta_eps0, "not_guided": unguided });
    writer.write(&table, extra.clone())?;
    Ok(extra)
}

fn envelope_traces(
    config: &RunConfig,
    writer: &mut Writer,
    photon: PhotonArg,
    exit: ExitMode,
    detuning: &str,
) -> Result<Value, CliError> {
    let q: Quantity = detuning.parse().map_err(|e| CliError::argument("--detuning", e))?;
    if q.dimension() != Dimension::AngularFrequency {
        return Err(CliError::argument("--detuning", format!("expected a frequency, got {q}")));
    }
    let dw = q.si();
    let (lo, hi) = (config.grid.min, config.grid.max);
    if !(lo..=hi).contains(&dw) {
        return Err(CliError::argument("--detuning", "must lie inside the configured grid"));
    }
    let channel = require_channels(config)?[0];
    let engine = engine(config);
    let pair = gratings(config, &engine)?;
    let model = engine.model(channel, &pair, (lo, hi))?;
    let (signal, idler) = engine.envelope_params(&model, dw)?;
    let params = match photon {
        PhotonArg::Signal => signal,
        PhotonArg::Idler => idler,
    }
    .ok_or_else(|| CliError::argument("--photon", "no grating acts on this photon"))?;
    let family = match (photon, exit) {
        (PhotonArg::Signal, ExitMode::Low) => EnvelopeFamily::SignalOutM,
        (PhotonArg::Signal, ExitMode::High) => EnvelopeFamily::SignalOutMp,
        (PhotonArg::Idler, ExitMode::Low) => EnvelopeFamily::IdlerOutM,
        (PhotonArg::Idler, ExitMode::High) => EnvelopeFamily::IdlerOutMp,
    };
    let solution = envelopes(params, family);
    let n = config.file.numerics.envelope_samples;
    let mut table = Table::new(
        "envelopes",
        &["z_m", "low_re", "low_im", "high_re", "high_im", "norm_sq"],
    );
    let mut worst = 0.0f64;
    for j in 0..n {
        let z = params.length * j as f64 / (n - 1) as f64;
        let (a, b) = solution.at(z);
        let norm = a.norm_sqr() + b.norm_sqr();
        worst = worst.max((norm - 1.0).abs());
        table.push(vec![c(z), c(a.re), c(a.im), c(b.re), c(b.im), c(norm)]);
    }
    let extra = json!({
        "family": format!("{family:?}"),
        "detuning_rad_per_s": dw,
        "kappa_re_per_m": params.kappa.re,
        "kappa_im_per_m": params.kappa.im,
        "delta_rad_per_s": params.delta,
        "d_per_m": params.d,
        "gamma_per_m": params.gamma,
        "max_unitarity_deviation": worst,
    });
    writer.write(&table, extra.clone())?;
    Ok(extra)
}

fn jsi_table(name: String, jsa: &JsaGrid, normalized: &[f64]) -> Table {
    let mut columns = vec![
        "detuning_rad_per_s".to_string(),
        "omega_s_rad_per_s".into(),
        "omega_i_rad_per_s".into(),
        "re".into(),
        "im".into(),
        "intensity".into(),
        "normalized_intensity".into(),
    ];
    for label in &jsa.term_labels {
        columns.push(format!("term {label} re"));
        columns.push(format!("term {label} im"));
    }
    let mut table = Table {
        name,
        columns,
        rows: Vec::new(),
    };
    for j in 0..jsa.detuning.len() {
        let a = jsa.amplitude[j];
        let mut row = vec![
            c(jsa.detuning[j]),
            c(jsa.omega_s[j]),
            c(jsa.omega_i[j]),
            c(a.re),
            c(a.im),
            c(a.norm_sqr()),
            c(normalized[j]),
        ];
        for t in &jsa.terms[j] {
            row.push(c(t.re));
            row.push(c(t.im));
        }
        table.push(row);
    }
    table
}

fn jsi(config: &RunConfig, writer: &mut Writer) -> Result<Value, CliError> {
    let channels = require_channels(config)?;
    let engine = engine(config);
    let pair = gratings(config, &engine)?;
    let dominant_only = config.file.numerics.dominant_only;
    let mut summary = Vec::new();
    for (j, &channel) in channels.iter().enumerate() {
        let mut jsa = engine.jsa(channel, &pair, &config.grid, dominant_only)?;
        let (reference, description) = match config.file.numerics.jsi_normalization {
            JsiNormalization::SelfMax => (jsa.max_intensity(), "own maximum"),
            JsiNormalization::Direct => (
                engine.jsa_no_grating(channel, &config.grid)?.max_intensity(),
                "maximum of direct generation",
            ),
        };
        if !(reference > 0.0) {
            return Err(CliError::Compute {
                module: "jsa",
                message: format!("normalization reference of {channel} vanishes"),
            });
        }
        let normalized = jsa.normalized_intensity(reference, description);
        let table = jsi_table(format!("jsi_{j}"), &jsa, &normalized);
        let extra = json!({
            "channel": channel.to_string(),
            "normalization": jsa.normalization_reference,
            "max_normalized_intensity": normalized.iter().cloned().fold(0.0, f64::max),
            "argmax_rad_per_s": jsa.argmax(),
            "integrated_intensity": jsa.integrated_intensity(),
            "peaks_above_tenth": count_peaks(&normalized, 0.1),
            "signal_grating": grating_summary(&pair.signal),
            "idler_grating": grating_summary(&pair.idler),
        });
        writer.write(&table, extra.clone())?;
        summary.push(extra);
    }
    Ok(json!({ "channels": summary }))
}

fn pair_ratio(config: &RunConfig, writer: &mut Writer) -> Result<Value, CliError> {
    let channels = require_channels(config)?;
    let engine = engine(config);
    let pair = gratings(config, &engine)?;
    let dominant_only = config.file.numerics.dominant_only;
    let mut table = Table::new(
        "pair_ratio",
        &[
            "channel",
            "ratio",
            "with_gratings",
            "without_gratings",
            "grid_min_rad_per_s",
            "grid_max_rad_per_s",
            "grid_points",
            "widenings",
            "tail_ratio",
        ],
    );
    let mut ratios = Vec::new();
    for &channel in channels {
        let r = engine.pair_ratio(channel, &pair, &config.grid, dominant_only)?;
        table.push(vec![
            channel.to_string().into(),
            c(r.ratio),
            c(r.with_gratings),
            c(r.without_gratings),
            c(r.grid.min),
            c(r.grid.max),
            Cell::Int(r.grid.points as i64),
            Cell::Int(r.widenings as i64),
            c(r.tail_ratio),
        ]);
        ratios.push(json!({ "channel": channel.to_string(), "ratio": r.ratio }));
    }
    let extra = json!({
        "ratios": ratios,
        "signal_grating": grating_summary(&pair.signal),
        "idler_grating": grating_summary(&pair.idler),
    });
    writer.write(&table, extra.clone())?;
    Ok(extra)
}

fn fidelity(config: &RunConfig, writer: &mut Writer) -> Result<Value, CliError> {
    let (setup, freqs) = OverlapSetup::tabulation(config.fiber);
    let max_m = config.file.numerics.max_order as i32;
    let cells: Vec<(i32, i32)> = (1..=max_m).flat_map(|s| (1..=max_m).map(move |i| (s, i))).collect();
    let values = cells
        .par_iter()
        .map(|&(m_s, m_i)| bell_fidelity(&setup, freqs, m_s, m_i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(
        "fidelity",
        &["m_s", "m_i", "fidelity", "co_re", "co_im", "counter_re", "counter_im"],
    );
    for (&(m_s, m_i), (f, o)) in cells.iter().zip(&values) {
        table.push(vec![
            Cell::Int(m_s.into()),
            Cell::Int(m_i.into()),
            c(*f),
            c(o.co.re),
            c(o.co.im),
            c(o.counter.re),
            c(o.counter.im),
        ]);
    }
    let diagonal: Vec<f64> = cells
        .iter()
        .zip(&values)
        .filter(|((s, i), _)| s == i)
        .map(|(_, (f, _))| *f)
        .collect();
    let extra = json!({ "diagonal": diagonal });
    writer.write(&table, extra.clone())?;
    Ok(extra)
}

/// Indices of local maxima of `y` above `threshold`.
fn local_maxima(y: &[f64], threshold: f64) -> Vec<usize> {
    (1..y.len().saturating_sub(1))
        .filter(|&j| y[j] > threshold && y[j] >= y[j - 1] && y[j] > y[j + 1])
        .collect()
}

fn peaks(config: &RunConfig, writer: &mut Writer) -> Result<Value, CliError> {
    let engine = engine(config);
    let pair = gratings(config, &engine)?;
    let (Some(gs), Some(gi)) = (pair.signal, pair.idler) else {
        return Err(CliError::argument("gratings", "lobe positions need a grating on each photon"));
    };
    let window = (config.grid.min, config.grid.max);
    let predicted = engine.peak_positions(&pair, window)?;
    let channel = OutputChannel::new(gs.resonance.to, gi.resonance.to);
    let jsa = engine.jsa(channel, &pair, &config.grid, config.file.numerics.dominant_only)?;
    let intensity = jsa.intensity();
    let max = jsa.max_intensity();
    let observed: Vec<f64> = local_maxima(&intensity, 0.1 * max)
        .into_iter()
        .map(|j| jsa.detuning[j])
        .collect();
    let mut table = Table::new(
        "peaks",
        &["signal_sign", "idler_sign", "predicted_rad_per_s", "nearest_observed_rad_per_s", "difference_in_cells"],
    );
    let spacing = config.grid.spacing();
    for p in &predicted {
        let nearest = p.detuning.and_then(|x| {
            observed
                .iter()
                .cloned()
                .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
        });
        let diff = match (p.detuning, nearest) {
            (Some(x), Some(y)) => (y - x).abs() / spacing,
            _ => f64::NAN,
        };
        table.push(vec![
            Cell::Int(p.signs.signal.into()),
            Cell::Int(p.signs.idler.into()),
            c(p.detuning.unwrap_or(f64::NAN)),
            c(nearest.unwrap_or(f64::NAN)),
            c(diff),
        ]);
    }
    let extra = json!({
        "channel": channel.to_string(),
        "observed_peaks": observed,
        "peak_count": count_peaks(&intensity, 0.1),
        "signal_grating": grating_summary(&pair.signal),
        "idler_grating": grating_summary(&pair.idler),
    });
    writer.write(&table, extra.clone())?;
    Ok(extra)
}
