//! Subcommand dispatch.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use irs_squint::scan::{far_profiles, near_profiles};
use irs_squint::{
    angle_sweep, far_squint_direction, fraunhofer_distance, location_heatmap, near_dam_design,
    squint_metrics, subcarrier_sweep_far, subcarrier_sweep_near, DelayProfile, Design, GainMap,
    LinearGrid, LocationGrid, Subcarrier,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::output::{Artifact, OutputAxis, Values};
use crate::scenario::{load_scenario, Format, Regime, Scenario, ScenarioError, SweepAxis};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPATIBLE: i32 = 2;
pub const EXIT_IO: i32 = 3;

const DEFAULT_NU_RANGE: [f64; 2] = [-1.0, 1.0];
const DEFAULT_NU_STEP: f64 = 1e-3;
const DEFAULT_HALF_SPAN: f64 = 0.5;
const DEFAULT_LOCATION_STEP: f64 = 0.005;
/// Peaks are reported within this distance of `nu0`: the gain repeats with a
/// period of about 1 in `nu`, so a wide grid also holds grating replicas.
const MAIN_LOBE_HALF_WIDTH: f64 = 0.4;
const DEFAULT_SUBCARRIERS: [Subcarrier; 3] =
    [Subcarrier::First, Subcarrier::Carrier, Subcarrier::Last];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Design,
    FarAngleSweep,
    FarSubcarrierSweep,
    NearSubcarrierSweep,
    NearHeatmap,
    Metrics,
    Fraunhofer,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Design => "design",
            Command::FarAngleSweep => "far-angle-sweep",
            Command::FarSubcarrierSweep => "far-subcarrier-sweep",
            Command::NearSubcarrierSweep => "near-subcarrier-sweep",
            Command::NearHeatmap => "near-heatmap",
            Command::Metrics => "metrics",
            Command::Fraunhofer => "fraunhofer",
        }
    }

    fn required_regime(&self) -> Option<Regime> {
        match self {
            Command::FarAngleSweep | Command::FarSubcarrierSweep => Some(Regime::Far),
            Command::NearSubcarrierSweep | Command::NearHeatmap => Some(Regime::Near),
            _ => None,
        }
    }

    fn sweep_axis(&self) -> Option<SweepAxis> {
        match self {
            Command::FarAngleSweep => Some(SweepAxis::Nu),
            Command::FarSubcarrierSweep | Command::NearSubcarrierSweep => {
                Some(SweepAxis::Frequency)
            }
            Command::NearHeatmap => Some(SweepAxis::Location),
            Command::Design | Command::Metrics | Command::Fraunhofer => None,
        }
    }
}

/// Command-line overrides of scenario settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub format: Option<Format>,
    pub threshold: Option<f64>,
    pub grid_step: Option<f64>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{0}")]
    Incompatible(String),
    #[error("model error: {0}")]
    Model(#[from] irs_squint::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Scenario(ScenarioError::Io { .. }) | RunError::Output { .. } => EXIT_IO,
            _ => EXIT_INCOMPATIBLE,
        }
    }
}

fn incompatible(msg: impl Into<String>) -> RunError {
    RunError::Incompatible(msg.into())
}

/// Loads the scenario, evaluates `command` and writes the artifact to `out`.
pub fn run(
    command: Command,
    scenario_path: &Path,
    out: &Path,
    options: &RunOptions,
) -> Result<(), RunError> {
    let scenario = load_scenario(scenario_path)?;
    let artifact = evaluate(command, &scenario, options)?;
    let format = options.format.unwrap_or(scenario.format());
    let io_err = |source| RunError::Output {
        path: out.display().to_string(),
        source,
    };
    let file = File::create(out).map_err(io_err)?;
    artifact.write(format, BufWriter::new(file)).map_err(io_err)
}

/// Evaluates `command` on a loaded scenario.
pub fn evaluate(
    command: Command,
    scenario: &Scenario,
    options: &RunOptions,
) -> Result<Artifact, RunError> {
    if let Some(required) = command.required_regime() {
        if scenario.regime() != required {
            return Err(incompatible(format!(
                "{} needs a {required}-field scenario, got a {}-field one",
                command.name(),
                scenario.regime()
            )));
        }
    }
    if let (Some(sweep), Some(expected)) = (scenario.sweep(), command.sweep_axis()) {
        if sweep.axis != expected {
            return Err(incompatible(format!(
                "{} sweeps the {expected} axis but the scenario sweep is over {}",
                command.name(),
                sweep.axis
            )));
        }
    }
    let threshold = options.threshold.unwrap_or(scenario.threshold());
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(incompatible(format!(
            "threshold = {threshold} must lie in (0, 1)"
        )));
    }

    let artifact = match command {
        Command::Design => design(scenario)?,
        Command::FarAngleSweep => far_angle(scenario, options)?,
        Command::FarSubcarrierSweep | Command::NearSubcarrierSweep => {
            let map = subcarrier_map(scenario)?;
            let metrics = squint_metrics(&map, threshold)?;
            Artifact::from_map(&map).with_meta(
                "metrics",
                json!({
                    "threshold": threshold,
                    "fraction_above": metrics.fraction_above,
                    "min_gain": metrics.min_gain,
                    "mean_gain": metrics.mean_gain,
                }),
            )
        }
        Command::NearHeatmap => near_heatmap(scenario, options)?,
        Command::Metrics => metrics(scenario, threshold)?,
        Command::Fraunhofer => fraunhofer(scenario)?,
    };
    Ok(artifact
        .with_meta("command", json!(command.name()))
        .with_meta("scenario", scenario_meta(scenario)))
}

fn scenario_meta(s: &Scenario) -> Value {
    serde_json::to_value(s).expect("scenario serialization cannot fail")
}

fn core_design(s: &Scenario) -> Design {
    s.design().into()
}

fn subcarrier_selection(s: &Scenario) -> Vec<Subcarrier> {
    match s.sweep() {
        Some(sweep) if !sweep.subcarriers.is_empty() => {
            sweep.subcarriers.iter().map(|c| c.to_core()).collect()
        }
        _ => DEFAULT_SUBCARRIERS.to_vec(),
    }
}

fn grid_step(s: &Scenario, options: &RunOptions, default: f64) -> f64 {
    options
        .grid_step
        .or_else(|| s.sweep().and_then(|w| w.step))
        .unwrap_or(default)
}

fn subcarrier_map(s: &Scenario) -> Result<GainMap, RunError> {
    let cfg = s.config();
    let map = match s.regime() {
        Regime::Far => {
            let nu0 = s.far_target().expect("far scenario").nu();
            subcarrier_sweep_far(&s.array(), &cfg, nu0, core_design(s))?
        }
        Regime::Near => subcarrier_sweep_near(
            &s.near_geometry().expect("near scenario"),
            &cfg,
            core_design(s),
        )?,
    };
    Ok(map)
}

fn design(s: &Scenario) -> Result<Artifact, RunError> {
    let cfg = s.config();
    let array = s.array();
    let (phases, delays, extra) = match s.regime() {
        Regime::Far => {
            let nu0 = s.far_target().expect("far scenario").nu();
            let (p, d) = far_profiles(&array, &cfg, nu0, core_design(s))?;
            (p, d, json!({"nu0": nu0}))
        }
        Regime::Near => {
            let geom = s.near_geometry().expect("near scenario");
            let (p, d) = near_profiles(&geom, &cfg, core_design(s))?;
            let extra = match s.design().into() {
                Design::Dam => {
                    json!({"common_delay_s": near_dam_design(&geom, &cfg)?.common_delay})
                }
                Design::PhasesOnly => json!({}),
            };
            (p, d, extra)
        }
    };
    let delays = delays.unwrap_or_else(|| DelayProfile::zeros(array.elements()));
    let elements = (1..=array.elements()).map(|r| r as f64).collect();
    Ok(Artifact {
        axes: vec![OutputAxis::numbers("element", "1", elements)],
        values: Values::Columns(vec![
            ("phases".into(), phases.as_slice().to_vec()),
            ("delays".into(), delays.as_slice().to_vec()),
        ]),
        meta: Default::default(),
    }
    .with_meta("units", json!({"phases": "rad", "delays": "s"}))
    .with_meta("design", extra))
}

fn far_angle(s: &Scenario, options: &RunOptions) -> Result<Artifact, RunError> {
    let cfg = s.config();
    let array = s.array();
    let nu0 = s.far_target().expect("far scenario").nu();
    let [start, stop] = s.sweep().and_then(|w| w.range).unwrap_or(DEFAULT_NU_RANGE);
    let grid = LinearGrid::from_range(start, stop, grid_step(s, options, DEFAULT_NU_STEP))?;
    let (phases, delays) = far_profiles(&array, &cfg, nu0, core_design(s))?;
    let map = angle_sweep(
        &array,
        &cfg,
        &phases,
        delays.as_ref(),
        &subcarrier_selection(s),
        &grid,
    )?;
    let frequencies = map.axes()[0].values.clone();
    let nus = &map.axes()[1].values;
    let peaks = frequencies
        .iter()
        .enumerate()
        .map(|(row, &f)| {
            let gains = map.row(row).expect("row exists");
            let best = nus
                .iter()
                .zip(gains)
                .filter(|(nu, _)| (*nu - nu0).abs() <= MAIN_LOBE_HALF_WIDTH)
                .fold(None, |acc: Option<(f64, f64)>, (&nu, &g)| match acc {
                    Some((_, best)) if best >= g => acc,
                    _ => Some((nu, g)),
                });
            let law = far_squint_direction(nu0, f, cfg.carrier())?;
            Ok(match best {
                Some((nu, gain)) => {
                    json!({"frequency_hz": f, "nu": nu, "gain": gain, "squint_law_nu": law})
                }
                None => json!({"frequency_hz": f, "nu": null, "gain": null, "squint_law_nu": law}),
            })
        })
        .collect::<Result<Vec<_>, irs_squint::Error>>()?;
    Ok(Artifact::from_map(&map).with_meta("peaks", json!(peaks)))
}

fn near_heatmap(s: &Scenario, options: &RunOptions) -> Result<Artifact, RunError> {
    let cfg = s.config();
    let geom = s.near_geometry().expect("near scenario");
    let half_span = s
        .sweep()
        .and_then(|w| w.half_span)
        .unwrap_or(DEFAULT_HALF_SPAN);
    let grid = LocationGrid::centered(
        geom.user(),
        half_span,
        grid_step(s, options, DEFAULT_LOCATION_STEP),
    )?;
    let mut frequencies = Vec::new();
    let mut values = Vec::new();
    let mut peaks = Vec::new();
    let mut axes = None;
    for sel in subcarrier_selection(s) {
        let h = location_heatmap(&geom, &cfg, sel, core_design(s), &grid)?;
        frequencies.push(h.frequency);
        values.extend_from_slice(h.map.values());
        peaks.push(json!({
            "frequency_hz": h.frequency,
            "x_m": h.peak.x,
            "y_m": h.peak.y,
            "gain": h.peak_value,
        }));
        axes.get_or_insert_with(|| Artifact::from_map(&h.map).axes);
    }
    let mut all_axes = vec![OutputAxis::numbers("frequency_hz", "Hz", frequencies)];
    all_axes.extend(axes.unwrap_or_default());
    let user = geom.user();
    Ok(Artifact {
        axes: all_axes,
        values: Values::Single(values),
        meta: Default::default(),
    }
    .with_meta("peaks", json!(peaks))
    .with_meta("user", json!({"x_m": user.x, "y_m": user.y})))
}

fn metrics(s: &Scenario, threshold: f64) -> Result<Artifact, RunError> {
    let map = subcarrier_map(s)?;
    let m = squint_metrics(&map, threshold)?;
    let below = map.fraction_where(|g| g < threshold);
    Ok(Artifact {
        axes: vec![OutputAxis::labels(
            "metric",
            &[
                "threshold",
                "fraction_above",
                "fraction_below",
                "min_gain",
                "mean_gain",
            ],
        )],
        values: Values::Single(vec![
            threshold,
            m.fraction_above,
            below,
            m.min_gain,
            m.mean_gain,
        ]),
        meta: Default::default(),
    })
}

fn fraunhofer(s: &Scenario) -> Result<Artifact, RunError> {
    let cfg = s.config();
    let array = s.array();
    let aperture = array.aperture();
    let boundary = fraunhofer_distance(aperture, &cfg)?;
    let mut labels = vec!["aperture_m", "fraunhofer_distance_m"];
    let mut values = vec![aperture, boundary];
    let mut artifact_meta = None;
    if let Some(geom) = s.near_geometry() {
        let origin = geom.irs_origin();
        let center = irs_squint::Point::new(origin.x + aperture / 2.0, origin.y);
        let range = center.distance(&geom.user());
        labels.push("user_range_m");
        values.push(range);
        artifact_meta = Some(json!(range < boundary));
    }
    let mut artifact = Artifact {
        axes: vec![OutputAxis::labels("quantity", &labels)],
        values: Values::Single(values),
        meta: Default::default(),
    };
    if let Some(near) = artifact_meta {
        artifact = artifact.with_meta("user_in_near_field", near);
    }
    Ok(artifact)
}
